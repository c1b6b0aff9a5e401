#include "slicelab/census.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <utility>

#include "slicelab/errors.hpp"

namespace slicelab {

namespace {

constexpr long long kCountCap = std::numeric_limits<long long>::max() / 4;

long long mul_capped(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCountCap / b) return kCountCap;
  return a * b;
}

/* Term-major odometer over the per-axis pools of tail factors. */
bool advance_choice(std::vector<size_t>& choice,
                    const std::vector<std::vector<Vec>>& pool, int span) {
  size_t slot = choice.size();
  while (slot > 0) {
    --slot;
    if (++choice[slot] < pool[slot % size_t(span)].size()) return true;
    choice[slot] = 0;
  }
  return false;
}

Mat tensor_as_mat(const Tensor& t) {
  if (t.order() != 2) throw Error("matrix census needs an order-2 tensor");
  Mat m = zero_mat(t.field(), t.dims()[0], t.dims()[1]);
  for (long long i = 0; i < t.size(); ++i)
    m.entries[size_t(i)] = t.entry(i);
  return m;
}

void compositions_of(int total, std::span<const int> caps, int position,
                     std::vector<int>& current,
                     const std::function<void(const std::vector<int>&)>& emit) {
  if (position == static_cast<int>(caps.size())) {
    if (total == 0) emit(current);
    return;
  }
  int cap = std::min(caps[size_t(position)], total);
  for (int r = 0; r <= cap; ++r) {
    current.push_back(r);
    compositions_of(total - r, caps, position + 1, current, emit);
    current.pop_back();
  }
}

std::vector<Vec> nonzero_vectors(const FieldSpec& field, int n) {
  std::vector<Vec> out;
  std::vector<int> digits(size_t(n), 0);
  std::vector<int> radix(size_t(n), field.modulus());
  do {
    Vec v = zero_vec(field, n);
    for (int i = 0; i < n; ++i) v[i] = digits[size_t(i)];
    if (!v.is_zero()) out.push_back(std::move(v));
  } while (advance_index(digits, radix));
  return out;
}

long long ordered_basis_count_by_enumeration(const Subspace& space) {
  std::vector<Vec> elements = space.elements();
  const FieldSpec& field = space.field();
  int r = space.dim();
  std::vector<Vec> chosen;
  long long count = 0;
  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == r) {
      ++count;
      return;
    }
    for (const Vec& candidate : elements) {
      chosen.push_back(candidate);
      Mat m = mat_from_rows(chosen, field, space.ambient_dim());
      if (matrix_rank(m) == static_cast<int>(chosen.size()))
        self(self, depth + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return count;
}

}  // namespace

long long ordered_independent_count(int n, int r, int p) {
  long long pn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  long long result = 1, pi = 1;
  for (int i = 0; i < r; ++i) {
    result *= pn - pi;
    pi *= p;
  }
  return std::max(result, 0LL);
}

long long ordered_basis_count(int k, int p) {
  return ordered_independent_count(k, k, p);
}

long long pow_capped(long long base, int exp, long long cap) {
  long long result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return cap;
    result *= base;
  }
  return std::min(result, cap);
}

CensusReport count_matrix_decompositions(const Tensor& m, long long budget) {
  Mat a = tensor_as_mat(m);
  const FieldSpec& field = m.field();
  int p = field.modulus();
  int rows = a.rows, cols = a.cols;
  int k = matrix_rank(a);
  if (pow_capped(p, k * (rows + cols), kCountCap) > budget)
    throw BudgetExceeded("matrix census would pass the budget");

  std::vector<Vec> columns;
  for (int c = 0; c < cols; ++c) {
    Vec col = zero_vec(field, rows);
    for (int r = 0; r < rows; ++r) col[r] = a.at(r, c);
    columns.push_back(std::move(col));
  }

  long long count = 0;
  std::vector<int> digits(size_t(k) * size_t(rows), 0);
  std::vector<int> radix(digits.size(), p);
  do {
    Mat f = zero_mat(field, rows, k);
    for (int i = 0; i < k; ++i)
      for (int r = 0; r < rows; ++r)
        f.at(r, i) = digits[size_t(i) * size_t(rows) + size_t(r)];
    bool consistent = true;
    for (const Vec& col : columns)
      if (!solve_linear(f, col)) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    int free_dim = k - matrix_rank(f);
    count += pow_capped(p, free_dim * cols, kCountCap);
  } while (advance_index(digits, radix));

  CensusReport report;
  report.counts["decompositions"] = count;
  report.counts["rank"] = k;
  report.bounds["ordered_basis_formula"] = ordered_basis_count(k, p);
  report.pass = count == report.bounds["ordered_basis_formula"];
  if (!report.pass)
    report.notes.push_back("count deviates from the ordered-basis formula");
  return report;
}

AdmissibleTupleSet admissible_tuples(const Tensor& t, int k,
                                     long long budget) {
  if (k < 0) {
    RankBudget rank_budget;
    rank_budget.max_candidates = budget;
    SliceRankResult result = slice_rank(t, rank_budget);
    if (!result.completed)
      throw BudgetExceeded("slice rank search passed the budget",
                           result.rank);
    k = result.rank;
  }

  const FieldSpec& field = t.field();
  int d = t.order();
  int p = field.modulus();
  std::vector<int> caps;
  for (int j = 0; j < d; ++j) caps.push_back(t.dims()[size_t(j)]);

  std::vector<std::vector<int>> shapes;
  std::vector<int> current;
  long long candidates = 0;
  compositions_of(k, caps, 0, current,
                  [&](const std::vector<int>& shape) {
                    long long tuples = 1;
                    for (int j = 0; j < d; ++j)
                      tuples = mul_capped(tuples,
                                          gaussian_binomial(caps[size_t(j)],
                                                            shape[size_t(j)], p));
                    candidates = std::min(kCountCap, candidates + tuples);
                    shapes.push_back(shape);
                  });
  if (candidates > budget)
    throw BudgetExceeded("admissible tuple census would pass the budget");

  AdmissibleTupleSet result;
  result.k = k;
  for (const std::vector<int>& shape : shapes) {
    std::vector<std::vector<Subspace>> lists;
    for (int j = 0; j < d; ++j)
      lists.push_back(enumerate_subspaces(caps[size_t(j)], shape[size_t(j)],
                                          field, budget));
    std::vector<size_t> choice(size_t(d), 0);
    while (true) {
      std::vector<Subspace> tuple;
      for (int j = 0; j < d; ++j) tuple.push_back(lists[size_t(j)][choice[size_t(j)]]);
      if (auto witness = membership_in_target(t, tuple)) {
        result.tuples.push_back(std::move(tuple));
        result.witnesses.push_back(std::move(*witness));
      }
      int j = d - 1;
      while (j >= 0 && ++choice[size_t(j)] == lists[size_t(j)].size()) {
        choice[size_t(j)] = 0;
        --j;
      }
      if (j < 0) break;
    }
  }
  return result;
}

long long admissible_tuple_bound(int d, int k, int p) {
  long long subspaces = pow_capped(p, d * k * k, kCountCap);
  long long shapes = pow_capped(d, k, kCountCap);
  if (shapes > kCountCap / std::max(subspaces, 1LL)) return kCountCap;
  return shapes * subspaces;
}

long long count_slice_decompositions_given_tuple(
    const Tensor& t, std::span<const Subspace> tuple) {
  if (!membership_in_target(t, tuple))
    throw PreconditionFailed("tensor is outside the tuple's target");
  long long product = 1;
  for (const Subspace& space : tuple) {
    long long basis_tuples = pow_capped(space.field().modulus(),
                                        space.dim() * space.dim(), kCountCap);
    if (basis_tuples > (1 << 20))
      throw BudgetExceeded("basis enumeration would pass the budget");
    product *= ordered_basis_count_by_enumeration(space);
  }
  return product;
}

CensusReport count_tensor_rank_decompositions(const Tensor& t, int k,
                                              long long budget) {
  if (k < 0) {
    RankBudget rank_budget;
    rank_budget.max_candidates = budget;
    TensorRankResult result = tensor_rank(t, rank_budget);
    if (!result.completed)
      throw BudgetExceeded("tensor rank search passed the budget",
                           result.rank);
    k = result.rank;
  }
  const FieldSpec& field = t.field();
  int d = t.order();
  int p = field.modulus();
  if (d < 2) throw Error("tensor rank census needs order >= 2");

  CensusReport report;
  report.counts["rank"] = k;
  report.bounds["tail_tuple_bound"] =
      pow_capped(p, (d - 1) * k * k, kCountCap);
  if (k == 0) {
    report.counts["decompositions"] = t.is_zero() ? 1 : 0;
    report.pass = true;
    return report;
  }

  int n0 = t.dims()[0];
  std::vector<std::vector<Vec>> pool;
  long long tails = 1;
  for (int j = 1; j < d; ++j) {
    pool.push_back(nonzero_vectors(field, t.dims()[size_t(j)]));
    for (int slot = 0; slot < k; ++slot)
      tails = mul_capped(tails, static_cast<long long>(pool.back().size()));
  }
  if (tails > budget)
    throw BudgetExceeded("tensor rank census would pass the budget");

  long long rows = t.size();
  int cols = k * n0;
  long long count = 0;
  std::vector<size_t> choice(size_t(k) * size_t(d - 1), 0);
  do {
    Mat system = zero_mat(field, static_cast<int>(rows), cols + 1);
    std::vector<int> index(size_t(d), 0);
    long long row = 0;
    do {
      for (int term = 0; term < k; ++term) {
        int coeff = 1;
        for (int j = 1; j < d; ++j) {
          const Vec& v = pool[size_t(j - 1)][choice[size_t(term) * size_t(d - 1) +
                                                    size_t(j - 1)]];
          coeff = field.mul(coeff, v[index[size_t(j)]]);
          if (coeff == 0) break;
        }
        system.at(static_cast<int>(row), term * n0 + index[0]) = coeff;
      }
      system.at(static_cast<int>(row), cols) = t.entry(row);
      ++row;
    } while (advance_index(index, t.dims()));

    RrefResult reduced = rref(system);
    bool consistent =
        std::find(reduced.pivot_columns.begin(), reduced.pivot_columns.end(),
                  cols) == reduced.pivot_columns.end();
    if (consistent)
      count += pow_capped(p, cols - reduced.rank, kCountCap);
  } while (advance_choice(choice, pool, d - 1));

  report.counts["decompositions"] = count;
  report.pass = count <= report.bounds["tail_tuple_bound"];
  if (!report.pass)
    report.notes.push_back("count passes the tail tuple bound");
  return report;
}

long long example_tensor_rank_count(int d, int k, int p) {
  long long scalars = 1;
  for (int i = 0; i < (d - 2) * k; ++i) scalars *= p - 1;
  return scalars * ordered_basis_count(k, p);
}

CensusReport verify_subspace_uniqueness_tensor_rank(const Tensor& t, int k,
                                                    long long budget) {
  if (k < 0) {
    RankBudget rank_budget;
    rank_budget.max_candidates = budget;
    TensorRankResult result = tensor_rank(t, rank_budget);
    if (!result.completed)
      throw BudgetExceeded("tensor rank search passed the budget",
                           result.rank);
    k = result.rank;
  }
  const FieldSpec& field = t.field();
  int d = t.order();
  int p = field.modulus();
  if (d < 2) throw Error("tensor rank census needs order >= 2");
  if (k == 0) {
    if (!t.is_zero()) throw NotOfRankK("nonzero tensor has no empty decomposition");
    CensusReport report;
    report.counts["decompositions"] = 1;
    report.counts["span_tuples"] = 1;
    report.pass = true;
    return report;
  }

  int n0 = t.dims()[0];
  std::vector<std::vector<Vec>> pool;
  long long tails = 1;
  for (int j = 1; j < d; ++j) {
    pool.push_back(nonzero_vectors(field, t.dims()[size_t(j)]));
    for (int slot = 0; slot < k; ++slot)
      tails = mul_capped(tails, static_cast<long long>(pool.back().size()));
  }
  if (tails > budget)
    throw BudgetExceeded("tensor rank census would pass the budget");

  long long rows = t.size();
  int cols = k * n0;
  long long count = 0;
  std::set<std::vector<Subspace>> span_tuples;
  std::vector<size_t> choice(size_t(k) * size_t(d - 1), 0);
  do {
    Mat system = zero_mat(field, static_cast<int>(rows), cols);
    Vec rhs = zero_vec(field, static_cast<int>(rows));
    std::vector<int> index(size_t(d), 0);
    long long row = 0;
    do {
      for (int term = 0; term < k; ++term) {
        int coeff = 1;
        for (int j = 1; j < d; ++j) {
          const Vec& v = pool[size_t(j - 1)][choice[size_t(term) * size_t(d - 1) +
                                                    size_t(j - 1)]];
          coeff = field.mul(coeff, v[index[size_t(j)]]);
          if (coeff == 0) break;
        }
        system.at(static_cast<int>(row), term * n0 + index[0]) = coeff;
      }
      rhs[static_cast<int>(row)] = t.entry(row);
      ++row;
    } while (advance_index(index, t.dims()));

    if (std::optional<Vec> particular = solve_linear(system, rhs)) {
      std::vector<Vec> kernel = kernel_basis(system);
      std::vector<int> coeffs(kernel.size(), 0);
      std::vector<int> radix(kernel.size(), p);
      do {
        Vec solution = *particular;
        for (size_t b = 0; b < kernel.size(); ++b)
          solution = add(solution, scale(coeffs[b], kernel[b]));
        ++count;

        std::vector<Subspace> spans;
        std::vector<Vec> first_axis;
        for (int term = 0; term < k; ++term) {
          Vec factor = zero_vec(field, n0);
          for (int i = 0; i < n0; ++i) factor[i] = solution[term * n0 + i];
          first_axis.push_back(std::move(factor));
        }
        spans.push_back(Subspace::from_vectors(first_axis, field, n0));
        for (int j = 1; j < d; ++j) {
          std::vector<Vec> axis_factors;
          for (int term = 0; term < k; ++term)
            axis_factors.push_back(
                pool[size_t(j - 1)][choice[size_t(term) * size_t(d - 1) +
                                           size_t(j - 1)]]);
          spans.push_back(Subspace::from_vectors(axis_factors, field,
                                                 t.dims()[size_t(j)]));
        }
        span_tuples.insert(std::move(spans));
      } while (advance_index(coeffs, radix));
    }
  } while (advance_choice(choice, pool, d - 1));

  if (count == 0)
    throw NotOfRankK("no decomposition of the claimed length exists");

  CensusReport report;
  report.counts["decompositions"] = count;
  report.counts["span_tuples"] = static_cast<long long>(span_tuples.size());
  report.pass = span_tuples.size() == 1;
  if (!report.pass)
    report.notes.push_back("decompositions span more than one tuple");
  return report;
}

CensusReport lower_bound_example_census(const Tensor& c, int r,
                                        const RankBudget& budget) {
  const FieldSpec& field = c.field();
  int p = field.modulus();
  if (c.order() < 2)
    throw PreconditionFailed("block tensor must have order >= 2");
  if (r < 0) throw Error("negative subspace dimension");

  CensusReport report;
  if (r == 0) {
    report.counts["first_axis_subspaces"] = 1;
    report.bounds["omega_scaled_millionths"] = kOmegaMillionths;
    report.pass = true;
    report.notes.push_back("trivial zero-dimensional census");
    return report;
  }

  SliceRankResult block_rank = slice_rank(c, budget);
  if (!block_rank.completed)
    throw BudgetExceeded("block slice rank search passed the budget",
                         block_rank.rank);
  if (block_rank.rank < 2 * r)
    throw PreconditionFailed("block slice rank " +
                             std::to_string(block_rank.rank) +
                             " is below " + std::to_string(2 * r));

  int side = 2 * r;
  Tensor t = outer(identity_tensor(2, side, field), c);

  std::vector<Subspace> zeros;
  for (int j = 0; j < c.order(); ++j)
    zeros.emplace_back(field, c.dims()[size_t(j)]);

  std::vector<Subspace> firsts = enumerate_subspaces(side, r, field);
  long long found = 0;
  for (const Subspace& v1 : firsts) {
    for (const Subspace& w2 : firsts) {
      std::vector<Subspace> tuple{v1, w2};
      tuple.insert(tuple.end(), zeros.begin(), zeros.end());
      if (membership_in_target(t, tuple)) {
        ++found;
        break;
      }
    }
  }

  long long scale = pow_capped(p, r * r, kCountCap);
  report.counts["first_axis_subspaces"] = found;
  report.counts["block_slice_rank"] = block_rank.rank;
  report.bounds["omega_scaled_millionths"] = kOmegaMillionths * scale;
  report.pass = found * 1'000'000 >= kOmegaMillionths * scale;
  if (!report.pass)
    report.notes.push_back("census fell below the omega lower bound");
  return report;
}

}  // namespace slicelab
