#include "slicelab/rank.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace slicelab {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point start = Clock::now();
  long long limit_ms = 0;
  bool expired() const {
    if (limit_ms <= 0) return false;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  Clock::now() - start)
                  .count();
    return ms > limit_ms;
  }
};

/* All compositions (r_1..r_d) of k with r_j <= cap_j, ascending
   lexicographic order. */
std::vector<std::vector<int>> compositions(int k, std::span<const int> caps) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(caps.size(), 0);
  auto rec = [&](auto&& self, size_t pos, int remaining) -> void {
    if (pos == caps.size()) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    int tail_cap = 0;
    for (size_t q = pos + 1; q < caps.size(); ++q) tail_cap += caps[q];
    for (int r = 0; r <= std::min(remaining, caps[pos]); ++r) {
      if (remaining - r > tail_cap) continue;
      current[pos] = r;
      self(self, pos + 1, remaining - r);
    }
    current[pos] = 0;
  };
  rec(rec, 0, k);
  return out;
}

}  // namespace

std::optional<MembershipWitness> solve_complementary_functions(
    const Tensor& t, std::span<const std::vector<Vec>> families) {
  int d = t.order();
  if (static_cast<int>(families.size()) != d)
    throw Error("one family per axis required");

  std::vector<std::vector<int>> rest_axes, rest_dims;
  std::vector<long long> block_offset;
  long long unknowns = 0;
  for (int j = 0; j < d; ++j) {
    rest_axes.push_back(complement_axes(d, std::vector<int>{j}));
    rest_dims.push_back(dims_at(t.dims(), rest_axes.back()));
    block_offset.push_back(unknowns);
    unknowns += static_cast<long long>(families[size_t(j)].size()) *
                count_entries(rest_dims.back());
  }

  long long rows = t.size();
  Mat system = zero_mat(t.field(), static_cast<int>(rows),
                        static_cast<int>(unknowns));
  Vec rhs = zero_vec(t.field(), static_cast<int>(rows));

  std::vector<int> idx(size_t(d), 0);
  long long row = 0;
  do {
    rhs[static_cast<int>(row)] = t.entry(row);
    for (int j = 0; j < d; ++j) {
      long long comp_size = count_entries(rest_dims[size_t(j)]);
      long long comp_lin = 0;
      for (int axis : rest_axes[size_t(j)])
        comp_lin = comp_lin * t.dims()[size_t(axis)] + idx[size_t(axis)];
      for (size_t i = 0; i < families[size_t(j)].size(); ++i) {
        int coeff = families[size_t(j)][i][idx[size_t(j)]];
        if (coeff == 0) continue;
        long long col = block_offset[size_t(j)] +
                        static_cast<long long>(i) * comp_size + comp_lin;
        system.at(static_cast<int>(row), static_cast<int>(col)) =
            t.field().add(
                system.at(static_cast<int>(row), static_cast<int>(col)),
                coeff);
      }
    }
    ++row;
  } while (advance_index(idx, t.dims()));

  std::optional<Vec> solution = solve_linear(system, rhs);
  if (!solution) return std::nullopt;

  MembershipWitness witness;
  for (int j = 0; j < d; ++j) {
    std::vector<Tensor> list;
    long long comp_size = count_entries(rest_dims[size_t(j)]);
    for (size_t i = 0; i < families[size_t(j)].size(); ++i) {
      Tensor b(t.field(), rest_dims[size_t(j)]);
      for (long long e = 0; e < comp_size; ++e)
        b.entry(e) = (*solution)[static_cast<int>(
            block_offset[size_t(j)] + static_cast<long long>(i) * comp_size +
            e)];
      list.push_back(std::move(b));
    }
    witness.b.push_back(std::move(list));
  }
  return witness;
}

std::optional<MembershipWitness> membership_in_target(
    const Tensor& t, std::span<const Subspace> tuple) {
  if (static_cast<int>(tuple.size()) != t.order())
    throw Error("one subspace per axis required");
  std::vector<std::vector<Vec>> families;
  for (int j = 0; j < t.order(); ++j) {
    const Subspace& s = tuple[size_t(j)];
    if (s.ambient_dim() != t.dims()[size_t(j)] || !(s.field() == t.field()))
      throw Error("tuple does not match tensor axes");
    families.push_back(s.basis_rows());
  }
  return solve_complementary_functions(t, families);
}

SliceRankResult slice_rank(const Tensor& t, const RankBudget& budget) {
  int d = t.order();
  if (d < 1) throw Error("slice rank needs order >= 1");
  int natural_cap = *std::min_element(t.dims().begin(), t.dims().end());
  Deadline deadline{Clock::now(), budget.time_hint_ms};
  long long candidates = 0;

  std::map<std::pair<int, int>, std::vector<Subspace>> cache;
  auto spaces = [&](int n, int r) -> const std::vector<Subspace>& {
    auto key = std::make_pair(n, r);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, enumerate_subspaces(n, r, t.field())).first;
    return it->second;
  };

  for (int k = 0; k <= natural_cap; ++k) {
    if (budget.max_rank >= 0 && k > budget.max_rank)
      return {false, k, std::nullopt, {}};
    for (const std::vector<int>& comp : compositions(k, t.dims())) {
      std::vector<const std::vector<Subspace>*> lists;
      for (int j = 0; j < d; ++j)
        lists.push_back(&spaces(t.dims()[size_t(j)], comp[size_t(j)]));
      std::vector<size_t> pick(size_t(d), 0);
      while (true) {
        if (++candidates > budget.max_candidates || deadline.expired())
          return {false, k, std::nullopt, {}};
        std::vector<Subspace> tuple;
        for (int j = 0; j < d; ++j)
          tuple.push_back((*lists[size_t(j)])[pick[size_t(j)]]);
        if (auto witness = membership_in_target(t, tuple)) {
          SliceDecomposition dec(t.field(), t.dims());
          for (int j = 0; j < d; ++j) {
            std::vector<Vec> basis = tuple[size_t(j)].basis_rows();
            for (size_t i = 0; i < basis.size(); ++i)
              dec.add_term(j, basis[i], witness->b[size_t(j)][i]);
          }
          return {true, k, std::move(dec), std::move(tuple)};
        }
        int pos = d - 1;
        while (pos >= 0 && ++pick[size_t(pos)] >= lists[size_t(pos)]->size()) {
          pick[size_t(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
  }
  throw InternalContradiction("slice rank search exhausted all lengths");
}

TensorRankResult tensor_rank(const Tensor& t, const RankBudget& budget) {
  int d = t.order();
  if (d < 1) throw Error("tensor rank needs order >= 1");
  Deadline deadline{Clock::now(), budget.time_hint_ms};
  long long candidates = 0;

  /* Natural cap: expand along every axis but the widest one. */
  int widest = 0;
  for (int j = 1; j < d; ++j)
    if (t.dims()[size_t(j)] > t.dims()[size_t(widest)]) widest = j;
  long long natural_cap = 1;
  for (int j = 0; j < d; ++j)
    if (j != widest) natural_cap *= t.dims()[size_t(j)];

  /* Projectively normalized nonzero vectors per trailing axis. */
  std::vector<std::vector<Vec>> normalized(static_cast<size_t>(d));
  for (int j = 1; j < d; ++j) {
    int n = t.dims()[size_t(j)];
    std::vector<int> value(size_t(n), 0);
    while (advance_index(value, std::vector<int>(size_t(n), t.field().modulus()))) {
      Vec v{t.field(), value};
      int lead = 0;
      while (v[lead] == 0) ++lead;
      if (v[lead] != 1) continue;
      normalized[size_t(j)].push_back(std::move(v));
    }
  }

  int n1 = t.dims()[0];
  for (long long k = 0; k <= natural_cap; ++k) {
    if (budget.max_rank >= 0 && k > budget.max_rank)
      return {false, static_cast<int>(k), std::nullopt};
    if (k == 0) {
      if (t.is_zero()) {
        TensorRankDecomposition dec(t.field(), t.dims());
        return {true, 0, std::move(dec)};
      }
      continue;
    }
    /* slots: term-major list of factors on axes 2..d */
    std::vector<size_t> slot(size_t(k) * size_t(d - 1), 0);
    while (true) {
      if (++candidates > budget.max_candidates || deadline.expired())
        return {false, static_cast<int>(k), std::nullopt};

      /* coefficient of unknown a_{1,i}[x_1] at entry x is the product
         of the picked trailing factors of term i */
      Mat system = zero_mat(t.field(), static_cast<int>(t.size()),
                            static_cast<int>(k) * n1);
      Vec rhs = zero_vec(t.field(), static_cast<int>(t.size()));
      std::vector<int> idx(size_t(d), 0);
      long long row = 0;
      do {
        rhs[static_cast<int>(row)] = t.entry(row);
        for (int i = 0; i < k; ++i) {
          int coeff = 1;
          for (int j = 1; j < d; ++j) {
            const Vec& v = normalized[size_t(j)][slot[size_t(i) * size_t(d - 1) +
                                                      size_t(j - 1)]];
            coeff = t.field().mul(coeff, v[idx[size_t(j)]]);
            if (coeff == 0) break;
          }
          if (coeff != 0)
            system.at(static_cast<int>(row), i * n1 + idx[0]) = coeff;
        }
        ++row;
      } while (advance_index(idx, t.dims()));

      if (auto solution = solve_linear(system, rhs)) {
        TensorRankDecomposition dec(t.field(), t.dims());
        for (int i = 0; i < k; ++i) {
          std::vector<Vec> term;
          Vec a1 = zero_vec(t.field(), n1);
          for (int x = 0; x < n1; ++x) a1[x] = (*solution)[i * n1 + x];
          term.push_back(std::move(a1));
          for (int j = 1; j < d; ++j)
            term.push_back(normalized[size_t(j)][slot[size_t(i) * size_t(d - 1) +
                                                      size_t(j - 1)]]);
          dec.terms.push_back(std::move(term));
        }
        if (!validate(dec).ok())
          throw InternalContradiction(
              "shorter decomposition missed: zero factor at minimal length");
        return {true, static_cast<int>(k), std::move(dec)};
      }

      int pos = static_cast<int>(slot.size()) - 1;
      while (pos >= 0) {
        int j = 1 + pos % (d - 1);
        if (++slot[size_t(pos)] < normalized[size_t(j)].size()) break;
        slot[size_t(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  throw InternalContradiction("tensor rank search exhausted all lengths");
}

bool is_separated_decomposition(const SliceDecomposition& dec,
                                const RankBudget& budget) {
  if (dec.order() < 2)
    throw Error("separation check needs order >= 2");
  int k = dec.length();
  for (int j = 0; j < dec.order(); ++j) {
    const auto& list = dec.axes[size_t(j)];
    if (list.empty()) continue;
    int r = static_cast<int>(list.size());
    std::vector<int> lambda(size_t(r), 0);
    std::vector<int> radix(size_t(r), dec.field.modulus());
    while (advance_index(lambda, radix)) {
      Tensor combo(dec.field, dec.complement_dims(j));
      for (int i = 0; i < r; ++i)
        combo = add(combo, scale(lambda[size_t(i)], list[size_t(i)].second));
      RankBudget bounded = budget;
      bounded.max_rank = 2 * k - 1;
      SliceRankResult res = slice_rank(combo, bounded);
      if (res.completed && res.rank < 2 * k) return false;
      if (!res.completed && res.rank < 2 * k)
        throw BudgetExceeded("separation check ran out of budget", res.rank);
    }
  }
  return true;
}

}  // namespace slicelab
