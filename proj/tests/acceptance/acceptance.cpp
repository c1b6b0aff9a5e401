#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "slicelab/census.hpp"
#include "slicelab/errors.hpp"
#include "slicelab/io.hpp"
#include "slicelab/random.hpp"
#include "slicelab/transforms.hpp"

#include "../test_support.hpp"

using namespace slicelab;
using test_support::all_tensors;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string with_time(const std::string& text, double secs) {
  std::ostringstream out;
  out << text << " in " << std::fixed << std::setprecision(1) << secs << " s";
  return out.str();
}

Mat as_mat(const Tensor& t) {
  Mat m = zero_mat(t.field(), t.dims()[0], t.dims()[1]);
  m.entries = t.entries();
  return m;
}

/* 1. Exhaustive matrix censuses against the ordered-basis product. */
bool matrix_count_criterion(std::string& detail) {
  Clock::time_point start = Clock::now();
  long long checked = 0, wrong = 0;
  for (int p : {2, 3}) {
    FieldSpec F(p);
    for (int rows : {1, 2, 3}) {
      for (int cols : {1, 2, 3}) {
        for (const Tensor& m : all_tensors(F, {rows, cols})) {
          if (matrix_rank(as_mat(m)) > 2) continue;
          CensusReport report = count_matrix_decompositions(m);
          ++checked;
          if (!report.pass) ++wrong;
        }
      }
    }
  }
  double secs = seconds_since(start);
  detail = with_time(std::to_string(checked) + " matrices, " +
                         std::to_string(wrong) + " deviations",
                     secs);
  return wrong == 0 && secs < 10.0;
}

/* 2. Slice rank of the diagonal identity tensors. */
bool identity_rank_criterion(std::string& detail) {
  Clock::time_point start = Clock::now();
  FieldSpec F(2);
  struct Case {
    int d, k;
  };
  int wrong = 0;
  for (Case c : {Case{3, 1}, Case{3, 2}, Case{3, 3}, Case{4, 2}}) {
    SliceRankResult res = slice_rank(identity_tensor(c.d, c.k, F));
    if (!res.completed || res.rank != c.k) ++wrong;
  }
  double secs = seconds_since(start);
  detail = with_time("4 identity tensors", secs);
  return wrong == 0 && secs < 60.0;
}

/* 3. Every decomposition transformation leaves the tensor unchanged. */
bool transform_invariance_criterion(std::string& detail) {
  struct Combo {
    int d, p;
  };
  const std::vector<Combo> grid{{3, 2}, {3, 3}, {3, 5},
                                {4, 2}, {4, 3}, {4, 5}};
  int failures = 0;
  for (int seed = 0; seed < 1000; ++seed) {
    Combo combo = grid[size_t(seed) % grid.size()];
    FieldSpec F(combo.p);
    Rng rng(7000ULL + static_cast<unsigned long long>(seed));
    std::vector<int> dims(size_t(combo.d), 2);
    dims[1] = 3;
    std::vector<int> shape(size_t(combo.d), 1);
    shape[0] = 2;

    SliceDecomposition dec = random_slice_decomposition(rng, F, dims, shape);
    Tensor target = assemble(dec);

    int axis = rng.below(combo.d);
    int r = shape[size_t(axis)];
    Mat change = mat_from_rows(rng.independent_family(F, r, r), F, r);
    if (!(assemble(basis_change(dec, axis, change)) == target)) ++failures;

    std::vector<int> pair_axes{0, 1};
    Tensor pair_move =
        rng.tensor(F, dims_at(dims, complement_axes(combo.d, pair_axes)));
    if (!(assemble(pair_shift(dec, {0, 0}, {1, 0}, pair_move)) == target))
      ++failures;

    std::vector<int> star_axes{0, 1, 2};
    std::vector<int> shift_dims =
        dims_at(dims, complement_axes(combo.d, star_axes));
    Tensor s0 = rng.tensor(F, shift_dims);
    Tensor s1 = rng.tensor(F, shift_dims);
    std::vector<Tensor> shifts{s0, s1, negate(add(s0, s1))};
    std::vector<std::pair<int, int>> picks{{0, 0}, {1, 0}, {2, 0}};
    if (!(assemble(star_shift(dec, picks, shifts)) == target)) ++failures;

    TensorRankDecomposition rank_dec =
        random_tensor_rank_decomposition(rng, F, dims, 2);
    std::vector<int> assignment{rng.below(combo.d), rng.below(combo.d)};
    if (!(assemble(regroup_tensor_rank(rank_dec, assignment)) ==
          assemble(rank_dec)))
      ++failures;

    Tensor loose = rng.tensor(F, dims);
    if (!(assemble(slice_by_axis(loose, rng.below(combo.d))) == loose))
      ++failures;
  }
  detail = "1000 fixtures, " + std::to_string(failures) + " drifts";
  return failures == 0;
}

/* Ordered independent families of the requested size in F^n. */
void independent_families(const FieldSpec& F, int n, int count,
                          std::vector<Vec>& current,
                          std::vector<std::vector<Vec>>& out) {
  if (static_cast<int>(current.size()) == count) {
    out.push_back(current);
    return;
  }
  std::vector<int> digits(size_t(n), 0);
  std::vector<int> radix(size_t(n), F.modulus());
  do {
    Vec v = zero_vec(F, n);
    for (int i = 0; i < n; ++i) v[i] = digits[size_t(i)];
    if (v.is_zero()) continue;
    current.push_back(v);
    Mat m = mat_from_rows(current, F, n);
    if (matrix_rank(m) == static_cast<int>(current.size()))
      independent_families(F, n, count, current, out);
    current.pop_back();
  } while (advance_index(digits, radix));
}

bool layer_sums_cancel(const ZeroFormCertificate& cert,
                       const std::vector<int>& shape) {
  const FieldSpec& F = cert.field;
  for (int i = 0; i < shape[0]; ++i) {
    for (int t = 0; t < shape[1]; ++t) {
      for (int s = 0; s < shape[2]; ++s) {
        int total = 0;
        for (int slot : {0, 1, 2}) {
          auto it = cert.entries.find(ZeroFormKey{{0, 1, 2}, {i, t, s}, slot});
          if (it != cert.entries.end())
            total = F.add(total, it->second.as_scalar());
        }
        if (total != 0) return false;
      }
    }
  }
  return true;
}

/* 4. Zero decompositions round trip through certificates. */
bool zero_form_criterion(std::string& detail) {
  FieldSpec F(2);
  long long zero_forms = 0, failures = 0;

  std::vector<Tensor> slices = all_tensors(F, {2, 2});
  for (int s0 = 0; s0 <= 2; ++s0) {
    for (int s1 = 0; s1 + s0 <= 2; ++s1) {
      for (int s2 = 0; s2 + s1 + s0 <= 2; ++s2) {
        std::vector<int> shape{s0, s1, s2};
        std::vector<std::vector<std::vector<Vec>>> per_axis(3);
        for (int j = 0; j < 3; ++j) {
          std::vector<Vec> current;
          independent_families(F, 2, shape[size_t(j)], current,
                               per_axis[size_t(j)]);
        }
        for (const auto& fam0 : per_axis[0]) {
          for (const auto& fam1 : per_axis[1]) {
            for (const auto& fam2 : per_axis[2]) {
              int terms = s0 + s1 + s2;
              std::vector<int> pick(size_t(terms), 0);
              std::vector<int> radix(size_t(terms),
                                     static_cast<int>(slices.size()));
              do {
                SliceDecomposition dec(F, {2, 2, 2});
                int slot = 0;
                for (const Vec& a : fam0)
                  dec.add_term(0, a, slices[size_t(pick[size_t(slot++)])]);
                for (const Vec& a : fam1)
                  dec.add_term(1, a, slices[size_t(pick[size_t(slot++)])]);
                for (const Vec& a : fam2)
                  dec.add_term(2, a, slices[size_t(pick[size_t(slot++)])]);
                if (!assemble(dec).is_zero()) continue;
                ++zero_forms;
                ZeroFormCertificate cert = extract_zero_form(dec);
                if (!verify_zero_form(dec, cert).ok()) ++failures;
                ZeroFormCertificate direct = extract_zero_form_order3(dec);
                if (!verify_zero_form(dec, direct).ok()) ++failures;
                if (!layer_sums_cancel(direct, dec.shape())) ++failures;
              } while (terms > 0 && advance_index(pick, radix));
            }
          }
        }
      }
    }
  }

  long long seeded = 0;
  const int primes[3] = {2, 3, 5};
  for (int seed = 0; seed < 200; ++seed) {
    int d = 3 + (seed % 2);
    FieldSpec Fp(primes[(seed / 2) % 3]);
    Rng rng(11000ULL + static_cast<unsigned long long>(seed));
    std::vector<int> dims(size_t(d), 2);
    std::vector<int> shape(size_t(d), 1);
    SliceDecomposition dec = random_slice_decomposition(rng, Fp, dims, shape);
    SliceDecomposition moved = random_shift_composition(rng, dec, 4);
    SliceDecomposition diff = dec;
    for (int j = 0; j < d; ++j)
      diff.b(j, 0) = sub(moved.b(j, 0), dec.b(j, 0));
    if (!assemble(diff).is_zero()) {
      ++failures;
      continue;
    }
    ++seeded;
    ZeroFormCertificate cert = extract_zero_form(diff);
    if (!verify_zero_form(diff, cert).ok()) ++failures;
    if (d == 3) {
      ZeroFormCertificate direct = extract_zero_form_order3(diff);
      if (!verify_zero_form(diff, direct).ok()) ++failures;
      if (!layer_sums_cancel(direct, diff.shape())) ++failures;
    }
  }

  detail = std::to_string(zero_forms) + " exhaustive and " +
           std::to_string(seeded) + " seeded zero decompositions, " +
           std::to_string(failures) + " failures";
  return failures == 0 && zero_forms > 0 && seeded == 200;
}

/* 5. Sunflower merges land on the center; the petal count is sharp. */
bool sunflower_criterion(std::string& detail) {
  const int primes[3] = {2, 3, 5};
  int failures = 0, contradictions = 0;
  for (int seed = 0; seed < 100; ++seed) {
    int d = 2 + (seed % 2);
    FieldSpec F(primes[(seed / 2) % 3]);
    Rng rng(9000ULL + static_cast<unsigned long long>(seed));
    std::vector<int> dims(size_t(d), d + 2);
    std::vector<int> ones(size_t(d), 1);
    SunflowerFamily family =
        generate_sunflower_fixture(rng, F, dims, d + 1, ones, ones);
    if (!check_hypotheses(family).ok()) {
      ++failures;
      continue;
    }
    try {
      SliceDecomposition merged = merge_to_center(family);
      if (merged.length() > d) ++failures;
      if (!(assemble(merged) == assemble(family.petals[0]))) ++failures;
      for (int j = 0; j < d; ++j)
        if (!(merged.a(j, 0) == family.center[size_t(j)][0])) ++failures;
    } catch (const InternalContradiction&) {
      ++contradictions;
    }
  }

  /* sharp case: as many petals as axes, empty center, full slice rank */
  FieldSpec F2(2);
  Tensor t = identity_tensor(3, 2, F2);
  bool sharp = slice_rank(t).rank == 2;
  SunflowerFamily flat(F2, {2, 2, 2});
  for (int axis = 0; axis < 3; ++axis)
    flat.petals.push_back(slice_by_axis(t, axis));
  sharp = sharp && !check_hypotheses(flat).ok();
  std::vector<std::vector<Vec>> empty_center(3);
  sharp = sharp && !solve_complementary_functions(t, empty_center).has_value();

  detail = "100 merges, " + std::to_string(failures) + " failures, " +
           std::to_string(contradictions) + " contradictions, sharpness " +
           (sharp ? "holds" : "broken");
  return failures == 0 && contradictions == 0 && sharp;
}

/* 6. Admissible-tuple census of every 2x2x2 tensor over F_2. */
bool admissible_census_criterion(std::string& detail) {
  Clock::time_point start = Clock::now();
  FieldSpec F(2);
  long long tensors = 0, tuple_total = 0;
  int failures = 0;
  for (const Tensor& t : all_tensors(F, {2, 2, 2})) {
    AdmissibleTupleSet set = admissible_tuples(t);
    ++tensors;
    tuple_total += static_cast<long long>(set.tuples.size());
    if (static_cast<long long>(set.tuples.size()) >
        admissible_tuple_bound(3, set.k, 2))
      ++failures;
    for (const auto& tuple : set.tuples) {
      long long formula = 1;
      for (const Subspace& space : tuple)
        formula *= ordered_basis_count(space.dim(), 2);
      if (count_slice_decompositions_given_tuple(t, tuple) != formula)
        ++failures;
    }
  }
  double secs = seconds_since(start);
  detail = with_time(std::to_string(tensors) + " tensors, " +
                         std::to_string(tuple_total) + " tuples, " +
                         std::to_string(failures) + " failures",
                     secs);
  return failures == 0 && tensors == 256 && secs < 300.0;
}

/* 7. Tensor-rank counts and subspace uniqueness on the worked examples. */
bool tensor_rank_count_criterion(std::string& detail) {
  FieldSpec F2(2), F3(3);
  Tensor point2(F2, {2, 2, 2});
  point2.at(std::vector<int>{0, 0, 0}) = 1;
  Tensor block(F2, {2, 2, 2});
  block.at(std::vector<int>{0, 0, 0}) = 1;
  block.at(std::vector<int>{1, 1, 0}) = 1;
  Tensor point3(F3, {2, 2, 2});
  point3.at(std::vector<int>{0, 0, 0}) = 1;

  struct Case {
    const Tensor* t;
    int d, k, p;
    long long expected;
  };
  const Case cases[3] = {{&point2, 3, 1, 2, 1},
                         {&block, 3, 2, 2, 6},
                         {&point3, 3, 1, 3, 4}};
  int failures = 0;
  for (const Case& c : cases) {
    CensusReport count = count_tensor_rank_decompositions(*c.t);
    if (!count.pass || count.counts.at("decompositions") != c.expected ||
        count.counts.at("decompositions") !=
            example_tensor_rank_count(c.d, c.k, c.p))
      ++failures;
    CensusReport unique = verify_subspace_uniqueness_tensor_rank(*c.t);
    if (!unique.pass || unique.counts.at("span_tuples") != 1) ++failures;
  }
  detail = "3 examples, " + std::to_string(failures) + " failures";
  return failures == 0;
}

/* 8. A separated decomposition pins its admissible tuple uniquely. */
bool separated_criterion(std::string& detail) {
  FieldSpec F(2);
  SliceDecomposition dec(F, {2, 2, 2});
  dec.add_term(0, unit_vec(F, 2, 0), identity_tensor(2, 2, F));
  bool separated = is_separated_decomposition(dec);
  AdmissibleTupleSet set = admissible_tuples(assemble(dec));
  detail = std::string("fixture ") +
           (separated ? "separated" : "not separated") + ", " +
           std::to_string(set.tuples.size()) + " admissible tuples at k=" +
           std::to_string(set.k);
  return separated && set.k == 1 && set.tuples.size() == 1;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    bool (*run)(std::string&);
  };
  const Criterion criteria[8] = {
      {"matrix decomposition counts match the ordered-basis product",
       matrix_count_criterion},
      {"slice rank of diagonal identity tensors", identity_rank_criterion},
      {"transformations preserve the assembled tensor",
       transform_invariance_criterion},
      {"zero decompositions round trip through certificates",
       zero_form_criterion},
      {"sunflower families merge onto their centers", sunflower_criterion},
      {"admissible tuple census stays within the closed bound",
       admissible_census_criterion},
      {"tensor rank counts match the closed example formula",
       tensor_rank_count_criterion},
      {"separated fixtures pin a unique admissible tuple",
       separated_criterion},
  };

  int failed = 0;
  for (int i = 0; i < 8; ++i) {
    std::string detail;
    bool pass = false;
    try {
      pass = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!pass) ++failed;
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1)
              << ": " << criteria[i].label;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
  }
  if (failed == 0)
    std::cout << "all 8 criteria passed\n";
  else
    std::cout << failed << " of 8 criteria failed\n";
  return failed;
}
