#pragma once

#include <optional>

#include "slicelab/decomposition.hpp"

namespace slicelab {

struct RankBudget {
  /* Highest decomposition length the search may try; -1 = unlimited. */
  int max_rank = -1;
  /* Cap on membership solves / candidate systems across the search. */
  long long max_candidates = 4'000'000;
  /* Soft wall-clock cap in milliseconds; 0 = unlimited. */
  long long time_hint_ms = 0;
};

/* Complementary functions realizing t inside a target tuple: one list
   per axis, matching that axis's basis (or given family) order. */
struct MembershipWitness {
  std::vector<std::vector<Tensor>> b;
};

/* Does t lie in sum_j W_j (x) (everything else)?  One linear solve in
   the unknown complementary functions against the canonical bases. */
std::optional<MembershipWitness> membership_in_target(
    const Tensor& t, std::span<const Subspace> tuple);

/* Same solve against arbitrary independent per-axis families. */
std::optional<MembershipWitness> solve_complementary_functions(
    const Tensor& t, std::span<const std::vector<Vec>> families);

struct SliceRankResult {
  /* When completed, rank is exact and witness/tuple are set; otherwise
     rank is the best proven lower bound (all lengths below it failed). */
  bool completed = false;
  int rank = 0;
  std::optional<SliceDecomposition> witness;
  std::vector<Subspace> tuple;
};

/* Exact slice rank by exhaustive search: lengths ascending, per-axis
   dimension compositions in lexicographic order, subspace tuples in
   enumeration order; the first member found wins. */
SliceRankResult slice_rank(const Tensor& t, const RankBudget& budget = {});

struct TensorRankResult {
  bool completed = false;
  int rank = 0;
  std::optional<TensorRankDecomposition> witness;
};

/* Exact tensor rank: candidate factors on axes 2..d run over
   projectively normalized nonzero vectors (scalars absorbed into the
   first axis), and the first-axis factors come from one linear solve. */
TensorRankResult tensor_rank(const Tensor& t, const RankBudget& budget = {});

/* True when, for every axis and every nonzero combination lambda of
   that axis's complementary functions, the combination has slice rank
   at least twice the decomposition length. */
bool is_separated_decomposition(const SliceDecomposition& dec,
                                const RankBudget& budget = {});

}  // namespace slicelab
