#pragma once

#include <map>
#include <string>

#include "slicelab/rank.hpp"

namespace slicelab {

/* Exact counts and the bounds they were checked against.  `pass` is
   the conjunction of every asserted relation; notes name the failures
   (and record context for extremal cases). */
struct CensusReport {
  std::map<std::string, long long> counts;
  std::map<std::string, long long> bounds;
  bool pass = true;
  std::vector<std::string> notes;
};

/* Ordered r-tuples of independent vectors in F_p^n. */
long long ordered_independent_count(int n, int r, int p);
/* Ordered bases of F_p^k: the product (p^k - 1)(p^k - p)...(p^k - p^{k-1}). */
long long ordered_basis_count(int k, int p);

/* min(base^exp, cap); keeps bound arithmetic inside long long. */
long long pow_capped(long long base, int exp, long long cap);

/* Millionths of the infinite product (1 - 1/2)(1 - 1/4)(1 - 1/8)...,
   rounded down, so "count >= omega * p^(r^2)" can be checked in exact
   integer arithmetic as count * 1000000 >= kOmegaMillionths * p^(r^2). */
inline constexpr long long kOmegaMillionths = 288788;

/* Counts the ordered length-k rank-one decompositions of an order-2
   tensor, k its rank, and checks the count against the ordered-basis
   formula.  Conceptually p^{k(rows+cols)} factor tuples are censused;
   that figure must stay within the budget. */
CensusReport count_matrix_decompositions(
    const Tensor& m, long long budget = kDefaultEnumerationBudget);

/* Every subspace tuple of total dimension k whose target contains the
   tensor, with one membership witness per tuple.  Composition order,
   then per-axis enumeration order. */
struct AdmissibleTupleSet {
  int k = 0;
  std::vector<std::vector<Subspace>> tuples;
  std::vector<MembershipWitness> witnesses;
};

/* k < 0 means "use the slice rank".  BudgetExceeded when the candidate
   tuple count would pass the budget. */
AdmissibleTupleSet admissible_tuples(const Tensor& t, int k = -1,
                                     long long budget = kDefaultEnumerationBudget);

/* d^k * p^(d k^2), capped so callers can compare within long long. */
long long admissible_tuple_bound(int d, int k, int p);

/* Number of ordered per-axis basis choices for the given admissible
   tuple: the product over axes of ordered_basis_count(dim V_j, p).
   Counted by explicit enumeration, not by the formula, so the two can
   be compared.  PreconditionFailed when the tensor is outside the
   tuple's target. */
long long count_slice_decompositions_given_tuple(
    const Tensor& t, std::span<const Subspace> tuple);

/* Counts ordered length-k factor tuples assembling to t, where the
   factors on every axis after the first run over nonzero vectors and
   the first-axis factors come from one linear solve per tail.  At the
   exact tensor rank this censuses every factor tuple (a zero factor
   anywhere would drop the length below k).  k < 0 means "use the
   tensor rank".  The count is checked against p^{(d-1)k^2}. */
CensusReport count_tensor_rank_decompositions(
    const Tensor& t, int k = -1, long long budget = kDefaultEnumerationBudget);

/* The closed count for tensors of the form M(x_1,x_2) a_3 ... a_d with
   rank-k M: (p-1)^{(d-2)k} times the ordered-basis product. */
long long example_tensor_rank_count(int d, int k, int p);

/* Enumerates every length-k decomposition and the per-axis spans it
   generates; passes when all decompositions share one span tuple.
   NotOfRankK when no decomposition of the claimed length exists. */
CensusReport verify_subspace_uniqueness_tensor_rank(
    const Tensor& t, int k = -1, long long budget = kDefaultEnumerationBudget);

/* Census for the split decompositions of T = M(x_1,x_2) c(x_3..x_d)
   with M the identity of size 2r: counts the r-dimensional first-axis
   subspaces that occur in an admissible (V_1, W_2, 0, ..., 0) tuple and
   checks count * 10^6 >= kOmegaMillionths * p^(r^2).  PreconditionFailed
   when the block c has slice rank below 2r. */
CensusReport lower_bound_example_census(const Tensor& c, int r,
                                        const RankBudget& budget = {});

}  // namespace slicelab
