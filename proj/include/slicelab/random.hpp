#pragma once

#include <random>

#include "slicelab/decomposition.hpp"

namespace slicelab {

/* Deterministic fixture source.  Sampling reduces the raw 64-bit stream
   by remainder, so a given seed yields the same draws on every platform
   and standard library. */
class Rng {
 public:
  explicit Rng(unsigned long long seed) : gen_(seed) {}

  int below(int n);
  int scalar(const FieldSpec& field) { return below(field.modulus()); }
  int nonzero_scalar(const FieldSpec& field) {
    return 1 + below(field.modulus() - 1);
  }
  Vec vec(const FieldSpec& field, int n);
  Vec nonzero_vec(const FieldSpec& field, int n);
  Tensor tensor(const FieldSpec& field, std::vector<int> dims);

  /* `count` vectors of F^n with full rank, by bounded rejection. */
  std::vector<Vec> independent_family(const FieldSpec& field, int n,
                                      int count);

 private:
  std::mt19937_64 gen_;
};

/* Decomposition with independent one-variable functions per axis and
   unconstrained complementary functions. */
SliceDecomposition random_slice_decomposition(Rng& rng,
                                              const FieldSpec& field,
                                              std::vector<int> dims,
                                              const std::vector<int>& shape);

/* k rank-one terms with no zero factor. */
TensorRankDecomposition random_tensor_rank_decomposition(
    Rng& rng, const FieldSpec& field, std::vector<int> dims, int k);

/* Applies `steps` random pair and star shifts.  Every move keeps the
   one-variable functions and the assembled tensor fixed, so the result
   pairs with the input for difference certificates. */
SliceDecomposition random_shift_composition(Rng& rng,
                                            const SliceDecomposition& dec,
                                            int steps);

}  // namespace slicelab
