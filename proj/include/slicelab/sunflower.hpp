#pragma once

#include "slicelab/decomposition.hpp"
#include "slicelab/random.hpp"

namespace slicelab {

/* A family of decompositions of one tensor that pairwise share exactly
   a common center: per axis j, every petal lists the center vectors as
   its first terms, followed by its own private vectors. */
struct SunflowerFamily {
  FieldSpec field;
  std::vector<int> dims;
  std::vector<std::vector<Vec>> center;
  std::vector<SliceDecomposition> petals;

  SunflowerFamily(const FieldSpec& f, std::vector<int> d)
      : field(f), dims(std::move(d)), center(dims.size()) {}
  int order() const { return static_cast<int>(dims.size()); }
  std::vector<int> center_shape() const;
};

/* The merge hypotheses: more petals than axes, identical assembled
   tensors, center carried as a prefix by every petal, and, per axis,
   joint independence of the center plus all private vectors. */
ValidationReport check_hypotheses(const SunflowerFamily& family);

/* Decomposition of the common tensor whose one-variable functions are
   exactly the center vectors, found by one linear solve.  Throws
   HypothesesViolated when check_hypotheses reports anything; a failed
   solve after clean checks is an InternalContradiction. */
SliceDecomposition merge_to_center(const SunflowerFamily& family);

/* Seeded family satisfying the hypotheses: shared center terms, fresh
   jointly independent private vectors per petal, then a few random
   shifts per petal.  Axis j must fit the center plus `petals` private
   families, i.e. center[j] + petals * extra[j] <= dims[j]; otherwise
   DimsTooSmall. */
SunflowerFamily generate_sunflower_fixture(Rng& rng, const FieldSpec& field,
                                           std::vector<int> dims, int petals,
                                           const std::vector<int>& center_shape,
                                           const std::vector<int>& extra_shape);

}  // namespace slicelab
