#pragma once

#include "slicelab/decomposition.hpp"

namespace slicelab {

/* Replace the axis-j family by change * family and rewrite that axis's
   complementary functions so the assembled tensor is untouched.
   Throws SingularChange when `change` is not invertible. */
SliceDecomposition basis_change(const SliceDecomposition& dec, int axis,
                                const Mat& change);

/* Turn a rank-one-term decomposition into a slice decomposition by
   assigning term i to axis_of_term[i]; the remaining factors of each
   term fold into its complementary function. */
SliceDecomposition regroup_tensor_rank(const TensorRankDecomposition& dec,
                                       std::span<const int> axis_of_term);

/* Slice t along one axis: indicator one-variable functions with the
   slices as complementary functions; zero slices are dropped. */
SliceDecomposition slice_by_axis(const Tensor& t, int axis);

/* Move mass between two terms on distinct axes: with terms (j1,i1) and
   (j2,i2), adds a_{j2,i2} (x) shift to b_{j1,i1} and subtracts
   a_{j1,i1} (x) shift from b_{j2,i2}.  `shift` lives on the axes other
   than j1 and j2.  Assembly is unchanged. */
SliceDecomposition pair_shift(const SliceDecomposition& dec,
                              std::pair<int, int> term1,
                              std::pair<int, int> term2, const Tensor& shift);

/* Star move over a set J of at least two axes: picks names one term
   per axis of J, shifts[t] lives on the axes outside J, and the shifts
   must sum to zero (otherwise NonZeroShiftSum).  Each picked term's
   complementary function gains (product of the other picked
   one-variable functions) (x) its shift.  Assembly is unchanged. */
SliceDecomposition star_shift(const SliceDecomposition& dec,
                              std::span<const std::pair<int, int>> picks,
                              std::span<const Tensor> shifts);

}  // namespace slicelab
