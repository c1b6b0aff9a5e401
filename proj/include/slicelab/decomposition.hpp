#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slicelab/tensor.hpp"

namespace slicelab {

/* One term of a slice decomposition: the one-variable function a on
   `axis` times the complementary function b on the remaining axes. */
struct SliceTerm {
  int axis;  // 0-based
  Vec a;
  Tensor b;
};

/* T = sum over axes j, terms i of a_{j,i}(x_j) * b_{j,i}(rest).  Terms
   are grouped by axis and keep their order; shape() lists the per-axis
   term counts.  Linear independence of each axis family is a property
   checked by validate, not enforced on construction. */
struct SliceDecomposition {
  FieldSpec field;
  std::vector<int> dims;
  std::vector<std::vector<std::pair<Vec, Tensor>>> axes;

  SliceDecomposition(const FieldSpec& f, std::vector<int> d)
      : field(f), dims(std::move(d)), axes(dims.size()) {}

  int order() const { return static_cast<int>(dims.size()); }
  std::vector<int> shape() const;
  int length() const;
  const Vec& a(int axis, int i) const { return axes[size_t(axis)][size_t(i)].first; }
  const Tensor& b(int axis, int i) const { return axes[size_t(axis)][size_t(i)].second; }
  Tensor& b(int axis, int i) { return axes[size_t(axis)][size_t(i)].second; }
  void add_term(int axis, Vec a, Tensor b);
  std::vector<SliceTerm> terms() const;  // axis order, then term order
  std::vector<int> complement_dims(int axis) const;
};

/* T = sum of k rank-one terms; terms[i] holds one vector per axis. */
struct TensorRankDecomposition {
  FieldSpec field;
  std::vector<int> dims;
  std::vector<std::vector<Vec>> terms;

  TensorRankDecomposition(const FieldSpec& f, std::vector<int> d)
      : field(f), dims(std::move(d)) {}
  int order() const { return static_cast<int>(dims.size()); }
  int length() const { return static_cast<int>(terms.size()); }
};

Tensor assemble(const SliceDecomposition& dec);
Tensor assemble(const TensorRankDecomposition& dec);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const SliceDecomposition& dec);
ValidationReport validate(const TensorRankDecomposition& dec);

/* Per-axis spans of the one-variable functions. */
std::vector<Subspace> subspace_tuple(const SliceDecomposition& dec);

}  // namespace slicelab
