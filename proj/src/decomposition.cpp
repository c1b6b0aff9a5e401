#include "slicelab/decomposition.hpp"

namespace slicelab {

std::vector<int> SliceDecomposition::shape() const {
  std::vector<int> s;
  for (const auto& list : axes) s.push_back(static_cast<int>(list.size()));
  return s;
}

int SliceDecomposition::length() const {
  int k = 0;
  for (const auto& list : axes) k += static_cast<int>(list.size());
  return k;
}

void SliceDecomposition::add_term(int axis, Vec a, Tensor b) {
  if (axis < 0 || axis >= order()) throw Error("axis out of range");
  axes[size_t(axis)].emplace_back(std::move(a), std::move(b));
}

std::vector<SliceTerm> SliceDecomposition::terms() const {
  std::vector<SliceTerm> out;
  for (int j = 0; j < order(); ++j)
    for (const auto& [a, b] : axes[size_t(j)]) out.push_back({j, a, b});
  return out;
}

std::vector<int> SliceDecomposition::complement_dims(int axis) const {
  std::vector<int> out;
  for (int j = 0; j < order(); ++j)
    if (j != axis) out.push_back(dims[size_t(j)]);
  return out;
}

Tensor assemble(const SliceDecomposition& dec) {
  Tensor total(dec.field, dec.dims);
  for (int j = 0; j < dec.order(); ++j)
    for (const auto& [a, b] : dec.axes[size_t(j)])
      total = add(total, slice_term_tensor(dec.dims, j, a, b));
  return total;
}

Tensor assemble(const TensorRankDecomposition& dec) {
  Tensor total(dec.field, dec.dims);
  std::vector<int> all_axes(dec.dims.size());
  for (size_t i = 0; i < all_axes.size(); ++i) all_axes[i] = static_cast<int>(i);
  for (const auto& term : dec.terms) {
    std::vector<AxisPlacedTensor> factors;
    for (size_t j = 0; j < term.size(); ++j)
      factors.push_back({vec_to_tensor(term[j]), {static_cast<int>(j)}});
    total = add(total, outer_embed(factors, dec.dims, dec.field));
  }
  return total;
}

ValidationReport validate(const SliceDecomposition& dec) {
  ValidationReport report;
  if (dec.order() < 1) report.violations.push_back("order must be >= 1");
  for (int j = 0; j < dec.order(); ++j) {
    const auto& list = dec.axes[size_t(j)];
    std::vector<Vec> family;
    for (size_t i = 0; i < list.size(); ++i) {
      const auto& [a, b] = list[i];
      std::string where =
          "axis " + std::to_string(j + 1) + " term " + std::to_string(i + 1);
      if (!(a.field == dec.field) || !(b.field() == dec.field))
        report.violations.push_back(where + ": field mismatch");
      if (a.size() != dec.dims[size_t(j)])
        report.violations.push_back(where + ": one-variable length mismatch");
      if (b.dims() != dec.complement_dims(j))
        report.violations.push_back(where + ": complement dims mismatch");
      family.push_back(a);
    }
    if (!family.empty() && family[0].size() == dec.dims[size_t(j)]) {
      Mat stacked = mat_from_rows(family, dec.field, dec.dims[size_t(j)]);
      if (matrix_rank(stacked) < static_cast<int>(family.size()))
        report.violations.push_back("axis " + std::to_string(j + 1) +
                                    ": one-variable functions are dependent");
    }
  }
  return report;
}

ValidationReport validate(const TensorRankDecomposition& dec) {
  ValidationReport report;
  for (size_t i = 0; i < dec.terms.size(); ++i) {
    const auto& term = dec.terms[i];
    std::string where = "term " + std::to_string(i + 1);
    if (static_cast<int>(term.size()) != dec.order()) {
      report.violations.push_back(where + ": factor count mismatch");
      continue;
    }
    for (int j = 0; j < dec.order(); ++j) {
      if (!(term[size_t(j)].field == dec.field))
        report.violations.push_back(where + ": field mismatch");
      if (term[size_t(j)].size() != dec.dims[size_t(j)])
        report.violations.push_back(where + ": factor length mismatch");
      else if (term[size_t(j)].is_zero())
        report.violations.push_back(where + ": zero factor on axis " +
                                    std::to_string(j + 1));
    }
  }
  return report;
}

std::vector<Subspace> subspace_tuple(const SliceDecomposition& dec) {
  std::vector<Subspace> tuple;
  for (int j = 0; j < dec.order(); ++j) {
    std::vector<Vec> family;
    for (const auto& [a, b] : dec.axes[size_t(j)]) family.push_back(a);
    tuple.push_back(
        Subspace::from_vectors(family, dec.field, dec.dims[size_t(j)]));
  }
  return tuple;
}

}  // namespace slicelab
