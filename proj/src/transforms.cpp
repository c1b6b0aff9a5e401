#include "slicelab/transforms.hpp"

#include <algorithm>

namespace slicelab {

namespace {

/* Product of the given one-variable functions and one extra factor,
   embedded over the axes other than `skip`. */
Tensor embed_outside(const SliceDecomposition& dec, int skip,
                     std::span<const std::pair<int, const Vec*>> vec_factors,
                     const Tensor& extra, std::span<const int> extra_axes) {
  std::vector<int> rest = complement_axes(dec.order(), std::vector<int>{skip});
  std::vector<int> rest_dims = dims_at(dec.dims, rest);
  std::vector<AxisPlacedTensor> placed;
  for (const auto& [axis, vec] : vec_factors)
    placed.push_back({vec_to_tensor(*vec), {position_in(rest, axis)}});
  std::vector<int> extra_pos;
  for (int a : extra_axes) extra_pos.push_back(position_in(rest, a));
  placed.push_back({extra, std::move(extra_pos)});
  return outer_embed(placed, rest_dims, dec.field);
}

}  // namespace

SliceDecomposition basis_change(const SliceDecomposition& dec, int axis,
                                const Mat& change) {
  if (axis < 0 || axis >= dec.order()) throw Error("axis out of range");
  const auto& list = dec.axes[size_t(axis)];
  int r = static_cast<int>(list.size());
  if (change.rows != r || change.cols != r)
    throw Error("change of basis has wrong shape");
  Mat inv = inverse(change);  // throws SingularChange

  SliceDecomposition out = dec;
  for (int i = 0; i < r; ++i) {
    Vec a = zero_vec(dec.field, dec.dims[size_t(axis)]);
    Tensor b(dec.field, dec.complement_dims(axis));
    for (int l = 0; l < r; ++l) {
      a = add(a, scale(change.at(i, l), list[size_t(l)].first));
      /* b' = inverse(change)^T b keeps the axis matrix fixed. */
      b = add(b, scale(inv.at(l, i), list[size_t(l)].second));
    }
    out.axes[size_t(axis)][size_t(i)] = {std::move(a), std::move(b)};
  }
  return out;
}

SliceDecomposition regroup_tensor_rank(const TensorRankDecomposition& dec,
                                       std::span<const int> axis_of_term) {
  if (static_cast<int>(axis_of_term.size()) != dec.length())
    throw Error("assignment length mismatch");
  SliceDecomposition out(dec.field, dec.dims);
  for (int i = 0; i < dec.length(); ++i) {
    int j = axis_of_term[size_t(i)];
    if (j < 0 || j >= dec.order()) throw Error("axis out of range");
    const auto& term = dec.terms[size_t(i)];
    std::vector<int> rest = complement_axes(dec.order(), std::vector<int>{j});
    std::vector<AxisPlacedTensor> placed;
    for (size_t pos = 0; pos < rest.size(); ++pos)
      placed.push_back({vec_to_tensor(term[size_t(rest[pos])]),
                        {static_cast<int>(pos)}});
    Tensor b = outer_embed(placed, dims_at(dec.dims, rest), dec.field);
    out.add_term(j, term[size_t(j)], std::move(b));
  }
  return out;
}

SliceDecomposition slice_by_axis(const Tensor& t, int axis) {
  if (axis < 0 || axis >= t.order()) throw Error("axis out of range");
  SliceDecomposition out(t.field(), t.dims());
  for (int v = 0; v < t.dims()[size_t(axis)]; ++v) {
    Tensor slice = fix_coordinate(t, axis, v);
    if (slice.is_zero()) continue;
    out.add_term(axis, unit_vec(t.field(), t.dims()[size_t(axis)], v),
                 std::move(slice));
  }
  return out;
}

SliceDecomposition pair_shift(const SliceDecomposition& dec,
                              std::pair<int, int> term1,
                              std::pair<int, int> term2, const Tensor& shift) {
  auto [j1, i1] = term1;
  auto [j2, i2] = term2;
  if (j1 == j2) throw Error("pair shift needs terms on distinct axes");
  for (auto [j, i] : {term1, term2}) {
    if (j < 0 || j >= dec.order()) throw Error("axis out of range");
    if (i < 0 || i >= static_cast<int>(dec.axes[size_t(j)].size()))
      throw Error("term index out of range");
  }
  std::vector<int> outside =
      complement_axes(dec.order(), std::vector<int>{std::min(j1, j2),
                                                    std::max(j1, j2)});
  if (shift.dims() != dims_at(dec.dims, outside))
    throw Error("shift dims must match the axes outside the pair");

  SliceDecomposition out = dec;
  std::pair<int, const Vec*> f2{j2, &dec.a(j2, i2)};
  out.b(j1, i1) = add(out.b(j1, i1),
                      embed_outside(dec, j1, std::span(&f2, 1), shift, outside));
  std::pair<int, const Vec*> f1{j1, &dec.a(j1, i1)};
  out.b(j2, i2) = sub(out.b(j2, i2),
                      embed_outside(dec, j2, std::span(&f1, 1), shift, outside));
  return out;
}

SliceDecomposition star_shift(const SliceDecomposition& dec,
                              std::span<const std::pair<int, int>> picks,
                              std::span<const Tensor> shifts) {
  if (picks.size() < 2) throw Error("star shift needs at least two axes");
  if (picks.size() != shifts.size())
    throw Error("one shift per picked term required");
  std::vector<int> star_axes;
  for (auto [j, i] : picks) {
    if (j < 0 || j >= dec.order()) throw Error("axis out of range");
    if (i < 0 || i >= static_cast<int>(dec.axes[size_t(j)].size()))
      throw Error("term index out of range");
    star_axes.push_back(j);
  }
  std::vector<int> sorted_axes = star_axes;
  std::sort(sorted_axes.begin(), sorted_axes.end());
  if (std::adjacent_find(sorted_axes.begin(), sorted_axes.end()) !=
      sorted_axes.end())
    throw Error("star shift axes must be distinct");
  std::vector<int> outside = complement_axes(dec.order(), sorted_axes);
  std::vector<int> outside_dims = dims_at(dec.dims, outside);

  Tensor total(dec.field, outside_dims);
  for (const Tensor& c : shifts) {
    if (c.dims() != outside_dims)
      throw Error("shift dims must match the axes outside the star");
    total = add(total, c);
  }
  if (!total.is_zero()) throw NonZeroShiftSum("shifts must sum to zero");

  SliceDecomposition out = dec;
  for (size_t t = 0; t < picks.size(); ++t) {
    auto [j, i] = picks[t];
    std::vector<std::pair<int, const Vec*>> factors;
    for (size_t s = 0; s < picks.size(); ++s) {
      if (s == t) continue;
      factors.emplace_back(picks[s].first,
                           &dec.a(picks[s].first, picks[s].second));
    }
    out.b(j, i) = add(out.b(j, i),
                      embed_outside(dec, j, factors, shifts[t], outside));
  }
  return out;
}

}  // namespace slicelab
