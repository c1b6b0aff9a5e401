#pragma once

#include <span>
#include <vector>

#include "slicelab/linalg.hpp"

namespace slicelab {

/* Dense tensor over F_p, row-major (last axis fastest).  Axes are
   0-based internally; only the text formats use 1-based labels.  An
   order-0 tensor is the scalar wrapper produced by full contraction. */
class Tensor {
 public:
  Tensor(const FieldSpec& field, std::vector<int> dims);  // zeros
  static Tensor from_entries(const FieldSpec& field, std::vector<int> dims,
                             std::vector<int> entries);
  static Tensor scalar(const FieldSpec& field, int value);

  int order() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  const FieldSpec& field() const { return field_; }
  long long size() const { return static_cast<long long>(entries_.size()); }

  int entry(long long linear) const { return entries_[size_t(linear)]; }
  int& entry(long long linear) { return entries_[size_t(linear)]; }
  int at(std::span<const int> index) const;
  int& at(std::span<const int> index);
  const std::vector<int>& entries() const { return entries_; }

  long long linear_index(std::span<const int> index) const;
  bool is_zero() const;
  int as_scalar() const;  // order 0 only

  bool operator==(const Tensor&) const = default;

 private:
  FieldSpec field_;
  std::vector<int> dims_;
  std::vector<int> entries_;
};

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor scale(int c, const Tensor& a);
Tensor negate(const Tensor& a);

/* Row-major odometer; returns false when the index wraps past the end. */
bool advance_index(std::vector<int>& index, std::span<const int> dims);
long long count_entries(std::span<const int> dims);

std::vector<int> complement_axes(int order, std::span<const int> axes);
std::vector<int> dims_at(std::span<const int> dims, std::span<const int> axes);
int position_in(std::span<const int> sorted_axes, int axis);

/* Contract `small` against `big` along the given strictly increasing
   axes of `big` (matching small's axes in order).  The result keeps
   big's remaining axes in increasing order; contracting all axes yields
   the order-0 scalar wrapper. */
Tensor contract(const Tensor& small, std::span<const int> axes,
                const Tensor& big);

/* Tensor product with x's axes first, then y's. */
Tensor outer(const Tensor& x, const Tensor& y);

struct AxisPlacedTensor {
  Tensor value;
  std::vector<int> axes;  // positions of value's axes inside the result
};

/* Tensor product of factors whose axis lists partition [0, order). */
Tensor outer_embed(std::span<const AxisPlacedTensor> factors,
                   std::span<const int> full_dims, const FieldSpec& field);

/* a placed on `axis`, b on the complement axes in increasing order. */
Tensor slice_term_tensor(std::span<const int> dims, int axis, const Vec& a,
                         const Tensor& b);

/* Order-d diagonal with k ones: entry 1 at (i, ..., i) for i < k. */
Tensor identity_tensor(int order, int k, const FieldSpec& field);

/* The order-(d-1) slice at index `value` of the given axis. */
Tensor fix_coordinate(const Tensor& t, int axis, int value);

Tensor permute_axes(const Tensor& t, std::span<const int> perm);

Tensor vec_to_tensor(const Vec& v);
Vec tensor_to_vec(const Tensor& t);

}  // namespace slicelab
