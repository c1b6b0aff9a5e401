#include "slicelab/tensor.hpp"

#include <algorithm>

namespace slicelab {

namespace {

std::vector<long long> strides_of(std::span<const int> dims) {
  std::vector<long long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[size_t(i)] = s[size_t(i) + 1] * dims[size_t(i) + 1];
  return s;
}

}  // namespace

long long count_entries(std::span<const int> dims) {
  long long n = 1;
  for (int d : dims) n *= d;
  return n;
}

Tensor::Tensor(const FieldSpec& field, std::vector<int> dims)
    : field_(field), dims_(std::move(dims)) {
  for (int d : dims_)
    if (d <= 0) throw Error("tensor dimensions must be positive");
  entries_.assign(size_t(count_entries(dims_)), 0);
}

Tensor Tensor::from_entries(const FieldSpec& field, std::vector<int> dims,
                            std::vector<int> entries) {
  Tensor t(field, std::move(dims));
  if (static_cast<long long>(entries.size()) != t.size())
    throw Error("entry count does not match dims");
  for (int& e : entries) e = field.reduce(e);
  t.entries_ = std::move(entries);
  return t;
}

Tensor Tensor::scalar(const FieldSpec& field, int value) {
  Tensor t(field, {});
  t.entries_[0] = field.reduce(value);
  return t;
}

long long Tensor::linear_index(std::span<const int> index) const {
  if (index.size() != dims_.size()) throw Error("index order mismatch");
  long long lin = 0;
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (index[i] < 0 || index[i] >= dims_[i]) throw Error("index out of range");
    lin = lin * dims_[i] + index[i];
  }
  return lin;
}

int Tensor::at(std::span<const int> index) const {
  return entries_[size_t(linear_index(index))];
}

int& Tensor::at(std::span<const int> index) {
  return entries_[size_t(linear_index(index))];
}

bool Tensor::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](int e) { return e == 0; });
}

int Tensor::as_scalar() const {
  if (order() != 0) throw Error("not an order-0 tensor");
  return entries_[0];
}

Tensor add(const Tensor& a, const Tensor& b) {
  if (!(a.field() == b.field()) || a.dims() != b.dims())
    throw Error("tensor shape mismatch");
  Tensor out = a;
  for (long long i = 0; i < a.size(); ++i)
    out.entry(i) = a.field().add(a.entry(i), b.entry(i));
  return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
  if (!(a.field() == b.field()) || a.dims() != b.dims())
    throw Error("tensor shape mismatch");
  Tensor out = a;
  for (long long i = 0; i < a.size(); ++i)
    out.entry(i) = a.field().sub(a.entry(i), b.entry(i));
  return out;
}

Tensor scale(int c, const Tensor& a) {
  Tensor out = a;
  for (long long i = 0; i < a.size(); ++i)
    out.entry(i) = a.field().mul(c, a.entry(i));
  return out;
}

Tensor negate(const Tensor& a) { return scale(a.field().neg(1), a); }

bool advance_index(std::vector<int>& index, std::span<const int> dims) {
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    if (++index[size_t(i)] < dims[size_t(i)]) return true;
    index[size_t(i)] = 0;
  }
  return false;
}

std::vector<int> complement_axes(int order, std::span<const int> axes) {
  std::vector<bool> used(size_t(order), false);
  for (int a : axes) {
    if (a < 0 || a >= order) throw Error("axis out of range");
    used[size_t(a)] = true;
  }
  std::vector<int> out;
  for (int a = 0; a < order; ++a)
    if (!used[size_t(a)]) out.push_back(a);
  return out;
}

std::vector<int> dims_at(std::span<const int> dims,
                         std::span<const int> axes) {
  std::vector<int> out;
  for (int a : axes) out.push_back(dims[size_t(a)]);
  return out;
}

int position_in(std::span<const int> sorted_axes, int axis) {
  for (size_t i = 0; i < sorted_axes.size(); ++i)
    if (sorted_axes[i] == axis) return static_cast<int>(i);
  throw Error("axis not present");
}

Tensor contract(const Tensor& small, std::span<const int> axes,
                const Tensor& big) {
  if (!(small.field() == big.field())) throw Error("mixed fields");
  if (static_cast<int>(axes.size()) != small.order())
    throw Error("contraction axis count mismatch");
  for (size_t i = 0; i < axes.size(); ++i) {
    if (i > 0 && axes[i] <= axes[i - 1])
      throw Error("contraction axes must be strictly increasing");
    if (axes[i] < 0 || axes[i] >= big.order())
      throw Error("contraction axis out of range");
    if (small.dims()[i] != big.dims()[size_t(axes[i])])
      throw Error("contraction dimension mismatch");
  }
  std::vector<int> rest = complement_axes(big.order(), axes);
  Tensor out(big.field(), dims_at(big.dims(), rest));
  std::vector<long long> stride = strides_of(big.dims());

  std::vector<int> rest_idx(rest.size(), 0);
  long long out_lin = 0;
  do {
    long long base = 0;
    for (size_t i = 0; i < rest.size(); ++i)
      base += stride[size_t(rest[i])] * rest_idx[i];
    int acc = 0;
    std::vector<int> small_idx(axes.size(), 0);
    if (small.size() > 0) {
      do {
        long long lin = base;
        for (size_t i = 0; i < axes.size(); ++i)
          lin += stride[size_t(axes[i])] * small_idx[i];
        acc = big.field().add(
            acc, big.field().mul(small.entry(small.linear_index(small_idx)),
                                 big.entry(lin)));
      } while (advance_index(small_idx, small.dims()));
    }
    out.entry(out_lin++) = acc;
  } while (advance_index(rest_idx, dims_at(big.dims(), rest)));
  return out;
}

Tensor outer(const Tensor& x, const Tensor& y) {
  if (!(x.field() == y.field())) throw Error("mixed fields");
  std::vector<int> dims = x.dims();
  dims.insert(dims.end(), y.dims().begin(), y.dims().end());
  Tensor out(x.field(), std::move(dims));
  long long pos = 0;
  for (long long i = 0; i < x.size(); ++i)
    for (long long j = 0; j < y.size(); ++j)
      out.entry(pos++) = x.field().mul(x.entry(i), y.entry(j));
  return out;
}

Tensor outer_embed(std::span<const AxisPlacedTensor> factors,
                   std::span<const int> full_dims, const FieldSpec& field) {
  int order = static_cast<int>(full_dims.size());
  std::vector<int> owner(size_t(order), -1);
  for (size_t f = 0; f < factors.size(); ++f) {
    const AxisPlacedTensor& fac = factors[f];
    if (!(fac.value.field() == field)) throw Error("mixed fields");
    if (static_cast<int>(fac.axes.size()) != fac.value.order())
      throw Error("factor axis count mismatch");
    for (size_t i = 0; i < fac.axes.size(); ++i) {
      int a = fac.axes[i];
      if (a < 0 || a >= order || owner[size_t(a)] != -1)
        throw Error("factor axes must partition the result axes");
      if (fac.value.dims()[i] != full_dims[size_t(a)])
        throw Error("factor dimension mismatch");
      owner[size_t(a)] = static_cast<int>(f);
    }
  }
  for (int a = 0; a < order; ++a)
    if (owner[size_t(a)] == -1)
      throw Error("factor axes must partition the result axes");

  Tensor out(field, std::vector<int>(full_dims.begin(), full_dims.end()));
  std::vector<int> idx(size_t(order), 0);
  long long pos = 0;
  do {
    int prod = 1;
    for (const AxisPlacedTensor& fac : factors) {
      std::vector<int> sub(fac.axes.size());
      for (size_t i = 0; i < fac.axes.size(); ++i)
        sub[i] = idx[size_t(fac.axes[i])];
      prod = field.mul(prod, fac.value.entry(fac.value.linear_index(sub)));
      if (prod == 0) break;
    }
    out.entry(pos++) = prod;
  } while (advance_index(idx, full_dims));
  return out;
}

Tensor slice_term_tensor(std::span<const int> dims, int axis, const Vec& a,
                         const Tensor& b) {
  std::vector<int> rest = complement_axes(static_cast<int>(dims.size()),
                                          std::vector<int>{axis});
  std::vector<AxisPlacedTensor> factors;
  factors.push_back({vec_to_tensor(a), {axis}});
  factors.push_back({b, rest});
  return outer_embed(factors, dims, a.field);
}

Tensor identity_tensor(int order, int k, const FieldSpec& field) {
  if (order < 2) throw Error("identity tensor needs order >= 2");
  if (k < 1) throw Error("identity tensor needs k >= 1");
  Tensor t(field, std::vector<int>(size_t(order), k));
  std::vector<int> idx(static_cast<size_t>(order), 0);
  for (int i = 0; i < k; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    t.at(idx) = 1;
  }
  return t;
}

Tensor fix_coordinate(const Tensor& t, int axis, int value) {
  if (axis < 0 || axis >= t.order()) throw Error("axis out of range");
  if (value < 0 || value >= t.dims()[size_t(axis)])
    throw Error("coordinate out of range");
  std::vector<int> rest = complement_axes(t.order(), std::vector<int>{axis});
  Tensor out(t.field(), dims_at(t.dims(), rest));
  std::vector<int> idx(size_t(t.order() - 1), 0);
  long long pos = 0;
  if (out.size() == 0) return out;
  do {
    std::vector<int> full(size_t(t.order()));
    full[size_t(axis)] = value;
    for (size_t i = 0; i < rest.size(); ++i)
      full[size_t(rest[i])] = idx[i];
    out.entry(pos++) = t.at(full);
  } while (advance_index(idx, out.dims()));
  return out;
}

Tensor permute_axes(const Tensor& t, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != t.order())
    throw Error("permutation order mismatch");
  /* result axis i carries t's axis perm[i] */
  std::vector<int> new_dims(perm.size());
  for (size_t i = 0; i < perm.size(); ++i)
    new_dims[i] = t.dims()[size_t(perm[i])];
  Tensor out(t.field(), new_dims);
  if (out.size() == 0) return out;
  std::vector<int> idx(perm.size(), 0);
  long long pos = 0;
  do {
    std::vector<int> src(perm.size());
    for (size_t i = 0; i < perm.size(); ++i)
      src[size_t(perm[i])] = idx[i];
    out.entry(pos++) = t.at(src);
  } while (advance_index(idx, out.dims()));
  return out;
}

Tensor vec_to_tensor(const Vec& v) {
  return Tensor::from_entries(v.field, {v.size()}, v.entries);
}

Vec tensor_to_vec(const Tensor& t) {
  if (t.order() != 1) throw Error("not an order-1 tensor");
  return Vec{t.field(), t.entries()};
}

}  // namespace slicelab
