#include "slicelab/random.hpp"

#include <algorithm>
#include <utility>

#include "slicelab/errors.hpp"
#include "slicelab/transforms.hpp"

namespace slicelab {

int Rng::below(int n) {
  if (n <= 0) throw Error("empty sampling range");
  return static_cast<int>(gen_() % static_cast<unsigned long long>(n));
}

Vec Rng::vec(const FieldSpec& field, int n) {
  Vec out = zero_vec(field, n);
  for (int i = 0; i < n; ++i) out[i] = scalar(field);
  return out;
}

Vec Rng::nonzero_vec(const FieldSpec& field, int n) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec out = vec(field, n);
    if (!out.is_zero()) return out;
  }
  throw Error("failed to draw a nonzero vector");
}

Tensor Rng::tensor(const FieldSpec& field, std::vector<int> dims) {
  Tensor out(field, std::move(dims));
  for (long long i = 0; i < out.size(); ++i) out.entry(i) = scalar(field);
  return out;
}

std::vector<Vec> Rng::independent_family(const FieldSpec& field, int n,
                                         int count) {
  if (count > n) throw Error("family larger than the ambient dimension");
  std::vector<Vec> family;
  for (int attempt = 0; attempt < 1000 && int(family.size()) < count;
       ++attempt) {
    Vec candidate = vec(field, n);
    family.push_back(candidate);
    Mat m = mat_from_rows(family, field, n);
    if (matrix_rank(m) < int(family.size())) family.pop_back();
  }
  if (int(family.size()) < count)
    throw Error("failed to draw an independent family");
  return family;
}

SliceDecomposition random_slice_decomposition(Rng& rng,
                                              const FieldSpec& field,
                                              std::vector<int> dims,
                                              const std::vector<int>& shape) {
  if (shape.size() != dims.size()) throw Error("one term count per axis");
  SliceDecomposition dec(field, std::move(dims));
  for (int j = 0; j < dec.order(); ++j) {
    std::vector<Vec> family = rng.independent_family(
        field, dec.dims[size_t(j)], shape[size_t(j)]);
    for (int i = 0; i < shape[size_t(j)]; ++i)
      dec.add_term(j, family[size_t(i)],
                   rng.tensor(field, dec.complement_dims(j)));
  }
  return dec;
}

TensorRankDecomposition random_tensor_rank_decomposition(
    Rng& rng, const FieldSpec& field, std::vector<int> dims, int k) {
  TensorRankDecomposition dec(field, std::move(dims));
  for (int t = 0; t < k; ++t) {
    std::vector<Vec> factors;
    for (int j = 0; j < dec.order(); ++j)
      factors.push_back(rng.nonzero_vec(field, dec.dims[size_t(j)]));
    dec.terms.push_back(std::move(factors));
  }
  return dec;
}

SliceDecomposition random_shift_composition(Rng& rng,
                                            const SliceDecomposition& dec,
                                            int steps) {
  SliceDecomposition out = dec;
  int d = out.order();
  std::vector<int> shape = out.shape();
  std::vector<int> active;
  for (int j = 0; j < d; ++j)
    if (shape[size_t(j)] > 0) active.push_back(j);
  if (int(active.size()) < 2) return out;

  for (int step = 0; step < steps; ++step) {
    int span = 2 + (int(active.size()) > 2 ? rng.below(int(active.size()) - 1)
                                           : 0);
    std::vector<int> axes = active;
    for (int t = 0; t < span; ++t)
      std::swap(axes[size_t(t)], axes[size_t(t + rng.below(int(axes.size()) - t))]);
    axes.resize(size_t(span));
    std::sort(axes.begin(), axes.end());

    std::vector<std::pair<int, int>> picks;
    std::vector<int> outside_dims;
    {
      std::vector<int> inside(axes.begin(), axes.end());
      std::vector<int> rest = complement_axes(d, inside);
      outside_dims = dims_at(out.dims, rest);
    }
    for (int axis : axes) picks.emplace_back(axis, rng.below(shape[size_t(axis)]));

    if (span == 2) {
      out = pair_shift(out, picks[0], picks[1],
                       rng.tensor(out.field, outside_dims));
      continue;
    }
    std::vector<Tensor> shifts;
    Tensor balance(out.field, outside_dims);
    for (int t = 0; t + 1 < span; ++t) {
      Tensor s = rng.tensor(out.field, outside_dims);
      balance = sub(balance, s);
      shifts.push_back(std::move(s));
    }
    shifts.push_back(std::move(balance));
    out = star_shift(out, picks, shifts);
  }
  return out;
}

}  // namespace slicelab
