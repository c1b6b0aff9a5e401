#pragma once

#include <vector>

#include "slicelab/decomposition.hpp"

namespace test_support {

inline slicelab::Vec vec(const slicelab::FieldSpec& field,
                         std::vector<int> entries) {
  for (int& e : entries) e = field.reduce(e);
  return slicelab::Vec{field, std::move(entries)};
}

inline slicelab::Mat mat(const slicelab::FieldSpec& field,
                         std::vector<std::vector<int>> rows) {
  slicelab::Mat m = slicelab::zero_mat(
      field, static_cast<int>(rows.size()),
      rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      m.at(r, c) = field.reduce(rows[size_t(r)][size_t(c)]);
  return m;
}

/* Every tensor on `dims`, in flat-entry odometer order. */
inline std::vector<slicelab::Tensor> all_tensors(
    const slicelab::FieldSpec& field, const std::vector<int>& dims) {
  long long total = slicelab::count_entries(dims);
  std::vector<int> entries(static_cast<size_t>(total), 0);
  std::vector<slicelab::Tensor> out;
  while (true) {
    out.push_back(slicelab::Tensor::from_entries(field, dims, entries));
    size_t pos = entries.size();
    while (pos > 0) {
      --pos;
      if (++entries[pos] < field.modulus()) break;
      entries[pos] = 0;
      if (pos == 0) return out;
    }
    if (entries == std::vector<int>(entries.size(), 0)) return out;
  }
}

/* Membership oracle: flatten the target space sum_j V_j (x) (rest) into
   explicit spanning vectors and test t against their row space.  Stays
   clear of the witness solver on purpose. */
inline bool member_by_span(const slicelab::Tensor& t,
                           const std::vector<slicelab::Subspace>& tuple) {
  using namespace slicelab;
  const FieldSpec& F = t.field();
  int d = t.order();
  std::vector<Vec> spanning;
  for (int j = 0; j < d; ++j) {
    std::vector<int> rest_dims = t.dims();
    rest_dims.erase(rest_dims.begin() + j);
    for (const Vec& basis_vec : tuple[size_t(j)].basis_rows()) {
      std::vector<int> rest_idx(rest_dims.size(), 0);
      do {
        Tensor gen(F, t.dims());
        std::vector<int> idx(static_cast<size_t>(d));
        for (int x = 0; x < t.dims()[size_t(j)]; ++x) {
          for (int r = 0, w = 0; r < d; ++r)
            idx[size_t(r)] = (r == j) ? x : rest_idx[size_t(w++)];
          gen.at(idx) = basis_vec[x];
        }
        spanning.push_back(Vec{F, gen.entries()});
      } while (advance_index(rest_idx, rest_dims));
    }
  }
  Mat stacked = mat_from_rows(spanning, F, static_cast<int>(t.size()));
  int base_rank = matrix_rank(stacked);
  spanning.push_back(Vec{F, t.entries()});
  Mat extended = mat_from_rows(spanning, F, static_cast<int>(t.size()));
  return matrix_rank(extended) == base_rank;
}

/* Element-by-element assembly, kept free of the library's contraction
   and outer-product helpers so it can stand as an oracle. */
inline slicelab::Tensor naive_assemble(const slicelab::SliceDecomposition& dec) {
  slicelab::Tensor out(dec.field, dec.dims);
  int d = dec.order();
  for (const auto& term : dec.terms()) {
    std::vector<int> idx(static_cast<size_t>(d), 0);
    do {
      int value = term.a[idx[size_t(term.axis)]];
      std::vector<int> rest;
      for (int j = 0; j < d; ++j)
        if (j != term.axis) rest.push_back(idx[size_t(j)]);
      value = dec.field.mul(value, term.b.at(rest));
      out.at(idx) = dec.field.add(out.at(idx), value);
    } while (slicelab::advance_index(idx, dec.dims));
  }
  return out;
}

inline slicelab::Tensor naive_assemble(
    const slicelab::TensorRankDecomposition& dec) {
  slicelab::Tensor out(dec.field, dec.dims);
  int d = dec.order();
  for (const auto& factors : dec.terms) {
    std::vector<int> idx(static_cast<size_t>(d), 0);
    do {
      int value = 1;
      for (int j = 0; j < d; ++j)
        value = dec.field.mul(value, factors[size_t(j)][idx[size_t(j)]]);
      out.at(idx) = dec.field.add(out.at(idx), value);
    } while (slicelab::advance_index(idx, dec.dims));
  }
  return out;
}

}  // namespace test_support
