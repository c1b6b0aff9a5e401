#include "slicelab/linalg.hpp"

#include <algorithm>

namespace slicelab {

namespace {

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) throw Error("mixed fields");
}

}  // namespace

bool Vec::is_zero() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](int e) { return e == 0; });
}

Vec zero_vec(const FieldSpec& field, int n) {
  return Vec{field, std::vector<int>(size_t(n), 0)};
}

Vec unit_vec(const FieldSpec& field, int n, int coord) {
  Vec v = zero_vec(field, n);
  v[coord] = 1;
  return v;
}

Vec add(const Vec& a, const Vec& b) {
  require_same_field(a.field, b.field);
  if (a.size() != b.size()) throw Error("vector size mismatch");
  Vec out = a;
  for (int i = 0; i < a.size(); ++i) out[i] = a.field.add(a[i], b[i]);
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  require_same_field(a.field, b.field);
  if (a.size() != b.size()) throw Error("vector size mismatch");
  Vec out = a;
  for (int i = 0; i < a.size(); ++i) out[i] = a.field.sub(a[i], b[i]);
  return out;
}

Vec scale(int c, const Vec& a) {
  Vec out = a;
  for (int i = 0; i < a.size(); ++i) out[i] = a.field.mul(c, a[i]);
  return out;
}

int dot(const Vec& a, const Vec& b) {
  require_same_field(a.field, b.field);
  if (a.size() != b.size()) throw Error("vector size mismatch");
  int s = 0;
  for (int i = 0; i < a.size(); ++i)
    s = a.field.add(s, a.field.mul(a[i], b[i]));
  return s;
}

Vec Mat::row(int r) const {
  Vec v = zero_vec(field, cols);
  for (int c = 0; c < cols; ++c) v[c] = at(r, c);
  return v;
}

Mat zero_mat(const FieldSpec& field, int rows, int cols) {
  return Mat{field, rows, cols, std::vector<int>(size_t(rows) * cols, 0)};
}

Mat identity_mat(const FieldSpec& field, int n) {
  Mat m = zero_mat(field, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_from_rows(std::span<const Vec> rows_in, const FieldSpec& field,
                  int cols) {
  Mat m = zero_mat(field, static_cast<int>(rows_in.size()), cols);
  for (int r = 0; r < m.rows; ++r) {
    require_same_field(rows_in[size_t(r)].field, field);
    if (rows_in[size_t(r)].size() != cols) throw Error("row length mismatch");
    for (int c = 0; c < cols; ++c) m.at(r, c) = rows_in[size_t(r)][c];
  }
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  require_same_field(a.field, b.field);
  if (a.cols != b.rows) throw Error("matrix shape mismatch");
  Mat out = zero_mat(a.field, a.rows, b.cols);
  for (int r = 0; r < a.rows; ++r)
    for (int k = 0; k < a.cols; ++k) {
      int v = a.at(r, k);
      if (v == 0) continue;
      for (int c = 0; c < b.cols; ++c)
        out.at(r, c) = a.field.add(out.at(r, c), a.field.mul(v, b.at(k, c)));
    }
  return out;
}

RrefResult rref(const Mat& m) {
  RrefResult res{m, 0, {}};
  Mat& a = res.matrix;
  int pivot_row = 0;
  for (int col = 0; col < a.cols && pivot_row < a.rows; ++col) {
    int sel = -1;
    for (int r = pivot_row; r < a.rows; ++r)
      if (a.at(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    for (int c = 0; c < a.cols; ++c)
      std::swap(a.at(sel, c), a.at(pivot_row, c));
    int scale_by = a.field.inv(a.at(pivot_row, col));
    for (int c = 0; c < a.cols; ++c)
      a.at(pivot_row, c) = a.field.mul(scale_by, a.at(pivot_row, c));
    for (int r = 0; r < a.rows; ++r) {
      if (r == pivot_row) continue;
      int f = a.at(r, col);
      if (f == 0) continue;
      for (int c = 0; c < a.cols; ++c)
        a.at(r, c) = a.field.sub(a.at(r, c), a.field.mul(f, a.at(pivot_row, c)));
    }
    res.pivot_columns.push_back(col);
    ++pivot_row;
  }
  res.rank = pivot_row;
  return res;
}

int matrix_rank(const Mat& m) { return rref(m).rank; }

std::optional<Vec> solve_linear(const Mat& a, const Vec& rhs) {
  require_same_field(a.field, rhs.field);
  if (rhs.size() != a.rows) throw Error("rhs length mismatch");
  Mat aug = zero_mat(a.field, a.rows, a.cols + 1);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols) = rhs[r];
  }
  RrefResult red = rref(aug);
  Vec x = zero_vec(a.field, a.cols);
  for (size_t i = 0; i < red.pivot_columns.size(); ++i) {
    int col = red.pivot_columns[i];
    if (col == a.cols) return std::nullopt;  // pivot in the rhs column
    x[col] = red.matrix.at(static_cast<int>(i), a.cols);
  }
  return x;
}

std::vector<Vec> kernel_basis(const Mat& a) {
  RrefResult red = rref(a);
  std::vector<bool> is_pivot(size_t(a.cols), false);
  for (int c : red.pivot_columns) is_pivot[size_t(c)] = true;
  std::vector<Vec> basis;
  for (int free_col = 0; free_col < a.cols; ++free_col) {
    if (is_pivot[size_t(free_col)]) continue;
    Vec v = zero_vec(a.field, a.cols);
    v[free_col] = 1;
    for (size_t i = 0; i < red.pivot_columns.size(); ++i)
      v[red.pivot_columns[i]] =
          a.field.neg(red.matrix.at(static_cast<int>(i), free_col));
    basis.push_back(std::move(v));
  }
  return basis;
}

Mat inverse(const Mat& m) {
  if (m.rows != m.cols) throw SingularChange("inverse of non-square matrix");
  int n = m.rows;
  Mat aug = zero_mat(m.field, n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  RrefResult red = rref(aug);
  for (int i = 0; i < n; ++i)
    if (i >= red.rank || red.pivot_columns[size_t(i)] != i)
      throw SingularChange("singular matrix");
  Mat out = zero_mat(m.field, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.at(r, c) = red.matrix.at(r, n + c);
  return out;
}

DualFamily dual_family(std::span<const Vec> vectors) {
  DualFamily fam;
  fam.originals.assign(vectors.begin(), vectors.end());
  if (vectors.empty()) return fam;
  const FieldSpec field = vectors[0].field;
  int n = vectors[0].size();
  int r = static_cast<int>(vectors.size());
  Mat stacked = mat_from_rows(vectors, field, n);
  RrefResult red = rref(stacked);
  if (red.rank < r) throw LinearlyDependentInput("family is dependent");

  /* Duals live on the pivot columns: with P the pivot submatrix of the
     stacked family, the coefficient matrix is inverse(P^T). */
  Mat pivot_t = zero_mat(field, r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      pivot_t.at(i, j) = stacked.at(j, red.pivot_columns[size_t(i)]);
  Mat coeff = inverse(pivot_t);
  for (int i = 0; i < r; ++i) {
    Vec d = zero_vec(field, n);
    for (int l = 0; l < r; ++l)
      d[red.pivot_columns[size_t(l)]] = coeff.at(i, l);
    fam.duals.push_back(std::move(d));
  }
  return fam;
}

Subspace::Subspace(const FieldSpec& field, int ambient_dim)
    : basis_(zero_mat(field, 0, ambient_dim)) {}

Subspace Subspace::from_vectors(std::span<const Vec> vectors,
                                const FieldSpec& field, int ambient_dim) {
  Mat stacked = mat_from_rows(vectors, field, ambient_dim);
  RrefResult red = rref(stacked);
  Subspace s(field, ambient_dim);
  s.basis_ = zero_mat(field, red.rank, ambient_dim);
  for (int r = 0; r < red.rank; ++r)
    for (int c = 0; c < ambient_dim; ++c)
      s.basis_.at(r, c) = red.matrix.at(r, c);
  return s;
}

std::vector<Vec> Subspace::basis_rows() const {
  std::vector<Vec> rows;
  for (int r = 0; r < basis_.rows; ++r) rows.push_back(basis_.row(r));
  return rows;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_dim()) throw Error("ambient dimension mismatch");
  /* Reduce against the RREF basis; the residue is zero iff v is inside.
     Each row's pivot is its first nonzero entry. */
  Vec residue = v;
  for (int r = 0; r < basis_.rows; ++r) {
    int piv = 0;
    while (piv < ambient_dim() && basis_.at(r, piv) == 0) ++piv;
    int f = residue[piv];
    if (f == 0) continue;
    for (int c = 0; c < ambient_dim(); ++c)
      residue[c] = field().sub(residue[c], field().mul(f, basis_.at(r, c)));
  }
  return residue.is_zero();
}

std::vector<Vec> Subspace::elements() const {
  std::vector<Vec> out;
  int p = field().modulus();
  long long total = 1;
  for (int i = 0; i < dim(); ++i) total *= p;
  std::vector<int> coeff(size_t(dim()), 0);
  for (long long it = 0; it < total; ++it) {
    Vec v = zero_vec(field(), ambient_dim());
    for (int i = 0; i < dim(); ++i) {
      if (coeff[size_t(i)] == 0) continue;
      for (int c = 0; c < ambient_dim(); ++c)
        v[c] = field().add(v[c], field().mul(coeff[size_t(i)], basis_.at(i, c)));
    }
    out.push_back(std::move(v));
    for (int i = dim() - 1; i >= 0; --i) {
      if (++coeff[size_t(i)] < p) break;
      coeff[size_t(i)] = 0;
    }
  }
  return out;
}

bool Subspace::operator<(const Subspace& other) const {
  if (dim() != other.dim()) return dim() < other.dim();
  return basis_.entries < other.basis_.entries;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw Error("subspace ambient mismatch");
  std::vector<Vec> all = a.basis_rows();
  for (Vec& v : b.basis_rows()) all.push_back(std::move(v));
  return Subspace::from_vectors(all, a.field(), a.ambient_dim());
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw Error("subspace ambient mismatch");
  /* Kernel of (alpha, beta) -> alpha.A + beta.B gives the intersection
     as {alpha.A}. */
  int u = a.dim(), v = b.dim(), n = a.ambient_dim();
  Mat system = zero_mat(a.field(), n, u + v);
  for (int c = 0; c < u; ++c)
    for (int x = 0; x < n; ++x) system.at(x, c) = a.basis().at(c, x);
  for (int c = 0; c < v; ++c)
    for (int x = 0; x < n; ++x)
      system.at(x, u + c) = a.field().neg(b.basis().at(c, x));
  std::vector<Vec> gens;
  for (const Vec& k : kernel_basis(system)) {
    Vec w = zero_vec(a.field(), n);
    for (int c = 0; c < u; ++c) {
      if (k[c] == 0) continue;
      for (int x = 0; x < n; ++x)
        w[x] = a.field().add(w[x], a.field().mul(k[c], a.basis().at(c, x)));
    }
    gens.push_back(std::move(w));
  }
  return Subspace::from_vectors(gens, a.field(), n);
}

bool subspace_contains(const Subspace& outer, const Subspace& inner) {
  for (const Vec& v : inner.basis_rows())
    if (!outer.contains(v)) return false;
  return true;
}

bool is_direct_sum(std::span<const Subspace> parts) {
  if (parts.empty()) return true;
  Subspace total(parts[0].field(), parts[0].ambient_dim());
  int dim_sum = 0;
  for (const Subspace& s : parts) {
    total = subspace_sum(total, s);
    dim_sum += s.dim();
  }
  return total.dim() == dim_sum;
}

long long gaussian_binomial(int n, int r, int p) {
  if (r < 0 || r > n) return 0;
  /* Gaussian Pascal recurrence; avoids any division. */
  std::vector<std::vector<long long>> table(
      size_t(n) + 1, std::vector<long long>(size_t(r) + 1, 0));
  for (int i = 0; i <= n; ++i) table[size_t(i)][0] = 1;
  for (int i = 1; i <= n; ++i) {
    long long pk = 1;
    for (int j = 1; j <= r && j <= i; ++j) {
      pk *= p;  // p^j
      table[size_t(i)][size_t(j)] = table[size_t(i) - 1][size_t(j) - 1] +
                                    table[size_t(i) - 1][size_t(j)] * pk;
    }
  }
  return table[size_t(n)][size_t(r)];
}

std::vector<Subspace> enumerate_subspaces(int ambient_dim, int dim,
                                          const FieldSpec& field,
                                          long long budget) {
  if (dim < 0 || dim > ambient_dim)
    return {};
  long long count = gaussian_binomial(ambient_dim, dim, field.modulus());
  if (count > budget)
    throw BudgetExceeded("subspace enumeration over budget: " +
                         std::to_string(count) + " > " +
                         std::to_string(budget));
  int p = field.modulus();
  std::vector<Subspace> out;
  out.reserve(size_t(count));

  /* One RREF shape per pivot-column set; free cells sit to the right of
     their row's pivot, outside the pivot columns. */
  std::vector<int> pivots(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) pivots[size_t(i)] = i;
  bool more_combinations = dim <= ambient_dim;
  if (dim == 0) {
    out.emplace_back(field, ambient_dim);
    return out;
  }
  while (more_combinations) {
    std::vector<bool> is_pivot(size_t(ambient_dim), false);
    for (int c : pivots) is_pivot[size_t(c)] = true;
    std::vector<std::pair<int, int>> free_cells;
    for (int r = 0; r < dim; ++r)
      for (int c = pivots[size_t(r)] + 1; c < ambient_dim; ++c)
        if (!is_pivot[size_t(c)]) free_cells.emplace_back(r, c);

    Mat base = zero_mat(field, dim, ambient_dim);
    for (int r = 0; r < dim; ++r) base.at(r, pivots[size_t(r)]) = 1;
    std::vector<int> values(free_cells.size(), 0);
    while (true) {
      Mat m = base;
      for (size_t i = 0; i < free_cells.size(); ++i)
        m.at(free_cells[i].first, free_cells[i].second) = values[i];
      std::vector<Vec> rows;
      for (int r = 0; r < dim; ++r) rows.push_back(m.row(r));
      out.push_back(Subspace::from_vectors(rows, field, ambient_dim));

      int pos = static_cast<int>(values.size()) - 1;
      while (pos >= 0 && values[size_t(pos)] == p - 1) {
        values[size_t(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++values[size_t(pos)];
    }

    /* next pivot combination, lexicographic */
    int i = dim - 1;
    while (i >= 0 && pivots[size_t(i)] == ambient_dim - dim + i) --i;
    if (i < 0) {
      more_combinations = false;
    } else {
      ++pivots[size_t(i)];
      for (int j = i + 1; j < dim; ++j)
        pivots[size_t(j)] = pivots[size_t(j) - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Subspace& a, const Subspace& b) {
              return a.basis().entries < b.basis().entries;
            });
  return out;
}

}  // namespace slicelab
