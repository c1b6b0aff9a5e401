#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slicelab/field.hpp"

namespace slicelab {

struct Vec {
  FieldSpec field;
  std::vector<int> entries;

  int size() const { return static_cast<int>(entries.size()); }
  int operator[](int i) const { return entries[static_cast<size_t>(i)]; }
  int& operator[](int i) { return entries[static_cast<size_t>(i)]; }
  bool is_zero() const;
  bool operator==(const Vec&) const = default;
};

Vec zero_vec(const FieldSpec& field, int n);
Vec unit_vec(const FieldSpec& field, int n, int coord);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(int c, const Vec& a);
int dot(const Vec& a, const Vec& b);

/* Dense row-major matrix over one field. */
struct Mat {
  FieldSpec field;
  int rows = 0;
  int cols = 0;
  std::vector<int> entries;

  int at(int r, int c) const { return entries[size_t(r) * cols + c]; }
  int& at(int r, int c) { return entries[size_t(r) * cols + c]; }
  Vec row(int r) const;
  bool operator==(const Mat&) const = default;
};

Mat zero_mat(const FieldSpec& field, int rows, int cols);
Mat identity_mat(const FieldSpec& field, int n);
Mat mat_from_rows(std::span<const Vec> rows_in, const FieldSpec& field,
                  int cols);
Mat mul(const Mat& a, const Mat& b);

struct RrefResult {
  Mat matrix;
  int rank = 0;
  std::vector<int> pivot_columns;
};

/* Reduced row echelon form: leading entries 1, pivot columns cleared,
   zero rows pushed to the bottom.  Fully deterministic. */
RrefResult rref(const Mat& m);

int matrix_rank(const Mat& m);

/* One solution of a.x = rhs with every free variable set to zero, or
   nullopt when the system is inconsistent. */
std::optional<Vec> solve_linear(const Mat& a, const Vec& rhs);

/* Basis of {x : a.x = 0}, one vector per free column, in column order. */
std::vector<Vec> kernel_basis(const Mat& a);

/* Inverse of a square matrix; throws SingularChange when singular. */
Mat inverse(const Mat& m);

struct DualFamily {
  std::vector<Vec> originals;
  std::vector<Vec> duals;  // duals[i].originals[j] == (i == j)
};

/* Biorthogonal duals for a linearly independent family.  The canonical
   choice: each dual is supported on the family's pivot columns only.
   Throws LinearlyDependentInput on a dependent family. */
DualFamily dual_family(std::span<const Vec> vectors);

/* A subspace of F_p^n held as its canonical basis: the RREF matrix of
   any spanning set with zero rows dropped.  Two subspaces are equal
   exactly when these basis matrices are identical. */
class Subspace {
 public:
  Subspace(const FieldSpec& field, int ambient_dim);  // zero subspace
  static Subspace from_vectors(std::span<const Vec> vectors,
                               const FieldSpec& field, int ambient_dim);

  int dim() const { return basis_.rows; }
  int ambient_dim() const { return basis_.cols; }
  const FieldSpec& field() const { return basis_.field; }
  const Mat& basis() const { return basis_; }
  std::vector<Vec> basis_rows() const;

  bool contains(const Vec& v) const;
  /* All p^dim elements, coefficient order; small subspaces only. */
  std::vector<Vec> elements() const;

  bool operator==(const Subspace&) const = default;
  bool operator<(const Subspace& other) const;

 private:
  Mat basis_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& outer, const Subspace& inner);
bool is_direct_sum(std::span<const Subspace> parts);

/* Number of r-dimensional subspaces of F_p^n. */
long long gaussian_binomial(int n, int r, int p);

inline constexpr long long kDefaultEnumerationBudget = 1 << 22;

/* Every r-dimensional subspace of F_p^n, sorted lexicographically by
   canonical basis matrix (row-major entry order).  Throws BudgetExceeded
   when the subspace count would pass the budget. */
std::vector<Subspace> enumerate_subspaces(
    int ambient_dim, int dim, const FieldSpec& field,
    long long budget = kDefaultEnumerationBudget);

}  // namespace slicelab
