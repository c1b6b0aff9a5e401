#pragma once

#include "slicelab/errors.hpp"

namespace slicelab {

/* Prime field F_p with 2 <= p <= 251.  Scalars are plain ints kept in
   [0, p); every container carries one FieldSpec and all mutation goes
   through these operations, so entries stay reduced by construction. */
class FieldSpec {
 public:
  explicit FieldSpec(int p);

  int modulus() const { return p_; }

  int add(int a, int b) const {
    int s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  int sub(int a, int b) const {
    int s = a - b;
    return s < 0 ? s + p_ : s;
  }
  int neg(int a) const { return a == 0 ? 0 : p_ - a; }
  int mul(int a, int b) const { return a * b % p_; }

  /* Multiplicative inverse; throws on 0. */
  int inv(int a) const;

  /* Reduce an arbitrary signed value into [0, p). */
  int reduce(long long v) const {
    long long r = v % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }

  bool operator==(const FieldSpec&) const = default;

 private:
  int p_;
};

}  // namespace slicelab
