#include "slicelab/field.hpp"

namespace slicelab {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

}  // namespace

FieldSpec::FieldSpec(int p) : p_(p) {
  if (p < 2 || p > 251 || !is_prime(p))
    throw Error("field modulus must be a prime in [2, 251], got " +
                std::to_string(p));
}

int FieldSpec::inv(int a) const {
  if (a == 0) throw Error("inverse of zero");
  /* Fermat: a^(p-2).  p <= 251 keeps every product below 2^16. */
  int result = 1, base = a, e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace slicelab
