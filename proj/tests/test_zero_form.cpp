#include "doctest.h"
#include "slicelab/errors.hpp"
#include "slicelab/random.hpp"
#include "slicelab/zero_form.hpp"
#include "test_support.hpp"

using namespace slicelab;
using test_support::vec;

namespace {

/* Cancelling pair: a(x1) c(x2) w(x3) minus the same tensor grouped on
   the second axis. */
SliceDecomposition cancelling_pair(const FieldSpec& F) {
  Vec a = vec(F, {1, 0});
  Vec c = vec(F, {F.reduce(2), 1});
  Tensor w = Tensor::from_entries(F, {2}, {1, F.reduce(2)});
  SliceDecomposition dec(F, {2, 2, 2});
  dec.add_term(0, a, outer(vec_to_tensor(c), w));
  dec.add_term(1, c, negate(outer(vec_to_tensor(a), w)));
  return dec;
}

SliceDecomposition shifted_difference(Rng& rng, const FieldSpec& F,
                                      std::vector<int> dims,
                                      const std::vector<int>& shape,
                                      int steps) {
  SliceDecomposition dec =
      random_slice_decomposition(rng, F, std::move(dims), shape);
  SliceDecomposition moved = random_shift_composition(rng, dec, steps);
  SliceDecomposition diff = dec;
  for (int j = 0; j < diff.order(); ++j)
    for (size_t i = 0; i < diff.axes[size_t(j)].size(); ++i)
      diff.b(j, static_cast<int>(i)) =
          sub(moved.b(j, static_cast<int>(i)), dec.b(j, static_cast<int>(i)));
  return diff;
}

}  // namespace

TEST_CASE("hand certificate for the cancelling pair verifies") {
  FieldSpec F(3);
  SliceDecomposition dec = cancelling_pair(F);
  REQUIRE(assemble(dec).is_zero());
  Tensor w = Tensor::from_entries(F, {2}, {1, 2});
  ZeroFormCertificate cert(F, dec.dims, dec.shape());
  cert.entries.emplace(ZeroFormKey{{0, 1}, {0, 0}, 0}, w);
  cert.entries.emplace(ZeroFormKey{{0, 1}, {0, 0}, 1}, negate(w));
  CHECK(verify_zero_form(dec, cert).ok());
}

TEST_CASE("verification rejects a corrupted certificate") {
  FieldSpec F(3);
  SliceDecomposition dec = cancelling_pair(F);
  Tensor w = Tensor::from_entries(F, {2}, {1, 2});

  SUBCASE("missing entry breaks the slot sum") {
    ZeroFormCertificate cert(F, dec.dims, dec.shape());
    cert.entries.emplace(ZeroFormKey{{0, 1}, {0, 0}, 0}, w);
    auto report = verify_zero_form(dec, cert);
    CHECK_FALSE(report.ok());
  }
  SUBCASE("tampered value breaks the reassembly") {
    ZeroFormCertificate cert(F, dec.dims, dec.shape());
    cert.entries.emplace(ZeroFormKey{{0, 1}, {0, 0}, 0}, w);
    cert.entries.emplace(ZeroFormKey{{0, 1}, {0, 0}, 1}, w);
    auto report = verify_zero_form(dec, cert);
    CHECK_FALSE(report.ok());
  }
  SUBCASE("slot outside the axis set is flagged") {
    ZeroFormCertificate cert(F, dec.dims, dec.shape());
    cert.entries.emplace(ZeroFormKey{{0, 1}, {0, 0}, 2}, w);
    auto report = verify_zero_form(dec, cert);
    CHECK_FALSE(report.ok());
  }
  SUBCASE("term index out of range is flagged") {
    ZeroFormCertificate cert(F, dec.dims, dec.shape());
    cert.entries.emplace(ZeroFormKey{{0, 1}, {0, 5}, 0}, w);
    CHECK_FALSE(verify_zero_form(dec, cert).ok());
  }
  SUBCASE("shape mismatch is flagged before anything else") {
    ZeroFormCertificate cert(F, dec.dims, {1, 1, 1});
    CHECK_FALSE(verify_zero_form(dec, cert).ok());
  }
}

TEST_CASE("extraction matches the hand derivation on the cancelling pair") {
  FieldSpec F(3);
  SliceDecomposition dec = cancelling_pair(F);
  ZeroFormCertificate cert = extract_zero_form(dec);
  CHECK(verify_zero_form(dec, cert).ok());
  REQUIRE(cert.entries.size() == 2);
  Tensor w = Tensor::from_entries(F, {2}, {1, 2});
  auto first = cert.entries.find(ZeroFormKey{{0, 1}, {0, 0}, 0});
  auto second = cert.entries.find(ZeroFormKey{{0, 1}, {0, 0}, 1});
  REQUIRE(first != cert.entries.end());
  REQUIRE(second != cert.entries.end());
  CHECK(first->second == w);
  CHECK(second->second == negate(w));
}

TEST_CASE("extraction needs a zero tensor and independent families") {
  FieldSpec F(2);
  SliceDecomposition nonzero(F, {2, 2, 2});
  nonzero.add_term(0, vec(F, {1, 0}), identity_tensor(2, 2, F));
  CHECK_THROWS_AS(extract_zero_form(nonzero), NotZero);
  CHECK_THROWS_AS(extract_zero_form_order3(nonzero), NotZero);

  SliceDecomposition dependent(F, {2, 2, 2});
  Tensor b = identity_tensor(2, 2, F);
  dependent.add_term(0, vec(F, {1, 0}), b);
  dependent.add_term(0, vec(F, {1, 0}), negate(b));
  REQUIRE(assemble(dependent).is_zero());
  CHECK_THROWS_AS(extract_zero_form(dependent), DependentFamilies);

  SliceDecomposition matrix(F, {2, 2});
  CHECK_THROWS_AS(extract_zero_form(matrix), Error);
}

TEST_CASE("empty and all-zero decompositions yield empty certificates") {
  FieldSpec F(2);
  SliceDecomposition empty(F, {2, 2, 2});
  ZeroFormCertificate cert = extract_zero_form(empty);
  CHECK(cert.entries.empty());
  CHECK(verify_zero_form(empty, cert).ok());

  SliceDecomposition zeroed(F, {2, 2, 2});
  zeroed.add_term(0, vec(F, {1, 1}), Tensor(F, {2, 2}));
  ZeroFormCertificate cert2 = extract_zero_form(zeroed);
  CHECK(cert2.entries.empty());
  CHECK(verify_zero_form(zeroed, cert2).ok());
}

TEST_CASE("certificates omit zero entries") {
  Rng rng(71);
  FieldSpec F(3);
  SliceDecomposition diff = shifted_difference(rng, F, {2, 2, 2}, {1, 1, 1}, 3);
  REQUIRE(assemble(diff).is_zero());
  for (const auto& [key, value] : extract_zero_form(diff).entries)
    CHECK_FALSE(value.is_zero());
}

TEST_CASE("seeded shifted differences round trip through extraction") {
  Rng rng(101);
  for (int p : {2, 3, 5}) {
    FieldSpec F(p);
    for (int trial = 0; trial < 12; ++trial) {
      SliceDecomposition diff =
          shifted_difference(rng, F, {2, 2, 2}, {1, 2, 1}, 3);
      REQUIRE(assemble(diff).is_zero());
      ZeroFormCertificate cert = extract_zero_form(diff);
      CHECK(verify_zero_form(diff, cert).ok());
    }
    for (int trial = 0; trial < 8; ++trial) {
      SliceDecomposition diff =
          shifted_difference(rng, F, {2, 2, 2, 2}, {1, 1, 1, 1}, 4);
      REQUIRE(assemble(diff).is_zero());
      ZeroFormCertificate cert = extract_zero_form(diff);
      CHECK(verify_zero_form(diff, cert).ok());
    }
  }
}

TEST_CASE("order-3 path produces its own verifying certificate") {
  Rng rng(103);
  for (int p : {2, 5}) {
    FieldSpec F(p);
    for (int trial = 0; trial < 10; ++trial) {
      SliceDecomposition diff =
          shifted_difference(rng, F, {2, 3, 2}, {1, 2, 1}, 3);
      ZeroFormCertificate cert = extract_zero_form_order3(diff);
      CHECK(verify_zero_form(diff, cert).ok());
      /* the full-axis layer carries scalars cancelling per index triple */
      std::vector<int> shape = diff.shape();
      for (int i = 0; i < shape[0]; ++i)
        for (int t = 0; t < shape[1]; ++t)
          for (int s = 0; s < shape[2]; ++s) {
            int total = 0;
            for (int slot : {0, 1, 2}) {
              auto it =
                  cert.entries.find(ZeroFormKey{{0, 1, 2}, {i, t, s}, slot});
              if (it != cert.entries.end())
                total = F.add(total, it->second.as_scalar());
            }
            CHECK(total == 0);
          }
    }
  }
  FieldSpec F(2);
  SliceDecomposition matrix(F, {2, 2});
  CHECK_THROWS_AS(extract_zero_form_order3(matrix), Error);
  SliceDecomposition four(F, {2, 2, 2, 2});
  CHECK_THROWS_AS(extract_zero_form_order3(four), Error);
}

TEST_CASE("general and order-3 extractions agree up to verification") {
  Rng rng(107);
  FieldSpec F(3);
  for (int trial = 0; trial < 6; ++trial) {
    SliceDecomposition diff =
        shifted_difference(rng, F, {2, 2, 2}, {2, 1, 1}, 3);
    ZeroFormCertificate general = extract_zero_form(diff);
    ZeroFormCertificate special = extract_zero_form_order3(diff);
    CHECK(verify_zero_form(diff, general).ok());
    CHECK(verify_zero_form(diff, special).ok());
  }
}

TEST_CASE("difference certificate checks its inputs") {
  Rng rng(109);
  FieldSpec F(3);
  SliceDecomposition dec =
      random_slice_decomposition(rng, F, {2, 2, 2}, {1, 1, 1});
  SliceDecomposition moved = random_shift_composition(rng, dec, 3);
  ZeroFormCertificate cert = difference_certificate(dec, moved);
  SliceDecomposition diff = dec;
  for (int j = 0; j < 3; ++j)
    for (size_t i = 0; i < diff.axes[size_t(j)].size(); ++i)
      diff.b(j, static_cast<int>(i)) =
          sub(moved.b(j, static_cast<int>(i)), dec.b(j, static_cast<int>(i)));
  CHECK(verify_zero_form(diff, cert).ok());

  SliceDecomposition other_a = dec;
  other_a.axes[0][0].first = vec(F, {1, 2});
  CHECK_THROWS_AS(difference_certificate(dec, other_a),
                  MismatchedOneVariableFunctions);

  SliceDecomposition other_t = dec;
  other_t.b(0, 0) = add(other_t.b(0, 0), identity_tensor(2, 2, F));
  CHECK_THROWS_AS(difference_certificate(dec, other_t), DifferentTensors);

  SliceDecomposition fewer(F, {2, 2, 2});
  CHECK_THROWS_AS(difference_certificate(dec, fewer),
                  MismatchedOneVariableFunctions);
}
