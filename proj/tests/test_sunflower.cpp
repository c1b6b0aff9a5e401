#include "doctest.h"
#include "slicelab/errors.hpp"
#include "slicelab/rank.hpp"
#include "slicelab/sunflower.hpp"
#include "slicelab/transforms.hpp"
#include "test_support.hpp"

using namespace slicelab;

namespace {

SunflowerFamily small_family(unsigned long long seed, int p = 3) {
  Rng rng(seed);
  FieldSpec F(p);
  return generate_sunflower_fixture(rng, F, {5, 5, 5}, 4, {1, 1, 1},
                                    {1, 1, 1});
}

}  // namespace

TEST_CASE("generated fixtures satisfy the hypotheses deterministically") {
  SunflowerFamily one = small_family(42);
  SunflowerFamily two = small_family(42);
  CHECK(check_hypotheses(one).ok());
  CHECK(one.center == two.center);
  REQUIRE(one.petals.size() == two.petals.size());
  for (size_t i = 0; i < one.petals.size(); ++i)
    CHECK(one.petals[i].axes == two.petals[i].axes);
}

TEST_CASE("hypothesis checks name each failure") {
  SUBCASE("too few petals") {
    SunflowerFamily family = small_family(7);
    family.petals.pop_back();
    auto report = check_hypotheses(family);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].find("petals") != std::string::npos);
  }
  SUBCASE("center prefix broken") {
    SunflowerFamily family = small_family(8);
    family.petals[1].axes[0][0].first = family.petals[1].a(0, 1);
    auto report = check_hypotheses(family);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].find("center") != std::string::npos);
  }
  SUBCASE("one petal assembles differently") {
    SunflowerFamily family = small_family(9);
    Tensor& b = family.petals[2].b(0, 0);
    b = add(b, identity_tensor(2, 5, family.field));
    auto report = check_hypotheses(family);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].find("different tensor") != std::string::npos);
  }
  SUBCASE("private vectors collide across petals") {
    SunflowerFamily family = small_family(10);
    SliceDecomposition& petal = family.petals[1];
    petal.add_term(0, family.petals[0].a(0, 1),
                   Tensor(family.field, petal.complement_dims(0)));
    auto report = check_hypotheses(family);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].find("jointly dependent") != std::string::npos);
  }
  SUBCASE("petal on the wrong space") {
    SunflowerFamily family = small_family(11);
    family.petals[3] = SliceDecomposition(family.field, {2, 2, 2});
    auto report = check_hypotheses(family);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].find("different space") != std::string::npos);
  }
}

TEST_CASE("merging lands on the center with the common tensor") {
  for (unsigned long long seed : {1ULL, 2ULL, 3ULL}) {
    for (int p : {2, 5}) {
      SunflowerFamily family = small_family(seed, p);
      SliceDecomposition merged = merge_to_center(family);
      CHECK(merged.shape() == family.center_shape());
      CHECK(assemble(merged) == assemble(family.petals[0]));
      CHECK(validate(merged).ok());
      for (int j = 0; j < merged.order(); ++j)
        for (size_t i = 0; i < family.center[size_t(j)].size(); ++i)
          CHECK(merged.a(j, static_cast<int>(i)) ==
                family.center[size_t(j)][i]);
    }
  }
}

TEST_CASE("merging a two-axis family reduces to the matrix statement") {
  Rng rng(13);
  FieldSpec F(2);
  SunflowerFamily family =
      generate_sunflower_fixture(rng, F, {4, 4}, 3, {1, 1}, {1, 1});
  REQUIRE(check_hypotheses(family).ok());
  SliceDecomposition merged = merge_to_center(family);
  CHECK(merged.length() == 2);
  CHECK(assemble(merged) == assemble(family.petals[0]));
}

TEST_CASE("merge refuses families that fail a hypothesis") {
  SunflowerFamily family = small_family(21);
  family.petals.pop_back();
  CHECK_THROWS_AS(merge_to_center(family), HypothesesViolated);

  SunflowerFamily empty(FieldSpec(2), {2, 2, 2});
  CHECK_THROWS_AS(merge_to_center(empty), HypothesesViolated);
}

TEST_CASE("as many petals as axes is genuinely too few") {
  FieldSpec F(2);
  Tensor t = identity_tensor(3, 2, F);
  SunflowerFamily family(F, {2, 2, 2});
  for (int axis = 0; axis < 3; ++axis)
    family.petals.push_back(slice_by_axis(t, axis));

  for (const SliceDecomposition& petal : family.petals)
    REQUIRE(assemble(petal) == t);
  auto report = check_hypotheses(family);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].find("petals") != std::string::npos);

  /* an empty center cannot carry a nonzero tensor, so no merge exists */
  std::vector<std::vector<Vec>> no_center(3);
  CHECK_FALSE(solve_complementary_functions(t, no_center).has_value());

  /* reusing an axis for a fourth petal breaks joint independence instead */
  family.petals.push_back(slice_by_axis(t, 0));
  auto crowded = check_hypotheses(family);
  REQUIRE_FALSE(crowded.ok());
  CHECK(crowded.violations[0].find("jointly dependent") != std::string::npos);
}

TEST_CASE("fixture generation needs room for the private vectors") {
  Rng rng(30);
  FieldSpec F(3);
  CHECK_THROWS_AS(
      generate_sunflower_fixture(rng, F, {3, 3, 3}, 4, {1, 1, 1}, {1, 1, 1}),
      DimsTooSmall);
  CHECK_THROWS_AS(
      generate_sunflower_fixture(rng, F, {5, 5, 5}, 4, {1, 1}, {1, 1, 1}),
      Error);
}
