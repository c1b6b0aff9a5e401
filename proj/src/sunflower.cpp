#include "slicelab/sunflower.hpp"

#include <string>
#include <utility>

#include "slicelab/errors.hpp"
#include "slicelab/rank.hpp"

namespace slicelab {

std::vector<int> SunflowerFamily::center_shape() const {
  std::vector<int> shape;
  for (const auto& family : center)
    shape.push_back(static_cast<int>(family.size()));
  return shape;
}

ValidationReport check_hypotheses(const SunflowerFamily& family) {
  ValidationReport report;
  int d = family.order();
  int h = static_cast<int>(family.petals.size());
  if (h <= d)
    report.violations.push_back("need more petals than axes, have " +
                                std::to_string(h) + " petals on " +
                                std::to_string(d) + " axes");

  std::vector<int> center_shape = family.center_shape();
  for (size_t alpha = 0; alpha < family.petals.size(); ++alpha) {
    const SliceDecomposition& petal = family.petals[alpha];
    std::string name = "petal " + std::to_string(alpha + 1);
    if (!(petal.field == family.field) || petal.dims != family.dims) {
      report.violations.push_back(name + " lives on a different space");
      continue;
    }
    std::vector<int> shape = petal.shape();
    for (int j = 0; j < d; ++j) {
      if (shape[size_t(j)] < center_shape[size_t(j)]) {
        report.violations.push_back(name + " misses center terms on axis " +
                                    std::to_string(j + 1));
        continue;
      }
      for (int i = 0; i < center_shape[size_t(j)]; ++i)
        if (!(petal.a(j, i) == family.center[size_t(j)][size_t(i)]))
          report.violations.push_back(
              name + " does not start with the center on axis " +
              std::to_string(j + 1));
    }
  }
  if (!report.ok()) return report;

  if (!family.petals.empty()) {
    Tensor common = assemble(family.petals[0]);
    for (size_t alpha = 1; alpha < family.petals.size(); ++alpha)
      if (!(assemble(family.petals[alpha]) == common))
        report.violations.push_back("petal " + std::to_string(alpha + 1) +
                                    " assembles to a different tensor");
  }

  for (int j = 0; j < d; ++j) {
    std::vector<Vec> joint = family.center[size_t(j)];
    for (const SliceDecomposition& petal : family.petals) {
      std::vector<int> shape = petal.shape();
      for (int i = center_shape[size_t(j)]; i < shape[size_t(j)]; ++i)
        joint.push_back(petal.a(j, i));
    }
    if (joint.empty()) continue;
    Mat m = mat_from_rows(joint, family.field, family.dims[size_t(j)]);
    if (matrix_rank(m) < static_cast<int>(joint.size()))
      report.violations.push_back(
          "axis " + std::to_string(j + 1) +
          ": center and private vectors are jointly dependent");
  }
  return report;
}

SliceDecomposition merge_to_center(const SunflowerFamily& family) {
  ValidationReport report = check_hypotheses(family);
  if (!report.ok()) throw HypothesesViolated(report.violations.front());
  if (family.petals.empty()) throw HypothesesViolated("no petals");

  Tensor common = assemble(family.petals[0]);
  std::optional<MembershipWitness> witness =
      solve_complementary_functions(common, family.center);
  if (!witness)
    throw InternalContradiction(
        "hypotheses hold but the common tensor escapes the center target");

  SliceDecomposition merged(family.field, family.dims);
  for (int j = 0; j < family.order(); ++j)
    for (size_t i = 0; i < family.center[size_t(j)].size(); ++i)
      merged.add_term(j, family.center[size_t(j)][i],
                      witness->b[size_t(j)][i]);
  return merged;
}

SunflowerFamily generate_sunflower_fixture(
    Rng& rng, const FieldSpec& field, std::vector<int> dims, int petals,
    const std::vector<int>& center_shape, const std::vector<int>& extra_shape) {
  int d = static_cast<int>(dims.size());
  if (center_shape.size() != dims.size() || extra_shape.size() != dims.size())
    throw Error("one center and one private count per axis");
  for (int j = 0; j < d; ++j) {
    int needed = center_shape[size_t(j)] + petals * extra_shape[size_t(j)];
    if (needed > dims[size_t(j)])
      throw DimsTooSmall("axis " + std::to_string(j + 1) + " needs dimension " +
                         std::to_string(needed) + ", has " +
                         std::to_string(dims[size_t(j)]));
  }

  SunflowerFamily family(field, dims);
  std::vector<std::vector<Vec>> joint(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    int total = center_shape[size_t(j)] + petals * extra_shape[size_t(j)];
    joint[size_t(j)] = rng.independent_family(field, dims[size_t(j)], total);
    family.center[size_t(j)] =
        std::vector<Vec>(joint[size_t(j)].begin(),
                         joint[size_t(j)].begin() + center_shape[size_t(j)]);
  }

  SliceDecomposition seed(field, dims);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < center_shape[size_t(j)]; ++i)
      seed.add_term(j, family.center[size_t(j)][size_t(i)],
                    rng.tensor(field, seed.complement_dims(j)));

  for (int alpha = 0; alpha < petals; ++alpha) {
    SliceDecomposition petal = seed;
    for (int j = 0; j < d; ++j) {
      int base = center_shape[size_t(j)] + alpha * extra_shape[size_t(j)];
      for (int i = 0; i < extra_shape[size_t(j)]; ++i)
        petal.add_term(j, joint[size_t(j)][size_t(base + i)],
                       Tensor(field, petal.complement_dims(j)));
    }
    family.petals.push_back(random_shift_composition(rng, petal, 3));
  }
  return family;
}

}  // namespace slicelab
