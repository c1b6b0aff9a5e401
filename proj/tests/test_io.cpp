#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "slicelab/errors.hpp"
#include "slicelab/io.hpp"
#include "slicelab/random.hpp"
#include "slicelab/transforms.hpp"
#include "test_support.hpp"

using namespace slicelab;
using nlohmann::json;

namespace {

SliceDecomposition sample_slice(unsigned long long seed) {
  Rng rng(seed);
  FieldSpec F(5);
  return random_slice_decomposition(rng, F, {2, 3, 2}, {1, 2, 0});
}

}  // namespace

TEST_CASE("tensor json round trip") {
  Rng rng(201);
  FieldSpec F(5);
  Tensor t = rng.tensor(F, {2, 3, 2});
  json j = tensor_to_json(t);
  CHECK(tensor_from_json(j) == t);
  CHECK(tensor_to_json(tensor_from_json(j)).dump() == j.dump());
  CHECK(j.at("p") == 5);
}

TEST_CASE("decomposition json round trips keep every term") {
  SliceDecomposition dec = sample_slice(202);
  json j = decomposition_to_json(dec);
  CHECK(json_holds_slice_decomposition(j));
  SliceDecomposition back = slice_decomposition_from_json(j);
  CHECK(back.axes == dec.axes);
  CHECK(back.dims == dec.dims);

  Rng rng(203);
  FieldSpec F(3);
  TensorRankDecomposition rank_dec =
      random_tensor_rank_decomposition(rng, F, {2, 2, 3}, 2);
  json jr = decomposition_to_json(rank_dec);
  CHECK_FALSE(json_holds_slice_decomposition(jr));
  TensorRankDecomposition rank_back = tensor_rank_decomposition_from_json(jr);
  CHECK(rank_back.terms == rank_dec.terms);
  CHECK_THROWS_AS(slice_decomposition_from_json(jr), FormatError);
  CHECK_THROWS_AS(tensor_rank_decomposition_from_json(j), FormatError);
}

TEST_CASE("certificate json round trip preserves the entry map") {
  Rng rng(204);
  FieldSpec F(3);
  SliceDecomposition dec =
      random_slice_decomposition(rng, F, {2, 2, 2}, {1, 1, 1});
  SliceDecomposition moved = random_shift_composition(rng, dec, 3);
  ZeroFormCertificate cert = difference_certificate(dec, moved);
  json j = certificate_to_json(cert);
  ZeroFormCertificate back = certificate_from_json(j);
  CHECK(back.dims == cert.dims);
  CHECK(back.shape == cert.shape);
  CHECK(back.entries == cert.entries);
}

TEST_CASE("sunflower json round trip preserves center and petals") {
  Rng rng(205);
  FieldSpec F(2);
  SunflowerFamily family =
      generate_sunflower_fixture(rng, F, {4, 4, 4}, 4, {1, 0, 1}, {0, 1, 0});
  json j = sunflower_to_json(family);
  SunflowerFamily back = sunflower_from_json(j);
  CHECK(back.dims == family.dims);
  CHECK(back.center == family.center);
  REQUIRE(back.petals.size() == family.petals.size());
  for (size_t i = 0; i < back.petals.size(); ++i)
    CHECK(back.petals[i].axes == family.petals[i].axes);
}

TEST_CASE("census report json round trip") {
  FieldSpec F(2);
  CensusReport report = count_matrix_decompositions(identity_tensor(2, 2, F));
  report.notes.push_back("identity fixture");
  json j = census_report_to_json(report);
  CensusReport back = census_report_from_json(j);
  CHECK(back.counts == report.counts);
  CHECK(back.bounds == report.bounds);
  CHECK(back.pass == report.pass);
  CHECK(back.notes == report.notes);
}

TEST_CASE("malformed tensor files are rejected with reasons") {
  Rng rng(206);
  FieldSpec F(3);
  json good = tensor_to_json(rng.tensor(F, {2, 2}));

  json j = good;
  j.erase("format");
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);

  j = good;
  j["format"] = "decomposition";
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);

  j = good;
  j["version"] = 2;
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);

  j = good;
  j["p"] = 4;
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);
  j["p"] = 253;
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);
  j["p"] = "three";
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);

  j = good;
  j["dims"] = {2, -1};
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);

  j = good;
  j["entries"][0] = 3;
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);
  j["entries"][0] = -1;
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);

  j = good;
  j["entries"].push_back(0);
  CHECK_THROWS_AS(tensor_from_json(j), FormatError);
}

TEST_CASE("malformed decomposition files are rejected") {
  json good = decomposition_to_json(sample_slice(207));

  json j = good;
  j["kind"] = "banana";
  CHECK_THROWS_AS(slice_decomposition_from_json(j), FormatError);
  j["kind"] = 7;
  CHECK_THROWS_AS(slice_decomposition_from_json(j), FormatError);

  j = good;
  j["terms"][0]["axis"] = 9;
  CHECK_THROWS_AS(slice_decomposition_from_json(j), FormatError);
  j["terms"][0]["axis"] = 0;
  CHECK_THROWS_AS(slice_decomposition_from_json(j), FormatError);

  j = good;
  j["terms"][0]["a"].push_back(0);
  CHECK_THROWS_AS(slice_decomposition_from_json(j), FormatError);

  j = good;
  j["terms"][0]["b"]["dims"] = {2, 2};
  CHECK_THROWS_AS(slice_decomposition_from_json(j), FormatError);

  Rng rng(208);
  FieldSpec F(3);
  TensorRankDecomposition rank_dec =
      random_tensor_rank_decomposition(rng, F, {2, 2}, 1);
  json jr = decomposition_to_json(rank_dec);
  jr["terms"][0]["factors"].erase(1);
  CHECK_THROWS_AS(tensor_rank_decomposition_from_json(jr), FormatError);
}

TEST_CASE("malformed certificates are rejected") {
  Rng rng(209);
  FieldSpec F(3);
  SliceDecomposition dec =
      random_slice_decomposition(rng, F, {2, 2, 2}, {1, 1, 1});
  Tensor w = Tensor::from_entries(F, {2}, {1, 2});
  SliceDecomposition moved = pair_shift(dec, {0, 0}, {1, 0}, w);
  json good = certificate_to_json(difference_certificate(dec, moved));
  REQUIRE_FALSE(good.at("entries").empty());

  json j = good;
  j["entries"].push_back(j["entries"][0]);
  CHECK_THROWS_AS(certificate_from_json(j), FormatError);

  j = good;
  j["entries"][0]["axes"] = {0, 9};
  CHECK_THROWS_AS(certificate_from_json(j), FormatError);

  j = good;
  j["shape"] = {1, 1};
  CHECK_THROWS_AS(certificate_from_json(j), FormatError);
}

TEST_CASE("malformed census reports are rejected") {
  FieldSpec F(2);
  json good =
      census_report_to_json(count_matrix_decompositions(identity_tensor(2, 2, F)));

  json j = good;
  j["counts"]["rank"] = "two";
  CHECK_THROWS_AS(census_report_from_json(j), FormatError);

  j = good;
  j["pass"] = "yes";
  CHECK_THROWS_AS(census_report_from_json(j), FormatError);

  j = good;
  j["notes"] = 3;
  CHECK_THROWS_AS(census_report_from_json(j), FormatError);
}

TEST_CASE("sunflower files need one center family per axis") {
  Rng rng(210);
  FieldSpec F(2);
  SunflowerFamily family =
      generate_sunflower_fixture(rng, F, {4, 4}, 3, {1, 1}, {1, 1});
  json good = sunflower_to_json(family);
  json j = good;
  j["center"].erase(1);
  CHECK_THROWS_AS(sunflower_from_json(j), FormatError);
}

TEST_CASE("file helpers write atomically and report bad input") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "slicelab_io_test";
  fs::create_directories(dir);
  fs::path target = dir / "tensor.json";

  FieldSpec F(2);
  json j = tensor_to_json(identity_tensor(2, 2, F));
  write_json_file(target.string(), j);
  CHECK(read_json_file(target.string()) == j);
  CHECK_FALSE(fs::exists(target.string() + ".tmp"));

  /* rewriting replaces the content in one step */
  json j2 = tensor_to_json(Tensor(F, {2, 2}));
  write_json_file(target.string(), j2);
  CHECK(read_json_file(target.string()) == j2);

  CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), FormatError);

  fs::path junk = dir / "junk.json";
  std::ofstream(junk) << "{ not json";
  CHECK_THROWS_AS(read_json_file(junk.string()), FormatError);

  fs::remove_all(dir);
}
