#pragma once

#include <string>

#include "json.hpp"
#include "slicelab/census.hpp"
#include "slicelab/sunflower.hpp"
#include "slicelab/zero_form.hpp"

namespace slicelab {

/* Text formats: one JSON object per file with a "format" tag and a
   "version" number, axes and term indices 1-based, integers only.
   Keys serialize alphabetically, so equal values give equal bytes.
   Readers throw FormatError on anything malformed. */

nlohmann::json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const nlohmann::json& j);

nlohmann::json decomposition_to_json(const SliceDecomposition& dec);
nlohmann::json decomposition_to_json(const TensorRankDecomposition& dec);
/* Peeks at the "kind" field. */
bool json_holds_slice_decomposition(const nlohmann::json& j);
SliceDecomposition slice_decomposition_from_json(const nlohmann::json& j);
TensorRankDecomposition tensor_rank_decomposition_from_json(
    const nlohmann::json& j);

nlohmann::json certificate_to_json(const ZeroFormCertificate& cert);
ZeroFormCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json sunflower_to_json(const SunflowerFamily& family);
SunflowerFamily sunflower_from_json(const nlohmann::json& j);

nlohmann::json census_report_to_json(const CensusReport& report);
CensusReport census_report_from_json(const nlohmann::json& j);

/* Whole-file helpers; writes go to a temporary and rename into place. */
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace slicelab
