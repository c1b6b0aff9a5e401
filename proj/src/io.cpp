#include "slicelab/io.hpp"

#include <filesystem>
#include <fstream>
#include <utility>

#include "slicelab/errors.hpp"

namespace slicelab {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int integer(const json& j, const char* key) {
  const json& value = member(j, key);
  if (!value.is_number_integer())
    throw FormatError(std::string("field \"") + key + "\" must be an integer");
  return value.get<int>();
}

std::vector<int> integer_list(const json& j, const char* key) {
  const json& value = member(j, key);
  if (!value.is_array())
    throw FormatError(std::string("field \"") + key + "\" must be a list");
  std::vector<int> out;
  for (const json& item : value) {
    if (!item.is_number_integer())
      throw FormatError(std::string("field \"") + key +
                        "\" must hold integers");
    out.push_back(item.get<int>());
  }
  return out;
}

std::string text(const json& j, const char* key) {
  const json& value = member(j, key);
  if (!value.is_string())
    throw FormatError(std::string("field \"") + key + "\" must be a string");
  return value.get<std::string>();
}

void expect_tag(const json& j, const char* tag) {
  if (text(j, "format") != tag)
    throw FormatError(std::string("expected a \"") + tag + "\" file");
  if (integer(j, "version") != kFormatVersion)
    throw FormatError("unsupported format version");
}

FieldSpec field_from(const json& j) {
  int p = integer(j, "p");
  try {
    return FieldSpec(p);
  } catch (const Error&) {
    throw FormatError("p must be a prime between 2 and 251");
  }
}

std::vector<int> dims_from(const json& j) {
  std::vector<int> dims = integer_list(j, "dims");
  for (int n : dims)
    if (n < 1) throw FormatError("dimensions must be positive");
  return dims;
}

void check_range(const std::vector<int>& entries, const FieldSpec& field) {
  for (int e : entries)
    if (e < 0 || e >= field.modulus())
      throw FormatError("entry outside [0, p)");
}

json payload_of(const Tensor& t) {
  return json{{"dims", t.dims()}, {"entries", t.entries()}};
}

Tensor payload_to_tensor(const json& j, const FieldSpec& field) {
  std::vector<int> dims = integer_list(j, "dims");
  for (int n : dims)
    if (n < 1) throw FormatError("dimensions must be positive");
  std::vector<int> entries = integer_list(j, "entries");
  check_range(entries, field);
  if (static_cast<long long>(entries.size()) != count_entries(dims))
    throw FormatError("entry count does not match the dimensions");
  return Tensor::from_entries(field, std::move(dims), std::move(entries));
}

Vec vec_from(const json& j, const char* key, const FieldSpec& field,
             int length) {
  std::vector<int> entries = integer_list(j, key);
  if (static_cast<int>(entries.size()) != length)
    throw FormatError(std::string("field \"") + key + "\" has wrong length");
  check_range(entries, field);
  Vec v = zero_vec(field, length);
  for (int i = 0; i < length; ++i) v[i] = entries[size_t(i)];
  return v;
}

}  // namespace

json tensor_to_json(const Tensor& t) {
  return json{{"format", "tensor"},
              {"version", kFormatVersion},
              {"p", t.field().modulus()},
              {"dims", t.dims()},
              {"entries", t.entries()}};
}

Tensor tensor_from_json(const json& j) {
  expect_tag(j, "tensor");
  FieldSpec field = field_from(j);
  return payload_to_tensor(j, field);
}

json decomposition_to_json(const SliceDecomposition& dec) {
  json terms = json::array();
  for (const SliceTerm& term : dec.terms())
    terms.push_back(json{{"axis", term.axis + 1},
                         {"a", term.a.entries},
                         {"b", payload_of(term.b)}});
  return json{{"format", "decomposition"},
              {"version", kFormatVersion},
              {"kind", "slice"},
              {"p", dec.field.modulus()},
              {"dims", dec.dims},
              {"terms", terms}};
}

json decomposition_to_json(const TensorRankDecomposition& dec) {
  json terms = json::array();
  for (const std::vector<Vec>& term : dec.terms) {
    json factors = json::array();
    for (const Vec& factor : term) factors.push_back(factor.entries);
    terms.push_back(json{{"factors", factors}});
  }
  return json{{"format", "decomposition"},
              {"version", kFormatVersion},
              {"kind", "tensor_rank"},
              {"p", dec.field.modulus()},
              {"dims", dec.dims},
              {"terms", terms}};
}

bool json_holds_slice_decomposition(const json& j) {
  expect_tag(j, "decomposition");
  std::string kind = text(j, "kind");
  if (kind == "slice") return true;
  if (kind == "tensor_rank") return false;
  throw FormatError("kind must be \"slice\" or \"tensor_rank\"");
}

SliceDecomposition slice_decomposition_from_json(const json& j) {
  if (!json_holds_slice_decomposition(j))
    throw FormatError("expected a slice decomposition");
  FieldSpec field = field_from(j);
  std::vector<int> dims = dims_from(j);
  SliceDecomposition dec(field, dims);
  const json& terms = member(j, "terms");
  if (!terms.is_array()) throw FormatError("\"terms\" must be a list");
  for (const json& term : terms) {
    int axis = integer(term, "axis") - 1;
    if (axis < 0 || axis >= dec.order())
      throw FormatError("term axis out of range");
    Vec a = vec_from(term, "a", field, dims[size_t(axis)]);
    Tensor b = payload_to_tensor(member(term, "b"), field);
    if (b.dims() != dec.complement_dims(axis))
      throw FormatError("complementary function has wrong dimensions");
    dec.add_term(axis, std::move(a), std::move(b));
  }
  return dec;
}

TensorRankDecomposition tensor_rank_decomposition_from_json(const json& j) {
  if (json_holds_slice_decomposition(j))
    throw FormatError("expected a tensor rank decomposition");
  FieldSpec field = field_from(j);
  std::vector<int> dims = dims_from(j);
  TensorRankDecomposition dec(field, dims);
  const json& terms = member(j, "terms");
  if (!terms.is_array()) throw FormatError("\"terms\" must be a list");
  for (const json& term : terms) {
    const json& factors = member(term, "factors");
    if (!factors.is_array() ||
        static_cast<int>(factors.size()) != dec.order())
      throw FormatError("each term needs one factor per axis");
    std::vector<Vec> parsed;
    for (int axis = 0; axis < dec.order(); ++axis) {
      json wrapper{{"f", factors[size_t(axis)]}};
      parsed.push_back(vec_from(wrapper, "f", field, dims[size_t(axis)]));
    }
    dec.terms.push_back(std::move(parsed));
  }
  return dec;
}

json certificate_to_json(const ZeroFormCertificate& cert) {
  json entries = json::array();
  for (const auto& [key, value] : cert.entries) {
    std::vector<int> axes, indices;
    for (int axis : key.axes) axes.push_back(axis + 1);
    for (int index : key.indices) indices.push_back(index + 1);
    entries.push_back(json{{"axes", axes},
                           {"indices", indices},
                           {"slot", key.axis + 1},
                           {"value", payload_of(value)}});
  }
  return json{{"format", "zero_form_certificate"},
              {"version", kFormatVersion},
              {"p", cert.field.modulus()},
              {"dims", cert.dims},
              {"shape", cert.shape},
              {"entries", entries}};
}

ZeroFormCertificate certificate_from_json(const json& j) {
  expect_tag(j, "zero_form_certificate");
  FieldSpec field = field_from(j);
  std::vector<int> dims = dims_from(j);
  std::vector<int> shape = integer_list(j, "shape");
  if (shape.size() != dims.size())
    throw FormatError("one term count per axis required");
  ZeroFormCertificate cert(field, dims, shape);
  const json& entries = member(j, "entries");
  if (!entries.is_array()) throw FormatError("\"entries\" must be a list");
  int d = static_cast<int>(dims.size());
  for (const json& entry : entries) {
    ZeroFormKey key;
    for (int axis : integer_list(entry, "axes")) key.axes.push_back(axis - 1);
    for (int index : integer_list(entry, "indices"))
      key.indices.push_back(index - 1);
    key.axis = integer(entry, "slot") - 1;
    if (key.axes.empty() || key.axes.front() < 0 || key.axes.back() >= d)
      throw FormatError("certificate axes out of range");
    Tensor value = payload_to_tensor(member(entry, "value"), field);
    if (!cert.entries.emplace(std::move(key), std::move(value)).second)
      throw FormatError("duplicate certificate key");
  }
  return cert;
}

json sunflower_to_json(const SunflowerFamily& family) {
  json center = json::array();
  for (const std::vector<Vec>& axis_family : family.center) {
    json vectors = json::array();
    for (const Vec& v : axis_family) vectors.push_back(v.entries);
    center.push_back(vectors);
  }
  json petals = json::array();
  for (const SliceDecomposition& petal : family.petals) {
    json terms = json::array();
    for (const SliceTerm& term : petal.terms())
      terms.push_back(json{{"axis", term.axis + 1},
                           {"a", term.a.entries},
                           {"b", payload_of(term.b)}});
    petals.push_back(json{{"terms", terms}});
  }
  return json{{"format", "sunflower_family"},
              {"version", kFormatVersion},
              {"p", family.field.modulus()},
              {"dims", family.dims},
              {"center", center},
              {"petals", petals}};
}

SunflowerFamily sunflower_from_json(const json& j) {
  expect_tag(j, "sunflower_family");
  FieldSpec field = field_from(j);
  std::vector<int> dims = dims_from(j);
  SunflowerFamily family(field, dims);
  const json& center = member(j, "center");
  if (!center.is_array() ||
      static_cast<int>(center.size()) != family.order())
    throw FormatError("one center family per axis required");
  for (int axis = 0; axis < family.order(); ++axis) {
    const json& vectors = center[size_t(axis)];
    if (!vectors.is_array())
      throw FormatError("center families must be lists");
    for (const json& v : vectors) {
      json wrapper{{"v", v}};
      family.center[size_t(axis)].push_back(
          vec_from(wrapper, "v", field, dims[size_t(axis)]));
    }
  }
  const json& petals = member(j, "petals");
  if (!petals.is_array()) throw FormatError("\"petals\" must be a list");
  for (const json& petal : petals) {
    json as_decomposition{{"format", "decomposition"},
                          {"version", kFormatVersion},
                          {"kind", "slice"},
                          {"p", field.modulus()},
                          {"dims", dims},
                          {"terms", member(petal, "terms")}};
    family.petals.push_back(
        slice_decomposition_from_json(as_decomposition));
  }
  return family;
}

json census_report_to_json(const CensusReport& report) {
  return json{{"format", "census_report"},
              {"version", kFormatVersion},
              {"counts", report.counts},
              {"bounds", report.bounds},
              {"pass", report.pass},
              {"notes", report.notes}};
}

CensusReport census_report_from_json(const json& j) {
  expect_tag(j, "census_report");
  CensusReport report;
  for (const char* key : {"counts", "bounds"}) {
    const json& table = member(j, key);
    if (!table.is_object())
      throw FormatError(std::string("field \"") + key + "\" must be a table");
    auto& target = std::string(key) == "counts" ? report.counts : report.bounds;
    for (const auto& [name, value] : table.items()) {
      if (!value.is_number_integer())
        throw FormatError("census values must be integers");
      target[name] = value.get<long long>();
    }
  }
  const json& pass = member(j, "pass");
  if (!pass.is_boolean()) throw FormatError("\"pass\" must be a boolean");
  report.pass = pass.get<bool>();
  const json& notes = member(j, "notes");
  if (!notes.is_array()) throw FormatError("\"notes\" must be a list");
  for (const json& note : notes) {
    if (!note.is_string()) throw FormatError("notes must be strings");
    report.notes.push_back(note.get<std::string>());
  }
  return report;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw FormatError("cannot parse " + path + ": " + err.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::filesystem::path target(path);
  std::filesystem::path temporary = target;
  temporary += ".tmp";
  {
    std::ofstream out(temporary);
    if (!out) throw Error("cannot write " + temporary.string());
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(temporary, target);
}

}  // namespace slicelab
