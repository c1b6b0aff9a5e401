#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slicelab/io.hpp"
#include "slicelab/transforms.hpp"

namespace {

using namespace slicelab;

/* Exit codes: 0 ok, 2 budget, 3 transform precondition, 4 zero-form
   precondition, 5 regression mismatch, 1 everything else. */
constexpr int kOk = 0;
constexpr int kOtherError = 1;
constexpr int kBudget = 2;
constexpr int kTransformPrecondition = 3;
constexpr int kZeroFormPrecondition = 4;
constexpr int kRegressionMismatch = 5;

long long default_budget(long long fallback) {
  const char* s = std::getenv("SLICELAB_BUDGET");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  long long v = std::strtoll(s, &end, 10);
  if (end == nullptr || *end != '\0' || v <= 0)
    throw FormatError("SLICELAB_BUDGET must be a positive integer");
  return v;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  size_t pos = 0;
  while (true) {
    size_t comma = s.find(',', pos);
    std::string tok = s.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw FormatError(std::string(what) + ": expected integers, got '" + s +
                        "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

/* "axis,index", both 1-based on the command line. */
std::pair<int, int> parse_term(const std::string& s, const char* what) {
  std::vector<int> v = parse_int_list(s, what);
  if (v.size() != 2)
    throw FormatError(std::string(what) + ": expected 'axis,index'");
  return {v[0] - 1, v[1] - 1};
}

Mat mat_of(const Tensor& t) {
  if (t.order() != 2) throw FormatError("expected an order-2 tensor");
  Mat m = zero_mat(t.field(), t.dims()[0], t.dims()[1]);
  m.entries = t.entries();
  return m;
}

/* Rank factorization by peeling one pivot at a time. */
TensorRankDecomposition peel_matrix(const Tensor& t) {
  const FieldSpec& F = t.field();
  Mat work = mat_of(t);
  TensorRankDecomposition dec(F, t.dims());
  while (true) {
    int r0 = -1, c0 = -1;
    for (int r = 0; r < work.rows && r0 < 0; ++r)
      for (int c = 0; c < work.cols && r0 < 0; ++c)
        if (work.at(r, c) != 0) {
          r0 = r;
          c0 = c;
        }
    if (r0 < 0) break;
    int scale_by = F.inv(work.at(r0, c0));
    Vec u = zero_vec(F, work.rows);
    for (int r = 0; r < work.rows; ++r) u[r] = work.at(r, c0);
    Vec v = scale(scale_by, work.row(r0));
    dec.terms.push_back({u, v});
    for (int r = 0; r < work.rows; ++r)
      for (int c = 0; c < work.cols; ++c)
        work.at(r, c) = F.sub(work.at(r, c), F.mul(u[r], v[c]));
  }
  return dec;
}

void print_report(const CensusReport& report) {
  for (const auto& [key, value] : report.counts)
    std::cout << key << " " << value << "\n";
  for (const auto& [key, value] : report.bounds)
    std::cout << "bound " << key << " " << value << "\n";
  for (const auto& note : report.notes) std::cout << "note: " << note << "\n";
  std::cout << (report.pass ? "pass" : "fail") << "\n";
}

struct RankArgs {
  std::string input;
  std::string kind = "slice";
  std::string out;
  long long budget = 0;
};

int run_rank(const RankArgs& args) {
  Tensor t = tensor_from_json(read_json_file(args.input));
  std::string out =
      args.out.empty() ? args.input + ".witness.json" : args.out;
  if (args.kind == "matrix") {
    TensorRankDecomposition witness = peel_matrix(t);
    std::cout << "rank " << witness.length() << "\n";
    write_json_file(out, decomposition_to_json(witness));
    return kOk;
  }
  RankBudget budget;
  budget.max_candidates = args.budget;
  if (args.kind == "slice") {
    SliceRankResult res = slice_rank(t, budget);
    if (!res.completed) {
      std::cout << "budget exceeded; slice_rank >= " << res.rank << "\n";
      return kBudget;
    }
    std::cout << "slice_rank " << res.rank << "\n";
    if (res.witness) write_json_file(out, decomposition_to_json(*res.witness));
    return kOk;
  }
  TensorRankResult res = tensor_rank(t, budget);
  if (!res.completed) {
    std::cout << "budget exceeded; tensor_rank >= " << res.rank << "\n";
    return kBudget;
  }
  std::cout << "tensor_rank " << res.rank << "\n";
  if (res.witness) write_json_file(out, decomposition_to_json(*res.witness));
  return kOk;
}

struct TransformArgs {
  std::string input;
  std::string op;
  std::string out;
  int axis = 0;  // 1-based
  std::string change;
  std::string axes;
  std::string term1, term2;
  std::vector<std::string> picks;
  std::vector<std::string> shifts;
};

int run_transform(const TransformArgs& args) {
  nlohmann::json input = read_json_file(args.input);
  auto shift_tensor = [&](size_t i) {
    return tensor_from_json(read_json_file(args.shifts.at(i)));
  };
  try {
    SliceDecomposition result{FieldSpec(2), {}};
    Tensor target = Tensor::scalar(FieldSpec(2), 0);
    if (args.op == "slice-by-axis") {
      target = tensor_from_json(input);
      result = slice_by_axis(target, args.axis - 1);
    } else if (args.op == "regroup") {
      TensorRankDecomposition dec = tensor_rank_decomposition_from_json(input);
      std::vector<int> assignment = parse_int_list(args.axes, "--axes");
      for (int& j : assignment) --j;
      target = assemble(dec);
      result = regroup_tensor_rank(dec, assignment);
    } else {
      SliceDecomposition dec = slice_decomposition_from_json(input);
      target = assemble(dec);
      if (args.op == "basis-change") {
        if (args.change.empty())
          throw Error("basis-change needs --change with a matrix file");
        Mat change = mat_of(tensor_from_json(read_json_file(args.change)));
        result = basis_change(dec, args.axis - 1, change);
      } else if (args.op == "pair-shift") {
        if (args.shifts.size() != 1)
          throw Error("pair-shift needs exactly one --shift file");
        result = pair_shift(dec, parse_term(args.term1, "--term1"),
                            parse_term(args.term2, "--term2"),
                            shift_tensor(0));
      } else if (args.op == "star-shift") {
        std::vector<std::pair<int, int>> picks;
        for (const std::string& p : args.picks)
          picks.push_back(parse_term(p, "--pick"));
        std::vector<Tensor> shifts;
        for (size_t i = 0; i < args.shifts.size(); ++i)
          shifts.push_back(shift_tensor(i));
        result = star_shift(dec, picks, shifts);
      } else {
        throw FormatError("unknown --op '" + args.op + "'");
      }
    }
    if (!sub(assemble(result), target).is_zero())
      throw InternalContradiction("transform changed the assembled tensor");
    write_json_file(args.out, decomposition_to_json(result));
    std::cout << "ok\n";
    return kOk;
  } catch (const FormatError&) {
    throw;
  } catch (const InternalContradiction&) {
    throw;
  } catch (const Error& e) {
    std::cout << "transform precondition failed: " << e.what() << "\n";
    return kTransformPrecondition;
  }
}

int run_verify_zero_form(const std::string& dec_path,
                         const std::string& cert_path) {
  SliceDecomposition dec =
      slice_decomposition_from_json(read_json_file(dec_path));
  ZeroFormCertificate cert = certificate_from_json(read_json_file(cert_path));
  ValidationReport report = verify_zero_form(dec, cert);
  if (!report.ok()) {
    for (const std::string& v : report.violations) std::cout << v << "\n";
    return kZeroFormPrecondition;
  }
  std::cout << "ok\n";
  return kOk;
}

int run_extract_zero_form(const std::string& dec_path,
                          const std::string& out_arg) {
  SliceDecomposition dec =
      slice_decomposition_from_json(read_json_file(dec_path));
  std::string out = out_arg.empty() ? dec_path + ".cert.json" : out_arg;
  try {
    ZeroFormCertificate cert = extract_zero_form(dec);
    write_json_file(out, certificate_to_json(cert));
    std::cout << "ok " << cert.entries.size() << " entries\n";
    return kOk;
  } catch (const NotZero& e) {
    std::cout << "zero-form precondition failed: " << e.what() << "\n";
    return kZeroFormPrecondition;
  } catch (const DependentFamilies& e) {
    std::cout << "zero-form precondition failed: " << e.what() << "\n";
    return kZeroFormPrecondition;
  }
}

struct SunflowerArgs {
  std::string input;
  std::string out;
  std::string family_out;
  long long seed = -1;
  int p = 2;
  std::string dims;
  int petals = 0;
  std::string center;
  std::string extra;
};

int run_sunflower(const SunflowerArgs& args) {
  std::unique_ptr<SunflowerFamily> family;
  if (args.seed >= 0) {
    if (args.dims.empty())
      throw FormatError("--generate needs --dims");
    std::vector<int> dims = parse_int_list(args.dims, "--dims");
    int d = static_cast<int>(dims.size());
    std::vector<int> center(dims.size(), 1);
    std::vector<int> extra(dims.size(), 1);
    if (!args.center.empty()) center = parse_int_list(args.center, "--center");
    if (!args.extra.empty()) extra = parse_int_list(args.extra, "--extra");
    int petals = args.petals > 0 ? args.petals : d + 1;
    Rng rng(static_cast<unsigned long long>(args.seed));
    family = std::make_unique<SunflowerFamily>(generate_sunflower_fixture(
        rng, FieldSpec(args.p), dims, petals, center, extra));
    if (!args.family_out.empty())
      write_json_file(args.family_out, sunflower_to_json(*family));
  } else {
    if (args.input.empty())
      throw FormatError("need a family file or --generate");
    family = std::make_unique<SunflowerFamily>(
        sunflower_from_json(read_json_file(args.input)));
  }
  ValidationReport report = check_hypotheses(*family);
  if (!report.ok()) {
    for (const std::string& v : report.violations)
      std::cout << "hypothesis violated: " << v << "\n";
    return kOtherError;
  }
  SliceDecomposition merged = merge_to_center(*family);
  int center_total = 0;
  for (const auto& vectors : family->center)
    center_total += static_cast<int>(vectors.size());
  std::cout << "merged length " << merged.length() << "\n";
  std::cout << "sr <= " << center_total << "\n";
  if (!args.out.empty())
    write_json_file(args.out, decomposition_to_json(merged));
  return kOk;
}

struct CensusArgs {
  std::string input;
  std::string what;
  std::string fixture;
  std::string out;
  int k = -1;
  int r = -1;
  long long budget = 0;
};

int run_census(const CensusArgs& args) {
  Tensor t = tensor_from_json(read_json_file(args.input));
  CensusReport report;
  if (args.what == "matrix-count") {
    report = count_matrix_decompositions(t, args.budget);
  } else if (args.what == "admissible") {
    AdmissibleTupleSet set = admissible_tuples(t, args.k, args.budget);
    report.counts["admissible_tuples"] =
        static_cast<long long>(set.tuples.size());
    report.counts["k"] = set.k;
    report.bounds["admissible_tuple_bound"] =
        admissible_tuple_bound(t.order(), set.k, t.field().modulus());
    report.pass = report.counts["admissible_tuples"] <=
                  report.bounds["admissible_tuple_bound"];
  } else if (args.what == "tensor-rank-count") {
    report = count_tensor_rank_decompositions(t, args.k, args.budget);
  } else if (args.what == "example-lower-bound") {
    if (args.r < 0)
      throw FormatError("example-lower-bound needs --r");
    report = lower_bound_example_census(t, args.r);
  } else {
    throw FormatError("unknown --what '" + args.what + "'");
  }
  print_report(report);
  if (!args.out.empty())
    write_json_file(args.out, census_report_to_json(report));
  if (!args.fixture.empty()) {
    CensusReport pinned =
        census_report_from_json(read_json_file(args.fixture));
    bool match = pinned.counts == report.counts &&
                 pinned.bounds == report.bounds && pinned.pass == report.pass;
    if (!match) {
      std::cout << "fixture mismatch against " << args.fixture << "\n";
      return kRegressionMismatch;
    }
    std::cout << "fixture match\n";
  }
  return report.pass ? kOk : kRegressionMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact slice, tensor and matrix rank workbench over F_p"};
  app.require_subcommand(1);

  RankArgs rank_args;
  CLI::App* rank_cmd =
      app.add_subcommand("rank", "exact rank of a tensor file, with witness");
  rank_cmd->add_option("input", rank_args.input, "tensor file")->required();
  rank_cmd->add_option("--kind", rank_args.kind, "slice|tensor|matrix")
      ->check(CLI::IsMember({"slice", "tensor", "matrix"}));
  rank_cmd->add_option("--budget", rank_args.budget, "candidate cap");
  rank_cmd->add_option("--out", rank_args.out, "witness decomposition file");

  TransformArgs tr_args;
  CLI::App* tr_cmd = app.add_subcommand(
      "transform", "rewrite a decomposition without changing its tensor");
  tr_cmd->add_option("input", tr_args.input, "decomposition or tensor file")
      ->required();
  tr_cmd
      ->add_option(
          "--op", tr_args.op,
          "basis-change|regroup|slice-by-axis|pair-shift|star-shift")
      ->required()
      ->check(CLI::IsMember({"basis-change", "regroup", "slice-by-axis",
                             "pair-shift", "star-shift"}));
  tr_cmd->add_option("--out", tr_args.out, "output decomposition file")
      ->required();
  tr_cmd->add_option("--axis", tr_args.axis, "1-based axis");
  tr_cmd->add_option("--change", tr_args.change, "matrix file (order-2)");
  tr_cmd->add_option("--axes", tr_args.axes,
                     "comma-separated 1-based axis per term (regroup)");
  tr_cmd->add_option("--term1", tr_args.term1, "axis,index (1-based)");
  tr_cmd->add_option("--term2", tr_args.term2, "axis,index (1-based)");
  tr_cmd->add_option("--pick", tr_args.picks,
                     "axis,index (repeat once per star axis)");
  tr_cmd->add_option("--shift", tr_args.shifts, "shift tensor file (repeat)");

  std::string verify_dec, verify_cert;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify-zero-form", "check a certificate against a decomposition");
  verify_cmd->add_option("decomposition", verify_dec, "decomposition file")
      ->required();
  verify_cmd->add_option("certificate", verify_cert, "certificate file")
      ->required();

  std::string extract_dec, extract_out;
  CLI::App* extract_cmd = app.add_subcommand(
      "extract-zero-form",
      "build a certificate for a zero-assembling decomposition");
  extract_cmd->add_option("decomposition", extract_dec, "decomposition file")
      ->required();
  extract_cmd->add_option("--out", extract_out, "certificate file");

  SunflowerArgs sun_args;
  CLI::App* sun_cmd = app.add_subcommand(
      "sunflower", "merge a family of decompositions onto its center");
  sun_cmd->add_option("family", sun_args.input, "family file");
  sun_cmd->add_option("--generate", sun_args.seed,
                      "seed for a generated fixture");
  sun_cmd->add_option("--p", sun_args.p, "field modulus");
  sun_cmd->add_option("--dims", sun_args.dims, "comma-separated dims");
  sun_cmd->add_option("--petals", sun_args.petals, "petal count (default d+1)");
  sun_cmd->add_option("--center", sun_args.center,
                      "center terms per axis (default all 1)");
  sun_cmd->add_option("--extra", sun_args.extra,
                      "private terms per axis per petal (default all 1)");
  sun_cmd->add_option("--out", sun_args.out, "merged decomposition file");
  sun_cmd->add_option("--family-out", sun_args.family_out,
                      "write the generated family here");

  CensusArgs census_args;
  CLI::App* census_cmd =
      app.add_subcommand("census", "exhaustive counts with checked bounds");
  census_cmd->add_option("input", census_args.input, "tensor file")
      ->required();
  census_cmd
      ->add_option(
          "--what", census_args.what,
          "matrix-count|admissible|tensor-rank-count|example-lower-bound")
      ->required()
      ->check(CLI::IsMember({"matrix-count", "admissible", "tensor-rank-count",
                             "example-lower-bound"}));
  census_cmd->add_option("--k", census_args.k, "length (default: exact rank)");
  census_cmd->add_option("--r", census_args.r,
                         "subspace dimension (example-lower-bound)");
  census_cmd->add_option("--budget", census_args.budget, "enumeration cap");
  census_cmd->add_option("--fixture", census_args.fixture,
                         "pinned census report to compare against");
  census_cmd->add_option("--out", census_args.out, "census report file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rank_cmd->parsed()) {
      if (rank_args.budget <= 0)
        rank_args.budget = default_budget(RankBudget{}.max_candidates);
      return run_rank(rank_args);
    }
    if (tr_cmd->parsed()) return run_transform(tr_args);
    if (verify_cmd->parsed())
      return run_verify_zero_form(verify_dec, verify_cert);
    if (extract_cmd->parsed())
      return run_extract_zero_form(extract_dec, extract_out);
    if (sun_cmd->parsed()) return run_sunflower(sun_args);
    if (census_cmd->parsed()) {
      if (census_args.budget <= 0)
        census_args.budget = default_budget(kDefaultEnumerationBudget);
      return run_census(census_args);
    }
  } catch (const BudgetExceeded& e) {
    std::cout << "budget exceeded: " << e.what() << "\n";
    if (e.lower_bound >= 0)
      std::cout << "proven lower bound " << e.lower_bound << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOtherError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOtherError;
  }
  return kOtherError;
}
