#include "cli.hpp"

#include "drg/embedding.hpp"
#include "drg/families.hpp"
#include "drg/graph_oracle.hpp"
#include "drg/measures.hpp"
#include "drg/positivity.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace drg::cli {

namespace {

constexpr std::size_t kDefaultTruncation = 8;
constexpr std::size_t kDefaultRadius = 4;
constexpr std::size_t kGammaCoefficientPreview = 6;

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  throw BadParam("unknown format '" + s + "' (json, text or csv)");
}

double require_x(const JobRequest& r) {
  if (!r.x) throw BadParam(r.command + " needs --x");
  if (*r.x < -1.0 || *r.x > 1.0) throw DomainError("x must lie in [-1, 1]");
  return *r.x;
}

Json haar_json(const std::vector<Rational>& w) {
  Json out = Json::array();
  for (const auto& v : w) out.push_back(rational_to_json(v));
  return out;
}

Json describe(const JobRequest& r) {
  const FamilySpec spec = parse_family(r.family);
  const PolynomialHypergroup h = build_hypergroup(spec);
  Json j{{"family", spec.descriptor()}, {"finite", h.is_finite()}};
  Json coeffs = Json::array();
  const std::size_t shown = h.is_finite() ? h.diameter() : kGammaCoefficientPreview;
  for (std::size_t i = 0; i <= shown; ++i) coeffs.push_back(coefficients_to_json(h.coeffs(i)));
  j["coefficients"] = coeffs;
  j["haar"] = haar_json(h.haar_weights(shown));

  if (h.is_finite()) {
    j["diameter"] = h.diameter();
    const DualSpace dual = dual_space(h);
    j["dual_points"] = dual.points;
    j["plancherel"] = dual.plancherel;
    if (auto cf = closed_form_dual(spec)) j["closed_form_dual"] = *cf;
  } else {
    j["diameter"] = nullptr;
    const TreeConstants tc = tree_constants(spec.a, spec.b);
    j["tree"] = {{"tilde_s0", tc.tilde_s0},
                 {"tilde_s1", tc.tilde_s1},
                 {"s0", rational_to_json(tc.s0)},
                 {"s1", rational_to_json(tc.s1)},
                 {"support", {tc.support_left, tc.support_right}},
                 {"hat_x_left", rational_to_json(tc.hat_x_left)},
                 {"atom_weight", tc.atom_weight ? rational_to_json(*tc.atom_weight) : Json(nullptr)}};
  }
  if (auto p = predicted_region(spec)) {
    j["predicted_region"] = {{"region", region_to_json(p->region)}, {"exact", p->exact}};
  }
  return j;
}

Json oracle_result(const ConcreteGraph& g, double x, double tau) {
  Json j{{"family", g.family}, {"vertices", g.vertex_count}, {"diameter", g.diameter}, {"x", x}};
  j["sphere_sizes"] = sphere_sizes(g);
  j["certificate"] = certificate_to_json(kernel_psd(g, x, tau));
  return j;
}

ConcreteGraph oracle_graph(const JobRequest& r, const FamilySpec& spec) {
  if (spec.kind == FamilyKind::GammaAB) return build_gamma_ball(spec.a, spec.b, r.radius.value_or(kDefaultRadius));
  if (r.radius) throw BadParam("--radius only applies to gamma families");
  return enumerate_family(spec);
}

Json check(const JobRequest& r) {
  const double x = require_x(r);
  const FamilySpec spec = parse_family(r.family);
  Json j{{"family", spec.descriptor()}, {"x", x}, {"method", r.method}};
  if (r.method == "oracle") {
    const ConcreteGraph g = oracle_graph(r, spec);
    j["vertices"] = g.vertex_count;
    j["certificate"] = certificate_to_json(kernel_psd(g, x, r.tolerance.value_or(1e-10)));
    return j;
  }
  const PolynomialHypergroup h = build_hypergroup(spec);
  if (r.method == "bochner") {
    if (!h.is_finite()) throw BadParam("bochner needs a finite family; use --method gram --trunc n");
    if (r.trunc) throw BadParam("--trunc only applies to --method gram");
    j["certificate"] = certificate_to_json(gibbs_check_finite(h, x, r.tolerance.value_or(kBochnerRelativeTolerance)));
    return j;
  }
  if (r.method == "gram") {
    std::size_t n = h.is_finite() ? h.diameter() : kDefaultTruncation;
    if (r.trunc) n = *r.trunc;
    if (h.is_finite() && n > h.diameter()) throw BadParam("--trunc exceeds the diameter");
    const GramAssembler gram(h, n);
    Certificate c = gram_psd_check(gram.gram_geometric(x), r.tolerance.value_or(1e-8));
    c.truncation_level = n;
    j["certificate"] = certificate_to_json(c);
    return j;
  }
  throw BadParam("unknown method '" + r.method + "' (bochner, gram or oracle)");
}

Json region(const JobRequest& r) {
  const FamilySpec spec = parse_family(r.family);
  const PolynomialHypergroup h = build_hypergroup(spec);
  Json j{{"family", spec.descriptor()}};
  if (h.is_finite() && !r.trunc) {
    j["method"] = "bochner";
    j["region"] = region_to_json(positivity_region(h));
    return j;
  }
  const std::size_t n = r.trunc.value_or(kDefaultTruncation);
  if (h.is_finite() && n > h.diameter()) throw BadParam("--trunc exceeds the diameter");
  j["method"] = "gram";
  j["truncation_level"] = n;
  j["region"] = region_to_json(truncated_region(h, n, r.grid));
  return j;
}

Json oracle(const JobRequest& r) {
  const double x = require_x(r);
  const double tau = r.tolerance.value_or(1e-10);
  if (!r.distances_csv.empty()) {
    std::ifstream in(r.distances_csv);
    if (!in) throw BadParam("cannot open " + r.distances_csv);
    return oracle_result(read_distance_csv(in, r.distances_csv), x, tau);
  }
  const FamilySpec spec = parse_family(r.family);
  return oracle_result(oracle_graph(r, spec), x, tau);
}

JobOutput embed(const JobRequest& r) {
  const FamilySpec spec = parse_family(r.family);
  const auto seq = EmbeddingSequence::of(spec);
  JobOutput out;
  Json& j = out.result;
  j["family"] = spec.descriptor();
  j["nmax"] = r.nmax;
  const auto conv = coefficient_convergence(seq, r.nmax);
  j["convergence"] = {{"final_deviation", conv.max_deviation.back()},
                      {"monotone", conv.monotone},
                      {"fitted_order", conv.fitted_order}};
  if (spec.kind == FamilyKind::GammaAB) {
    j["verdict"] = conv.monotone ? "converging" : "not-monotone";
    return out;
  }
  const auto acc = accumulation_set(seq, r.nmax, r.eps);
  j["eps"] = r.eps;
  j["estimate"] = region_to_json(acc.estimate);
  j["predicted"] = region_to_json(acc.predicted);
  j["hausdorff"] = acc.hausdorff;
  j["predicted_coverage"] = acc.predicted_coverage;
  j["attained"] = acc.attained;
  j["limit_only"] = acc.limit_only;
  j["verdict"] = acc.predicted_coverage <= r.eps ? "consistent" : "inconsistent";
  std::ostringstream csv;
  write_accumulation_csv(csv, seq, r.nmax);
  out.csv = csv.str();
  return out;
}

JobOutput measure(const JobRequest& r) {
  const FamilySpec spec = parse_family(r.family);
  if (spec.kind != FamilyKind::GammaAB) throw BadParam("measure needs a gamma:a=,b= family");
  JobOutput out;
  SpectralMeasure m;
  if (r.letac) {
    if (spec.b != 2) throw BadParam("--letac needs b = 2");
    m = letac_measure(spec.a, *r.letac);
    out.result["letac_x"] = *r.letac;
  } else {
    m = tree_orthogonality_measure(spec.a, spec.b);
  }
  const double tol = r.tolerance.value_or(kDefaultQuadratureTolerance);
  out.result["family"] = spec.descriptor();
  out.result["frame"] = m.frame == MeasureFrame::Tilde ? "tilde" : "natural";
  out.result["support"] = {m.support.lo, m.support.hi};
  Json atoms = Json::array();
  double atom_mass = 0.0;
  for (const auto& [loc, w] : m.atoms) {
    atoms.push_back({{"location", loc}, {"weight", w}});
    atom_mass += w;
  }
  out.result["atoms"] = atoms;
  const double mass = total_mass(m, tol);
  out.result["mass"] = {{"total", mass}, {"continuous", mass - atom_mass}, {"atoms", atom_mass}};
  std::ostringstream csv;
  write_density_csv(csv, m, r.samples);
  out.csv = csv.str();
  return out;
}

void print_text(std::ostream& out, const Json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_text(out, v, prefix.empty() ? k : prefix + "." + k);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

int exit_code(const Error& e) { return e.error_class() == ErrorClass::InvalidParameter ? 2 : 3; }

Json batch(const std::string& path, int& worst) {
  std::ifstream in(path);
  if (!in) throw BadParam("cannot open " + path);
  Json lines = Json::array();
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json rec{{"line", number}};
    try {
      JobRequest req = request_from_json(Json::parse(line));
      if (req.command == "batch") throw BadParam("batch jobs cannot nest");
      rec["result"] = run_job(req).result;
      rec["ok"] = true;
    } catch (const Error& e) {
      rec["ok"] = false;
      rec["error"] = e.what();
      rec["exit_code"] = exit_code(e);
      worst = std::max(worst, exit_code(e));
    } catch (const Json::exception& e) {
      rec["ok"] = false;
      rec["error"] = std::string("malformed JSON: ") + e.what();
      rec["exit_code"] = 2;
      worst = std::max(worst, 2);
    }
    lines.push_back(rec);
  }
  return lines;
}

}  // namespace

JobRequest request_from_json(const Json& j) {
  static const std::set<std::string> known{"command", "family", "x",       "method", "trunc",   "radius",
                                           "tolerance", "grid", "nmax",    "eps",    "letac",   "samples",
                                           "distances_csv"};
  if (!j.is_object()) throw BadParam("batch line must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw BadParam("unknown job key '" + k + "'");
  }
  JobRequest r;
  try {
    r.command = j.at("command").get<std::string>();
    if (j.contains("family")) r.family = j["family"].get<std::string>();
    if (j.contains("x")) r.x = j["x"].get<double>();
    if (j.contains("method")) r.method = j["method"].get<std::string>();
    if (j.contains("trunc")) r.trunc = j["trunc"].get<std::size_t>();
    if (j.contains("radius")) r.radius = j["radius"].get<std::size_t>();
    if (j.contains("tolerance")) r.tolerance = j["tolerance"].get<double>();
    if (j.contains("grid")) r.grid = j["grid"].get<std::size_t>();
    if (j.contains("nmax")) r.nmax = j["nmax"].get<std::size_t>();
    if (j.contains("eps")) r.eps = j["eps"].get<double>();
    if (j.contains("letac")) r.letac = j["letac"].get<double>();
    if (j.contains("samples")) r.samples = j["samples"].get<std::size_t>();
    if (j.contains("distances_csv")) r.distances_csv = j["distances_csv"].get<std::string>();
  } catch (const Json::exception& e) {
    throw BadParam(std::string("bad job field: ") + e.what());
  }
  return r;
}

JobOutput run_job(const JobRequest& r) {
  if (r.family.empty() && !(r.command == "oracle" && !r.distances_csv.empty())) {
    throw BadParam(r.command + " needs a family descriptor");
  }
  if (r.command == "describe") return {describe(r), {}};
  if (r.command == "check") return {check(r), {}};
  if (r.command == "region") return {region(r), {}};
  if (r.command == "oracle") return {oracle(r), {}};
  if (r.command == "embed") return embed(r);
  if (r.command == "measure") return measure(r);
  throw BadParam("unknown command '" + r.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positivity of Gibbs kernels on distance-regular graphs"};
  app.require_subcommand(1, 1);

  JobRequest req;
  std::string format = "json";
  std::string batch_file;
  app.add_option("--format", format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));

  auto* describe_cmd = app.add_subcommand("describe", "coefficients, Haar weights, dual points, predicted region");
  describe_cmd->add_option("family", req.family)->required();

  auto* check_cmd = app.add_subcommand("check", "positive-definiteness of x^d at one x");
  check_cmd->add_option("family", req.family)->required();
  check_cmd->add_option("--x", req.x)->required();
  check_cmd->add_option("--method", req.method)->check(CLI::IsMember({"bochner", "gram", "oracle"}));
  check_cmd->add_option("--trunc", req.trunc);
  check_cmd->add_option("--radius", req.radius);
  check_cmd->add_option("--tolerance", req.tolerance);

  auto* region_cmd = app.add_subcommand("region", "set of x with positive-definite x^d");
  region_cmd->add_option("family", req.family)->required();
  region_cmd->add_option("--trunc", req.trunc);
  region_cmd->add_option("--grid", req.grid);

  auto* oracle_cmd = app.add_subcommand("oracle", "vertex-level eigenvalue test");
  oracle_cmd->add_option("family", req.family);
  oracle_cmd->add_option("--x", req.x)->required();
  oracle_cmd->add_option("--radius", req.radius);
  oracle_cmd->add_option("--distances-csv", req.distances_csv);
  oracle_cmd->add_option("--tolerance", req.tolerance);

  auto* embed_cmd = app.add_subcommand("embed", "embedding sequence and accumulation set");
  embed_cmd->add_option("family", req.family)->required();
  embed_cmd->add_option("--nmax", req.nmax);
  embed_cmd->add_option("--eps", req.eps);

  auto* measure_cmd = app.add_subcommand("measure", "orthogonality or Letac measure of Gamma(a,b)");
  measure_cmd->add_option("family", req.family)->required();
  measure_cmd->add_option("--letac", req.letac);
  measure_cmd->add_option("--samples", req.samples);
  measure_cmd->add_option("--tolerance", req.tolerance);

  auto* batch_cmd = app.add_subcommand("batch", "one JSON job per line, JSON-lines out");
  batch_cmd->add_option("file", batch_file)->required();

  for (auto* sub : app.get_subcommands({})) {
    if (sub != batch_cmd) sub->add_option("--format", format, "json, text or csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    req.format = parse_format(format);
    req.command = app.get_subcommands().front()->get_name();
    if (req.command == "batch") {
      int worst = 0;
      for (const auto& rec : batch(batch_file, worst)) out << rec.dump() << '\n';
      return worst;
    }
    const JobOutput result = run_job(req);
    switch (req.format) {
      case Format::Json: {
        Json j = result.result;
        if (!result.csv.empty()) j["csv"] = result.csv;
        out << j.dump(2) << '\n';
        break;
      }
      case Format::Text:
        print_text(out, result.result);
        break;
      case Format::Csv:
        if (result.csv.empty()) throw BadParam("csv output is only available for embed and measure");
        out << result.csv;
        err << result.result.dump() << '\n';
        break;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace drg::cli
