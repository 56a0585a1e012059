#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "wcop/json_io.hpp"
#include "wcop/probes.hpp"
#include "wcop/scenarios.hpp"

namespace wcop::cli {

namespace {

std::string g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string g12(cplx z) {
  if (z.imag() == 0.0) return g12(z.real());
  return g12(z.real()) + (z.imag() < 0 ? "-" : "+") + g12(std::abs(z.imag())) + "i";
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw InvalidInput("unknown output format: " + s);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

ExtComplex ext_from_json(const nlohmann::json& j) {
  if (j.is_string() && j.get<std::string>() == "infinity") return ExtComplex::infinity();
  return ExtComplex::finite(complex_from_json(j));
}

nlohmann::json ext_to_json(const ExtComplex& z) {
  return z.infinite ? nlohmann::json("infinity") : complex_to_json(z.value);
}

}  // namespace

void CliConfig::validate() const {
  if (order < 4) throw InvalidInput("--order must be >= 4");
  if (tail && *tail < 2 * order) throw InvalidInput("--tail must be >= 2 * order");
  if (!(tol > 0.0)) throw InvalidInput("--tol must be positive");
}

void apply_config(CliConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  try {
    if (j.contains("space")) cfg.space = space_from_json(j.at("space"));
    if (j.contains("order")) cfg.order = j.at("order").get<int>();
    if (j.contains("tail")) cfg.tail = j.at("tail").get<int>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("format")) cfg.format = format_from_string(j.at("format").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad config: ") + e.what());
  }
}

cplx parse_complex(const std::string& text) {
  static const std::regex num(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*)");
  static const std::regex pair(R"(\s*([^,]+),([^,]+)\s*)");
  static const std::regex alg(
      R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*)");
  std::smatch m;
  if (!text.empty() && text.front() == '[') return complex_from_json(nlohmann::json::parse(text));
  if (std::regex_match(text, m, num)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(text, m, pair)) return {parse_complex(m[1]).real(), parse_complex(m[2]).real()};
  if (std::regex_match(text, m, alg) && (m[1].matched || m[2].matched)) {
    const double re = m[1].matched ? std::stod(m[1]) : 0.0;
    double im = 0.0;
    if (m[2].matched) im = (m[3].matched ? std::stod(m[3]) : 1.0) * (m[2] == "-" ? -1.0 : 1.0);
    return {re, im};
  }
  // "i", "-2i": a lone imaginary part.
  static const std::regex imag(R"(\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij]\s*)");
  if (std::regex_match(text, m, imag))
    return {0.0, (m[2].matched ? std::stod(m[2]) : 1.0) * (m[1] == "-" ? -1.0 : 1.0)};
  throw InvalidInput("cannot parse complex number: " + text);
}

nlohmann::json load_json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[' || text[first] == '"')) {
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidInput(std::string("invalid JSON argument: ") + e.what());
    }
  }
  std::ifstream f(text);
  if (!f) throw InvalidInput("not JSON and not a readable file: " + text);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("invalid JSON in " + text + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Records

nlohmann::json classification_record(const MoebiusMap& m, double tol) {
  const Classification c = classify(m, tol);
  nlohmann::json j = {{"map", m}, {"class", std::string(to_string(c.kind))}, {"borderline", c.borderline}};
  nlohmann::json fps = nlohmann::json::array();
  if (c.kind != MapClass::Identity) {
    for (const FixedPoint& p : fixed_points(m, tol).points) {
      fps.push_back({{"point", ext_to_json(p.point)},
                     {"multiplicity", p.multiplicity},
                     {"derivative", p.derivative ? complex_to_json(*p.derivative) : nlohmann::json(nullptr)}});
    }
  }
  j["fixed_points"] = fps;
  j["denjoy_wolff"] = nullptr;
  j["translation_number"] = nullptr;
  if (c.kind != MapClass::Identity && c.kind != MapClass::EllipticAutomorphism) {
    const DWPoint dw = denjoy_wolff(m, tol);
    j["denjoy_wolff"] = {{"location", complex_to_json(dw.location)},
                         {"derivative", complex_to_json(dw.derivative)},
                         {"on_boundary", dw.on_boundary}};
    if (c.kind == MapClass::ParabolicNonAutomorphism || c.kind == MapClass::ParabolicAutomorphism)
      j["translation_number"] = complex_to_json(translation_number(m, dw.location));
  }
  return j;
}

ClassificationRecord classification_from_json(const nlohmann::json& j) {
  try {
    ClassificationRecord r;
    r.kind = map_class_from_string(j.at("class").get<std::string>());
    r.borderline = j.at("borderline").get<bool>();
    for (const auto& p : j.at("fixed_points")) {
      FixedPoint fp{ext_from_json(p.at("point")), p.at("multiplicity").get<int>(), std::nullopt};
      if (!p.at("derivative").is_null()) fp.derivative = complex_from_json(p.at("derivative"));
      r.fixed_points.push_back(fp);
    }
    if (!j.at("denjoy_wolff").is_null()) {
      const auto& d = j.at("denjoy_wolff");
      r.dw = DWPoint{complex_from_json(d.at("location")), complex_from_json(d.at("derivative")),
                     d.at("on_boundary").get<bool>()};
    }
    if (!j.at("translation_number").is_null()) r.translation_number = complex_from_json(j.at("translation_number"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed classification JSON: ") + e.what());
  }
}

nlohmann::json block_json(const TruncatedBlock& b) {
  nlohmann::json j = block_header(b);
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < b.entries.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < b.entries.cols(); ++k) row.push_back(complex_to_json(b.entries(i, k)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

TruncatedBlock block_from_json(const nlohmann::json& j) {
  try {
    TruncatedBlock b;
    b.space = space_from_json(j.at("space"));
    b.col_order = j.at("N").get<int>();
    b.row_order = j.at("M").get<int>();
    b.tail_flag = j.at("tail_flag").get<bool>();
    b.max_tail_ratio = j.at("max_tail_ratio").get<double>();
    b.tail_estimate = j.at("tail_estimate").get<double>();
    const auto& rows = j.at("entries");
    const auto nr = static_cast<Eigen::Index>(rows.size());
    const auto nc = nr ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    b.entries.resize(nr, nc);
    for (Eigen::Index i = 0; i < nr; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != nc) throw InvalidInput("ragged block entries");
      for (Eigen::Index k = 0; k < nc; ++k) b.entries(i, k) = complex_from_json(rows[i][k]);
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed block JSON: ") + e.what());
  }
}

SpiralCurve spiral_from_json(const nlohmann::json& j) {
  try {
    SpiralCurve s{complex_from_json(j.at("t")), j.at("beta").get<std::vector<double>>(), {},
                  j.at("includes_zero").get<bool>()};
    for (const auto& p : j.at("samples")) s.samples.push_back(complex_from_json(p));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed spiral JSON: ") + e.what());
  }
}

RotationSpectrum rotation_spectrum_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    RotationSpectrumKind k;
    if (kind == "finite_cyclic") k = RotationSpectrumKind::FiniteCyclic;
    else if (kind == "unit_circle") k = RotationSpectrumKind::UnitCircle;
    else if (kind == "geometric_to_zero") k = RotationSpectrumKind::GeometricToZero;
    else throw InvalidInput("unknown rotation spectrum kind: " + kind);
    RotationSpectrum r{k, complex_from_json(j.at("lambda")), {}, j.at("includes_zero").get<bool>()};
    for (const auto& p : j.at("points")) r.points.push_back(complex_from_json(p));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed rotation spectrum JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Emitter {
  const CliConfig& cfg;
  std::ostream& out;

  /// JSON goes to --json and, in json format, to stdout; CSV likewise.
  void emit(const nlohmann::json& j, const std::string& table, const std::string& csv) const {
    const std::string text = rounded(j).dump(2) + "\n";
    if (!cfg.json_path.empty()) write_file(cfg.json_path, text);
    if (!cfg.csv_path.empty() && !csv.empty()) write_file(cfg.csv_path, csv);
    switch (cfg.format) {
      case OutputFormat::Json: out << text; break;
      case OutputFormat::Csv: out << (csv.empty() ? text : csv); break;
      case OutputFormat::Table: out << table; break;
    }
  }
};

int cmd_classify(const CliConfig& cfg, const std::string& map_arg, std::ostream& out) {
  const MoebiusMap m = moebius_from_json(load_json_arg(map_arg));
  const nlohmann::json rec = classification_record(m, std::max(cfg.tol, kDefaultTol));
  std::ostringstream t;
  t << "class          " << rec["class"].get<std::string>() << (rec["borderline"].get<bool>() ? " (borderline)" : "")
    << '\n';
  for (const auto& p : rec["fixed_points"]) {
    t << "fixed point    "
      << (p["point"].is_string() ? std::string("infinity") : g12(complex_from_json(p["point"])))
      << "  multiplicity " << p["multiplicity"].get<int>();
    if (!p["derivative"].is_null()) t << "  derivative " << g12(complex_from_json(p["derivative"]));
    t << '\n';
  }
  if (!rec["denjoy_wolff"].is_null())
    t << "denjoy-wolff   " << g12(complex_from_json(rec["denjoy_wolff"]["location"])) << "  derivative "
      << g12(complex_from_json(rec["denjoy_wolff"]["derivative"])) << '\n';
  if (!rec["translation_number"].is_null())
    t << "translation    " << g12(complex_from_json(rec["translation_number"])) << '\n';
  Emitter{cfg, out}.emit(rec, t.str(), "");
  return kOk;
}

int tail_for(const CliConfig& cfg, const OperatorSpec& op) {
  return cfg.tail.value_or(std::max(default_internal_order(op, cfg.order), 2 * cfg.order));
}

int cmd_block(const CliConfig& cfg, const std::string& op_arg, std::ostream& out) {
  const OperatorSpec op = operator_from_json(load_json_arg(op_arg));
  const TruncatedBlock b = build_block(op, cfg.space, cfg.order, tail_for(cfg, op));
  std::ostringstream t;
  t << "space " << cfg.space.label() << "  N " << b.col_order << "  M " << b.row_order << "  tail_estimate "
    << g12(b.tail_estimate) << "  max_tail_ratio " << g12(b.max_tail_ratio) << (b.tail_flag ? "  SLOW-DECAY" : "")
    << '\n';
  const int show = std::min(b.col_order, 7);
  for (int i = 0; i <= show; ++i) {
    for (int k = 0; k <= show; ++k) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%12.5g%+11.4gi ", b.entries(i, k).real(), b.entries(i, k).imag());
      t << buf;
    }
    t << '\n';
  }
  if (show < b.col_order) t << "(leading " << show + 1 << "x" << show + 1 << " corner shown)\n";
  Emitter{cfg, out}.emit(block_json(b), t.str(), block_to_csv(b));
  return kOk;
}

int cmd_probe(const CliConfig& cfg, const std::string& op_arg, bool kernel, std::ostream& out) {
  const OperatorSpec op = operator_from_json(load_json_arg(op_arg));
  const DefectReport r = probe_all(op, cfg.space, cfg.order, tail_for(cfg, op));
  nlohmann::json j = r;
  j["space"] = cfg.space;
  j["operator"] = op;
  std::ostringstream t;
  const auto row = [&](const char* name, const std::string& v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-28s", name);
    t << buf << v << '\n';
  };
  row("space", cfg.space.label());
  row("N", std::to_string(r.order));
  row("M", std::to_string(r.internal_order));
  row("min_eig_selfcomm", g12(r.min_eig_selfcomm));
  row("norm_selfcomm", g12(r.norm_selfcomm));
  row("quasinormal_defect", g12(r.quasinormal_defect));
  row("selfadjoint_defect", g12(r.selfadjoint_defect));
  row("unitary_defect", g12(r.unitary_defect));
  row("tail_bound", g12(r.tail_bound));
  row("non_hyponormal_certificate", r.non_hyponormal_certificate ? "true" : "false");
  row("slow_decay", r.slow_decay ? "true" : "false");
  if (kernel) {
    const auto kc = kernel_condition_probe(op, cfg.space, default_w_grid(), std::max(cfg.tol, 1e-8));
    const auto worst = std::min_element(kc.begin(), kc.end(), [](auto& a, auto& b) { return a.chi < b.chi; });
    const long certs = std::count_if(kc.begin(), kc.end(), [](auto& k) { return k.certificate; });
    j["kernel_condition"] = {{"grid_size", kc.size()},
                             {"certificates", certs},
                             {"min_chi", worst->chi},
                             {"argmin_w", complex_to_json(worst->w)}};
    row("kernel_min_chi", g12(worst->chi) + " at w=" + g12(worst->w));
    row("kernel_certificates", std::to_string(certs) + "/" + std::to_string(kc.size()));
  }
  for (const auto& w : r.warnings) t << "warning: " << w << '\n';
  Emitter{cfg, out}.emit(j, t.str(), "");
  return kOk;
}

struct SpectrumArgs {
  std::string op;
  bool parabolic = false;
  std::string zeta = "1";
  std::string t;
  std::string rotation;
  double beta_max = 16.0;
  int samples = 64;
  int k_max = 24;
  std::string residual_csv;
};

int cmd_spectrum(const CliConfig& cfg, const SpectrumArgs& a, std::ostream& out) {
  const int modes = (a.op.empty() ? 0 : 1) + (a.parabolic ? 1 : 0) + (a.rotation.empty() ? 0 : 1);
  if (modes != 1) throw InvalidInput("spectrum needs exactly one of --op, --parabolic, --rotation");
  std::ostringstream t;
  if (!a.rotation.empty()) {
    const RotationSpectrum r = rotation_spectrum(parse_complex(a.rotation));
    t << "kind " << to_string(r.kind) << (r.includes_zero ? "  (0 included)" : "") << '\n';
    for (cplx p : r.points) t << "  " << g12(p) << '\n';
    Emitter{cfg, out}.emit(r, t.str(), points_to_csv(r.points));
    return kOk;
  }
  if (a.parabolic) {
    if (a.t.empty()) throw InvalidInput("--parabolic needs --t");
    const cplx zeta = parse_complex(a.zeta), tt = parse_complex(a.t);
    const SpiralCurve s = spiral_curve(tt, a.beta_max, a.samples);
    const int m = cfg.tail.value_or(400);
    const auto rows = residual_sweep({zeta}, {tt}, default_beta_grid(), m);
    nlohmann::json j = {{"spiral", s}, {"residuals", rows}, {"M", m}};
    t << "spiral e^{-beta t}, t=" << g12(tt) << ", " << s.samples.size() << " samples, beta in [0, "
      << g12(a.beta_max) << "], limit point 0\n";
    t << "beta            eigenvalue                     residual\n";
    for (const auto& r : rows) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%-15s %-30s %s\n", g12(r.beta).c_str(), g12(std::exp(-r.beta * tt)).c_str(),
                    g12(r.residual).c_str());
      t << buf;
    }
    if (!a.residual_csv.empty()) write_file(a.residual_csv, residuals_to_csv(rows));
    Emitter{cfg, out}.emit(j, t.str(), points_to_csv(s.samples));
    return kOk;
  }
  const OperatorSpec op = operator_from_json(load_json_arg(a.op));
  const TruncatedBlock b = build_block(op, cfg.space, cfg.order, tail_for(cfg, op));
  const auto ev = truncation_eigenvalues(b);
  const double cosine = max_eigenvector_cosine(b);
  const auto gelfand = spectral_radius_estimate(op, cfg.space, cfg.order, a.k_max);
  nlohmann::json evj = nlohmann::json::array();
  for (cplx e : ev) evj.push_back(complex_to_json(e));
  nlohmann::json j = {{"eigenvalues", evj},
                      {"diagnostic_only", true},
                      {"max_eigenvector_cosine", cosine},
                      {"gelfand", gelfand},
                      {"N", cfg.order},
                      {"space", cfg.space}};
  t << "finite-section eigenvalues (diagnostic), N=" << cfg.order << '\n';
  for (cplx e : ev) t << "  " << g12(e) << '\n';
  t << "max eigenvector cosine  " << g12(cosine) << '\n';
  t << "||A^k||^(1/k) at k=" << a.k_max << "  " << g12(gelfand.back()) << '\n';
  Emitter{cfg, out}.emit(j, t.str(), points_to_csv(ev));
  return kOk;
}

int cmd_scenario_list(const CliConfig& cfg, std::ostream& out) {
  nlohmann::json j = nlohmann::json::array();
  std::ostringstream t;
  for (const auto& s : list_scenarios()) {
    j.push_back({{"id", s.id}, {"claim", s.claim}, {"exploratory", s.exploratory}});
    char buf[48];
    std::snprintf(buf, sizeof buf, "%-30s", s.id.c_str());
    t << buf << s.claim << '\n';
  }
  Emitter{cfg, out}.emit(j, t.str(), "");
  return kOk;
}

int cmd_scenario_run(const CliConfig& cfg, std::vector<std::string> ids, bool all, int scale, bool space_given,
                     bool order_given, bool tol_given, std::ostream& out) {
  if (all) {
    ids.clear();
    for (const auto& s : list_scenarios()) ids.push_back(s.id);
  }
  if (ids.empty()) throw InvalidInput("scenario run needs --id or --all");
  Overrides ov;
  ov.scale = scale;
  if (order_given) ov.order = cfg.order;
  ov.internal_order = cfg.tail;
  if (tol_given) ov.tol = cfg.tol;
  if (space_given) ov.spaces = {cfg.space};

  // Scenarios are independent; results are collected in id order.
  std::vector<std::future<ScenarioReport>> jobs;
  for (const auto& id : ids) jobs.push_back(std::async(std::launch::async, [id, ov] { return run_scenario(id, ov); }));
  std::vector<ScenarioReport> reports;
  for (auto& f : jobs) reports.push_back(f.get());

  bool failed = false;
  nlohmann::json j = nlohmann::json::array();
  std::ostringstream t;
  double total = 0.0;
  for (const auto& r : reports) {
    failed = failed || !r.passed();
    total += r.runtime_s;
    j.push_back(r);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-30s %-7s %4zu checks  %8.3fs\n", r.id.c_str(), r.verdict().c_str(),
                  r.checks.size(), r.runtime_s);
    t << buf;
    for (const auto& c : r.checks) {
      if (c.passed && !(r.exploratory && ids.size() == 1)) continue;
      t << "    " << (c.passed ? "" : "FAILED ") << c.name << " [" << c.space << ", N=" << c.order << "] "
        << g12(c.value) << ' ' << c.comparator << (c.comparator == "report" ? "" : " " + g12(c.threshold)) << '\n';
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "total %.3fs: %s\n", total, failed ? "FAIL" : "PASS");
  t << buf;
  Emitter{cfg, out}.emit(reports.size() == 1 ? j[0] : j, t.str(), "");
  return failed ? kScenarioFail : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wcop: weighted composition operators on Hardy and weighted Bergman spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string space_text = "hardy", format_text = "table", config_path, json_path, csv_path;
  int order = 24, tail = 0;
  double tol = 1e-9;
  auto* o_space = app.add_option("--space", space_text, "hardy | bergman:<alpha>");
  auto* o_order = app.add_option("--order", order, "compression order N");
  auto* o_tail = app.add_option("--tail", tail, "internal order M (default per operator)");
  auto* o_tol = app.add_option("--tol", tol, "tolerance");
  auto* o_format = app.add_option("--format", format_text, "table | json | csv");
  app.add_option("--json", json_path, "write JSON output to this path");
  app.add_option("--csv", csv_path, "write CSV output to this path");
  app.add_option("--config", config_path, "JSON config file");

  std::string map_arg, op_arg;
  auto* classify_cmd = app.add_subcommand("classify", "classify a linear fractional self-map");
  classify_cmd->add_option("map", map_arg, "map JSON or file")->required();

  auto* block_cmd = app.add_subcommand("block", "truncated matrix of an operator");
  block_cmd->add_option("op", op_arg, "operator JSON or file")->required();

  bool kernel = false;
  auto* probe_cmd = app.add_subcommand("probe", "normality-class defects of an operator");
  probe_cmd->add_option("op", op_arg, "operator JSON or file")->required();
  probe_cmd->add_flag("--kernel", kernel, "also run the reproducing-kernel condition");

  SpectrumArgs sa;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "spectral data");
  spectrum_cmd->add_option("--op", sa.op, "operator JSON or file (finite-section diagnostics)");
  spectrum_cmd->add_flag("--parabolic", sa.parabolic, "parabolic spiral, eigenpairs and residuals");
  spectrum_cmd->add_option("--zeta", sa.zeta, "boundary fixed point");
  spectrum_cmd->add_option("--t", sa.t, "translation number");
  spectrum_cmd->add_option("--rotation", sa.rotation, "lambda for phi(z) = lambda z");
  spectrum_cmd->add_option("--beta-max", sa.beta_max, "spiral parameter range");
  spectrum_cmd->add_option("--samples", sa.samples, "spiral samples");
  spectrum_cmd->add_option("--k-max", sa.k_max, "largest power in the Gelfand sequence");
  spectrum_cmd->add_option("--residual-csv", sa.residual_csv, "write the residual table as CSV");

  auto* scenario_cmd = app.add_subcommand("scenario", "verification scenarios");
  scenario_cmd->require_subcommand(1);
  auto* list_cmd = scenario_cmd->add_subcommand("list", "list registered scenarios");
  std::vector<std::string> ids;
  bool all = false;
  int scale = 1;
  auto* run_cmd = scenario_cmd->add_subcommand("run", "run scenarios");
  run_cmd->add_option("--id", ids, "scenario id (repeatable)");
  run_cmd->add_flag("--all", all, "run every scenario");
  run_cmd->add_option("--scale", scale, "multiply default orders");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    CliConfig cfg;
    if (!config_path.empty()) apply_config(cfg, load_json_arg(config_path));
    if (o_space->count()) cfg.space = SpaceSpec::parse(space_text);
    if (o_order->count()) cfg.order = order;
    if (o_tail->count()) cfg.tail = tail;
    if (o_tol->count()) cfg.tol = tol;
    if (o_format->count()) cfg.format = format_from_string(format_text);
    cfg.json_path = json_path;
    cfg.csv_path = csv_path;
    cfg.validate();

    if (classify_cmd->parsed()) return cmd_classify(cfg, map_arg, out);
    if (block_cmd->parsed()) return cmd_block(cfg, op_arg, out);
    if (probe_cmd->parsed()) return cmd_probe(cfg, op_arg, kernel, out);
    if (spectrum_cmd->parsed()) return cmd_spectrum(cfg, sa, out);
    if (list_cmd->parsed()) return cmd_scenario_list(cfg, out);
    if (run_cmd->parsed())
      return cmd_scenario_run(cfg, ids, all, scale, o_space->count() > 0, o_order->count() > 0, o_tol->count() > 0,
                              out);
    err << "no command\n";
    return kInvalidInput;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ConstraintViolation& e) {
    err << "constraint violation: " << e.what() << '\n';
    return kConstraint;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace wcop::cli
