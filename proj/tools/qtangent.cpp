#include "qtangent/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace qtangent;

namespace {

constexpr int kPass = 0;
constexpr int kInputError = 1;
constexpr int kCheckFailure = 2;

struct Config {
  std::string group = "preset:S3";
  std::string side = "functions";
  std::string out;
  std::string format = "json";
  std::vector<std::string> checks;
  std::vector<std::string> qchecks;
  unsigned max_degree = 3;
  std::size_t cap = FiniteGroup::kDefaultCap;
  std::string tangent_file;
  std::vector<std::string> lambdas;
  bool seed_free = false;
};

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

ClassifyOptions options(const Config& cfg, const FiniteGroup& g, Side side) {
  ClassifyOptions opt;
  if (!cfg.checks.empty()) opt.checks = split_list(cfg.checks);
  if (cfg.lambdas.empty()) return opt;
  if (side != Side::GroupAlgebra) throw InputError("--lambda applies to the group_algebra side only");
  const auto tab = character_table(g);
  for (const auto& spec : cfg.lambdas) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("--lambda expects ROW:c*g; ... but got '" + spec + "'");
    std::size_t row = 0;
    try {
      row = std::stoul(spec.substr(0, colon));
    } catch (const std::exception&) {
      throw InputError("bad character row in --lambda '" + spec + "'");
    }
    opt.user_lambda[row] = parse_group_element(g, tab.field, spec.substr(colon + 1));
  }
  return opt;
}

void print_failures(const ClassificationReport& rep) {
  for (const auto& r : rep.calculi) {
    for (const auto& c : r.verification)
      if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.counterexample << "\n";
    if (r.error) std::cerr << "FAIL " << r.kind << ": " << *r.error << "\n";
  }
  if (!rep.decomposition_ok) std::cerr << "FAIL decomposition: " << rep.decomposition_detail << "\n";
  for (const auto& c : rep.cross_checks)
    if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.detail << "\n";
}

int run_classify(const Config& cfg, bool with_cross_checks) {
  auto g = group_from_source(cfg.group, cfg.cap);
  auto side = parse_side(cfg.side);
  auto rep = classify(g, side, options(cfg, g, side));
  if (with_cross_checks) rep.cross_checks = cross_checks(g, side);
  emit(cfg, render(rep, cfg.format));
  if (rep.passed()) return kPass;
  print_failures(rep);
  return kCheckFailure;
}

/// Tangent file: {"side": "functions", "conductor": 1, "elements": ["1*(1,2); -1*e", ...]}.
/// Elements live in H: group elements on the functions side, delta functions on the group side.
int run_tangent_file(const Config& cfg) {
  auto g = group_from_source(cfg.group, cfg.cap);
  std::ifstream in(cfg.tangent_file);
  if (!in) throw InputError("cannot open tangent file '" + cfg.tangent_file + "'");
  nlohmann::json spec;
  std::vector<std::string> items;
  Side side = parse_side(cfg.side);
  unsigned conductor = 1;
  try {
    in >> spec;
    if (spec.contains("side")) side = parse_side(spec.at("side").get<std::string>());
    conductor = spec.value("conductor", 1U);
    items = spec.at("elements").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed tangent file: " + std::string(e.what()));
  }
  if (conductor == 0) throw InputError("conductor must be positive");
  auto field = make_cyclotomic_field(conductor);
  QuantumDouble<Cyclotomic> qd(HopfPair<Cyclotomic>(std::make_shared<const FiniteGroup>(g)), side);
  std::vector<HopfElement<Cyclotomic>> xs;
  for (const auto& s : items) xs.push_back(parse_group_element(g, field, s, qd.hb()));
  auto t = TangentSpace<Cyclotomic>::span(qd, xs, "tangent-file");
  std::vector<std::string> checks = cfg.checks.empty() ? all_checks() : split_list(cfg.checks);
  auto results = verify_calculus(t, checks);

  ojson j;
  j["group"] = g.name();
  j["side"] = side_name(side);
  j["conductor"] = conductor;
  j["dimension"] = t.dim();
  j["stable"] = t.stable();
  j["verification"] = to_json(results);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  j["status"] = ok ? "pass" : "fail";

  std::string text;
  if (cfg.format == "json") {
    text = j.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    text = "check,status\n";
    for (const auto& r : results) text += r.name + "," + (r.passed ? "pass" : "fail") + "\n";
  } else if (cfg.format == "text") {
    text = g.name() + " " + side_name(side) + " tangent of dim " + std::to_string(t.dim()) + "\n";
    for (const auto& r : results) text += "  " + r.name + ": " + (r.passed ? "pass" : "FAIL " + r.counterexample) + "\n";
  } else {
    throw InputError("unknown format '" + cfg.format + "' (expected json, csv or text)");
  }
  emit(cfg, text);
  if (ok) return kPass;
  for (const auto& r : results)
    if (!r.passed) std::cerr << "FAIL " << r.name << ": " << r.counterexample << "\n";
  return kCheckFailure;
}

int run_qsuite(const Config& cfg) {
  auto selected = split_list(cfg.qchecks);
  std::vector<uq::QCheck> checks;
  try {
    checks = uq::run_qsuite(selected, cfg.max_degree);
  } catch (const PoleError& e) {
    std::cerr << "FAIL pole at s = 1: " << e.what() << "\n";
    return kCheckFailure;
  }
  emit(cfg, render_qsuite(checks, cfg.max_degree, cfg.format));
  int code = kPass;
  for (const auto& c : checks)
    if (!c.passed) {
      std::cerr << "FAIL " << c.name << ": " << c.detail << "\n";
      code = kCheckFailure;
    }
  return code;
}

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--out", cfg.out, "Output file (default stdout)");
  cmd->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_flag("--seed-free", cfg.seed_free, "Reserved; every algorithm is deterministic");
}

void add_group(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--group", cfg.group, "preset:NAME (Z4, S3, D5, Q8, klein-4, ...) or a JSON spec file");
  cmd->add_option("--side", cfg.side, "functions or group_algebra");
  cmd->add_option("--checks", cfg.checks, "Comma-separated subset of verify_calculus checks");
  cmd->add_option("--cap", cfg.cap, "Maximum group order");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bicovariant calculi on finite groups and the U_q(sl2) q-suite"};
  app.require_subcommand(1);
  Config cfg;

  auto* classify_cmd = app.add_subcommand("classify", "Classify the coirreducible calculi of a group");
  add_group(classify_cmd, cfg);
  add_common(classify_cmd, cfg);
  classify_cmd->add_option("--lambda", cfg.lambdas, "ROW:c1*g1; c2*g2 (group_algebra side, repeatable)");

  auto* verify_cmd = app.add_subcommand("verify", "Classify and run every check and cross-check");
  add_group(verify_cmd, cfg);
  add_common(verify_cmd, cfg);
  verify_cmd->add_option("--lambda", cfg.lambdas, "ROW:c1*g1; c2*g2 (group_algebra side, repeatable)");
  verify_cmd->add_option("--tangent-file", cfg.tangent_file, "Verify a user tangent space instead");

  auto* qsuite_cmd = app.add_subcommand("qsuite", "Run the U_q(sl2) spin-1/2 checks");
  add_common(qsuite_cmd, cfg);
  qsuite_cmd->add_option("--check", cfg.qchecks, "Check to run (repeatable or comma-separated)");
  qsuite_cmd->add_option("--max-degree", cfg.max_degree, "Degree bound for the q-trace check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (cfg.seed_free) throw InputError("--seed-free is reserved: every algorithm is already deterministic");
    if (*classify_cmd) return run_classify(cfg, false);
    if (*verify_cmd) return cfg.tangent_file.empty() ? run_classify(cfg, true) : run_tangent_file(cfg);
    return run_qsuite(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return kCheckFailure;
  }
}
