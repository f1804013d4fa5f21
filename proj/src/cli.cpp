#include "threept/cli.hpp"

#include "threept/json_io.hpp"
#include "threept/realize.hpp"
#include "threept/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace threept::cli {

namespace {

using json_io::InputError;
using json_io::json;

enum Exit { kOk = 0, kInfeasible = 1, kInputError = 2, kPlanDefect = 3 };

struct RunConfig {
  std::string input_path;
  std::string inline_json;
  std::string A, B, m0, mA, mB;
  std::string format = "json";
  std::uint64_t seed = 20240601;
  std::uint64_t depth = 8;
  std::optional<std::uint64_t> trials;
  std::int64_t box = 10000;
  bool subset = false;
};

struct Input {
  DiagonalSpec seq;
  json_io::PartialTarget target;
  json raw;
};

json load_json(const RunConfig& cfg) {
  std::string text;
  if (!cfg.input_path.empty()) {
    std::ifstream in(cfg.input_path);
    if (!in) throw InputError("cannot open " + cfg.input_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else if (!cfg.inline_json.empty()) {
    text = cfg.inline_json;
  } else {
    throw InputError("no input: pass --input PATH or --json STR");
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

/// Either a bare sequence or {"sequence": ..., "target": ...}; flags override the target fields.
Input load_input(const RunConfig& cfg) {
  Input in;
  in.raw = load_json(cfg);
  if (in.raw.is_object() && in.raw.contains("sequence")) {
    in.seq = json_io::spec_from(in.raw["sequence"]);
    if (in.raw.contains("target")) in.target = json_io::target_from(in.raw["target"]);
  } else {
    in.seq = json_io::spec_from(in.raw);
  }
  auto flag_rational = [](const std::string& text, const char* name) {
    try {
      return parse_rational(text);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--") + name + ": " + e.what());
    }
  };
  if (!cfg.A.empty()) in.target.A = flag_rational(cfg.A, "A");
  if (!cfg.B.empty()) in.target.B = flag_rational(cfg.B, "B");
  if (!cfg.m0.empty()) in.target.m0 = json_io::multiplicity_from(json(cfg.m0), "--m0");
  if (!cfg.mA.empty()) in.target.mA = json_io::multiplicity_from(json(cfg.mA), "--mA");
  if (!cfg.mB.empty()) in.target.mB = json_io::multiplicity_from(json(cfg.mB), "--mB");
  if (in.target.B && *in.target.B != in.seq.bound)
    throw InputError("target B = " + to_string(*in.target.B) + " differs from the sequence bound " +
                     to_string(in.seq.bound));
  return in;
}

const Rational& require_A(const Input& in) {
  if (!in.target.A) throw InputError("missing A (set --A or target.A)");
  return *in.target.A;
}

/// nullopt when no multiplicity is given; all three are required otherwise.
std::optional<SpectrumTarget> full_target(const Input& in) {
  const auto& t = in.target;
  const int given = int(t.m0.has_value()) + int(t.mA.has_value()) + int(t.mB.has_value());
  if (given == 0) return std::nullopt;
  if (given != 3) throw InputError("give all of m0, mA, mB or none of them");
  return SpectrumTarget{require_A(in), in.seq.bound, *t.m0, *t.mA, *t.mB};
}

std::string witness_text(const Witness& w) {
  std::string out;
  auto add = [&](const char* name, const std::optional<Integer>& v) {
    if (!v) return;
    out += (out.empty() ? "" : ", ") + std::string(name) + "=" + to_string(*v);
  };
  add("N", w.N);
  add("k", w.k);
  add("n", w.n);
  return out.empty() ? "-" : out;
}

void print_decision(std::ostream& out, const RunConfig& cfg, const Decision& d) {
  if (cfg.format == "json") {
    out << json_io::decision_to(d).dump(2) << "\n";
    return;
  }
  out << "case      " << to_string(d.label) << "\n";
  out << "feasible  " << (d.feasible ? "yes" : "no") << "\n";
  if (d.witness) out << "witness   " << witness_text(*d.witness) << "\n";
  if (d.violation) out << "violation " << d.violation->condition << ": " << d.violation->explanation << "\n";
}

Decision run_decision(const Input& in, bool subset) {
  const auto target = full_target(in);
  try {
    if (!target) return decide_any(in.seq, require_A(in), in.seq.bound);
    DecideOptions options;
    options.subset_mode = subset;
    return decide(in.seq, *target, options);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

int cmd_decide(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  const Decision d = run_decision(in, cfg.subset);
  print_decision(out, cfg, d);
  return d.feasible ? kOk : kInfeasible;
}

int cmd_admissible(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  // the admissible set is computed at B = 1 and scaled back
  const Rational B = in.seq.bound;
  AdmissibleSet set = admissible_set(B == 1 ? in.seq : scaled(in.seq, 1 / B));
  for (auto& e : set.entries) {
    e.A *= B;
    e.lower *= B;
    e.upper *= B;
  }
  if (cfg.format == "json") {
    out << json_io::admissible_to(set).dump(2) << "\n";
    return kOk;
  }
  if (set.full_interval) {
    out << "(0," << to_string(B) << ")\n";
    return kOk;
  }
  if (set.entries.empty()) {
    out << "{}\n";
    return kOk;
  }
  std::size_t width = 0;
  for (const auto& e : set.entries) width = std::max(width, to_string(e.A).size());
  for (const auto& e : set.entries)
    out << std::setw(int(width)) << to_string(e.A) << "  N=" << to_string(e.N) << ", k=" << to_string(e.k) << "  ("
        << to_string(e.lower) << ", " << to_string(e.upper) << "]\n";
  return kOk;
}

void print_matrix(std::ostream& out, const RunConfig& cfg, const SymmetricMatrix& m, const RealizationError& err,
                  std::size_t rotations) {
  if (cfg.format == "json") {
    out << json_io::matrix_to(m, err, rotations).dump(2) << "\n";
    return;
  }
  std::ostringstream body;
  body << std::fixed << std::setprecision(12);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) body << (j ? " " : "") << std::setw(16) << m(i, j);
    body << "\n";
  }
  out << body.str();
  out << std::scientific << std::setprecision(3) << "diagonal error   " << err.diagonal << "\n"
      << "eigenvalue error " << err.eigenvalues << "\n"
      << "rotations        " << rotations << "\n";
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  const auto target = full_target(in);
  if (!target) throw InputError("construct needs m0, mA and mB");
  const bool finite = case_of(*target) == CaseLabel::a;

  DecideOptions options;
  options.subset_mode = cfg.subset || finite;
  Decision d;
  try {
    d = decide(in.seq, *target, options);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (!d.feasible) {
    print_decision(out, cfg, d);
    return kInfeasible;
  }

  if (finite) {
    const auto eigs = three_point_spectrum(target->A, target->B, target->m0.value(), target->mA.value(),
                                           target->mB.value());
    const auto built = construct_hermitian_traced(eigs, in.seq.finite);
    const auto err = realization_error(built.matrix, in.seq.finite, eigs);
    print_matrix(out, cfg, built.matrix, err, built.rotations.size());
    return kOk;
  }

  const ConstructionPlan plan = certify(in.seq, *target);
  const PlanCheck check = verify_plan(in.seq, plan);
  if (cfg.format == "json") {
    out << json_io::plan_to(in.seq, plan, check, cfg.depth).dump(2) << "\n";
  } else {
    out << "case      " << to_string(plan.label) << "\n"
        << "transfers " << plan.transfers.size() << "\n"
        << "blocks    " << plan.blocks.size() << "\n"
        << "verified  " << (check.ok ? "yes" : "no") << "\n";
    for (const auto& f : check.failures) out << "  " << f << "\n";
  }
  return check.ok ? kOk : kPlanDefect;
}

bool expected_feasible(const json& expect, const std::string& where) {
  if (expect.is_boolean()) return expect.get<bool>();
  if (expect.is_string()) {
    if (expect == "feasible") return true;
    if (expect == "infeasible") return false;
  }
  throw InputError(where + ": expected true/false or \"feasible\"/\"infeasible\"");
}

SuiteReport fixture_suite(const json& fixture, bool subset) {
  if (!fixture.is_object() || !fixture.contains("cases") || !fixture["cases"].is_array())
    throw InputError("fixture: expected {\"cases\": [...]}");
  const json& cases = fixture["cases"];
  SuiteReport report{"fixture", cases.size(), 0, {}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string where = "fixture.cases[" + std::to_string(i) + "]";
    const json& c = cases[i];
    if (!c.is_object() || !c.contains("sequence") || !c.contains("expect"))
      throw InputError(where + ": needs \"sequence\" and \"expect\"");
    Input in;
    in.seq = json_io::spec_from(c["sequence"]);
    if (c.contains("target")) in.target = json_io::target_from(c["target"]);
    const bool want = expected_feasible(c["expect"], where + ".expect");
    const Decision d = run_decision(in, subset);
    if (d.feasible != want)
      report.fail(where + ": expected " + (want ? "feasible" : "infeasible") + ", got case " + to_string(d.label) +
                  (d.violation ? " (" + d.violation->condition + ")" : ""));
  }
  return report;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<SuiteReport> reports;
  if (!cfg.input_path.empty() || !cfg.inline_json.empty()) reports.push_back(fixture_suite(load_json(cfg), cfg.subset));
  auto n = [&](std::uint64_t fallback) { return cfg.trials.value_or(fallback); };
  const std::uint64_t s = cfg.seed;
  reports.push_back(sampling_suite(s, n(200)));
  reports.push_back(enumeration_suite(s + 1, n(100), cfg.box));
  reports.push_back(roundtrip_suite(s + 2, n(100)));
  reports.push_back(symmetry_suite(s + 3, n(100)));
  reports.push_back(kadison_suite(s + 4, n(500)));
  reports.push_back(move_mass_suite(s + 5, n(1000)));
  reports.push_back(certify_suite(s + 6, n(100)));

  const bool passed = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.passed(); });
  if (cfg.format == "json") {
    json suites = json::array();
    for (const auto& r : reports) suites.push_back(json_io::suite_to(r));
    out << json{{"seed", cfg.seed}, {"suites", suites}, {"passed", passed}}.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      out << std::left << std::setw(12) << r.name << std::right << std::setw(8) << r.trials << std::setw(8)
          << r.failures << "  " << (r.passed() ? "PASS" : "FAIL") << "\n";
      for (const auto& note : r.notes) out << "    " << note << "\n";
    }
  }
  return passed ? kOk : kInfeasible;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Diagonals of self-adjoint operators with three-point spectrum {0, A, B}", "threept"};
  app.require_subcommand(1, 1);

  auto* input = app.add_option("--input", cfg.input_path, "JSON file: a sequence, or {sequence, target}");
  app.add_option("--json", cfg.inline_json, "inline JSON, same shape as --input")->excludes(input);
  app.add_option("--A", cfg.A, "inner eigenvalue p/q");
  app.add_option("--B", cfg.B, "outer eigenvalue p/q (must equal the sequence bound)");
  app.add_option("--m0", cfg.m0, "multiplicity of 0: integer or inf");
  app.add_option("--mA", cfg.mA, "multiplicity of A: integer or inf");
  app.add_option("--mB", cfg.mB, "multiplicity of B: integer or inf");
  app.add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", cfg.seed, "seed for verify");
  app.add_option("--depth", cfg.depth, "tail terms printed per slice in construction plans");
  app.add_option("--trials", cfg.trials, "trials per verify suite");
  app.add_option("--box", cfg.box, "N and k range of the brute-force witness search")->check(CLI::PositiveNumber);
  app.add_flag("--subset", cfg.subset, "allow zero multiplicities");

  auto* decide_cmd = app.add_subcommand("decide", "decide feasibility of a target spectrum");
  auto* admissible_cmd = app.add_subcommand("admissible", "list the admissible inner eigenvalues");
  auto* construct_cmd = app.add_subcommand("construct", "build a matrix or a construction plan");
  auto* verify_cmd = app.add_subcommand("verify", "run the seeded oracle suites");
  for (auto* sub : {decide_cmd, admissible_cmd, construct_cmd, verify_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (decide_cmd->parsed()) return cmd_decide(cfg, out);
    if (admissible_cmd->parsed()) return cmd_admissible(cfg, out);
    if (construct_cmd->parsed()) return cmd_construct(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kPlanDefect;
  }
}

}  // namespace threept::cli
