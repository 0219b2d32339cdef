// eigconf: eigenvalue configurations of symmetric matrix pairs.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eigconf/condition_file.hpp"
#include "eigconf/ec_engine.hpp"
#include "eigconf/matrix_file.hpp"
#include "eigconf/random_instances.hpp"
#include "eigconf/transform.hpp"

using namespace eigconf;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFalse = 1, kNonGeneric = 2, kUsage = 3, kResource = 4 };

struct Global {
  std::string format = "text";
  bool machine() const { return format == "machine"; }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

long default_degree_cap() {
  if (const char* env = std::getenv("EIGCONF_DEGREE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw UsageError("EIGCONF_DEGREE_CAP must be a positive integer");
    return v;
  }
  return kDegreeCap;
}

std::vector<long> parse_ec(const std::string& text) {
  std::vector<long> out;
  std::string s = text;
  for (char& ch : s)
    if (ch == '(' || ch == ')' || ch == '[' || ch == ']') ch = ' ';
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::string t = detail::trim(cell);
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || *end != '\0') throw UsageError("--ec expects integers separated by commas, got '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--ec is empty");
  return out;
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

// ---------------------------------------------------------------------------

struct EcArgs {
  std::string input;
  std::optional<long> cap;
};

int cmd_ec(const Global& g, const EcArgs& args) {
  auto pair = load_matrix_file(args.input);
  if (!pair.F.is_numeric() || !pair.G.is_numeric())
    throw UsageError("ec needs numeric matrices; use condition for parametric input");
  const long cap = args.cap.value_or(kNumericDegreeCap);

  std::optional<OracleReport> oracle;
  std::optional<TheoremReport> theorem;
  std::optional<GenericityError> rejected_oracle, rejected_theorem;
  try {
    oracle = ec_oracle_report(pair.F, pair.G);
  } catch (const GenericityError& e) {
    rejected_oracle = e;
  }
  try {
    theorem = ec_via_theorem_report(pair.F, pair.G, cap);
  } catch (const GenericityError& e) {
    rejected_theorem = e;
  }

  if (rejected_oracle || rejected_theorem) {
    const auto& e = rejected_oracle ? *rejected_oracle : *rejected_theorem;
    const bool both = rejected_oracle && rejected_theorem;
    if (g.machine()) {
      std::cout << json{{"generic", false},
                        {"witness", e.witness()},
                        {"witness_degree", e.witness_degree()},
                        {"oracle_rejected", bool(rejected_oracle)},
                        {"theorem_rejected", bool(rejected_theorem)}}
                       .dump()
                << "\n";
    } else {
      std::cout << "genericity: violated, shared factor " << e.witness() << " (degree " << e.witness_degree()
                << ")\n";
      std::cout << "oracle: " << (rejected_oracle ? "rejected" : "accepted") << "\n";
      std::cout << "theorem: " << (rejected_theorem ? "rejected" : "accepted") << "\n";
    }
    return both ? kNonGeneric : kFalse;
  }

  const bool agree = oracle->ec == theorem->ec;
  if (g.machine()) {
    std::cout << json{{"generic", true},
                      {"m", pair.F.size()},
                      {"n", pair.G.size()},
                      {"oracle", oracle->ec.c},
                      {"theorem", theorem->ec.c},
                      {"y", theorem->y},
                      {"left_of_first", oracle->left_of_first},
                      {"agree", agree}}
                     .dump()
              << "\n";
  } else {
    std::cout << "genericity: ok\n";
    std::cout << "oracle:  EC = " << oracle->ec.to_string() << "\n";
    std::cout << "theorem: EC = " << theorem->ec.to_string() << "\n";
    std::cout << "y = " << join(theorem->y) << "\n";
    if (!agree) std::cout << "MISMATCH between oracle and theorem\n";
  }
  return agree ? kOk : kFalse;
}

// ---------------------------------------------------------------------------

struct ConditionArgs {
  std::string input;
  std::string ec;
  std::string output;
  bool expand = false;
  bool sign_patterns = false;
  std::size_t term_budget = kDefaultTermBudget;
  std::optional<long> cap;
};

int cmd_condition(const Global& g, const ConditionArgs& args) {
  auto pair = load_matrix_file(args.input);
  ConditionOptions opt;
  opt.expand = args.expand;
  opt.with_sign_patterns = args.sign_patterns;
  opt.term_budget = args.term_budget;
  opt.cap = args.cap.value_or(default_degree_cap());
  auto c = parse_ec(args.ec);
  if (c.size() != pair.F.size())
    throw UsageError("--ec has " + std::to_string(c.size()) + " entries but F is " + std::to_string(pair.F.size()) +
                     "x" + std::to_string(pair.F.size()));
  auto P = condition_for_ec(pair.F, pair.G, ECVector{c}, opt);
  auto doc = serialize_condition(P);

  std::ostream& report = args.output.empty() ? std::cerr : std::cout;
  if (!args.output.empty()) {
    std::ofstream out(args.output, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + args.output + "'");
    out << doc;
  } else {
    std::cout << doc;
  }
  if (g.machine()) {
    json degrees = json::array();
    for (const auto& cl : P.clauses) degrees.push_back(cl.d.degree());
    report << json{{"target", P.c.c},
                   {"y", P.y},
                   {"unsatisfiable", P.unsatisfiable},
                   {"degrees", degrees},
                   {"summary", P.summary()}}
                  .dump()
           << "\n";
  } else {
    report << P.summary() << "\n";
    if (P.unsatisfiable) report << "note: the target is unreachable; the condition is unsatisfiable\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string input;
  std::vector<std::string> bindings;
};

int cmd_eval(const Global& g, const EvalArgs& args) {
  auto P = load_condition_file(args.input);
  std::map<std::string, Rational> point;
  for (const auto& b : args.bindings) {
    auto eq = b.find('=');
    if (eq == std::string::npos) throw UsageError("binding '" + b + "' is not of the form name=value");
    std::string name = detail::trim(b.substr(0, eq));
    if (point.count(name)) throw UsageError("parameter '" + name + "' bound twice");
    point[name] = parse_expression(b.substr(eq + 1), SymMatrix::no_params()).constant_value();
  }
  Evaluation ev;
  try {
    ev = evaluate_condition(P, point);
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  }
  if (g.machine()) {
    json clauses = json::array();
    for (std::size_t i = 0; i < P.clauses.size(); ++i)
      clauses.push_back({{"r", P.clauses[i].r}, {"target", P.clauses[i].target}, {"variations", ev.variations[i]}});
    json out{{"outcome", outcome_name(ev.outcome)}, {"clauses", clauses}};
    if (ev.witness) out["witness"] = ev.witness->to_string("z");
    std::cout << out.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < P.clauses.size(); ++i)
      std::cout << "v(d_" << P.clauses[i].r << ") = " << ev.variations[i] << ", target " << P.clauses[i].target
                << (ev.variations[i] == P.clauses[i].target ? "" : "  (differs)") << "\n";
    if (ev.witness) std::cout << "genericity violated: shared factor " << ev.witness->to_string("z") << "\n";
    std::cout << outcome_name(ev.outcome) << "\n";
  }
  switch (ev.outcome) {
    case Outcome::True: return kOk;
    case Outcome::False: return kFalse;
    case Outcome::NonGeneric: return kNonGeneric;
  }
  return kFalse;
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  int m = 0;
  bool no_enum = false;
};

json matrix_json(const TransformMatrix& A) {
  json rows = json::array();
  for (int r = 1; r <= A.size(); ++r) {
    json row = json::array();
    for (int s = 1; s <= A.size(); ++s) row.push_back(A(r, s).to_string());
    rows.push_back(row);
  }
  return rows;
}

int cmd_transform(const Global& g, const TransformArgs& args) {
  if (args.m < 1) throw UsageError("m must be at least 1");
  auto T = build_T_closed(args.m);
  auto L = build_L(args.m), U = build_U(args.m);
  auto C = inverse(T);
  auto det = determinant(T);
  bool ok = L * U == T && det == expected_det_T(args.m) && T * C == TransformMatrix::identity(args.m) &&
            build_T_recurrence(args.m) == T;
  std::optional<bool> enum_ok;
  if (!args.no_enum) enum_ok = build_T_enum(args.m) == T;
  ok = ok && enum_ok.value_or(true);
  if (g.machine()) {
    json out{{"m", args.m},          {"T", matrix_json(T)}, {"L", matrix_json(L)},
             {"U", matrix_json(U)},  {"C", matrix_json(C)}, {"det", det.to_string()},
             {"consistent", ok}};
    out["enumeration_checked"] = enum_ok.has_value();
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "T_" << args.m << ":\n" << T.to_string();
    std::cout << "L_" << args.m << ":\n" << L.to_string();
    std::cout << "U_" << args.m << ":\n" << U.to_string();
    std::cout << "C_" << args.m << ":\n" << C.to_string();
    std::cout << "det = " << det.to_string() << "\n";
    std::cout << "checks: " << (ok ? "consistent" : "INCONSISTENT")
              << (enum_ok ? " (enumeration, recurrence, closed form)" : " (recurrence, closed form)") << "\n";
  }
  return ok ? kOk : kFalse;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  int m_max = 4;
  int n_max = 4;
  int count = 200;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trial_seed;
};

struct TrialResult {
  std::uint64_t seed = 0;
  int m = 0, n = 0;
  int redraws = 0;
  bool pass = false;
  std::string detail;
};

TrialResult run_trial(std::uint64_t seed, int m_max, int n_max) {
  TrialResult res;
  res.seed = seed;
  auto fc = sample_case(seed, m_max, n_max);
  res.m = int(fc.F.size());
  res.n = int(fc.G.size());
  res.redraws = fc.redraws;
  try {
    auto oracle = ec_oracle_report(fc.F, fc.G);
    auto theorem = ec_via_theorem_report(fc.F, fc.G);
    auto y = transform_counts(build_T_closed(res.m), oracle.ec.c);
    auto truth = ec_from_eigenvalues(fc.alpha, fc.beta);
    res.pass = oracle.ec == theorem.ec && y == theorem.y && truth == oracle.ec;
    if (!res.pass)
      res.detail = "oracle " + oracle.ec.to_string() + ", theorem " + theorem.ec.to_string() + ", eigenvalues " +
                   truth.to_string() + ", y " + join(theorem.y) + ", T c " + join(y);
  } catch (const Error& e) {
    res.detail = e.what();
  }
  return res;
}

int cmd_verify(const Global& g, const VerifyArgs& args) {
  if (args.m_max < 1 || args.n_max < 1 || args.count < 1) throw UsageError("--m-max, --n-max and --count must be positive");
  std::vector<TrialResult> results;
  if (args.trial_seed) {
    results.push_back(run_trial(*args.trial_seed, args.m_max, args.n_max));
  } else {
    for (int i = 0; i < args.count; ++i)
      results.push_back(run_trial(trial_seed(args.seed, std::uint64_t(i)), args.m_max, args.n_max));
  }
  int passed = 0, redraws = 0;
  for (const auto& r : results) {
    passed += r.pass;
    redraws += r.redraws;
  }
  const int total = int(results.size());
  if (g.machine()) {
    json failures = json::array();
    for (const auto& r : results)
      if (!r.pass) failures.push_back({{"trial_seed", r.seed}, {"m", r.m}, {"n", r.n}, {"detail", r.detail}});
    std::cout << json{{"passed", passed}, {"total", total}, {"resampled", redraws}, {"failures", failures}}.dump()
              << "\n";
  } else {
    for (const auto& r : results)
      if (!r.pass)
        std::cout << "FAIL m=" << r.m << " n=" << r.n << ": " << r.detail << "\n  reproduce: eigconf verify --m-max "
                  << args.m_max << " --n-max " << args.n_max << " --trial-seed " << r.seed << "\n";
    std::cout << passed << "/" << total << " agree";
    if (redraws) std::cout << " (" << redraws << " non-generic draws resampled)";
    std::cout << "\n";
  }
  return passed == total ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue configurations of symmetric matrix pairs"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  EcArgs ec;
  auto* sub_ec = app.add_subcommand("ec", "EC of a numeric pair via the oracle and the theorem");
  sub_ec->add_option("input", ec.input, "Matrix file")->required();
  sub_ec->add_option("--degree-cap", ec.cap, "Largest allowed deg d_r");

  ConditionArgs cond;
  auto* sub_cond = app.add_subcommand("condition", "Condition on the parameters for a target EC");
  sub_cond->add_option("input", cond.input, "Matrix file")->required();
  sub_cond->add_option("--ec", cond.ec, "Target configuration, e.g. 1,1,0,0")->required();
  sub_cond->add_option("-o,--output", cond.output, "Write the condition here instead of stdout");
  sub_cond->add_flag("--expand", cond.expand, "Substitute the characteristic coefficients into the parameters");
  sub_cond->add_flag("--sign-patterns", cond.sign_patterns, "List coefficient sign patterns (deg d_r <= 8)");
  sub_cond->add_option("--term-budget", cond.term_budget, "Largest allowed coefficient size in terms");
  sub_cond->add_option("--degree-cap", cond.cap, "Largest allowed deg d_r (default 64, or EIGCONF_DEGREE_CAP)");

  EvalArgs ev;
  auto* sub_eval = app.add_subcommand("eval", "Evaluate a condition at a parameter point");
  sub_eval->add_option("input", ev.input, "Condition file")->required();
  sub_eval->add_option("bindings", ev.bindings, "name=value for every parameter");

  TransformArgs tr;
  auto* sub_tr = app.add_subcommand("transform", "Print T_m, L_m, U_m, C_m and det T_m");
  sub_tr->add_option("m", tr.m, "Size")->required();
  sub_tr->add_flag("--no-enum", tr.no_enum, "Skip the subset enumeration cross-check");

  VerifyArgs vf;
  auto* sub_vf = app.add_subcommand("verify", "Random oracle-vs-theorem agreement check");
  sub_vf->add_option("--m-max", vf.m_max, "Largest m");
  sub_vf->add_option("--n-max", vf.n_max, "Largest n");
  sub_vf->add_option("--count", vf.count, "Number of trials");
  sub_vf->add_option("--seed", vf.seed, "Master seed");
  sub_vf->add_option("--trial-seed", vf.trial_seed, "Run the single trial with this seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sub_ec) return cmd_ec(g, ec);
    if (*sub_cond) return cmd_condition(g, cond);
    if (*sub_eval) return cmd_eval(g, ev);
    if (*sub_tr) return cmd_transform(g, tr);
    if (*sub_vf) return cmd_verify(g, vf);
  } catch (const GenericityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonGeneric;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const AssertionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFalse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
