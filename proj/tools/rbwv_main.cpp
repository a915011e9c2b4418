// Command-line surface: catalog construction, Rota-Baxter verification,
// classification, formal CYBE checking, induced-structure export.
//
// Exit codes: 0 = pass/success, 1 = verification failure, 2 = usage or
// domain error. Output is a single JSON document on stdout with a stable
// field order, so identical invocations are byte-identical.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "rbwv/json_io.hpp"

using namespace rbwv;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

long pick_window(const std::optional<long>& flag, long command_default) {
  if (flag)
    return *flag;
  if (const char* env = std::getenv("RB_WINDOW")) {
    try {
      return std::stol(env);
    } catch (...) {
      throw DomainError("RB_WINDOW is not an integer");
    }
  }
  return command_default;
}

struct OperatorFlags {
  std::string family;
  std::optional<long> k, l;
  std::optional<std::string> alpha, beta, gamma, theta, mu, nu, vartheta;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "catalog family, e.g. W0_III")->required();
    cmd->add_option("--k", k, "degree parameter k");
    cmd->add_option("--l", l, "congruence modulus l");
    cmd->add_option("--alpha", alpha, "rational parameter alpha");
    cmd->add_option("--beta", beta, "rational parameter beta");
    cmd->add_option("--gamma", gamma, "rational parameter gamma");
    cmd->add_option("--theta", theta, "rational parameter theta");
    cmd->add_option("--mu", mu, "rational parameter mu");
    cmd->add_option("--nu", nu, "rational parameter nu");
    cmd->add_option("--vartheta", vartheta, "rational parameter vartheta");
  }

  ParsedOperator parse() const {
    auto fam = family_from_name(family);
    if (!fam)
      throw DomainError("unknown family: " + family);
    OperatorParams p;
    if (k) p.k = *k;
    if (l) p.l = *l;
    auto set = [](std::optional<Rational>& slot, const std::optional<std::string>& text) {
      if (text)
        slot = parse_rational(*text);
    };
    set(p.alpha, alpha);
    set(p.beta, beta);
    set(p.gamma, gamma);
    set(p.theta, theta);
    set(p.mu, mu);
    set(p.nu, nu);
    set(p.vartheta, vartheta);
    return {*fam, p};
  }
};

Signature parse_sig(const std::string& name) {
  if (name == "witt")
    return Signature::Witt;
  if (name == "virasoro")
    return Signature::Virasoro;
  throw DomainError("signature must be witt or virasoro");
}

Json header(const std::string& command) {
  Json out;
  out["schema"] = 1;
  out["command"] = command;
  return out;
}

void emit(const Json& out) {
  std::cout << out.dump(2) << "\n";
}

int run_catalog() {
  Json out = header("catalog");
  Json families = Json::array();
  auto add = [&](Family f, const char* degree, const char* params) {
    Json item;
    item["name"] = family_name(f);
    item["signature"] = to_string(family_signature(f));
    item["weight"] = to_string(family_weight(f));
    item["degree"] = degree;
    item["parameters"] = params;
    families.push_back(std::move(item));
  };
  add(Family::W0_I, "k", "k in Z; alpha rational");
  add(Family::W0_II, "2k", "k nonzero; beta rational nonzero");
  add(Family::W0_III, "k", "k nonzero; l nonzero, l not dividing k; gamma rational nonzero");
  add(Family::W1_LE1, "0", "none");
  add(Family::W1_GE_NEG1, "0", "none");
  add(Family::W1_ZERO, "0", "none");
  add(Family::W1_GT1, "0", "none");
  add(Family::W1_LT_NEG1, "0", "none");
  add(Family::W1_EMPTY, "0", "none");
  add(Family::W1_PLUS, "0", "alpha rational");
  add(Family::W1_MINUS, "0", "alpha rational");
  add(Family::V0_DEG0, "0", "alpha, theta, mu, nu rational");
  add(Family::V0_I, "k", "k nonzero; theta rational");
  add(Family::V0_II, "k", "k nonzero; alpha rational nonzero");
  add(Family::V0_III, "2k", "k nonzero; beta rational nonzero; vartheta rational");
  add(Family::V0_IV, "k", "k nonzero; mu rational nonzero");
  add(Family::V1_LE1, "0", "mu, nu rational");
  add(Family::V1_GE_NEG1, "0", "mu, nu rational");
  add(Family::V1_ZERO, "0", "none");
  add(Family::V1_GT1, "0", "mu, nu rational");
  add(Family::V1_LT_NEG1, "0", "mu, nu rational");
  add(Family::V1_EMPTY, "0", "none");
  add(Family::V1_PLUS, "0", "alpha, theta, mu, nu rational");
  add(Family::V1_MINUS, "0", "alpha, theta, mu, nu rational");
  out["families"] = std::move(families);
  Json cybe = Json::array();
  for (CybeSolutionId id : all_cybe_solutions())
    cybe.push_back(cybe_solution_name(id));
  out["cybe_solutions"] = std::move(cybe);
  emit(out);
  return kExitPass;
}

int run_verify(const OperatorFlags& flags, const std::optional<std::string>& weight,
               const std::optional<long>& window) {
  auto parsed = flags.parse();
  HomogeneousOperator op = make_operator(parsed.family, parsed.params);
  Rational w = weight ? parse_rational(*weight) : family_weight(parsed.family);
  long N = pick_window(window, 10);
  VerifyReport report = verify_rb(op, w, N);
  Json out = header("verify");
  out["operator"] = encode_operator(parsed.family, parsed.params);
  out["report"] = report_json(report);
  emit(out);
  return report.pass() ? kExitPass : kExitFail;
}

int run_classify(const std::string& sig_name, const std::string& weight, long degree,
                 const std::optional<long>& window) {
  Signature sig = parse_sig(sig_name);
  Rational w = parse_rational(weight);
  long N = pick_window(window, 6);
  EquationSystem eq(sig, w, degree, N);
  auto sols = solve(eq);
  Json out = header("classify");
  out["sig"] = to_string(sig);
  out["weight"] = to_string(w);
  out["degree"] = degree;
  out["window"] = N;
  Json list = Json::array();
  bool sound = true;
  for (const auto& sol : sols) {
    Json item = table_json(sol);
    MatchResult mr = match_catalog(sol, eq);
    item["matches"] = match_json(mr);
    item["window_artifact_or_unclassified"] = mr.window_artifact_or_unclassified();
    list.push_back(std::move(item));
    // soundness recheck through the independent residual path; free
    // parameters are probed at three values
    for (const auto& inst : eq.instances()) {
      for (int probe = 0; probe < (sol.free_params.empty() ? 1 : 3); ++probe) {
        SolutionTable probed = sol;
        for (const auto& name : sol.free_params) {
          Rational value = rat(probe);
          if (name == "f0")
            probed.f[0] = value;
          else if (name == "theta")
            probed.theta = value;
          else if (name == "mu")
            probed.mu = value;
          else if (name == "nu")
            probed.nu = value;
          probed.free_params.clear();
        }
        if (!eq.residual(probed, inst).is_zero())
          sound = false;
      }
    }
  }
  out["solutions"] = std::move(list);
  out["sound"] = sound;
  emit(out);
  return sound ? kExitPass : kExitFail;
}

int run_cybe(const std::optional<std::string>& solution, const OperatorFlags& flags,
             bool have_operator, const std::string& pair, const std::optional<long>& window) {
  long N = pick_window(window, 8);
  FormalTensor tensor(Signature::WittSemidirect);
  std::string source;
  if (solution) {
    std::string text = *solution;
    std::size_t brace = text.find('{');
    std::string name = brace == std::string::npos ? text : text.substr(0, brace);
    auto id = cybe_solution_from_name(name);
    if (!id)
      throw DomainError("unknown cybe solution: " + name);
    OperatorParams params;
    if (brace != std::string::npos) {
      if (text.back() != '}')
        throw DomainError("malformed solution encoding: " + text);
      params = parse_braced_params(text.substr(brace + 1, text.size() - brace - 2));
    }
    tensor = make_cybe_solution(*id, params);
    source = text;
  } else if (have_operator) {
    ParsedOperator parsed = flags.parse();
    HomogeneousOperator op = make_operator(parsed.family, parsed.params);
    source = encode_operator(parsed.family, parsed.params);
    if (family_weight(parsed.family) == 0) {
      tensor = skewize(op);
    } else {
      auto [first, second] = weight1_pair(op);
      tensor = (pair == "second") ? second : first;
    }
  } else {
    throw DomainError("cybe needs --solution or --from-operator");
  }
  CybeReport report = verify_formal_cybe(tensor, N);
  Json out = header("cybe");
  out["source"] = source;
  out["tensor"] = tensor_json(tensor);
  out["report"] = report_json(report);
  emit(out);
  return report.pass() ? kExitPass : kExitFail;
}

int run_induce(const OperatorFlags& flags, const std::string& kind,
               const std::optional<long>& window) {
  auto parsed = flags.parse();
  HomogeneousOperator op = make_operator(parsed.family, parsed.params);
  long N = pick_window(window, 8);
  Json out = header("induce");
  out["operator"] = encode_operator(parsed.family, parsed.params);
  out["kind"] = kind;
  out["window"] = N;
  bool pass = false;
  if (kind == "prelie") {
    BilinearProduct p = induced_prelie(op);
    ScanReport defects = scan_prelie(p, N);
    out["defects"] = report_json(defects);
    out["table"] = rows_json(multiplication_table(p, N));
    pass = defects.pass();
  } else if (kind == "postlie") {
    PostLieStructure s = induced_postlie(op);
    ScanReport defects = scan_postlie(s, N);
    out["defects"] = report_json(defects);
    out["table"] = rows_json(multiplication_table(s.circ, N));
    pass = defects.pass();
  } else {
    throw DomainError("kind must be prelie or postlie");
  }
  emit(out);
  return pass ? kExitPass : kExitFail;
}

int run_obstruction(const OperatorFlags& flags, const std::optional<long>& window) {
  auto parsed = flags.parse();
  HomogeneousOperator op = make_operator(parsed.family, parsed.params);
  if (op.sig != Signature::Witt)
    throw DomainError("obstruction applies to Witt operators");
  long N = pick_window(window, 8);
  ObstructionReport report = lifting_obstruction(op, N);
  Json out = header("obstruction");
  out["operator"] = encode_operator(parsed.family, parsed.params);
  out["report"] = report_json(report);
  emit(out);
  return report.pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact catalogs and verification for homogeneous Rota-Baxter operators "
               "on the Witt and Virasoro algebras"};
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "list families and parameter domains");

  auto* verify = app.add_subcommand("verify", "check the Rota-Baxter identity on a window");
  OperatorFlags verify_flags;
  verify_flags.attach(verify);
  std::optional<std::string> verify_weight;
  std::optional<long> verify_window;
  verify->add_option("--weight", verify_weight, "weight (default: the family's)");
  verify->add_option("--window", verify_window, "index window (default 10)");

  auto* classify = app.add_subcommand("classify", "re-derive the catalog on a window");
  std::string cls_sig;
  std::string cls_weight;
  long cls_degree = 0;
  std::optional<long> cls_window;
  classify->add_option("--sig", cls_sig, "witt or virasoro")->required();
  classify->add_option("--weight", cls_weight, "0 or 1")->required();
  classify->add_option("--degree", cls_degree, "operator degree k")->required();
  classify->add_option("--window", cls_window, "index window (default 6)");

  auto* cybe = app.add_subcommand("cybe", "verify a formal CYBE solution on a window");
  std::optional<std::string> cybe_solution;
  OperatorFlags cybe_flags;
  std::optional<long> cybe_window;
  std::string cybe_pair = "first";
  cybe->add_option("--solution", cybe_solution,
                   "catalog solution, e.g. CYBE_W0_III{k=1,l=2,gamma=1}");
  bool cybe_have_operator = false;
  cybe->add_flag("--from-operator", cybe_have_operator,
                 "derive the tensor from the operator flags");
  cybe_flags.family = "";
  cybe->add_option("--family", cybe_flags.family, "operator family for --from-operator");
  cybe->add_option("--k", cybe_flags.k, "degree parameter k");
  cybe->add_option("--l", cybe_flags.l, "congruence modulus l");
  cybe->add_option("--alpha", cybe_flags.alpha, "alpha");
  cybe->add_option("--beta", cybe_flags.beta, "beta");
  cybe->add_option("--gamma", cybe_flags.gamma, "gamma");
  cybe->add_option("--theta", cybe_flags.theta, "theta");
  cybe->add_option("--mu", cybe_flags.mu, "mu");
  cybe->add_option("--nu", cybe_flags.nu, "nu");
  cybe->add_option("--vartheta", cybe_flags.vartheta, "vartheta");
  cybe->add_option("--pair", cybe_pair, "first or second weight-1 tensor");
  cybe->add_option("--window", cybe_window, "index window (default 8)");

  auto* induce = app.add_subcommand("induce", "induced pre-Lie/PostLie structure report");
  OperatorFlags induce_flags;
  induce_flags.attach(induce);
  std::string induce_kind;
  std::optional<long> induce_window;
  induce->add_option("--kind", induce_kind, "prelie or postlie")->required();
  induce->add_option("--window", induce_window, "index window (default 8)");

  auto* obstruction = app.add_subcommand("obstruction", "central-extension lifting obstruction");
  OperatorFlags obstruction_flags;
  obstruction_flags.attach(obstruction);
  std::optional<long> obstruction_window;
  obstruction->add_option("--window", obstruction_window, "index window (default 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (catalog->parsed())
      return run_catalog();
    if (verify->parsed())
      return run_verify(verify_flags, verify_weight, verify_window);
    if (classify->parsed())
      return run_classify(cls_sig, cls_weight, cls_degree, cls_window);
    if (cybe->parsed())
      return run_cybe(cybe_solution, cybe_flags, cybe_have_operator, cybe_pair, cybe_window);
    if (induce->parsed())
      return run_induce(induce_flags, induce_kind, induce_window);
    if (obstruction->parsed())
      return run_obstruction(obstruction_flags, obstruction_window);
  } catch (const std::exception& e) {
    Json out;
    out["schema"] = 1;
    out["error"] = e.what();
    std::cout << out.dump(2) << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
