#ifndef RBWV_CLASSIFIER_HPP
#define RBWV_CLASSIFIER_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rbwv/operators.hpp"

namespace rbwv {

// Window-restricted solution of the defining functional equations: the values
// f(m) for m in [-N, N] together with theta/mu/nu on the Virasoro algebra.
// Parameters the window equations never constrain are reported free; weight-0
// solutions are scale-normalized with the anchor recorded.
struct SolutionTable {
  long window = 0;
  std::map<long, Rational> f;  // every index in [-N,N] except a free f(0)
  std::set<std::string> free_params;  // subset of {"f0","theta","mu","nu"}
  std::optional<Rational> theta, mu, nu;  // engaged on Virasoro, absent when free
  std::string anchor;  // "f(0)", "f(-2)", "mu", "theta", or "" (zero / all-free)

  bool f0_free() const { return free_params.count("f0") != 0; }
  Rational f_at(long m) const;  // WindowError outside window, DomainError on free f(0)
  friend bool operator==(const SolutionTable&, const SolutionTable&) = default;
};

std::string to_string(const SolutionTable& t);

// The functional equations of one classification case, restricted to a
// window: every residual instance whose touched f-indices all lie inside
// [-N, N]. Residuals are assembled from the closed-form component equations,
// independently of the operator/bracket path used by rb_defect.
class EquationSystem {
 public:
  struct Instance {
    enum class Kind { LL, LC };  // pair (L_{m-k}, L_{n-k}) resp. (L_{m-k}, C)
    Kind kind = Kind::LL;
    long m = 0, n = 0;  // f-argument indices; LC uses m only
    friend auto operator<=>(const Instance&, const Instance&) = default;
  };

  EquationSystem(Signature sig, Rational weight, long degree, long window);

  Signature signature() const { return sig_; }
  const Rational& weight() const { return lambda_; }
  long degree() const { return degree_; }
  long window() const { return window_; }

  bool admitted(const Instance& inst) const;
  std::vector<Instance> instances() const;

  // Exact residual of one admitted instance; zero iff the instance holds.
  // For Witt systems the defect is concentrated on a single basis symbol.
  Element residual(const SolutionTable& table, const Instance& inst) const;
  Rational residual_scalar(const SolutionTable& table, const Instance& inst) const;

 private:
  Signature sig_;
  Rational lambda_;
  long degree_;
  long window_;
};

// Complete list of window solutions, canonically ordered, no duplicates.
// Branching follows the dichotomies the equations force; free parameters are
// certified by checking every instance at three distinct probe values.
std::vector<SolutionTable> solve(const EquationSystem& eq);

struct CatalogMatch {
  Family family;
  OperatorParams params;
  std::set<std::string> free_slots;  // family parameters left free by the match
  std::string text() const;
};

struct MatchResult {
  std::vector<CatalogMatch> matches;
  bool window_artifact_or_unclassified() const { return matches.empty(); }
};

// All catalog members (parameters over window-bounded domains) whose window
// restriction equals the table. Multiple window-coincident families are all
// reported.
MatchResult match_catalog(const SolutionTable& sol, const EquationSystem& eq);

// Window restriction of a catalog operator as a SolutionTable (helper shared
// with the acceptance suite).
SolutionTable restrict_operator(const HomogeneousOperator& op, long window,
                                const std::set<std::string>& free_params = {},
                                const std::string& anchor = "");

// Deterministic key over the table's values and free markers; the anchor
// annotation is presentation metadata and not part of the key.
std::string values_key(const SolutionTable& t);

}  // namespace rbwv

#endif
