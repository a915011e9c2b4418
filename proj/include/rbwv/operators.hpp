#ifndef RBWV_OPERATORS_HPP
#define RBWV_OPERATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "rbwv/algebra.hpp"
#include "rbwv/coeff_function.hpp"

namespace rbwv {

// Homogeneous linear operator of one degree on the Witt or Virasoro algebra:
//   R(L_m) = f(m+k) L_{m+k} + theta [m+k==0] C
//   R(C)   = mu L_k + nu [k==0] C
// For Witt operators theta = mu = nu = 0; for k != 0 the form forces nu = 0.
struct HomogeneousOperator {
  Signature sig = Signature::Witt;
  long degree = 0;
  CoefficientFunction f;
  Rational theta, mu, nu;

  friend bool operator==(const HomogeneousOperator&, const HomogeneousOperator&) = default;
};

HomogeneousOperator make_witt_operator(long degree, CoefficientFunction f);
HomogeneousOperator make_virasoro_operator(long degree, CoefficientFunction f, Rational theta,
                                           Rational mu, Rational nu);

// Catalog families. Weight-0 Witt families carry the theorem's parameters;
// the eight weight-1 shapes are named by their zero sets. Virasoro families
// add the V_0 parameters theta / mu / nu (vartheta for the degree-2k family).
enum class Family {
  W0_I,        // k, alpha              degree k,  f = alpha [m == -k]
  W0_II,       // k, beta (nonzero)     degree 2k, f = beta [m==0] + 2 beta [m==-k]
  W0_III,      // k, l, gamma           degree k,  f = gamma k/(m+k) on lZ
  W1_LE1, W1_GE_NEG1, W1_ZERO, W1_GT1, W1_LT_NEG1, W1_EMPTY,
  W1_PLUS,     // alpha = f(0)
  W1_MINUS,    // alpha = f(0)
  V0_DEG0,     // alpha, theta, mu, nu  degree 0
  V0_I,        // k, theta              degree k,  f = 0
  V0_II,       // k, alpha (nonzero)    degree k
  V0_III,      // k, beta (nonzero), vartheta   degree 2k
  V0_IV,       // k, mu (nonzero)       degree k, f = -(k^2-1)/24 mu [m==k]
  V1_LE1, V1_GE_NEG1, V1_ZERO, V1_GT1, V1_LT_NEG1,
  V1_EMPTY,    // -Id_V: nu = -1 fixed
  V1_PLUS,     // alpha, theta, mu, nu
  V1_MINUS,    // alpha, theta, mu, nu
};

struct OperatorParams {
  long k = 0;
  long l = 0;
  std::optional<Rational> alpha, beta, gamma, theta, mu, nu, vartheta;
};

// The rational weight the family is cataloged at (0 or 1).
Rational family_weight(Family family);
Signature family_signature(Family family);
std::string family_name(Family family);
std::optional<Family> family_from_name(const std::string& name);
std::vector<Family> all_families();

// Builds the cataloged operator; DomainError on out-of-domain parameters
// (beta = 0, l dividing k, missing k, ...).
HomogeneousOperator make_operator(Family family, const OperatorParams& params);

// Canonical text encoding, e.g. "W0_III{k=1,l=2,gamma=1}".
std::string encode_operator(Family family, const OperatorParams& params);
struct ParsedOperator {
  Family family;
  OperatorParams params;
};
ParsedOperator parse_operator(const std::string& text);

// The "k=1,l=2,gamma=1" body shared by operator and CYBE-solution encodings.
OperatorParams parse_braced_params(const std::string& body);

// Linear application; x must be legal for op.sig.
Element apply(const HomogeneousOperator& op, const Element& x);
Element apply(const HomogeneousOperator& op, BasisSymbol s);

// [Rx,Ry] - R([Rx,y] + [x,Ry]) - weight * R([x,y]); zero for all x,y on the
// tested span iff op is Rota-Baxter of that weight.
Element rb_defect(const HomogeneousOperator& op, const Rational& weight, const Element& x,
                  const Element& y);

// -R - Id on the same algebra; degree-0 operators only.
HomogeneousOperator companion(const HomogeneousOperator& op);

HomogeneousOperator restrict_to_witt(const HomogeneousOperator& op);
HomogeneousOperator lift_to_virasoro(const HomogeneousOperator& op, Rational theta, Rational mu,
                                     Rational nu);

}  // namespace rbwv

#endif
