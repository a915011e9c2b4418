#include "rbwv/operators.hpp"

#include <array>
#include <sstream>

namespace rbwv {

namespace {

void check_operator_shape(const HomogeneousOperator& op) {
  if (op.sig == Signature::Witt) {
    if (op.theta != 0 || op.mu != 0 || op.nu != 0)
      throw DomainError("Witt operators carry no theta/mu/nu");
  } else if (op.sig != Signature::Virasoro) {
    throw DomainError("operators live on witt or virasoro only");
  }
  if (op.degree != 0 && op.nu != 0)
    throw DomainError("nonzero degree forces nu = 0");
}

Rational need(const std::optional<Rational>& p, const char* name) {
  if (!p)
    throw DomainError(std::string("missing parameter ") + name);
  return *p;
}

Rational opt0(const std::optional<Rational>& p) {
  return p ? *p : Rational(0);
}

Rational need_nonzero(const std::optional<Rational>& p, const char* name) {
  Rational v = need(p, name);
  if (v == 0)
    throw DomainError(std::string(name) + " must be nonzero");
  return v;
}

long need_k(const OperatorParams& p, bool nonzero) {
  if (nonzero && p.k == 0)
    throw DomainError("k must be nonzero for this family");
  return p.k;
}

using CF = CoefficientFunction;

}  // namespace

HomogeneousOperator make_witt_operator(long degree, CoefficientFunction f) {
  HomogeneousOperator op{Signature::Witt, degree, std::move(f), Rational(0), Rational(0),
                         Rational(0)};
  check_operator_shape(op);
  return op;
}

HomogeneousOperator make_virasoro_operator(long degree, CoefficientFunction f, Rational theta,
                                           Rational mu, Rational nu) {
  HomogeneousOperator op{Signature::Virasoro, degree, std::move(f), std::move(theta),
                         std::move(mu), std::move(nu)};
  check_operator_shape(op);
  return op;
}

Rational family_weight(Family family) {
  switch (family) {
    case Family::W0_I: case Family::W0_II: case Family::W0_III:
    case Family::V0_DEG0: case Family::V0_I: case Family::V0_II:
    case Family::V0_III: case Family::V0_IV:
      return Rational(0);
    default:
      return Rational(1);
  }
}

Signature family_signature(Family family) {
  switch (family) {
    case Family::W0_I: case Family::W0_II: case Family::W0_III:
    case Family::W1_LE1: case Family::W1_GE_NEG1: case Family::W1_ZERO:
    case Family::W1_GT1: case Family::W1_LT_NEG1: case Family::W1_EMPTY:
    case Family::W1_PLUS: case Family::W1_MINUS:
      return Signature::Witt;
    default:
      return Signature::Virasoro;
  }
}

namespace {
const std::array<std::pair<Family, const char*>, 24> kFamilyNames = {{
    {Family::W0_I, "W0_I"},
    {Family::W0_II, "W0_II"},
    {Family::W0_III, "W0_III"},
    {Family::W1_LE1, "W1_LE1"},
    {Family::W1_GE_NEG1, "W1_GE_NEG1"},
    {Family::W1_ZERO, "W1_ZERO"},
    {Family::W1_GT1, "W1_GT1"},
    {Family::W1_LT_NEG1, "W1_LT_NEG1"},
    {Family::W1_EMPTY, "W1_EMPTY"},
    {Family::W1_PLUS, "W1_PLUS"},
    {Family::W1_MINUS, "W1_MINUS"},
    {Family::V0_DEG0, "V0_DEG0"},
    {Family::V0_I, "V0_I"},
    {Family::V0_II, "V0_II"},
    {Family::V0_III, "V0_III"},
    {Family::V0_IV, "V0_IV"},
    {Family::V1_LE1, "V1_LE1"},
    {Family::V1_GE_NEG1, "V1_GE_NEG1"},
    {Family::V1_ZERO, "V1_ZERO"},
    {Family::V1_GT1, "V1_GT1"},
    {Family::V1_LT_NEG1, "V1_LT_NEG1"},
    {Family::V1_EMPTY, "V1_EMPTY"},
    {Family::V1_PLUS, "V1_PLUS"},
    {Family::V1_MINUS, "V1_MINUS"},
}};
}  // namespace

std::string family_name(Family family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family)
      return name;
  throw DomainError("bad family");
}

std::optional<Family> family_from_name(const std::string& name) {
  for (const auto& [f, n] : kFamilyNames)
    if (name == n)
      return f;
  return std::nullopt;
}

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (const auto& [f, n] : kFamilyNames)
    out.push_back(f);
  return out;
}

HomogeneousOperator make_operator(Family family, const OperatorParams& p) {
  switch (family) {
    case Family::W0_I:
      return make_witt_operator(p.k, CF::delta_at(-p.k, opt0(p.alpha)));
    case Family::W0_II: {
      long k = need_k(p, true);
      return make_witt_operator(2 * k, CF::double_delta(0, -k, need_nonzero(p.beta, "beta")));
    }
    case Family::W0_III: {
      long k = need_k(p, true);
      if (p.l == 0)
        throw DomainError("missing parameter l");
      return make_witt_operator(k, CF::congruence_rational(k, p.l, need_nonzero(p.gamma, "gamma")));
    }
    case Family::W1_LE1:
      return make_witt_operator(0, CF::step(CF::StepKind::LeOne));
    case Family::W1_GE_NEG1:
      return make_witt_operator(0, CF::step(CF::StepKind::GeMinusOne));
    case Family::W1_ZERO:
      return make_witt_operator(0, CF::zero());
    case Family::W1_GT1:
      return make_witt_operator(0, CF::step(CF::StepKind::GtOne));
    case Family::W1_LT_NEG1:
      return make_witt_operator(0, CF::step(CF::StepKind::LtMinusOne));
    case Family::W1_EMPTY:
      return make_witt_operator(0, CF::step(CF::StepKind::Empty));
    case Family::W1_PLUS:
      return make_witt_operator(0, CF::sign_split(CF::Sign::Plus, opt0(p.alpha)));
    case Family::W1_MINUS:
      return make_witt_operator(0, CF::sign_split(CF::Sign::Minus, opt0(p.alpha)));
    case Family::V0_DEG0:
      return make_virasoro_operator(0, CF::delta_at(0, opt0(p.alpha)), opt0(p.theta), opt0(p.mu),
                                    opt0(p.nu));
    case Family::V0_I:
      return make_virasoro_operator(need_k(p, true), CF::zero(), opt0(p.theta), Rational(0),
                                    Rational(0));
    case Family::V0_II:
      return make_virasoro_operator(need_k(p, true),
                                    CF::delta_at(-p.k, need_nonzero(p.alpha, "alpha")),
                                    Rational(0), Rational(0), Rational(0));
    case Family::V0_III: {
      long k = need_k(p, true);
      return make_virasoro_operator(2 * k, CF::double_delta(0, -k, need_nonzero(p.beta, "beta")),
                                    opt0(p.vartheta), Rational(0), Rational(0));
    }
    case Family::V0_IV: {
      long k = need_k(p, true);
      Rational mu = need_nonzero(p.mu, "mu");
      Rational fk = -Rational(Integer(k) * Integer(k) - 1, Integer(24)) * mu;
      return make_virasoro_operator(k, CF::delta_at(k, std::move(fk)), Rational(0), std::move(mu),
                                    Rational(0));
    }
    case Family::V1_LE1:
      return make_virasoro_operator(0, CF::step(CF::StepKind::LeOne), Rational(0), opt0(p.mu),
                                    opt0(p.nu));
    case Family::V1_GE_NEG1:
      return make_virasoro_operator(0, CF::step(CF::StepKind::GeMinusOne), Rational(0), opt0(p.mu),
                                    opt0(p.nu));
    case Family::V1_ZERO:
      return make_virasoro_operator(0, CF::zero(), Rational(0), Rational(0), Rational(0));
    case Family::V1_GT1:
      return make_virasoro_operator(0, CF::step(CF::StepKind::GtOne), Rational(0), opt0(p.mu),
                                    opt0(p.nu));
    case Family::V1_LT_NEG1:
      return make_virasoro_operator(0, CF::step(CF::StepKind::LtMinusOne), Rational(0), opt0(p.mu),
                                    opt0(p.nu));
    case Family::V1_EMPTY:
      return make_virasoro_operator(0, CF::step(CF::StepKind::Empty), Rational(0), Rational(0),
                                    rat(-1));
    case Family::V1_PLUS:
      return make_virasoro_operator(0, CF::sign_split(CF::Sign::Plus, opt0(p.alpha)),
                                    opt0(p.theta), opt0(p.mu), opt0(p.nu));
    case Family::V1_MINUS:
      return make_virasoro_operator(0, CF::sign_split(CF::Sign::Minus, opt0(p.alpha)),
                                    opt0(p.theta), opt0(p.mu), opt0(p.nu));
  }
  throw DomainError("bad family");
}

std::string encode_operator(Family family, const OperatorParams& p) {
  std::ostringstream out;
  out << family_name(family) << "{";
  bool first = true;
  auto put = [&](const char* name, const std::string& value) {
    if (!first)
      out << ",";
    first = false;
    out << name << "=" << value;
  };
  if (p.k != 0 || family == Family::W0_I)
    put("k", std::to_string(p.k));
  if (p.l != 0)
    put("l", std::to_string(p.l));
  if (p.alpha) put("alpha", to_string(*p.alpha));
  if (p.beta) put("beta", to_string(*p.beta));
  if (p.gamma) put("gamma", to_string(*p.gamma));
  if (p.theta) put("theta", to_string(*p.theta));
  if (p.mu) put("mu", to_string(*p.mu));
  if (p.nu) put("nu", to_string(*p.nu));
  if (p.vartheta) put("vartheta", to_string(*p.vartheta));
  out << "}";
  return out.str();
}

OperatorParams parse_braced_params(const std::string& body) {
  OperatorParams params;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string item = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw DomainError("malformed parameter: " + item);
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (key == "k")
      params.k = std::stol(value);
    else if (key == "l")
      params.l = std::stol(value);
    else if (key == "alpha")
      params.alpha = parse_rational(value);
    else if (key == "beta")
      params.beta = parse_rational(value);
    else if (key == "gamma")
      params.gamma = parse_rational(value);
    else if (key == "theta")
      params.theta = parse_rational(value);
    else if (key == "mu")
      params.mu = parse_rational(value);
    else if (key == "nu")
      params.nu = parse_rational(value);
    else if (key == "vartheta")
      params.vartheta = parse_rational(value);
    else
      throw DomainError("unknown parameter: " + key);
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  return params;
}

ParsedOperator parse_operator(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  std::size_t brace = s.find('{');
  std::string name = brace == std::string::npos ? s : s.substr(0, brace);
  auto family = family_from_name(name);
  if (!family)
    throw DomainError("unknown family: " + name);
  ParsedOperator out{*family, {}};
  if (brace == std::string::npos)
    return out;
  if (s.back() != '}')
    throw DomainError("malformed operator encoding: " + text);
  out.params = parse_braced_params(s.substr(brace + 1, s.size() - brace - 2));
  return out;
}

Element apply(const HomogeneousOperator& op, BasisSymbol s) {
  if (!legal_symbol(op.sig, s))
    throw DomainError("symbol " + to_string(s) + " illegal for " + to_string(op.sig));
  if (s.kind == SymbolKind::L) {
    long m = s.n;
    Element out = Element::term(L(m + op.degree), op.f.eval(m + op.degree));
    if (op.theta != 0 && m + op.degree == 0)
      out += Element::term(C(), op.theta);
    return out;
  }
  // s == C
  Element out = Element::term(L(op.degree), op.mu);
  if (op.degree == 0)
    out += Element::term(C(), op.nu);
  return out;
}

Element apply(const HomogeneousOperator& op, const Element& x) {
  Element out;
  for (const auto& [sym, coef] : x.terms())
    out += coef * apply(op, sym);
  return out;
}

Element rb_defect(const HomogeneousOperator& op, const Rational& weight, const Element& x,
                  const Element& y) {
  Element rx = apply(op, x);
  Element ry = apply(op, y);
  Element lhs = bracket(op.sig, rx, ry);
  Element inner = bracket(op.sig, rx, y) + bracket(op.sig, x, ry);
  Element rhs = apply(op, inner);
  if (weight != 0)
    rhs += weight * apply(op, bracket(op.sig, x, y));
  return lhs - rhs;
}

HomogeneousOperator companion(const HomogeneousOperator& op) {
  if (op.degree != 0)
    throw DomainError("-R-Id is homogeneous only for degree-0 operators");
  HomogeneousOperator out = op;
  out.f = op.f.complement();
  if (op.sig == Signature::Virasoro) {
    out.theta = -op.theta;
    out.mu = -op.mu;
    out.nu = -op.nu - 1;
  }
  return out;
}

HomogeneousOperator restrict_to_witt(const HomogeneousOperator& op) {
  return make_witt_operator(op.degree, op.f);
}

HomogeneousOperator lift_to_virasoro(const HomogeneousOperator& op, Rational theta, Rational mu,
                                     Rational nu) {
  if (op.sig != Signature::Witt)
    throw DomainError("lift starts from a Witt operator");
  return make_virasoro_operator(op.degree, op.f, std::move(theta), std::move(mu), std::move(nu));
}

}  // namespace rbwv
