#include "rbwv/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rbwv {

std::string to_string(const Rational& r) {
  return r.str();
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty())
    throw DomainError("empty rational");
  std::size_t slash = s.find('/');
  auto check_int = [](const std::string& part) {
    if (part.empty())
      throw DomainError("malformed rational");
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size())
      throw DomainError("malformed rational");
    for (std::size_t i = start; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw DomainError("malformed rational: " + part);
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  Integer d(den);
  Integer n(num);
  if (d == 0)
    throw DomainError("rational with zero denominator");
  if (d < 0) {
    d = -d;
    n = -n;
  }
  return Rational(n, d);
}

long grading_degree(BasisSymbol s) {
  switch (s.kind) {
    case SymbolKind::L: return s.n;
    case SymbolKind::Ld: return -s.n;
    default: return 0;
  }
}

std::string to_string(BasisSymbol s) {
  switch (s.kind) {
    case SymbolKind::L: return "L(" + std::to_string(s.n) + ")";
    case SymbolKind::C: return "C";
    case SymbolKind::Ld: return "Ld(" + std::to_string(s.n) + ")";
    case SymbolKind::Cd: return "Cd";
  }
  throw DomainError("bad symbol kind");
}

BasisSymbol parse_symbol(const std::string& text) {
  if (text == "C") return C();
  if (text == "Cd") return Cd();
  auto indexed = [&](const std::string& prefix) -> long {
    std::string inner = text.substr(prefix.size() + 1, text.size() - prefix.size() - 2);
    std::size_t pos = 0;
    long n = std::stol(inner, &pos);
    if (pos != inner.size())
      throw DomainError("malformed symbol: " + text);
    return n;
  };
  if (text.size() >= 4 && text.rfind("Ld(", 0) == 0 && text.back() == ')')
    return Ld(indexed("Ld"));
  if (text.size() >= 4 && text.rfind("L(", 0) == 0 && text.back() == ')')
    return L(indexed("L"));
  throw DomainError("malformed symbol: " + text);
}

std::string to_string(Signature sig) {
  switch (sig) {
    case Signature::Witt: return "witt";
    case Signature::Virasoro: return "virasoro";
    case Signature::WittSemidirect: return "witt-semidirect";
    case Signature::VirasoroSemidirect: return "virasoro-semidirect";
  }
  throw DomainError("bad signature");
}

bool has_center(Signature sig) {
  return sig == Signature::Virasoro || sig == Signature::VirasoroSemidirect;
}

bool has_dual(Signature sig) {
  return sig == Signature::WittSemidirect || sig == Signature::VirasoroSemidirect;
}

bool legal_symbol(Signature sig, BasisSymbol s) {
  switch (s.kind) {
    case SymbolKind::L: return true;
    case SymbolKind::C: return has_center(sig);
    case SymbolKind::Ld: return has_dual(sig);
    case SymbolKind::Cd: return sig == Signature::VirasoroSemidirect;
  }
  return false;
}

Element Element::term(BasisSymbol s, Rational coef) {
  Element x;
  if (coef != 0)
    x.terms_.emplace_back(s, std::move(coef));
  return x;
}

Rational Element::coefficient_at(BasisSymbol s) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const auto& t, BasisSymbol key) { return t.first < key; });
  if (it != terms_.end() && it->first == s)
    return it->second;
  return Rational(0);
}

Element& Element::operator+=(const Element& other) {
  if (other.terms_.empty())
    return *this;
  std::vector<std::pair<BasisSymbol, Rational>> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0)
        merged.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  return *this += -other;
}

Element& Element::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_)
    t.second *= c;
  return *this;
}

Element Element::operator-() const {
  Element x = *this;
  for (auto& t : x.terms_)
    t.second = -t.second;
  return x;
}

bool Element::homogeneous_of_degree(long deg) const {
  for (const auto& t : terms_)
    if (grading_degree(t.first) != deg)
      return false;
  return true;
}

std::string to_string(const Element& x) {
  if (x.is_zero())
    return "0";
  std::string out;
  for (const auto& [sym, coef] : x.terms()) {
    if (!out.empty())
      out += " + ";
    out += to_string(coef) + "*" + to_string(sym);
  }
  return out;
}

Element parse_element(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "0" || s.empty())
    return Element::zero();
  Element out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    // terms are joined by '+'; a '-' belongs to the coefficient
    std::size_t next = s.find('+', pos + 1);
    std::string piece = s.substr(pos, next == std::string::npos ? next : next - pos);
    if (!piece.empty() && piece[0] == '+')
      piece = piece.substr(1);
    std::size_t star = piece.find('*');
    if (star == std::string::npos)
      throw DomainError("malformed element term: " + piece);
    Rational coef = parse_rational(piece.substr(0, star));
    BasisSymbol sym = parse_symbol(piece.substr(star + 1));
    out += Element::term(sym, coef);
    if (next == std::string::npos)
      break;
    pos = next + 1;
  }
  return out;
}

Rational cocycle(long m, long n) {
  if (m + n != 0)
    return Rational(0);
  Integer mm(m);
  return Rational(mm * mm * mm - mm, Integer(12));
}

Element structure_bracket(Signature sig, BasisSymbol a, BasisSymbol b) {
  if (!legal_symbol(sig, a))
    throw DomainError("symbol " + to_string(a) + " illegal for " + to_string(sig));
  if (!legal_symbol(sig, b))
    throw DomainError("symbol " + to_string(b) + " illegal for " + to_string(sig));
  if (b.kind < a.kind)
    return -structure_bracket(sig, b, a);

  const long m = a.n, n = b.n;
  switch (a.kind) {
    case SymbolKind::L:
      switch (b.kind) {
        case SymbolKind::L: {
          Element out = Element::term(L(m + n), rat(m - n));
          if (has_center(sig))
            out += Element::term(C(), cocycle(m, n));
          return out;
        }
        case SymbolKind::C:
          return Element::zero();
        case SymbolKind::Ld:
          // ad*(L_m) L*_n = (n - 2m) L*_{n-m}
          return Element::term(Ld(n - m), rat(n - 2 * m));
        case SymbolKind::Cd: {
          // ad*(L_m) C* = -(m^3 - m)/12 L*_{-m}
          Integer mm(m);
          return Element::term(Ld(-m), -Rational(mm * mm * mm - mm, Integer(12)));
        }
      }
      break;
    case SymbolKind::C:
      return Element::zero();  // C is central, also acts as zero on duals
    case SymbolKind::Ld:
      return Element::zero();  // [Ld, Ld] = [Ld, Cd] = 0
    case SymbolKind::Cd:
      return Element::zero();
  }
  throw DomainError("unreachable bracket case");
}

Element bracket(Signature sig, const Element& x, const Element& y) {
  Element out;
  for (const auto& [sa, ca] : x.terms())
    for (const auto& [sb, cb] : y.terms())
      out += (ca * cb) * structure_bracket(sig, sa, sb);
  return out;
}

Element jacobi_defect(Signature sig, const Element& x, const Element& y, const Element& z) {
  return bracket(sig, bracket(sig, x, y), z) + bracket(sig, bracket(sig, y, z), x) +
         bracket(sig, bracket(sig, z, x), y);
}

std::vector<long> window_indices(long window) {
  std::vector<long> out;
  out.reserve(2 * window + 1);
  out.push_back(0);
  for (long m = 1; m <= window; ++m) {
    out.push_back(m);
    out.push_back(-m);
  }
  return out;
}

std::vector<BasisSymbol> window_symbols(Signature sig, long window) {
  std::vector<BasisSymbol> out;
  for (long m : window_indices(window))
    out.push_back(L(m));
  if (has_center(sig))
    out.push_back(C());
  if (has_dual(sig))
    for (long m : window_indices(window))
      out.push_back(Ld(m));
  if (sig == Signature::VirasoroSemidirect)
    out.push_back(Cd());
  return out;
}

}  // namespace rbwv
