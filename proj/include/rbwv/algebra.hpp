#ifndef RBWV_ALGEBRA_HPP
#define RBWV_ALGEBRA_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rbwv/rational.hpp"

namespace rbwv {

// Graded basis symbols of the four algebras in play:
//   L(n)  -- Witt generators
//   C     -- the central element of the Virasoro algebra
//   Ld(n) -- dual basis of the L(n)
//   Cd    -- dual of C
enum class SymbolKind : std::uint8_t { L = 0, C = 1, Ld = 2, Cd = 3 };

struct BasisSymbol {
  SymbolKind kind = SymbolKind::L;
  long n = 0;  // index; always 0 for C and Cd

  friend auto operator<=>(const BasisSymbol&, const BasisSymbol&) = default;
};

inline BasisSymbol L(long n) { return {SymbolKind::L, n}; }
inline BasisSymbol C() { return {SymbolKind::C, 0}; }
inline BasisSymbol Ld(long n) { return {SymbolKind::Ld, n}; }
inline BasisSymbol Cd() { return {SymbolKind::Cd, 0}; }

// deg L(n) = n, deg C = 0, deg Ld(n) = -n, deg Cd = 0.
long grading_degree(BasisSymbol s);

std::string to_string(BasisSymbol s);
BasisSymbol parse_symbol(const std::string& text);

enum class Signature : std::uint8_t {
  Witt,
  Virasoro,
  WittSemidirect,      // W ltimes W*
  VirasoroSemidirect,  // V ltimes V*
};

std::string to_string(Signature sig);

bool legal_symbol(Signature sig, BasisSymbol s);
bool has_center(Signature sig);
bool has_dual(Signature sig);

// Finitely supported linear combination of basis symbols with exact rational
// coefficients. Canonical form: terms sorted in basis order, no zeros stored.
class Element {
 public:
  Element() = default;
  static Element zero() { return Element(); }
  static Element term(BasisSymbol s, Rational coef);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<std::pair<BasisSymbol, Rational>>& terms() const { return terms_; }
  Rational coefficient_at(BasisSymbol s) const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& c, Element x) { return x *= c; }
  Element operator-() const;

  friend bool operator==(const Element&, const Element&) = default;

  // All terms concentrated in a single grading degree (or zero).
  bool homogeneous_of_degree(long deg) const;

 private:
  std::vector<std::pair<BasisSymbol, Rational>> terms_;
};

// Canonical text form, e.g. "4*L(2) + 1/2*C"; "0" for the zero element.
std::string to_string(const Element& x);
Element parse_element(const std::string& text);

// The 2-cocycle of the central extension: (m^3 - m)/12 when m + n = 0, else 0.
Rational cocycle(long m, long n);

// Bracket of two basis symbols; throws DomainError on symbols illegal for sig.
Element structure_bracket(Signature sig, BasisSymbol a, BasisSymbol b);

// Bilinear extension of structure_bracket.
Element bracket(Signature sig, const Element& x, const Element& y);

// [[x,y],z] + [[y,z],x] + [[z,x],y]; identically zero on all four signatures.
Element jacobi_defect(Signature sig, const Element& x, const Element& y, const Element& z);

// Canonical scan order for window indices: 0, 1, -1, 2, -2, ...
// Used everywhere a deterministic ordering of basis indices is needed.
std::vector<long> window_indices(long window);

// Basis symbols with |index| <= window legal for sig, in canonical order
// (L's in window_indices order, then C, then Ld's, then Cd).
std::vector<BasisSymbol> window_symbols(Signature sig, long window);

}  // namespace rbwv

#endif
