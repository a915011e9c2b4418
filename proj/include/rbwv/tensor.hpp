#ifndef RBWV_TENSOR_HPP
#define RBWV_TENSOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "rbwv/operators.hpp"

namespace rbwv {

// Index set of a band: the base variable m ranges over one of these shapes.
struct IndexSet {
  enum class Kind { All, Finite, Congruence, AtLeast, AtMost };
  Kind kind = Kind::All;
  std::vector<long> points;  // Finite, sorted
  long residue = 0, modulus = 0;  // Congruence: m == residue (mod modulus)
  long bound = 0;

  static IndexSet all();
  static IndexSet finite(std::vector<long> pts);
  static IndexSet point(long p) { return finite({p}); }
  static IndexSet congruence(long residue, long modulus);
  static IndexSet at_least(long bound);
  static IndexSet at_most(long bound);

  bool contains(long m) const;
  bool is_finite() const { return kind == Kind::Finite; }
  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

// Affine symbol builder m -> kind(scale*m + offset); C and Cd ignore the index.
struct SymbolBuilder {
  SymbolKind kind = SymbolKind::L;
  long scale = 1, offset = 0;

  BasisSymbol at(long m) const;
  // The unique base point mapped to s, if any (constant builders resolve
  // only on single-point sets; the Band layer handles that case).
  std::optional<long> solve(BasisSymbol s) const;
  friend bool operator==(const SymbolBuilder&, const SymbolBuilder&) = default;
};

inline SymbolBuilder build_L(long scale = 1, long offset = 0) {
  return {SymbolKind::L, scale, offset};
}
inline SymbolBuilder build_Ld(long scale = 1, long offset = 0) {
  return {SymbolKind::Ld, scale, offset};
}
inline SymbolBuilder build_C() { return {SymbolKind::C, 0, 0}; }
inline SymbolBuilder build_Cd() { return {SymbolKind::Cd, 0, 0}; }

// Band coefficient c(m) = num / (den_a * m + den_b); constants have den_a = 0.
struct BandCoef {
  Rational num;
  long den_a = 0, den_b = 1;

  static BandCoef constant(Rational c) { return {std::move(c), 0, 1}; }
  static BandCoef rational_linear(Rational num, long den_a, long den_b) {
    return {std::move(num), den_a, den_b};
  }
  Rational eval(long m) const;
  friend bool operator==(const BandCoef&, const BandCoef&) = default;
};

// One band of a formal tensor: sum over m in set of coef(m) * left(m) x right(m).
// Builders are injective on the set, so a band contributes at most one entry
// to any row or column; row-and-column-finiteness is structural.
struct Band {
  IndexSet set;
  BandCoef coef;
  SymbolBuilder left, right;
  friend bool operator==(const Band&, const Band&) = default;
};

class FormalTensor {
 public:
  explicit FormalTensor(Signature sig);
  FormalTensor(Signature sig, std::vector<Band> bands);

  Signature signature() const { return sig_; }
  const std::vector<Band>& bands() const { return bands_; }

  void add_band(Band band);  // validates the band
  Rational coefficient_at(BasisSymbol i, BasisSymbol j) const;
  std::vector<std::pair<BasisSymbol, Rational>> row(BasisSymbol i) const;
  std::vector<std::pair<BasisSymbol, Rational>> column(BasisSymbol j) const;

  FormalTensor transpose() const;
  FormalTensor scaled(const Rational& c) const;
  friend FormalTensor operator+(FormalTensor a, const FormalTensor& b);

 private:
  Signature sig_;
  std::vector<Band> bands_;
};

// True when the two tensors agree entry-by-entry on all window symbol pairs.
bool equal_on_window(const FormalTensor& a, const FormalTensor& b, long window);

// Identity tensors Id_W = sum L_m x L*_m and Id_V = Id_W + C x C*.
FormalTensor identity_tensor(Signature semidirect_sig);

// The operator <-> tensor dictionary R = sum R(e_m) x e*_m over the
// semidirect product algebra. Requires a closed-form (total) coefficient
// function; window-backed tables are rejected.
FormalTensor operator_to_tensor(const HomogeneousOperator& op);

// R - R^21, skew-symmetric; the weight-0 side of the dictionary.
FormalTensor skewize(const HomogeneousOperator& op);

// (R - R^21) + Id and (R - R^21) - Id^21; the weight-1 side (degree 0 only).
std::pair<FormalTensor, FormalTensor> weight1_pair(const HomogeneousOperator& op);

// Catalog of induced classical Yang-Baxter solutions on g x| g*.
enum class CybeSolutionId {
  CYBE_W0_I, CYBE_W0_II, CYBE_W0_III,
  CYBE_V0_0, CYBE_V0_I, CYBE_V0_II, CYBE_V0_III, CYBE_V0_IV,
  CYBE_W1_LE1, CYBE_W1_GE_NEG1, CYBE_W1_ZERO, CYBE_W1_GT1, CYBE_W1_LT_NEG1,
  CYBE_W1_EMPTY, CYBE_W1_PLUS, CYBE_W1_MINUS,
  CYBE_V1_LE1, CYBE_V1_GE_NEG1, CYBE_V1_ZERO, CYBE_V1_GT1, CYBE_V1_LT_NEG1,
  CYBE_V1_EMPTY, CYBE_V1_PLUS, CYBE_V1_MINUS,
};

std::string cybe_solution_name(CybeSolutionId id);
std::optional<CybeSolutionId> cybe_solution_from_name(const std::string& name);
std::vector<CybeSolutionId> all_cybe_solutions();

// Builds the listed solution from its closed form; cross-checked in tests
// against the operator-derived tensors.
FormalTensor make_cybe_solution(CybeSolutionId id, const OperatorParams& params);

}  // namespace rbwv

#endif
