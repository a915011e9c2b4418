#ifndef RBWV_PRODUCTS_HPP
#define RBWV_PRODUCTS_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rbwv/operators.hpp"

namespace rbwv {

// Bilinear product on an algebra, given either by x*y = [R(x), y] for an
// operator R or by a closed-form rule on basis pairs, extended bilinearly.
class BilinearProduct {
 public:
  using Rule = std::function<Element(BasisSymbol, BasisSymbol)>;

  static BilinearProduct operator_induced(const HomogeneousOperator& op);
  static BilinearProduct closed_form(Signature sig, std::string name, Rule rule);

  Signature signature() const { return sig_; }
  const std::string& name() const { return name_; }
  Element eval(BasisSymbol x, BasisSymbol y) const;
  Element eval(const Element& x, const Element& y) const;

 private:
  BilinearProduct(Signature sig, std::string name, Rule rule);
  Signature sig_;
  std::string name_;
  std::shared_ptr<const Rule> rule_;
};

// A Lie algebra together with an extra product; the ambient bracket is the
// structure bracket of the signature.
struct PostLieStructure {
  Signature sig;
  BilinearProduct circ;
};

// x*y = [R(x), y]; a pre-Lie product when R is Rota-Baxter of weight 0.
BilinearProduct induced_prelie(const HomogeneousOperator& op);

// x o y = [R(x), y] over the ambient bracket; PostLie when R has weight 1.
PostLieStructure induced_postlie(const HomogeneousOperator& op);

// (x*y)*z - x*(y*z) - (y*x)*z + y*(x*z)
Element prelie_defect(const BilinearProduct& p, const Element& x, const Element& y,
                      const Element& z);

// the two PostLie axiom residuals
std::pair<Element, Element> postlie_defects(const PostLieStructure& s, const Element& x,
                                            const Element& y, const Element& z);

// [x,y]_* = x*y - y*x
BilinearProduct subadjacent(const BilinearProduct& p);

// {x,y} = x o y - y o x + [x,y]
BilinearProduct postlie_brace(const PostLieStructure& s);

// x o y - y o x alone; the case tables printed for the induced brace brackets
// tabulate exactly this part (brace minus the ambient bracket).
BilinearProduct circ_commutator(const PostLieStructure& s);

// b(b(x,y),z) + b(b(y,z),x) + b(b(z,x),y)
Element product_jacobi_defect(const BilinearProduct& b, const Element& x, const Element& y,
                              const Element& z);

// Closed-form catalogs of the induced structures.
enum class ProductId {
  PRELIE_W_ZERO, PRELIE_W_I, PRELIE_W_II, PRELIE_W_III,
  PRELIE_V0,  // degree-0 Virasoro family, parameters alpha, mu
  PRELIE_V_I, PRELIE_V_II, PRELIE_V_III, PRELIE_V_IV,
  POSTLIE_W_LE1, POSTLIE_W_ZERO, POSTLIE_W_GT1, POSTLIE_W_NEG_ID, POSTLIE_W_PLUS,
  POSTLIE_V_LE1, POSTLIE_V_ZERO, POSTLIE_V_GT1, POSTLIE_V_NEG_ID, POSTLIE_V_PLUS,
};

struct ProductParams {
  long k = 0;
  long l = 0;
  Rational alpha, mu;
};

std::string product_name(ProductId id);
bool product_is_postlie(ProductId id);

// The closed-form product of the cited catalog case.
BilinearProduct make_catalog_product(ProductId id, const ProductParams& params);
PostLieStructure make_catalog_postlie(ProductId id, const ProductParams& params);

// The printed case tables for the sub-adjacent brackets of the pre-Lie
// catalog, completed antisymmetrically.
BilinearProduct make_subadjacent_table(ProductId id, const ProductParams& params);

// The printed case tables accompanying the PostLie catalog (the commutator
// part of the brace).
BilinearProduct make_brace_table(ProductId id, const ProductParams& params);

// p(sigma x, sigma y) == sigma(q(x, y)) on all window basis pairs, where
// sigma shifts L_m -> L_{m+shift} and fixes C.
bool equal_after_shift(const BilinearProduct& p, const BilinearProduct& q, long shift,
                       long window);

// Same with the flip psi: L_m -> -L_{-m}, C -> -C.
bool equal_after_flip(const BilinearProduct& p, const BilinearProduct& q, long window);

bool equal_on_window(const BilinearProduct& p, const BilinearProduct& q, long window);

struct TripleFailure {
  BasisSymbol x, y, z;
  Element first, second;  // second engaged for the PostLie pair only
};

struct ScanReport {
  long window = 0;
  std::vector<TripleFailure> failures;
  bool pass() const { return failures.empty(); }
};

// Exhaustive window scans; parallel kernels with serial references.
ScanReport scan_prelie(const BilinearProduct& p, long window);
ScanReport scan_prelie_serial(const BilinearProduct& p, long window);
ScanReport scan_postlie(const PostLieStructure& s, long window);
ScanReport scan_postlie_serial(const PostLieStructure& s, long window);
ScanReport scan_jacobi(const BilinearProduct& b, long window);
ScanReport scan_jacobi_serial(const BilinearProduct& b, long window);

struct TableRow {
  BasisSymbol x, y;
  Element xy;
};
std::vector<TableRow> multiplication_table(const BilinearProduct& p, long window);

}  // namespace rbwv

#endif
