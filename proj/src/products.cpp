#include "rbwv/products.hpp"

#include <algorithm>

#include "rbwv/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rbwv {

BilinearProduct::BilinearProduct(Signature sig, std::string name, Rule rule)
    : sig_(sig), name_(std::move(name)), rule_(std::make_shared<const Rule>(std::move(rule))) {}

BilinearProduct BilinearProduct::operator_induced(const HomogeneousOperator& op) {
  Signature sig = op.sig;
  return BilinearProduct(sig, "[R(x),y]", [op, sig](BasisSymbol x, BasisSymbol y) {
    return bracket(sig, apply(op, x), Element::term(y, rat(1)));
  });
}

BilinearProduct BilinearProduct::closed_form(Signature sig, std::string name, Rule rule) {
  return BilinearProduct(sig, std::move(name), std::move(rule));
}

Element BilinearProduct::eval(BasisSymbol x, BasisSymbol y) const {
  if (!legal_symbol(sig_, x) || !legal_symbol(sig_, y))
    throw DomainError("symbol illegal for the product's signature");
  return (*rule_)(x, y);
}

Element BilinearProduct::eval(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [sx, cx] : x.terms())
    for (const auto& [sy, cy] : y.terms())
      out += (cx * cy) * eval(sx, sy);
  return out;
}

BilinearProduct induced_prelie(const HomogeneousOperator& op) {
  return BilinearProduct::operator_induced(op);
}

PostLieStructure induced_postlie(const HomogeneousOperator& op) {
  if (op.degree != 0)
    throw DomainError("PostLie structures come from degree-0 weight-1 operators");
  return PostLieStructure{op.sig, BilinearProduct::operator_induced(op)};
}

Element prelie_defect(const BilinearProduct& p, const Element& x, const Element& y,
                      const Element& z) {
  return p.eval(p.eval(x, y), z) - p.eval(x, p.eval(y, z)) - p.eval(p.eval(y, x), z) +
         p.eval(y, p.eval(x, z));
}

std::pair<Element, Element> postlie_defects(const PostLieStructure& s, const Element& x,
                                            const Element& y, const Element& z) {
  const BilinearProduct& o = s.circ;
  Element first = o.eval(o.eval(x, y), z) - o.eval(x, o.eval(y, z)) - o.eval(o.eval(y, x), z) +
                  o.eval(y, o.eval(x, z)) + o.eval(bracket(s.sig, x, y), z);
  Element second = o.eval(z, bracket(s.sig, x, y)) - bracket(s.sig, o.eval(z, x), y) -
                   bracket(s.sig, x, o.eval(z, y));
  return {std::move(first), std::move(second)};
}

BilinearProduct subadjacent(const BilinearProduct& p) {
  return BilinearProduct::closed_form(
      p.signature(), p.name() + " commutator",
      [p](BasisSymbol x, BasisSymbol y) { return p.eval(x, y) - p.eval(y, x); });
}

BilinearProduct postlie_brace(const PostLieStructure& s) {
  BilinearProduct o = s.circ;
  Signature sig = s.sig;
  return BilinearProduct::closed_form(sig, "brace", [o, sig](BasisSymbol x, BasisSymbol y) {
    return o.eval(x, y) - o.eval(y, x) + structure_bracket(sig, x, y);
  });
}

BilinearProduct circ_commutator(const PostLieStructure& s) {
  return subadjacent(s.circ);
}

Element product_jacobi_defect(const BilinearProduct& b, const Element& x, const Element& y,
                              const Element& z) {
  return b.eval(b.eval(x, y), z) + b.eval(b.eval(y, z), x) + b.eval(b.eval(z, x), y);
}

// ---------------------------------------------------------------------------
// Closed-form catalogs.
// ---------------------------------------------------------------------------

namespace {

Element zero() {
  return Element::zero();
}

bool in_lZ(long m, long l) {
  return m % l == 0;
}

Rational c3over12(long m) {
  Integer mm(m);
  return Rational(mm * mm * mm - mm, Integer(12));
}

}  // namespace

std::string product_name(ProductId id) {
  switch (id) {
    case ProductId::PRELIE_W_ZERO: return "PRELIE_W_ZERO";
    case ProductId::PRELIE_W_I: return "PRELIE_W_I";
    case ProductId::PRELIE_W_II: return "PRELIE_W_II";
    case ProductId::PRELIE_W_III: return "PRELIE_W_III";
    case ProductId::PRELIE_V0: return "PRELIE_V0";
    case ProductId::PRELIE_V_I: return "PRELIE_V_I";
    case ProductId::PRELIE_V_II: return "PRELIE_V_II";
    case ProductId::PRELIE_V_III: return "PRELIE_V_III";
    case ProductId::PRELIE_V_IV: return "PRELIE_V_IV";
    case ProductId::POSTLIE_W_LE1: return "POSTLIE_W_LE1";
    case ProductId::POSTLIE_W_ZERO: return "POSTLIE_W_ZERO";
    case ProductId::POSTLIE_W_GT1: return "POSTLIE_W_GT1";
    case ProductId::POSTLIE_W_NEG_ID: return "POSTLIE_W_NEG_ID";
    case ProductId::POSTLIE_W_PLUS: return "POSTLIE_W_PLUS";
    case ProductId::POSTLIE_V_LE1: return "POSTLIE_V_LE1";
    case ProductId::POSTLIE_V_ZERO: return "POSTLIE_V_ZERO";
    case ProductId::POSTLIE_V_GT1: return "POSTLIE_V_GT1";
    case ProductId::POSTLIE_V_NEG_ID: return "POSTLIE_V_NEG_ID";
    case ProductId::POSTLIE_V_PLUS: return "POSTLIE_V_PLUS";
  }
  throw DomainError("bad product id");
}

bool product_is_postlie(ProductId id) {
  switch (id) {
    case ProductId::POSTLIE_W_LE1: case ProductId::POSTLIE_W_ZERO:
    case ProductId::POSTLIE_W_GT1: case ProductId::POSTLIE_W_NEG_ID:
    case ProductId::POSTLIE_W_PLUS: case ProductId::POSTLIE_V_LE1:
    case ProductId::POSTLIE_V_ZERO: case ProductId::POSTLIE_V_GT1:
    case ProductId::POSTLIE_V_NEG_ID: case ProductId::POSTLIE_V_PLUS:
      return true;
    default:
      return false;
  }
}

BilinearProduct make_catalog_product(ProductId id, const ProductParams& p) {
  const long k = p.k, l = p.l;
  const Rational alpha = p.alpha, mu = p.mu;
  using BP = BilinearProduct;
  switch (id) {
    case ProductId::PRELIE_W_ZERO:
      return BP::closed_form(Signature::Witt, "*_0", [](BasisSymbol, BasisSymbol) {
        return zero();
      });
    case ProductId::PRELIE_W_I:
      // L_m *_k L_n = (k-n) delta_{m,0} L_{n-k}
      return BP::closed_form(Signature::Witt, "*_k", [k](BasisSymbol x, BasisSymbol y) {
        if (x.n != 0)
          return zero();
        return Element::term(L(y.n - k), rat(k - y.n));
      });
    case ProductId::PRELIE_W_II:
      if (k == 0)
        throw DomainError("k must be nonzero");
      // L_m *'_{2k} L_n = (2k-n) delta_{m,0} L_n + (2k-2n) delta_{m+k,0} L_{n-k}
      return BP::closed_form(Signature::Witt, "*'_2k", [k](BasisSymbol x, BasisSymbol y) {
        Element out;
        if (x.n == 0)
          out += Element::term(L(y.n), rat(2 * k - y.n));
        if (x.n == -k)
          out += Element::term(L(y.n - k), rat(2 * k - 2 * y.n));
        return out;
      });
    case ProductId::PRELIE_W_III:
      if (k == 0 || l == 0 || k % l == 0)
        throw DomainError("need k nonzero and l not dividing k");
      // L_m *_k^l L_n = (m+k-n)k/(m+k) delta_{m in lZ} L_{m+n}
      return BP::closed_form(Signature::Witt, "*_k^l", [k, l](BasisSymbol x, BasisSymbol y) {
        if (!in_lZ(x.n, l))
          return zero();
        return Element::term(L(x.n + y.n), rat((x.n + k - y.n) * k, x.n + k));
      });
    case ProductId::PRELIE_V0:
      // L_m * L_n = -n alpha delta_{m,0} L_n, C * L_n = -n mu L_n, x * C = 0
      return BP::closed_form(Signature::Virasoro, "*_(a,m)",
                             [alpha, mu](BasisSymbol x, BasisSymbol y) {
                               if (y.kind == SymbolKind::C)
                                 return zero();
                               if (x.kind == SymbolKind::C)
                                 return Element::term(L(y.n), -mu * y.n);
                               if (x.n != 0)
                                 return zero();
                               return Element::term(L(y.n), -alpha * y.n);
                             });
    case ProductId::PRELIE_V_I:
      return BP::closed_form(Signature::Virasoro, "*^0", [](BasisSymbol, BasisSymbol) {
        return zero();
      });
    case ProductId::PRELIE_V_II:
      if (k == 0)
        throw DomainError("k must be nonzero");
      // L_m *_k L_n = delta_{m,0} ((k-n) L_{n-k} - (k^3-k)/12 delta_{n,3k} C)
      return BP::closed_form(Signature::Virasoro, "*_k", [k](BasisSymbol x, BasisSymbol y) {
        if (x.kind == SymbolKind::C || y.kind == SymbolKind::C || x.n != 0)
          return zero();
        Element out = Element::term(L(y.n - k), rat(k - y.n));
        if (y.n == 3 * k)
          out -= Element::term(C(), c3over12(k));
        return out;
      });
    case ProductId::PRELIE_V_III:
      if (k == 0)
        throw DomainError("k must be nonzero");
      return BP::closed_form(Signature::Virasoro, "*'_2k", [k](BasisSymbol x, BasisSymbol y) {
        if (x.kind == SymbolKind::C || y.kind == SymbolKind::C)
          return zero();
        Element out;
        if (x.n == 0)
          out += Element::term(L(y.n), rat(2 * k - y.n));
        if (x.n == -k) {
          out += Element::term(L(y.n - k), rat(2 * (k - y.n)));
          if (y.n == 3 * k)
            out += Element::term(C(), rat(-2) * c3over12(k));
        }
        return out;
      });
    case ProductId::PRELIE_V_IV:
      if (k == 0)
        throw DomainError("k must be nonzero");
      // C *_k^> L_n = (k-n) L_{n+k} + (k^3-k)/12 delta_{n+k,0} C,
      // L_m *_k^> L_n = -(k^2-1)/24 delta_{m,0} (C *_k^> L_n), x * C = 0
      return BP::closed_form(Signature::Virasoro, "*_k^>", [k](BasisSymbol x, BasisSymbol y) {
        if (y.kind == SymbolKind::C)
          return zero();
        Element crow = Element::term(L(y.n + k), rat(k - y.n));
        if (y.n + k == 0)
          crow += Element::term(C(), c3over12(k));
        if (x.kind == SymbolKind::C)
          return crow;
        if (x.n != 0)
          return zero();
        Rational c = -Rational(Integer(k) * Integer(k) - 1, Integer(24));
        return c * crow;
      });

    case ProductId::POSTLIE_W_LE1:
      return BP::closed_form(Signature::Witt, "o^le1", [](BasisSymbol x, BasisSymbol y) {
        if (x.n < 2)
          return zero();
        return Element::term(L(x.n + y.n), rat(-(x.n - y.n)));
      });
    case ProductId::POSTLIE_W_ZERO:
      return BP::closed_form(Signature::Witt, "o^0", [](BasisSymbol, BasisSymbol) {
        return zero();
      });
    case ProductId::POSTLIE_W_GT1:
      return BP::closed_form(Signature::Witt, "o^gt1", [](BasisSymbol x, BasisSymbol y) {
        if (x.n > 1)
          return zero();
        return Element::term(L(x.n + y.n), rat(-(x.n - y.n)));
      });
    case ProductId::POSTLIE_W_NEG_ID:
      return BP::closed_form(Signature::Witt, "o^-id", [](BasisSymbol x, BasisSymbol y) {
        return Element::term(L(x.n + y.n), rat(-(x.n - y.n)));
      });
    case ProductId::POSTLIE_W_PLUS:
      return BP::closed_form(Signature::Witt, "o^+", [alpha](BasisSymbol x, BasisSymbol y) {
        if (x.n < 0)
          return Element::term(L(x.n + y.n), rat(-(x.n - y.n)));
        if (x.n == 0)
          return Element::term(L(y.n), -alpha * y.n);
        return zero();
      });

    case ProductId::POSTLIE_V_LE1:
    case ProductId::POSTLIE_V_GT1:
    case ProductId::POSTLIE_V_NEG_ID:
    case ProductId::POSTLIE_V_PLUS:
    case ProductId::POSTLIE_V_ZERO:
      return BP::closed_form(
          Signature::Virasoro, product_name(id), [id, alpha, mu](BasisSymbol x, BasisSymbol y) {
            if (y.kind == SymbolKind::C)
              return zero();  // x o C = 0 throughout
            if (x.kind == SymbolKind::C) {
              if (id == ProductId::POSTLIE_V_NEG_ID || id == ProductId::POSTLIE_V_ZERO)
                return zero();
              return Element::term(L(y.n), -mu * y.n);
            }
            auto neg_bracket = [&]() {
              Element out = Element::term(L(x.n + y.n), rat(-(x.n - y.n)));
              if (x.n + y.n == 0)
                out += Element::term(C(), -c3over12(x.n));
              return out;
            };
            switch (id) {
              case ProductId::POSTLIE_V_LE1:
                return x.n >= 2 ? neg_bracket() : zero();
              case ProductId::POSTLIE_V_GT1:
                return x.n <= 1 ? neg_bracket() : zero();
              case ProductId::POSTLIE_V_NEG_ID:
                return neg_bracket();
              case ProductId::POSTLIE_V_PLUS:
                if (x.n < 0)
                  return neg_bracket();
                if (x.n == 0)
                  return Element::term(L(y.n), -alpha * y.n);
                return zero();
              default:
                return zero();
            }
          });
  }
  throw DomainError("bad product id");
}

PostLieStructure make_catalog_postlie(ProductId id, const ProductParams& p) {
  if (!product_is_postlie(id))
    throw DomainError("not a PostLie catalog id");
  BilinearProduct circ = make_catalog_product(id, p);
  return PostLieStructure{circ.signature(), std::move(circ)};
}

// ---------------------------------------------------------------------------
// Printed case tables (sub-adjacent brackets and brace commutator parts),
// completed antisymmetrically where the citations list one order only.
// ---------------------------------------------------------------------------

BilinearProduct make_subadjacent_table(ProductId id, const ProductParams& p) {
  const long k = p.k, l = p.l;
  const Rational alpha = p.alpha, mu = p.mu;
  using BP = BilinearProduct;
  switch (id) {
    case ProductId::PRELIE_W_ZERO:
      return BP::closed_form(Signature::Witt, "[,]_0", [](BasisSymbol, BasisSymbol) {
        return zero();
      });
    case ProductId::PRELIE_W_I:
      return BP::closed_form(Signature::Witt, "[,]_I", [k](BasisSymbol x, BasisSymbol y) {
        Element out;
        if (x.n == 0 && y.n != 0)
          out += Element::term(L(y.n - k), rat(k - y.n));
        if (y.n == 0 && x.n != 0)
          out -= Element::term(L(x.n - k), rat(k - x.n));
        return out;
      });
    case ProductId::PRELIE_W_II:
      return BP::closed_form(Signature::Witt, "[,]_II", [k](BasisSymbol x, BasisSymbol y) {
        long m = x.n, n = y.n;
        if (m == 0 && n == -k)
          return Element::term(L(-k), rat(k));
        if (n == 0 && m == -k)
          return Element::term(L(-k), rat(-k));
        if (m == 0 && n != 0)
          return Element::term(L(n), rat(2 * k - n));
        if (n == 0 && m != 0)
          return Element::term(L(m), rat(-(2 * k - m)));
        if (m == -k && n != 0 && n != -k)
          return Element::term(L(n - k), rat(2 * k - 2 * n));
        if (n == -k && m != 0 && m != -k)
          return Element::term(L(m - k), rat(-(2 * k - 2 * m)));
        return zero();
      });
    case ProductId::PRELIE_W_III:
      return BP::closed_form(Signature::Witt, "[,]_III", [k, l](BasisSymbol x, BasisSymbol y) {
        long m = x.n, n = y.n;
        bool im = in_lZ(m, l), in_ = in_lZ(n, l);
        if (im && in_)
          return Element::term(L(m + n),
                               rat((m - n) * (m + n + k) * k) * rat(1, (m + k)) * rat(1, (n + k)));
        if (im && !in_)
          return Element::term(L(m + n), rat((m + k - n) * k, m + k));
        if (!im && in_)
          return Element::term(L(m + n), rat(-(n + k - m) * k, n + k));
        return zero();
      });
    case ProductId::PRELIE_V0:
      return BP::closed_form(Signature::Virasoro, "[,]_(a,m)",
                             [alpha, mu](BasisSymbol x, BasisSymbol y) {
                               Element out;
                               if (x.kind == SymbolKind::C && y.kind == SymbolKind::C)
                                 return out;
                               if (x.kind == SymbolKind::C)
                                 return Element::term(L(y.n), -mu * y.n);
                               if (y.kind == SymbolKind::C)
                                 return Element::term(L(x.n), mu * x.n);
                               if (x.n == 0)
                                 out += Element::term(L(y.n), -alpha * y.n);
                               if (y.n == 0)
                                 out += Element::term(L(x.n), alpha * x.n);
                               return out;
                             });
    case ProductId::PRELIE_V_I:
      return BP::closed_form(Signature::Virasoro, "[,]_I", [](BasisSymbol, BasisSymbol) {
        return zero();
      });
    case ProductId::PRELIE_V_II:
      return BP::closed_form(Signature::Virasoro, "[,]_II", [k](BasisSymbol x, BasisSymbol y) {
        if (x.kind == SymbolKind::C || y.kind == SymbolKind::C)
          return zero();
        long m = x.n, n = y.n;
        auto half = [&](long a, long b) {  // contribution for (a=0 row, b)
          Element out;
          if (a != 0 || b == 0)
            return out;
          if (b == 3 * k) {
            out += Element::term(L(2 * k), rat(-2 * k));
            out -= Element::term(C(), c3over12(k));
          } else {
            out += Element::term(L(b - k), rat(k - b));
          }
          return out;
        };
        return half(m, n) - half(n, m);
      });
    case ProductId::PRELIE_V_III:
      return BP::closed_form(Signature::Virasoro, "[,]_III", [k](BasisSymbol x, BasisSymbol y) {
        if (x.kind == SymbolKind::C || y.kind == SymbolKind::C)
          return zero();
        long m = x.n, n = y.n;
        auto cases = [&](long a, long b) {
          Element out;
          if (a == -k && b == 3 * k) {
            out += Element::term(L(2 * k), rat(-4 * k));
            out += Element::term(C(), rat(-2) * c3over12(k));
          } else if (a == -k && b == 0) {
            out += Element::term(L(-k), rat(-k));
          } else if (a == -k && b != 0 && b != -k && b != 3 * k) {
            out += Element::term(L(b - k), rat(2 * (k - b)));
          } else if (a == 0 && b != 0 && b != -k) {
            out += Element::term(L(b), rat(2 * k - b));
          }
          return out;
        };
        return cases(m, n) - cases(n, m);
      });
    case ProductId::PRELIE_V_IV:
      return BP::closed_form(Signature::Virasoro, "[,]_IV", [k](BasisSymbol x, BasisSymbol y) {
        Rational c = -Rational(Integer(k) * Integer(k) - 1, Integer(24));
        auto crow = [&](long n) {
          Element out = Element::term(L(n + k), rat(k - n));
          if (n == -k)
            out += Element::term(C(), c3over12(k));
          return out;
        };
        if (x.kind == SymbolKind::C && y.kind == SymbolKind::C)
          return zero();
        if (x.kind == SymbolKind::C)
          return crow(y.n);
        if (y.kind == SymbolKind::C)
          return -crow(x.n);
        Element out;
        if (x.n == 0)
          out += c * crow(y.n);
        if (y.n == 0)
          out -= c * crow(x.n);
        return out;
      });
    default:
      throw DomainError("no printed sub-adjacent table for this id");
  }
}

BilinearProduct make_brace_table(ProductId id, const ProductParams& p) {
  const Rational alpha = p.alpha, mu = p.mu;
  using BP = BilinearProduct;
  auto wL = [](long m, long n, const Rational& c) {
    return Element::term(L(m + n), c * (m - n));
  };
  auto vL = [](long m, long n, const Rational& c) {
    Element out = Element::term(L(m + n), c * (m - n));
    if (m + n == 0)
      out += Element::term(C(), c * c3over12(m));
    return out;
  };
  switch (id) {
    case ProductId::POSTLIE_W_LE1:
      return BP::closed_form(Signature::Witt, "{,}_le1", [wL](BasisSymbol x, BasisSymbol y) {
        long m = x.n, n = y.n;
        if (m >= 2 && n >= 2) return wL(m, n, rat(-2));
        if (m >= 2 || n >= 2) return wL(m, n, rat(-1));
        return zero();
      });
    case ProductId::POSTLIE_W_ZERO:
      return BP::closed_form(Signature::Witt, "{,}_0", [](BasisSymbol, BasisSymbol) {
        return zero();
      });
    case ProductId::POSTLIE_W_GT1:
      return BP::closed_form(Signature::Witt, "{,}_gt1", [wL](BasisSymbol x, BasisSymbol y) {
        long m = x.n, n = y.n;
        if (m <= 1 && n <= 1) return wL(m, n, rat(-2));
        if (m <= 1 || n <= 1) return wL(m, n, rat(-1));
        return zero();
      });
    case ProductId::POSTLIE_W_NEG_ID:
      return BP::closed_form(Signature::Witt, "{,}_-id", [wL](BasisSymbol x, BasisSymbol y) {
        return wL(x.n, y.n, rat(-2));
      });
    case ProductId::POSTLIE_W_PLUS:
      return BP::closed_form(Signature::Witt, "{,}_+",
                             [wL, alpha](BasisSymbol x, BasisSymbol y) {
                               long m = x.n, n = y.n;
                               if (m < 0 && n < 0) return wL(m, n, rat(-2));
                               if ((m < 0 && n > 0) || (m > 0 && n < 0)) return wL(m, n, rat(-1));
                               if (m < 0 && n == 0)
                                 return Element::term(L(m), -(1 - alpha) * m);
                               if (m == 0 && n < 0)
                                 return Element::term(L(n), (1 - alpha) * n);
                               if (m == 0 && n > 0)
                                 return Element::term(L(n), -alpha * n);
                               if (m > 0 && n == 0)
                                 return Element::term(L(m), alpha * m);
                               return zero();
                             });
    case ProductId::POSTLIE_V_LE1:
    case ProductId::POSTLIE_V_ZERO:
    case ProductId::POSTLIE_V_GT1:
    case ProductId::POSTLIE_V_NEG_ID:
    case ProductId::POSTLIE_V_PLUS:
      return BP::closed_form(
          Signature::Virasoro, "{,}_V", [id, vL, alpha, mu](BasisSymbol x, BasisSymbol y) {
            if (x.kind == SymbolKind::C && y.kind == SymbolKind::C)
              return zero();
            if (x.kind == SymbolKind::C || y.kind == SymbolKind::C) {
              if (id == ProductId::POSTLIE_V_ZERO || id == ProductId::POSTLIE_V_NEG_ID)
                return zero();
              if (x.kind == SymbolKind::C)
                return Element::term(L(y.n), -mu * y.n);
              return Element::term(L(x.n), mu * x.n);
            }
            long m = x.n, n = y.n;
            switch (id) {
              case ProductId::POSTLIE_V_LE1:
                if (m >= 2 && n >= 2) return vL(m, n, rat(-2));
                if (m >= 2 || n >= 2) return vL(m, n, rat(-1));
                return zero();
              case ProductId::POSTLIE_V_ZERO:
                return zero();
              case ProductId::POSTLIE_V_GT1:
                if (m <= 1 && n <= 1) return vL(m, n, rat(-2));
                if (m <= 1 || n <= 1) return vL(m, n, rat(-1));
                return zero();
              case ProductId::POSTLIE_V_NEG_ID:
                return vL(m, n, rat(-2));
              case ProductId::POSTLIE_V_PLUS:
                if (m < 0 && n < 0) return vL(m, n, rat(-2));
                if ((m < 0 && n > 0) || (m > 0 && n < 0)) return vL(m, n, rat(-1));
                if (m < 0 && n == 0) return Element::term(L(m), -(1 - alpha) * m);
                if (m == 0 && n < 0) return Element::term(L(n), (1 - alpha) * n);
                if (m == 0 && n > 0) return Element::term(L(n), -alpha * n);
                if (m > 0 && n == 0) return Element::term(L(m), alpha * m);
                return zero();
              default:
                return zero();
            }
          });
    default:
      throw DomainError("no printed brace table for this id");
  }
}

// ---------------------------------------------------------------------------
// Window comparisons and scans.
// ---------------------------------------------------------------------------

namespace {

Element shift_element(const Element& x, long shift) {
  Element out;
  for (const auto& [s, c] : x.terms()) {
    if (s.kind == SymbolKind::L)
      out += Element::term(L(s.n + shift), c);
    else
      out += Element::term(s, c);
  }
  return out;
}

Element flip_element(const Element& x) {
  Element out;
  for (const auto& [s, c] : x.terms()) {
    if (s.kind == SymbolKind::L)
      out += Element::term(L(-s.n), -c);
    else if (s.kind == SymbolKind::C)
      out += Element::term(C(), -c);
    else
      throw DomainError("flip acts on W and V only");
  }
  return out;
}

}  // namespace

bool equal_after_shift(const BilinearProduct& p, const BilinearProduct& q, long shift,
                       long window) {
  if (p.signature() != q.signature())
    return false;
  auto syms = window_symbols(p.signature(), window);
  for (BasisSymbol x : syms)
    for (BasisSymbol y : syms) {
      BasisSymbol sx = x.kind == SymbolKind::L ? L(x.n + shift) : x;
      BasisSymbol sy = y.kind == SymbolKind::L ? L(y.n + shift) : y;
      if (p.eval(sx, sy) != shift_element(q.eval(x, y), shift))
        return false;
    }
  return true;
}

bool equal_after_flip(const BilinearProduct& p, const BilinearProduct& q, long window) {
  if (p.signature() != q.signature())
    return false;
  auto syms = window_symbols(p.signature(), window);
  for (BasisSymbol x : syms)
    for (BasisSymbol y : syms) {
      Element fx = flip_element(Element::term(x, rat(1)));
      Element fy = flip_element(Element::term(y, rat(1)));
      if (p.eval(fx, fy) != flip_element(q.eval(x, y)))
        return false;
    }
  return true;
}

bool equal_on_window(const BilinearProduct& p, const BilinearProduct& q, long window) {
  if (p.signature() != q.signature())
    return false;
  auto syms = window_symbols(p.signature(), window);
  for (BasisSymbol x : syms)
    for (BasisSymbol y : syms)
      if (p.eval(x, y) != q.eval(x, y))
        return false;
  return true;
}

namespace {

void sort_triples(std::vector<TripleFailure>& failures, long window) {
  std::sort(failures.begin(), failures.end(),
            [&](const TripleFailure& a, const TripleFailure& b) {
              long r1 = canonical_rank(a.x, window), r2 = canonical_rank(b.x, window);
              if (r1 != r2) return r1 < r2;
              r1 = canonical_rank(a.y, window);
              r2 = canonical_rank(b.y, window);
              if (r1 != r2) return r1 < r2;
              return canonical_rank(a.z, window) < canonical_rank(b.z, window);
            });
}

template <class Fn>
ScanReport scan_triples_serial(Signature sig, long window, Fn&& defect) {
  ScanReport report{window, {}};
  auto syms = window_symbols(sig, window);
  for (BasisSymbol x : syms)
    for (BasisSymbol y : syms)
      for (BasisSymbol z : syms) {
        auto [first, second] = defect(x, y, z);
        if (!first.is_zero() || !second.is_zero())
          report.failures.push_back({x, y, z, std::move(first), std::move(second)});
      }
  sort_triples(report.failures, window);
  return report;
}

template <class Fn>
ScanReport scan_triples_parallel(Signature sig, long window, Fn&& defect) {
#ifdef _OPENMP
  ScanReport report{window, {}};
  auto syms = window_symbols(sig, window);
  const long n = static_cast<long>(syms.size());
  std::vector<std::vector<TripleFailure>> local;
#pragma omp parallel
  {
#pragma omp single
    local.resize(static_cast<std::size_t>(omp_get_num_threads()));
#pragma omp for schedule(dynamic, 64)
    for (long flat = 0; flat < n * n * n; ++flat) {
      BasisSymbol x = syms[static_cast<std::size_t>(flat / (n * n))];
      BasisSymbol y = syms[static_cast<std::size_t>((flat / n) % n)];
      BasisSymbol z = syms[static_cast<std::size_t>(flat % n)];
      auto [first, second] = defect(x, y, z);
      if (!first.is_zero() || !second.is_zero())
        local[static_cast<std::size_t>(omp_get_thread_num())].push_back(
            {x, y, z, std::move(first), std::move(second)});
    }
  }
  for (auto& bucket : local)
    for (auto& f : bucket)
      report.failures.push_back(std::move(f));
  sort_triples(report.failures, window);
  return report;
#else
  return scan_triples_serial(sig, window, std::forward<Fn>(defect));
#endif
}

}  // namespace

ScanReport scan_prelie_serial(const BilinearProduct& p, long window) {
  return scan_triples_serial(p.signature(), window, [&](BasisSymbol x, BasisSymbol y,
                                                        BasisSymbol z) {
    return std::pair<Element, Element>{
        prelie_defect(p, Element::term(x, rat(1)), Element::term(y, rat(1)),
                      Element::term(z, rat(1))),
        Element::zero()};
  });
}

ScanReport scan_prelie(const BilinearProduct& p, long window) {
  return scan_triples_parallel(p.signature(), window, [&](BasisSymbol x, BasisSymbol y,
                                                          BasisSymbol z) {
    return std::pair<Element, Element>{
        prelie_defect(p, Element::term(x, rat(1)), Element::term(y, rat(1)),
                      Element::term(z, rat(1))),
        Element::zero()};
  });
}

ScanReport scan_postlie_serial(const PostLieStructure& s, long window) {
  return scan_triples_serial(s.sig, window, [&](BasisSymbol x, BasisSymbol y, BasisSymbol z) {
    return postlie_defects(s, Element::term(x, rat(1)), Element::term(y, rat(1)),
                           Element::term(z, rat(1)));
  });
}

ScanReport scan_postlie(const PostLieStructure& s, long window) {
  return scan_triples_parallel(s.sig, window, [&](BasisSymbol x, BasisSymbol y, BasisSymbol z) {
    return postlie_defects(s, Element::term(x, rat(1)), Element::term(y, rat(1)),
                           Element::term(z, rat(1)));
  });
}

ScanReport scan_jacobi_serial(const BilinearProduct& b, long window) {
  return scan_triples_serial(b.signature(), window, [&](BasisSymbol x, BasisSymbol y,
                                                        BasisSymbol z) {
    return std::pair<Element, Element>{
        product_jacobi_defect(b, Element::term(x, rat(1)), Element::term(y, rat(1)),
                              Element::term(z, rat(1))),
        Element::zero()};
  });
}

ScanReport scan_jacobi(const BilinearProduct& b, long window) {
  return scan_triples_parallel(b.signature(), window, [&](BasisSymbol x, BasisSymbol y,
                                                          BasisSymbol z) {
    return std::pair<Element, Element>{
        product_jacobi_defect(b, Element::term(x, rat(1)), Element::term(y, rat(1)),
                              Element::term(z, rat(1))),
        Element::zero()};
  });
}

std::vector<TableRow> multiplication_table(const BilinearProduct& p, long window) {
  std::vector<TableRow> rows;
  auto syms = window_symbols(p.signature(), window);
  for (BasisSymbol x : syms)
    for (BasisSymbol y : syms)
      rows.push_back({x, y, p.eval(x, y)});
  return rows;
}

}  // namespace rbwv
