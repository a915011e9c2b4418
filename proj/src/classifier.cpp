#include "rbwv/classifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace rbwv {

Rational SolutionTable::f_at(long m) const {
  if (m < -window || m > window)
    throw WindowError("f index outside window");
  auto it = f.find(m);
  if (it == f.end()) {
    if (m == 0 && f0_free())
      throw DomainError("f(0) is free in this table");
    return Rational(0);
  }
  return it->second;
}

std::string values_key(const SolutionTable& t) {
  std::ostringstream out;
  out << "N=" << t.window << ";f=";
  for (long m = -t.window; m <= t.window; ++m) {
    if (m == 0 && t.f0_free()) {
      out << "*,";
      continue;
    }
    auto it = t.f.find(m);
    out << (it == t.f.end() ? "0" : to_string(it->second)) << ",";
  }
  auto put = [&](const char* name, const std::optional<Rational>& v, bool free) {
    out << ";" << name << "=";
    if (free)
      out << "*";
    else if (v)
      out << to_string(*v);
  };
  put("theta", t.theta, t.free_params.count("theta") != 0);
  put("mu", t.mu, t.free_params.count("mu") != 0);
  put("nu", t.nu, t.free_params.count("nu") != 0);
  return out.str();
}

std::string to_string(const SolutionTable& t) {
  std::string s = values_key(t);
  if (!t.anchor.empty())
    s += ";anchor=" + t.anchor;
  return s;
}

// ---------------------------------------------------------------------------
// Symbolic polynomials over the window unknowns.
//
// The solver works with the component equations of the defining functional
// equations as sparse polynomials of total degree <= 2 in the unknowns
// f(-N)..f(N), theta, mu, nu. Unknown ids: f(m) <-> m + N, then theta, mu, nu.
// ---------------------------------------------------------------------------

namespace {

constexpr int kNoVar = -1;

struct Poly {
  // key (a, b): a <= b, kNoVar for absent factors; (kNoVar, kNoVar) = constant
  std::map<std::pair<int, int>, Rational> t;

  bool zero() const { return t.empty(); }

  void add_term(int a, int b, const Rational& c) {
    if (c == 0)
      return;
    if (a > b)
      std::swap(a, b);
    auto key = std::make_pair(a, b);
    auto it = t.find(key);
    if (it == t.end()) {
      t.emplace(key, c);
    } else {
      it->second += c;
      if (it->second == 0)
        t.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [k, c] : o.t)
      add_term(k.first, k.second, c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }

  friend Poly operator-(Poly a, const Poly& b) {
    for (const auto& [k, c] : b.t)
      a.add_term(k.first, k.second, -c);
    return a;
  }

  friend Poly operator*(const Rational& c, Poly p) {
    if (c == 0)
      return Poly();
    for (auto& [k, v] : p.t)
      v *= c;
    return p;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ka, ca] : a.t)
      for (const auto& [kb, cb] : b.t) {
        int vars[4] = {ka.first, ka.second, kb.first, kb.second};
        int packed[2] = {kNoVar, kNoVar};
        int count = 0;
        for (int v : vars)
          if (v != kNoVar) {
            if (count == 2)
              throw DomainError("polynomial degree above 2");
            packed[count++] = v;
          }
        out.add_term(packed[0], packed[1], ca * cb);
      }
    return out;
  }

  std::vector<int> variables() const {
    std::vector<int> vars;
    for (const auto& [k, c] : t) {
      if (k.first != kNoVar) vars.push_back(k.first);
      if (k.second != kNoVar) vars.push_back(k.second);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  }

  bool affine() const {
    for (const auto& [k, c] : t)
      if (k.first != kNoVar)
        return false;
    return true;
  }

  // Every monomial carries the variable u.
  bool divisible_by(int u) const {
    for (const auto& [k, c] : t)
      if (k.first != u && k.second != u)
        return false;
    return !t.empty();
  }

  // poly = u * cofactor, valid when divisible_by(u).
  Poly cofactor(int u) const {
    Poly out;
    for (const auto& [k, c] : t) {
      int other = (k.first == u) ? k.second : k.first;
      out.add_term(kNoVar, other, c);
    }
    return out;
  }

  Poly substitute_value(int u, const Rational& value) const {
    Poly out;
    for (const auto& [k, c] : t) {
      int a = k.first, b = k.second;
      Rational coef = c;
      if (a == u) { coef *= value; a = kNoVar; }
      if (b == u) { coef *= value; b = kNoVar; }
      out.add_term(a, b, coef);
    }
    return out;
  }

  // u := affine expression (degree <= 1, not containing u)
  Poly substitute_affine(int u, const Poly& expr) const {
    Poly out;
    for (const auto& [k, c] : t) {
      int a = k.first, b = k.second;
      Poly term;
      term.add_term(kNoVar, kNoVar, c);
      if (a == u && b == u) {
        term = term * expr * expr;
      } else if (b == u) {  // a <= b so a != u
        Poly rest;
        rest.add_term(kNoVar, a, rat(1));
        term = term * rest * expr;
      } else if (a == u) {
        Poly rest;
        rest.add_term(kNoVar, b, rat(1));
        term = term * rest * expr;
      } else {
        term = Poly();
        term.add_term(a, b, c);
      }
      out += term;
    }
    return out;
  }
};

Poly pvar(int id) {
  Poly p;
  p.add_term(kNoVar, id, rat(1));
  return p;
}

Rational coc3(long x) {
  Integer xx(x);
  return Rational(xx * xx * xx - xx);
}

// Rational roots of c2 x^2 + c1 x + c0, sorted ascending. Over the rational
// ground field an irrational pair means no admissible value.
std::vector<Rational> rational_roots(const Rational& c2, const Rational& c1, const Rational& c0) {
  std::vector<Rational> roots;
  if (c2 == 0) {
    if (c1 == 0)
      return roots;  // constant: caller handles
    roots.push_back(-c0 / c1);
    return roots;
  }
  Rational disc = c1 * c1 - 4 * c2 * c0;
  if (disc < 0)
    return roots;
  if (disc == 0) {
    roots.push_back(-c1 / (2 * c2));
    return roots;
  }
  Integer num = numerator(disc), den = denominator(disc);
  Integer sn = sqrt(num), sd = sqrt(den);
  if (sn * sn != num || sd * sd != den)
    return roots;  // irrational pair
  Rational s(sn, sd);
  Rational r1 = (-c1 - s) / (2 * c2);
  Rational r2 = (-c1 + s) / (2 * c2);
  if (r2 < r1)
    std::swap(r1, r2);
  roots.push_back(std::move(r1));
  roots.push_back(std::move(r2));
  return roots;
}

// Unknown-id bookkeeping for one equation system.
struct VarSpace {
  long window;
  bool virasoro;
  bool has_nu;  // nu is an unknown only in degree 0

  int fvar(long m) const { return static_cast<int>(m + window); }
  int theta() const { return static_cast<int>(2 * window + 1); }
  int mu() const { return static_cast<int>(2 * window + 2); }
  int nu() const { return static_cast<int>(2 * window + 3); }
  long f_index(int id) const { return static_cast<long>(id) - window; }
  bool is_f(int id) const { return id <= 2 * window; }

  std::string name(int id) const {
    if (is_f(id))
      return "f(" + std::to_string(f_index(id)) + ")";
    if (id == theta()) return "theta";
    if (id == mu()) return "mu";
    return "nu";
  }

  // Canonical processing order: f(0), f(-k), f(1), f(-1), ..., theta, mu, nu.
  std::vector<int> canonical_order(long degree) const {
    std::vector<int> order;
    order.push_back(fvar(0));
    if (degree != 0 && -degree >= -window && -degree <= window)
      order.push_back(fvar(-degree));
    for (long m : window_indices(window)) {
      int id = fvar(m);
      if (std::find(order.begin(), order.end(), id) == order.end())
        order.push_back(id);
    }
    if (virasoro) {
      order.push_back(theta());
      order.push_back(mu());
      if (has_nu)
        order.push_back(nu());
    }
    return order;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Component-equation assembly.
//
// For the pair (L_{m-k}, L_{n-k}) the Rota-Baxter defect, written in the
// f-argument indices (m, n), has these components (lambda is the weight):
//
//   L(m+n):   f(m)f(n)(m-n) - [f(m)(m-n+k) + f(n)(m-n-k)] f(m+n)
//   C:        f(m)f(n)(m^3-m)/12                        when m+n = 0
//             - [f(m)(m-n+k) + f(n)(m-n-k)] theta       when m+n = 0
//   L(k):     - [f(m)(m^3-m) + f(n)((m-k)^3-(m-k))]/12 mu   when m+n = k
//   C:        - [same]/12 nu                            when m+n = k = 0
//   L(m+n-k): - lambda (m-n) f(m+n-k)
//   C:        - lambda (m-n) theta                      when m+n = k
//   L(k):     - lambda ((m-k)^3-(m-k))/12 mu            when m+n = 2k
//   C:        - lambda ((m-k)^3-(m-k))/12 nu            when m+n = 2k = 0
//
// and for the pair (L_{m-k}, C), with a = m - k:
//
//   L(m+k):   mu [ f(m) a - (a-k) f(m+k) ]
//   C:        mu [ f(m)(m^3-m)/12 - (a-k) theta ]       when m+k = 0
//   L(k):     - mu^2 (a^3-a)/12                         when m = 0
//   C:        - mu nu (a^3-a)/12                        when m = k = 0
//
// Symbols coincide for special values of m+n and the sums merge; the map
// keyed by basis symbol does this automatically.
// ---------------------------------------------------------------------------

namespace {

using Components = std::map<BasisSymbol, Poly>;

void add_component(Components& out, BasisSymbol sym, Poly p) {
  if (p.zero())
    return;
  auto it = out.find(sym);
  if (it == out.end()) {
    out.emplace(sym, std::move(p));
  } else {
    it->second += p;
    if (it->second.zero())
      out.erase(it);
  }
}

Components ll_components(const VarSpace& vs, const Rational& lambda, long k, long m, long n) {
  Components out;
  Poly P = pvar(vs.fvar(m));
  Poly Q = pvar(vs.fvar(n));
  Poly S = pvar(vs.fvar(m + n));
  Poly bracket_coef = rat(m - n + k) * P + rat(m - n - k) * Q;

  add_component(out, L(m + n), rat(m - n) * (P * Q) - bracket_coef * S);
  if (vs.virasoro) {
    if (m + n == 0) {
      add_component(out, C(), Rational(coc3(m) / 12) * (P * Q));
      add_component(out, C(), rat(-1) * (bracket_coef * pvar(vs.theta())));
    }
    if (m + n == k) {
      Poly coef = coc3(m) * P + coc3(m - k) * Q;
      add_component(out, L(k), rat(-1, 12) * (coef * pvar(vs.mu())));
      if (k == 0 && vs.has_nu)
        add_component(out, C(), rat(-1, 12) * (coef * pvar(vs.nu())));
    }
  }
  if (lambda != 0) {
    add_component(out, L(m + n - k), (-lambda * rat(m - n)) * pvar(vs.fvar(m + n - k)));
    if (vs.virasoro) {
      if (m + n == k)
        add_component(out, C(), (-lambda * rat(m - n)) * pvar(vs.theta()));
      if (m + n == 2 * k) {
        add_component(out, L(k), (-lambda * coc3(m - k) / 12) * pvar(vs.mu()));
        if (k == 0 && vs.has_nu)
          add_component(out, C(), (-lambda * coc3(m - k) / 12) * pvar(vs.nu()));
      }
    }
  }
  return out;
}

Components lc_components(const VarSpace& vs, long k, long m) {
  Components out;
  if (!vs.virasoro)
    return out;
  long a = m - k;
  Poly P = pvar(vs.fvar(m));
  Poly R2 = pvar(vs.fvar(m + k));
  Poly mu = pvar(vs.mu());

  add_component(out, L(m + k), mu * (rat(a) * P - rat(a - k) * R2));
  if (m + k == 0)
    add_component(out, C(), mu * (Rational(coc3(m) / 12) * P - rat(a - k) * pvar(vs.theta())));
  if (m == 0) {
    add_component(out, L(k), (-coc3(a) / 12) * (mu * mu));
    if (k == 0 && vs.has_nu)
      add_component(out, C(), (-coc3(a) / 12) * (mu * pvar(vs.nu())));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// EquationSystem
// ---------------------------------------------------------------------------

EquationSystem::EquationSystem(Signature sig, Rational weight, long degree, long window)
    : sig_(sig), lambda_(std::move(weight)), degree_(degree), window_(window) {
  if (sig != Signature::Witt && sig != Signature::Virasoro)
    throw DomainError("classification runs on witt or virasoro");
  if (lambda_ != 0 && lambda_ != 1)
    throw DomainError("cataloged weights are 0 and 1");
  if (window < 1)
    throw DomainError("window must be positive");
}

bool EquationSystem::admitted(const Instance& inst) const {
  auto in = [&](long x) { return x >= -window_ && x <= window_; };
  if (inst.kind == Instance::Kind::LL) {
    if (!in(inst.m) || !in(inst.n) || !in(inst.m + inst.n))
      return false;
    if (lambda_ != 0 && !in(inst.m + inst.n - degree_))
      return false;
    return true;
  }
  if (sig_ != Signature::Virasoro)
    return false;
  return in(inst.m) && in(inst.m + degree_);
}

std::vector<EquationSystem::Instance> EquationSystem::instances() const {
  std::vector<Instance> out;
  auto idx = window_indices(window_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      Instance inst{Instance::Kind::LL, idx[i], idx[j]};
      if (admitted(inst))
        out.push_back(inst);
    }
  if (sig_ == Signature::Virasoro)
    for (long m : idx) {
      Instance inst{Instance::Kind::LC, m, 0};
      if (admitted(inst))
        out.push_back(inst);
    }
  return out;
}

namespace {

VarSpace var_space_for(const EquationSystem& eq) {
  return VarSpace{eq.window(), eq.signature() == Signature::Virasoro, eq.degree() == 0};
}

Components instance_components(const EquationSystem& eq, const EquationSystem::Instance& inst) {
  VarSpace vs = var_space_for(eq);
  if (inst.kind == EquationSystem::Instance::Kind::LL)
    return ll_components(vs, eq.weight(), eq.degree(), inst.m, inst.n);
  return lc_components(vs, eq.degree(), inst.m);
}

Rational table_value(const SolutionTable& table, const VarSpace& vs, int id) {
  if (vs.is_f(id))
    return table.f_at(vs.f_index(id));
  auto pick = [&](const std::optional<Rational>& v, const char* name) {
    if (table.free_params.count(name))
      throw DomainError(std::string("parameter ") + name + " is free in this table");
    return v ? *v : Rational(0);
  };
  if (id == vs.theta()) return pick(table.theta, "theta");
  if (id == vs.mu()) return pick(table.mu, "mu");
  return pick(table.nu, "nu");
}

Rational eval_poly(const Poly& p, const SolutionTable& table, const VarSpace& vs) {
  Rational out(0);
  for (const auto& [k, c] : p.t) {
    Rational term = c;
    if (k.first != kNoVar)
      term *= table_value(table, vs, k.first);
    if (k.second != kNoVar)
      term *= table_value(table, vs, k.second);
    out += term;
  }
  return out;
}

}  // namespace

Element EquationSystem::residual(const SolutionTable& table, const Instance& inst) const {
  if (!admitted(inst))
    throw WindowError("instance not admitted by the window");
  if (table.window < window_)
    throw WindowError("table window smaller than system window");
  VarSpace vs = var_space_for(*this);
  Element out;
  for (const auto& [sym, poly] : instance_components(*this, inst))
    out += Element::term(sym, eval_poly(poly, table, vs));
  return out;
}

Rational EquationSystem::residual_scalar(const SolutionTable& table, const Instance& inst) const {
  Element r = residual(table, inst);
  if (r.is_zero())
    return Rational(0);
  if (r.terms().size() != 1)
    throw DomainError("residual is not concentrated on one symbol");
  return r.terms().front().second;
}

// ---------------------------------------------------------------------------
// solve: branch-and-propagate over the component equations.
//
// Propagation assigns any unknown pinned by a univariate equation (rational
// roots, exactly). When the pool stalls, the solver branches: first on a
// univariate equation with two roots, otherwise on an equation all of whose
// monomials carry one unknown u (so it factors u * cofactor, the dichotomy
// shape the equations produce): u = 0 versus cofactor = 0. Affine cofactors
// become triangular substitutions so later propagation sees the relation.
// Weight-0 runs are scale-normalized by anchoring the first nonzero unknown
// (in the documented scan order) to 1, one branch per anchor position.
// ---------------------------------------------------------------------------

namespace {

struct SolverConfig {
  VarSpace vs;
  long degree;
  Rational lambda;
  std::vector<int> order;          // canonical unknown order
  std::vector<int> anchor_order;   // scan order for weight-0 anchoring
  std::vector<int> continuous;     // unknowns allowed to end up free
};

struct SearchNode {
  std::map<int, Rational> values;
  std::map<int, Poly> substitutions;  // var -> affine expr in earlier vars
  std::vector<Poly> pool;
};

struct Solver {
  const SolverConfig& cfg;
  std::vector<SolutionTable>* out;
  long window;

  Poly reduce(const Poly& p, const SearchNode& node) const {
    Poly q = p;
    for (const auto& [var, expr] : node.substitutions)
      q = q.substitute_affine(var, expr);
    for (const auto& [var, value] : node.values)
      q = q.substitute_value(var, value);
    return q;
  }

  // Returns false on conflict.
  bool propagate(SearchNode& node) const {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Poly> next;
      next.reserve(node.pool.size());
      for (const Poly& raw : node.pool) {
        Poly p = reduce(raw, node);
        if (p.zero())
          continue;
        auto vars = p.variables();
        if (vars.empty())
          return false;  // nonzero constant
        if (vars.size() == 1) {
          int u = vars[0];
          Rational c2(0), c1(0), c0(0);
          for (const auto& [k, c] : p.t) {
            if (k.first == u && k.second == u) c2 = c;
            else if (k.second == u) c1 = c;
            else c0 = c;
          }
          auto roots = rational_roots(c2, c1, c0);
          if (roots.empty())
            return false;
          if (roots.size() == 1) {
            node.values[u] = roots[0];
            changed = true;
            continue;
          }
        }
        next.push_back(std::move(p));
      }
      node.pool = std::move(next);
    }
    return true;
  }

  // Deterministic branch choice; returns true when a branch was made.
  bool branch(SearchNode node) const {
    // univariate two-root equations first (in canonical variable order)
    const Poly* best = nullptr;
    int best_var = 0;
    std::vector<Rational> best_roots;
    for (int u : cfg.order) {
      if (node.values.count(u) || node.substitutions.count(u))
        continue;
      for (const Poly& p : node.pool) {
        auto vars = p.variables();
        if (vars.size() == 1 && vars[0] == u) {
          Rational c2(0), c1(0), c0(0);
          for (const auto& [k, c] : p.t) {
            if (k.first == u && k.second == u) c2 = c;
            else if (k.second == u) c1 = c;
            else c0 = c;
          }
          auto roots = rational_roots(c2, c1, c0);
          best = &p;
          best_var = u;
          best_roots = std::move(roots);
          break;
        }
      }
      if (best)
        break;
    }
    if (best) {
      for (const Rational& r : best_roots) {
        SearchNode child = node;
        child.values[best_var] = r;
        run(std::move(child));
      }
      return true;
    }

    // factorable equations u * cofactor: branch u = 0 versus cofactor = 0
    for (int u : cfg.order) {
      if (node.values.count(u) || node.substitutions.count(u))
        continue;
      for (std::size_t idx = 0; idx < node.pool.size(); ++idx) {
        const Poly p = node.pool[idx];
        if (!p.divisible_by(u))
          continue;
        Poly cof = p.cofactor(u);
        {
          SearchNode child = node;
          child.values[u] = Rational(0);
          run(std::move(child));
        }
        auto vars = cof.variables();
        if (!vars.empty()) {
          SearchNode child = node;
          child.pool.erase(child.pool.begin() + static_cast<long>(idx));
          if (cof.affine()) {
            // solve the relation for the canonically latest variable
            int pick = -1;
            for (int v : cfg.order)
              if (std::find(vars.begin(), vars.end(), v) != vars.end())
                pick = v;
            Rational coef(0);
            for (const auto& [k, c] : cof.t)
              if (k.second == pick)
                coef = c;
            Poly expr;  // pick = -(cof - coef*pick)/coef
            for (const auto& [k, c] : cof.t)
              if (k.second != pick)
                expr.add_term(k.first, k.second, -c / coef);
            child.substitutions[pick] = std::move(expr);
          } else {
            child.pool.push_back(std::move(cof));
          }
          run(std::move(child));
        }
        return true;
      }
    }
    return false;
  }

  // Final affine stage: remaining pool must be affine; Gaussian-eliminate and
  // classify leftover unknowns as free.
  void finish(SearchNode node) const {
    std::vector<int> remaining;
    for (int u : cfg.order)
      if (!node.values.count(u) && !node.substitutions.count(u))
        remaining.push_back(u);

    std::vector<Poly> rows;
    for (const Poly& raw : node.pool) {
      Poly p = reduce(raw, node);
      if (p.zero())
        continue;
      if (!p.affine())
        throw DomainError("classifier internal: non-affine stall");
      rows.push_back(std::move(p));
    }
    // elimination in canonical order
    std::set<int> pivoted;
    for (int u : remaining) {
      Poly* pivot = nullptr;
      for (Poly& row : rows) {
        if (row.zero())
          continue;
        Rational c(0);
        for (const auto& [k, cc] : row.t)
          if (k.second == u && k.first == kNoVar)
            c = cc;
        if (c != 0) {
          pivot = &row;
          break;
        }
      }
      if (!pivot)
        continue;
      Rational pc(0);
      for (const auto& [k, cc] : pivot->t)
        if (k.second == u && k.first == kNoVar)
          pc = cc;
      Poly expr;  // u = -(pivot - pc u)/pc
      for (const auto& [k, cc] : pivot->t)
        if (k.second != u)
          expr.add_term(k.first, k.second, -cc / pc);
      node.substitutions[u] = expr;
      pivoted.insert(u);
      for (Poly& row : rows)
        row = row.substitute_affine(u, expr);
    }
    for (const Poly& row : rows) {
      if (row.zero())
        continue;
      return;  // inconsistent affine system
    }

    // unknowns with neither value nor pivot are free
    std::set<int> free_vars;
    for (int u : remaining)
      if (!pivoted.count(u))
        free_vars.insert(u);
    for (int u : free_vars)
      if (std::find(cfg.continuous.begin(), cfg.continuous.end(), u) == cfg.continuous.end())
        throw WindowError("window leaves " + cfg.vs.name(u) + " unconstrained");

    // resolve substitutions bottom-up; expressions over free vars must vanish
    std::map<int, Rational> values = node.values;
    std::vector<std::pair<int, Poly>> subs(node.substitutions.begin(), node.substitutions.end());
    bool progress = true;
    while (!subs.empty() && progress) {
      progress = false;
      for (auto it = subs.begin(); it != subs.end();) {
        Poly p = it->second;
        for (const auto& [var, value] : values)
          p = p.substitute_value(var, value);
        auto vars = p.variables();
        bool only_free = true;
        for (int v : vars)
          if (!free_vars.count(v))
            only_free = false;
        if (only_free) {
          bool nonconst = false;
          for (const auto& [k, cc] : p.t)
            if (k.second != kNoVar)
              nonconst = true;
          if (nonconst)
            throw DomainError("classifier internal: value depends on a free parameter");
          Rational c0(0);
          for (const auto& [k, cc] : p.t)
            c0 = cc;
          values[it->first] = c0;
          it = subs.erase(it);
          progress = true;
        } else {
          ++it;
        }
      }
    }
    if (!subs.empty())
      throw DomainError("classifier internal: cyclic substitution");

    // full verification: every equation must vanish identically in the frees
    for (const Poly& raw : node.pool) {
      Poly p = raw;
      for (const auto& [var, value] : values)
        p = p.substitute_value(var, value);
      for (int u : free_vars) {
        // keep frees symbolic; nothing to do
        (void)u;
      }
      if (!p.zero()) {
        // must vanish identically; any leftover term involves frees only
        auto vars = p.variables();
        for (int v : vars)
          if (!free_vars.count(v))
            throw DomainError("classifier internal: unresolved variable after solve");
        return;  // residual depends on a free parameter: not a solution family
      }
    }

    emit(values, free_vars);
  }

  void run(SearchNode node) const {
    if (!propagate(node))
      return;
    if (branch(node))
      return;
    finish(std::move(node));
  }

  void emit(const std::map<int, Rational>& values, const std::set<int>& free_vars) const {
    SolutionTable table;
    table.window = window;
    const VarSpace& vs = cfg.vs;
    for (long m = -window; m <= window; ++m) {
      int id = vs.fvar(m);
      if (free_vars.count(id)) {
        table.free_params.insert("f0");
        continue;
      }
      table.f[m] = values.at(id);
    }
    if (vs.virasoro) {
      if (free_vars.count(vs.theta()))
        table.free_params.insert("theta");
      else
        table.theta = values.at(vs.theta());
      if (free_vars.count(vs.mu()))
        table.free_params.insert("mu");
      else
        table.mu = values.at(vs.mu());
      if (vs.has_nu) {
        if (free_vars.count(vs.nu()))
          table.free_params.insert("nu");
        else
          table.nu = values.at(vs.nu());
      } else {
        table.nu = Rational(0);  // forced by the operator shape
      }
    }
    out->push_back(std::move(table));
  }
};

}  // namespace

std::vector<SolutionTable> solve(const EquationSystem& eq) {
  if (eq.window() < 4)
    throw DomainError("classification window must be at least 4");
  if (std::labs(eq.degree()) > eq.window())
    throw WindowError("window too small for this degree");

  VarSpace vs = var_space_for(eq);
  SolverConfig cfg{vs, eq.degree(), eq.weight(), {}, {}, {}};
  cfg.order = vs.canonical_order(eq.degree());
  if (!vs.has_nu && vs.virasoro)
    cfg.order.erase(std::remove(cfg.order.begin(), cfg.order.end(), vs.nu()), cfg.order.end());

  // Build the component-equation pool once.
  std::vector<Poly> pool;
  {
    std::set<std::string> seen;
    for (const auto& inst : eq.instances())
      for (auto& [sym, poly] : instance_components(eq, inst)) {
        std::ostringstream key;
        for (const auto& [k, c] : poly.t)
          key << k.first << ":" << k.second << ":" << to_string(c) << ";";
        if (seen.insert(key.str()).second)
          pool.push_back(std::move(poly));
      }
  }

  std::vector<SolutionTable> results;

  auto run_with = [&](std::map<int, Rational> preset, const std::string& anchor,
                      std::vector<int> continuous) {
    SolverConfig branch_cfg = cfg;
    branch_cfg.continuous = std::move(continuous);
    Solver s{branch_cfg, &results, eq.window()};
    SearchNode node;
    node.values = std::move(preset);
    node.pool = pool;
    std::size_t before = results.size();
    s.run(std::move(node));
    for (std::size_t i = before; i < results.size(); ++i)
      results[i].anchor = anchor;
  };

  const bool vir = vs.virasoro;
  if (eq.weight() == 0 && !(vir && eq.degree() == 0)) {
    // Scale-normalized anchor branches. Scan order: mu (Virasoro, nonzero
    // degree), then f(0), f(-k), f by |m|, then theta.
    std::vector<int> scan;
    if (vir)
      scan.push_back(vs.mu());
    scan.push_back(vs.fvar(0));
    if (eq.degree() != 0)
      scan.push_back(vs.fvar(-eq.degree()));
    for (long m : window_indices(eq.window())) {
      int id = vs.fvar(m);
      if (std::find(scan.begin(), scan.end(), id) == scan.end())
        scan.push_back(id);
    }
    if (vir)
      scan.push_back(vs.theta());

    std::vector<int> continuous;
    if (vir)
      continuous.push_back(vs.theta());

    for (std::size_t pos = 0; pos < scan.size(); ++pos) {
      std::map<int, Rational> preset;
      for (std::size_t i = 0; i < pos; ++i)
        preset[scan[i]] = Rational(0);
      preset[scan[pos]] = rat(1);
      std::string anchor = vs.name(scan[pos]);
      std::vector<int> cont = continuous;
      cont.erase(std::remove(cont.begin(), cont.end(), scan[pos]), cont.end());
      run_with(std::move(preset), anchor, std::move(cont));
    }
    // the zero solution
    {
      std::map<int, Rational> preset;
      for (int u : scan)
        preset[u] = Rational(0);
      run_with(std::move(preset), "", continuous);
    }
  } else if (eq.weight() == 0) {
    // Virasoro degree 0: the solution set is a linear space; report the free
    // parameter structure directly, unnormalized.
    run_with({}, "", {vs.fvar(0), vs.theta(), vs.mu(), vs.nu()});
  } else {
    // weight 1: no scale action
    std::vector<int> continuous{vs.fvar(0)};
    if (vir) {
      continuous.push_back(vs.theta());
      continuous.push_back(vs.mu());
      if (vs.has_nu)
        continuous.push_back(vs.nu());
    }
    run_with({}, "", std::move(continuous));
  }

  // canonical order, no duplicates
  std::sort(results.begin(), results.end(),
            [](const SolutionTable& a, const SolutionTable& b) {
              return to_string(a) < to_string(b);
            });
  results.erase(std::unique(results.begin(), results.end(),
                            [](const SolutionTable& a, const SolutionTable& b) {
                              return values_key(a) == values_key(b);
                            }),
                results.end());
  return results;
}

// ---------------------------------------------------------------------------
// Catalog matching
// ---------------------------------------------------------------------------

SolutionTable restrict_operator(const HomogeneousOperator& op, long window,
                                const std::set<std::string>& free_params,
                                const std::string& anchor) {
  SolutionTable t;
  t.window = window;
  t.free_params = free_params;
  t.anchor = anchor;
  for (long m = -window; m <= window; ++m) {
    if (m == 0 && free_params.count("f0"))
      continue;
    t.f[m] = op.f.eval(m);
  }
  if (op.sig == Signature::Virasoro) {
    if (!free_params.count("theta"))
      t.theta = op.theta;
    if (!free_params.count("mu"))
      t.mu = op.mu;
    if (!free_params.count("nu"))
      t.nu = op.nu;
  }
  return t;
}

std::string CatalogMatch::text() const {
  std::ostringstream out;
  out << family_name(family) << "{";
  bool first = true;
  auto put = [&](const std::string& kv) {
    if (!first)
      out << ",";
    first = false;
    out << kv;
  };
  if (params.k != 0 || family == Family::W0_I || family == Family::V0_DEG0)
    put("k=" + std::to_string(params.k));
  if (params.l != 0)
    put("l=" + std::to_string(params.l));
  auto slot = [&](const char* name, const std::optional<Rational>& v) {
    if (free_slots.count(name))
      put(std::string(name) + "=free");
    else if (v)
      put(std::string(name) + "=" + to_string(*v));
  };
  slot("alpha", params.alpha);
  slot("beta", params.beta);
  slot("gamma", params.gamma);
  slot("theta", params.theta);
  slot("mu", params.mu);
  slot("nu", params.nu);
  slot("vartheta", params.vartheta);
  out << "}";
  return out.str();
}

namespace {

bool same_values(const SolutionTable& a, const SolutionTable& b) {
  return values_key(a) == values_key(b);
}

void try_candidate(MatchResult& out, const SolutionTable& sol, Family family,
                   const OperatorParams& params, const std::set<std::string>& op_frees,
                   const std::set<std::string>& slot_frees) {
  HomogeneousOperator op = make_operator(family, params);
  SolutionTable expected = restrict_operator(op, sol.window, op_frees);
  if (same_values(sol, expected))
    out.matches.push_back({family, params, slot_frees});
}

}  // namespace

MatchResult match_catalog(const SolutionTable& sol, const EquationSystem& eq) {
  MatchResult out;
  const long k = eq.degree();
  const long N = eq.window();
  const bool vir = eq.signature() == Signature::Virasoro;

  if (eq.weight() == 0 && !vir) {
    for (int alpha = 0; alpha <= 1; ++alpha) {
      OperatorParams p;
      p.k = k;
      p.alpha = rat(alpha);
      try_candidate(out, sol, Family::W0_I, p, {}, {});
    }
    if (k != 0 && k % 2 == 0) {
      OperatorParams p;
      p.k = k / 2;
      p.beta = rat(1);
      try_candidate(out, sol, Family::W0_II, p, {}, {});
    }
    if (k != 0) {
      for (long l = 2; l <= 2 * N + std::labs(k) + 1; ++l) {
        if (k % l == 0)
          continue;
        OperatorParams p;
        p.k = k;
        p.l = l;
        p.gamma = rat(1);
        try_candidate(out, sol, Family::W0_III, p, {}, {});
      }
    }
  } else if (eq.weight() == 0 && vir) {
    if (k == 0) {
      // Full End(V_0) family: alpha, theta, mu, nu arbitrary.
      if (sol.free_params == std::set<std::string>{"f0", "theta", "mu", "nu"}) {
        bool off_zero = true;
        for (const auto& [m, v] : sol.f)
          if (m != 0 && v != 0)
            off_zero = false;
        if (off_zero)
          out.matches.push_back(
              {Family::V0_DEG0, OperatorParams{}, {"alpha", "theta", "mu", "nu"}});
      }
    } else {
      for (int theta = 0; theta <= 1; ++theta) {
        OperatorParams p;
        p.k = k;
        p.theta = rat(theta);
        try_candidate(out, sol, Family::V0_I, p, {}, {});
      }
      {
        OperatorParams p;
        p.k = k;
        p.alpha = rat(1);
        try_candidate(out, sol, Family::V0_II, p, {}, {});
      }
      if (k % 2 == 0) {
        OperatorParams p;
        p.k = k / 2;
        p.beta = rat(1);
        p.vartheta = rat(0);
        try_candidate(out, sol, Family::V0_III, p, {"theta"}, {"vartheta"});
      }
      {
        OperatorParams p;
        p.k = k;
        p.mu = rat(1);
        try_candidate(out, sol, Family::V0_IV, p, {}, {});
      }
    }
  } else if (!vir) {
    // weight 1, Witt
    if (k != 0) {
      OperatorParams p;
      SolutionTable zero = restrict_operator(make_operator(Family::W1_ZERO, p), sol.window);
      // the zero operator is the only catalog member at nonzero degree
      SolutionTable sol_copy = sol;
      if (same_values(sol_copy, zero))
        out.matches.push_back({Family::W1_ZERO, p, {}});
      return out;
    }
    for (Family fam : {Family::W1_LE1, Family::W1_GE_NEG1, Family::W1_ZERO, Family::W1_GT1,
                       Family::W1_LT_NEG1, Family::W1_EMPTY}) {
      OperatorParams p;
      // f(0) is determined: 0 for the first three, -1 for the others
      HomogeneousOperator op = make_operator(fam, p);
      SolutionTable expected = restrict_operator(op, sol.window);
      if (same_values(sol, expected))
        out.matches.push_back({fam, p, {}});
    }
    for (Family fam : {Family::W1_PLUS, Family::W1_MINUS}) {
      OperatorParams p;
      p.alpha = rat(0);  // placeholder; the slot is free
      HomogeneousOperator op = make_operator(fam, p);
      SolutionTable expected = restrict_operator(op, sol.window, {"f0"});
      if (same_values(sol, expected))
        out.matches.push_back({fam, p, {"alpha"}});
    }
  } else {
    // weight 1, Virasoro
    if (k != 0) {
      OperatorParams p;
      SolutionTable zero = restrict_operator(make_operator(Family::V1_ZERO, p), sol.window);
      if (same_values(sol, zero))
        out.matches.push_back({Family::V1_ZERO, p, {}});
      return out;
    }
    auto fixed = [&](Family fam, OperatorParams p, std::set<std::string> op_frees,
                     std::set<std::string> slots) {
      HomogeneousOperator op = make_operator(fam, p);
      SolutionTable expected = restrict_operator(op, sol.window, op_frees);
      if (same_values(sol, expected))
        out.matches.push_back({fam, p, std::move(slots)});
    };
    for (Family fam : {Family::V1_LE1, Family::V1_GE_NEG1, Family::V1_GT1, Family::V1_LT_NEG1})
      fixed(fam, OperatorParams{}, {"mu", "nu"}, {"mu", "nu"});
    fixed(Family::V1_ZERO, OperatorParams{}, {}, {});
    fixed(Family::V1_EMPTY, OperatorParams{}, {}, {});
    for (Family fam : {Family::V1_PLUS, Family::V1_MINUS}) {
      OperatorParams p;
      p.alpha = rat(0);
      fixed(fam, p, {"f0", "theta", "mu", "nu"}, {"alpha", "theta", "mu", "nu"});
    }
  }
  return out;
}

}  // namespace rbwv
