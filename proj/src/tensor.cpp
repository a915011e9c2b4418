#include "rbwv/tensor.hpp"

#include <algorithm>
#include <array>

namespace rbwv {

IndexSet IndexSet::all() {
  return IndexSet{Kind::All, {}, 0, 0, 0};
}

IndexSet IndexSet::finite(std::vector<long> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return IndexSet{Kind::Finite, std::move(pts), 0, 0, 0};
}

IndexSet IndexSet::congruence(long residue, long modulus) {
  if (modulus == 0)
    throw DomainError("congruence set needs a nonzero modulus");
  modulus = std::labs(modulus);
  residue = ((residue % modulus) + modulus) % modulus;
  return IndexSet{Kind::Congruence, {}, residue, modulus, 0};
}

IndexSet IndexSet::at_least(long bound) {
  return IndexSet{Kind::AtLeast, {}, 0, 0, bound};
}

IndexSet IndexSet::at_most(long bound) {
  return IndexSet{Kind::AtMost, {}, 0, 0, bound};
}

bool IndexSet::contains(long m) const {
  switch (kind) {
    case Kind::All: return true;
    case Kind::Finite: return std::binary_search(points.begin(), points.end(), m);
    case Kind::Congruence: return ((m % modulus) + modulus) % modulus == residue;
    case Kind::AtLeast: return m >= bound;
    case Kind::AtMost: return m <= bound;
  }
  return false;
}

BasisSymbol SymbolBuilder::at(long m) const {
  switch (kind) {
    case SymbolKind::L: return L(scale * m + offset);
    case SymbolKind::Ld: return Ld(scale * m + offset);
    case SymbolKind::C: return C();
    case SymbolKind::Cd: return Cd();
  }
  throw DomainError("bad symbol kind");
}

std::optional<long> SymbolBuilder::solve(BasisSymbol s) const {
  if (s.kind != kind)
    return std::nullopt;
  if (kind == SymbolKind::C || kind == SymbolKind::Cd)
    return std::nullopt;  // resolved by the band for single-point sets
  if (scale == 0)
    return std::nullopt;  // likewise
  long diff = s.n - offset;
  if (diff % scale != 0)
    return std::nullopt;
  return diff / scale;
}

Rational BandCoef::eval(long m) const {
  long den = den_a * m + den_b;
  if (den == 0)
    throw DomainError("band coefficient pole inside its index set");
  return num * rat(1, den);
}

FormalTensor::FormalTensor(Signature sig) : sig_(sig) {
  if (!has_dual(sig))
    throw DomainError("formal tensors live over the semidirect products");
}

FormalTensor::FormalTensor(Signature sig, std::vector<Band> bands) : FormalTensor(sig) {
  for (auto& b : bands)
    add_band(std::move(b));
}

namespace {

bool constant_kind(SymbolKind k) {
  return k == SymbolKind::C || k == SymbolKind::Cd;
}

void validate_band(Signature sig, const Band& band) {
  if (band.set.is_finite() && band.set.points.empty())
    throw DomainError("empty band index set");
  const bool single_point = band.set.is_finite() && band.set.points.size() == 1;
  long probe = band.set.is_finite() ? band.set.points.front() : 0;
  for (const SymbolBuilder* b : {&band.left, &band.right}) {
    if (!legal_symbol(sig, b->at(probe)))
      throw DomainError("band symbol illegal for signature");
    if (constant_kind(b->kind)) {
      if (!single_point)
        throw DomainError("constant-symbol band must cover a single point");
    } else if (b->scale == 0 && !single_point) {
      throw DomainError("band builder not injective on its index set");
    }
  }
  // coefficient poles must lie outside the set
  if (band.coef.den_a != 0) {
    long num = -band.coef.den_b;
    if (num % band.coef.den_a == 0 && band.set.contains(num / band.coef.den_a))
      throw DomainError("band coefficient pole inside its index set");
  }
}

// The unique base point of the band mapping under `builder` to the symbol s.
std::optional<long> band_solve(const Band& band, const SymbolBuilder& builder, BasisSymbol s) {
  if (constant_kind(builder.kind) || builder.scale == 0) {
    long p = band.set.points.front();  // single point by validation
    return builder.at(p) == s ? std::optional<long>(p) : std::nullopt;
  }
  auto m = builder.solve(s);
  if (!m || !band.set.contains(*m))
    return std::nullopt;
  return m;
}

}  // namespace

void FormalTensor::add_band(Band band) {
  if (band.coef.num == 0)
    return;
  validate_band(sig_, band);
  bands_.push_back(std::move(band));
}

Rational FormalTensor::coefficient_at(BasisSymbol i, BasisSymbol j) const {
  Rational out(0);
  for (const Band& band : bands_) {
    auto mi = band_solve(band, band.left, i);
    if (!mi)
      continue;
    auto mj = band_solve(band, band.right, j);
    if (!mj || *mi != *mj)
      continue;
    out += band.coef.eval(*mi);
  }
  return out;
}

std::vector<std::pair<BasisSymbol, Rational>> FormalTensor::row(BasisSymbol i) const {
  std::vector<std::pair<BasisSymbol, Rational>> out;
  for (const Band& band : bands_) {
    auto m = band_solve(band, band.left, i);
    if (m)
      out.emplace_back(band.right.at(*m), band.coef.eval(*m));
  }
  return out;
}

std::vector<std::pair<BasisSymbol, Rational>> FormalTensor::column(BasisSymbol j) const {
  std::vector<std::pair<BasisSymbol, Rational>> out;
  for (const Band& band : bands_) {
    auto m = band_solve(band, band.right, j);
    if (m)
      out.emplace_back(band.left.at(*m), band.coef.eval(*m));
  }
  return out;
}

FormalTensor FormalTensor::transpose() const {
  FormalTensor out(sig_);
  for (Band band : bands_) {
    std::swap(band.left, band.right);
    out.add_band(std::move(band));
  }
  return out;
}

FormalTensor FormalTensor::scaled(const Rational& c) const {
  FormalTensor out(sig_);
  if (c == 0)
    return out;
  for (Band band : bands_) {
    band.coef.num *= c;
    out.add_band(std::move(band));
  }
  return out;
}

FormalTensor operator+(FormalTensor a, const FormalTensor& b) {
  if (a.signature() != b.signature())
    throw DomainError("tensor sum across signatures");
  for (const Band& band : b.bands())
    a.add_band(band);
  return a;
}

bool equal_on_window(const FormalTensor& a, const FormalTensor& b, long window) {
  if (a.signature() != b.signature())
    return false;
  auto syms = window_symbols(a.signature(), window);
  for (BasisSymbol i : syms)
    for (BasisSymbol j : syms)
      if (a.coefficient_at(i, j) != b.coefficient_at(i, j))
        return false;
  return true;
}

FormalTensor identity_tensor(Signature semidirect_sig) {
  FormalTensor out(semidirect_sig);
  out.add_band({IndexSet::all(), BandCoef::constant(rat(1)), build_L(), build_Ld()});
  if (semidirect_sig == Signature::VirasoroSemidirect)
    out.add_band({IndexSet::point(0), BandCoef::constant(rat(1)), build_C(), build_Cd()});
  return out;
}

namespace {

Signature semidirect_of(Signature sig) {
  return sig == Signature::Witt ? Signature::WittSemidirect : Signature::VirasoroSemidirect;
}

}  // namespace

FormalTensor operator_to_tensor(const HomogeneousOperator& op) {
  if (op.f.is_table())
    throw DomainError("operator-to-tensor needs a closed-form coefficient function");
  const long k = op.degree;
  FormalTensor out(semidirect_of(op.sig));
  using CF = CoefficientFunction;

  // f-part: bands over the source index m, entries R(L_m) = f(m+k) L_{m+k},
  // i.e. f(m+k) at (L_{m+k}, L*_m).
  auto fband = [&](IndexSet set, BandCoef coef) {
    out.add_band({std::move(set), std::move(coef), build_L(1, k), build_Ld()});
  };
  const CF& f = op.f;
  switch (f.kind()) {
    case CF::Kind::Zero:
      break;
    case CF::Kind::DeltaAt:
      fband(IndexSet::point(f.target() - k), BandCoef::constant(f.value()));
      break;
    case CF::Kind::DoubleDelta:
      fband(IndexSet::point(f.point_a() - k), BandCoef::constant(f.value()));
      fband(IndexSet::point(f.point_b() - k), BandCoef::constant(2 * f.value()));
      break;
    case CF::Kind::CongruenceRational:
      // f(m+k) = value * k/(m+2k) on m+k in lZ
      fband(IndexSet::congruence(-k, f.cong_l()),
            BandCoef::rational_linear(f.value() * f.cong_k(), 1, 2 * k));
      break;
    case CF::Kind::Step:
      switch (f.step_kind()) {
        case CF::StepKind::LeOne:
          fband(IndexSet::at_least(2 - k), BandCoef::constant(rat(-1)));
          break;
        case CF::StepKind::GeMinusOne:
          fband(IndexSet::at_most(-2 - k), BandCoef::constant(rat(-1)));
          break;
        case CF::StepKind::GtOne:
          fband(IndexSet::at_most(1 - k), BandCoef::constant(rat(-1)));
          break;
        case CF::StepKind::LtMinusOne:
          fband(IndexSet::at_least(-1 - k), BandCoef::constant(rat(-1)));
          break;
        case CF::StepKind::Empty:
          fband(IndexSet::all(), BandCoef::constant(rat(-1)));
          break;
      }
      break;
    case CF::Kind::SignSplit:
      if (f.sign() == CF::Sign::Plus)
        fband(IndexSet::at_most(-1 - k), BandCoef::constant(rat(-1)));
      else
        fband(IndexSet::at_least(1 - k), BandCoef::constant(rat(-1)));
      fband(IndexSet::point(-k), BandCoef::constant(f.value()));
      break;
    case CF::Kind::Table:
      throw DomainError("unreachable");
  }

  if (op.sig == Signature::Virasoro) {
    if (op.theta != 0)
      out.add_band({IndexSet::point(-k), BandCoef::constant(op.theta), build_C(), build_Ld()});
    if (op.mu != 0)
      out.add_band(
          {IndexSet::point(0), BandCoef::constant(op.mu), build_L(0, k), build_Cd()});
    if (op.nu != 0)
      out.add_band({IndexSet::point(0), BandCoef::constant(op.nu), build_C(), build_Cd()});
  }
  return out;
}

FormalTensor skewize(const HomogeneousOperator& op) {
  FormalTensor t = operator_to_tensor(op);
  return t + t.transpose().scaled(rat(-1));
}

std::pair<FormalTensor, FormalTensor> weight1_pair(const HomogeneousOperator& op) {
  if (op.degree != 0)
    throw DomainError("weight-1 tensors need a degree-0 operator");
  FormalTensor t = operator_to_tensor(op);
  FormalTensor base = t + t.transpose().scaled(rat(-1));
  FormalTensor id = identity_tensor(base.signature());
  return {base + id, base + id.transpose().scaled(rat(-1))};
}

// ---------------------------------------------------------------------------
// Catalog of induced CYBE solutions.
// ---------------------------------------------------------------------------

namespace {

const std::array<std::pair<CybeSolutionId, const char*>, 24> kCybeNames = {{
    {CybeSolutionId::CYBE_W0_I, "CYBE_W0_I"},
    {CybeSolutionId::CYBE_W0_II, "CYBE_W0_II"},
    {CybeSolutionId::CYBE_W0_III, "CYBE_W0_III"},
    {CybeSolutionId::CYBE_V0_0, "CYBE_V0_0"},
    {CybeSolutionId::CYBE_V0_I, "CYBE_V0_I"},
    {CybeSolutionId::CYBE_V0_II, "CYBE_V0_II"},
    {CybeSolutionId::CYBE_V0_III, "CYBE_V0_III"},
    {CybeSolutionId::CYBE_V0_IV, "CYBE_V0_IV"},
    {CybeSolutionId::CYBE_W1_LE1, "CYBE_W1_LE1"},
    {CybeSolutionId::CYBE_W1_GE_NEG1, "CYBE_W1_GE_NEG1"},
    {CybeSolutionId::CYBE_W1_ZERO, "CYBE_W1_ZERO"},
    {CybeSolutionId::CYBE_W1_GT1, "CYBE_W1_GT1"},
    {CybeSolutionId::CYBE_W1_LT_NEG1, "CYBE_W1_LT_NEG1"},
    {CybeSolutionId::CYBE_W1_EMPTY, "CYBE_W1_EMPTY"},
    {CybeSolutionId::CYBE_W1_PLUS, "CYBE_W1_PLUS"},
    {CybeSolutionId::CYBE_W1_MINUS, "CYBE_W1_MINUS"},
    {CybeSolutionId::CYBE_V1_LE1, "CYBE_V1_LE1"},
    {CybeSolutionId::CYBE_V1_GE_NEG1, "CYBE_V1_GE_NEG1"},
    {CybeSolutionId::CYBE_V1_ZERO, "CYBE_V1_ZERO"},
    {CybeSolutionId::CYBE_V1_GT1, "CYBE_V1_GT1"},
    {CybeSolutionId::CYBE_V1_LT_NEG1, "CYBE_V1_LT_NEG1"},
    {CybeSolutionId::CYBE_V1_EMPTY, "CYBE_V1_EMPTY"},
    {CybeSolutionId::CYBE_V1_PLUS, "CYBE_V1_PLUS"},
    {CybeSolutionId::CYBE_V1_MINUS, "CYBE_V1_MINUS"},
}};

Rational opt_or0(const std::optional<Rational>& v) {
  return v ? *v : Rational(0);
}

// skew pair: c (left x right) - c (right x left) at one point
void skew_point(FormalTensor& t, long point, const Rational& c, SymbolBuilder left,
                SymbolBuilder right) {
  if (c == 0)
    return;
  t.add_band({IndexSet::point(point), BandCoef::constant(c), left, right});
  t.add_band({IndexSet::point(point), BandCoef::constant(-c), right, left});
}

// The four elementary skew tensors spanning the degree-0 Virasoro solutions.
void add_e00(FormalTensor& t, const Rational& c) {
  skew_point(t, 0, c, build_L(0, 0), build_Ld(0, 0));
}
void add_ec0(FormalTensor& t, const Rational& c) {
  skew_point(t, 0, c, build_C(), build_Ld(0, 0));
}
void add_e0c(FormalTensor& t, const Rational& c) {
  skew_point(t, 0, c, build_L(0, 0), build_Cd());
}
void add_ecc(FormalTensor& t, const Rational& c) {
  skew_point(t, 0, c, build_C(), build_Cd());
}

// The weight-1 Witt tensors (R - R^21) + Id from the eight step shapes.
FormalTensor w1_tensor(Signature sig, CybeSolutionId id, const OperatorParams& p) {
  FormalTensor t(sig);
  auto primal = [&](IndexSet set) {
    t.add_band({std::move(set), BandCoef::constant(rat(1)), build_L(), build_Ld()});
  };
  auto dual = [&](IndexSet set) {
    t.add_band({std::move(set), BandCoef::constant(rat(1)), build_Ld(), build_L()});
  };
  switch (id) {
    case CybeSolutionId::CYBE_W1_LE1:
    case CybeSolutionId::CYBE_V1_LE1:
      primal(IndexSet::at_most(1));
      dual(IndexSet::at_least(2));
      break;
    case CybeSolutionId::CYBE_W1_GE_NEG1:
    case CybeSolutionId::CYBE_V1_GE_NEG1:
      primal(IndexSet::at_least(-1));
      dual(IndexSet::at_most(-2));
      break;
    case CybeSolutionId::CYBE_W1_ZERO:
    case CybeSolutionId::CYBE_V1_ZERO:
      primal(IndexSet::all());
      break;
    case CybeSolutionId::CYBE_W1_GT1:
    case CybeSolutionId::CYBE_V1_GT1:
      primal(IndexSet::at_least(2));
      dual(IndexSet::at_most(1));
      break;
    case CybeSolutionId::CYBE_W1_LT_NEG1:
    case CybeSolutionId::CYBE_V1_LT_NEG1:
      primal(IndexSet::at_most(-2));
      dual(IndexSet::at_least(-1));
      break;
    case CybeSolutionId::CYBE_W1_EMPTY:
    case CybeSolutionId::CYBE_V1_EMPTY:
      dual(IndexSet::all());
      break;
    case CybeSolutionId::CYBE_W1_PLUS:
    case CybeSolutionId::CYBE_V1_PLUS: {
      dual(IndexSet::at_most(-1));
      primal(IndexSet::at_least(1));
      Rational a = opt_or0(p.alpha);
      t.add_band({IndexSet::point(0), BandCoef::constant(a + 1), build_L(), build_Ld()});
      t.add_band({IndexSet::point(0), BandCoef::constant(-a), build_Ld(), build_L()});
      break;
    }
    case CybeSolutionId::CYBE_W1_MINUS:
    case CybeSolutionId::CYBE_V1_MINUS: {
      dual(IndexSet::at_least(1));
      primal(IndexSet::at_most(-1));
      Rational a = opt_or0(p.alpha);
      t.add_band({IndexSet::point(0), BandCoef::constant(a + 1), build_L(), build_Ld()});
      t.add_band({IndexSet::point(0), BandCoef::constant(-a), build_Ld(), build_L()});
      break;
    }
    default:
      throw DomainError("not a weight-1 solution id");
  }
  return t;
}

}  // namespace

std::string cybe_solution_name(CybeSolutionId id) {
  for (const auto& [i, name] : kCybeNames)
    if (i == id)
      return name;
  throw DomainError("bad cybe solution id");
}

std::optional<CybeSolutionId> cybe_solution_from_name(const std::string& name) {
  for (const auto& [i, n] : kCybeNames)
    if (name == n)
      return i;
  return std::nullopt;
}

std::vector<CybeSolutionId> all_cybe_solutions() {
  std::vector<CybeSolutionId> out;
  for (const auto& [i, n] : kCybeNames)
    out.push_back(i);
  return out;
}

FormalTensor make_cybe_solution(CybeSolutionId id, const OperatorParams& p) {
  using Id = CybeSolutionId;
  const long k = p.k;
  switch (id) {
    case Id::CYBE_W0_I: {
      FormalTensor t(Signature::WittSemidirect);
      skew_point(t, -2 * k, opt_or0(p.alpha), build_L(1, k), build_Ld());
      return t;
    }
    case Id::CYBE_W0_II: {
      if (k == 0)
        throw DomainError("k must be nonzero");
      Rational beta = opt_or0(p.beta);
      if (beta == 0)
        throw DomainError("beta must be nonzero");
      FormalTensor t(Signature::WittSemidirect);
      skew_point(t, -2 * k, beta, build_L(0, 0), build_Ld());
      skew_point(t, -3 * k, 2 * beta, build_L(0, -k), build_Ld());
      return t;
    }
    case Id::CYBE_W0_III: {
      if (k == 0 || p.l == 0 || k % p.l == 0)
        throw DomainError("need k nonzero and l not dividing k");
      Rational gamma = opt_or0(p.gamma);
      if (gamma == 0)
        throw DomainError("gamma must be nonzero");
      FormalTensor t(Signature::WittSemidirect);
      BandCoef c = BandCoef::rational_linear(gamma * k, 1, 2 * k);
      BandCoef cneg = BandCoef::rational_linear(-gamma * k, 1, 2 * k);
      t.add_band({IndexSet::congruence(-k, p.l), c, build_L(1, k), build_Ld()});
      t.add_band({IndexSet::congruence(-k, p.l), cneg, build_Ld(), build_L(1, k)});
      return t;
    }
    case Id::CYBE_V0_0: {
      FormalTensor t(Signature::VirasoroSemidirect);
      add_e00(t, opt_or0(p.alpha));
      add_ec0(t, opt_or0(p.theta));
      add_e0c(t, opt_or0(p.mu));
      add_ecc(t, opt_or0(p.nu));
      return t;
    }
    case Id::CYBE_V0_I: {
      if (k == 0)
        throw DomainError("k must be nonzero");
      FormalTensor t(Signature::VirasoroSemidirect);
      skew_point(t, -k, opt_or0(p.theta), build_C(), build_Ld());
      return t;
    }
    case Id::CYBE_V0_II: {
      if (k == 0)
        throw DomainError("k must be nonzero");
      Rational alpha = opt_or0(p.alpha);
      if (alpha == 0)
        throw DomainError("alpha must be nonzero");
      FormalTensor t(Signature::VirasoroSemidirect);
      skew_point(t, -2 * k, alpha, build_L(1, k), build_Ld());
      return t;
    }
    case Id::CYBE_V0_III: {
      if (k == 0)
        throw DomainError("k must be nonzero");
      Rational beta = opt_or0(p.beta);
      if (beta == 0)
        throw DomainError("beta must be nonzero");
      FormalTensor t(Signature::VirasoroSemidirect);
      skew_point(t, -2 * k, beta, build_L(0, 0), build_Ld());
      skew_point(t, -3 * k, 2 * beta, build_L(0, -k), build_Ld());
      skew_point(t, -2 * k, opt_or0(p.vartheta), build_C(), build_Ld());
      return t;
    }
    case Id::CYBE_V0_IV: {
      if (k == 0)
        throw DomainError("k must be nonzero");
      Rational mu = opt_or0(p.mu);
      if (mu == 0)
        throw DomainError("mu must be nonzero");
      FormalTensor t(Signature::VirasoroSemidirect);
      Rational coef = -mu * Rational(Integer(k) * Integer(k) - 1, Integer(24));
      skew_point(t, 0, coef, build_L(0, k), build_Ld(0, 0));
      skew_point(t, 0, mu, build_L(0, k), build_Cd());
      return t;
    }
    case Id::CYBE_W1_LE1:
    case Id::CYBE_W1_GE_NEG1:
    case Id::CYBE_W1_ZERO:
    case Id::CYBE_W1_GT1:
    case Id::CYBE_W1_LT_NEG1:
    case Id::CYBE_W1_EMPTY:
    case Id::CYBE_W1_PLUS:
    case Id::CYBE_W1_MINUS:
      return w1_tensor(Signature::WittSemidirect, id, p);
    default: {
      // Virasoro weight-1: the Witt-shaped part plus the central additions
      FormalTensor t = w1_tensor(Signature::VirasoroSemidirect, id, p);
      if (id == Id::CYBE_V1_EMPTY) {
        // Id_V^21: add C* x C
        t.add_band({IndexSet::point(0), BandCoef::constant(rat(1)), build_Cd(), build_C()});
        return t;
      }
      // ... + theta e_c0 + mu e_0c + nu e_cc + C x C*
      if (id == Id::CYBE_V1_PLUS || id == Id::CYBE_V1_MINUS)
        add_ec0(t, opt_or0(p.theta));
      if (id != Id::CYBE_V1_ZERO) {
        add_e0c(t, opt_or0(p.mu));
        add_ecc(t, opt_or0(p.nu));
      }
      t.add_band({IndexSet::point(0), BandCoef::constant(rat(1)), build_C(), build_Cd()});
      return t;
    }
  }
}

}  // namespace rbwv
