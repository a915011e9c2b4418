#include <doctest.h>

#include "rbwv/cybe.hpp"
#include "rbwv/verify.hpp"

using namespace rbwv;

namespace {

HomogeneousOperator op_of(Family f, OperatorParams p = {}) {
  return make_operator(f, p);
}

OperatorParams with(long k, const char* name = nullptr, const char* value = nullptr,
                    long l = 0) {
  OperatorParams p;
  p.k = k;
  p.l = l;
  if (name) {
    Rational v = parse_rational(value);
    std::string n = name;
    if (n == "alpha") p.alpha = v;
    if (n == "beta") p.beta = v;
    if (n == "gamma") p.gamma = v;
    if (n == "theta") p.theta = v;
    if (n == "mu") p.mu = v;
    if (n == "nu") p.nu = v;
    if (n == "vartheta") p.vartheta = v;
  }
  return p;
}

}  // namespace

TEST_CASE("operator to tensor dictionary") {
  auto t = operator_to_tensor(op_of(Family::W0_I, with(1, "alpha", "1")));
  CHECK(t.coefficient_at(L(-1), Ld(-2)) == rat(1));
  CHECK(t.coefficient_at(Ld(-2), L(-1)) == 0);
  long entries = 0;
  for (BasisSymbol i : window_symbols(Signature::WittSemidirect, 6))
    for (BasisSymbol j : window_symbols(Signature::WittSemidirect, 6))
      if (t.coefficient_at(i, j) != 0)
        ++entries;
  CHECK(entries == 1);

  auto zero = operator_to_tensor(op_of(Family::W1_ZERO));
  CHECK(zero.bands().empty());

  auto le1 = operator_to_tensor(op_of(Family::W1_LE1));
  for (long m = -6; m <= 6; ++m)
    CHECK(le1.coefficient_at(L(m), Ld(m)) == (m >= 2 ? rat(-1) : rat(0)));
}

TEST_CASE("table-backed operators have no tensor form") {
  auto tbl = make_witt_operator(0, CoefficientFunction::table(2, {{0, rat(1)}}));
  CHECK_THROWS_AS(operator_to_tensor(tbl), DomainError);
}

TEST_CASE("transpose is an involution") {
  auto t = skewize(op_of(Family::W0_III, with(1, "gamma", "1", 2)));
  CHECK(equal_on_window(t.transpose().transpose(), t, 8));
}

TEST_CASE("skewize output is skew-symmetric") {
  auto syms = window_symbols(Signature::VirasoroSemidirect, 6);
  for (auto op : {op_of(Family::V0_IV, with(2, "mu", "1")),
                  op_of(Family::V0_III, with(1, "beta", "3/2")),
                  op_of(Family::V0_DEG0, with(0, "theta", "2"))}) {
    auto r = skewize(op);
    for (BasisSymbol i : syms)
      for (BasisSymbol j : syms)
        CHECK(r.coefficient_at(i, j) + r.coefficient_at(j, i) == 0);
  }
  auto r = skewize(op_of(Family::W0_I, with(1, "alpha", "1")));
  CHECK(r.coefficient_at(L(-1), Ld(-2)) == rat(1));
  CHECK(r.coefficient_at(Ld(-2), L(-1)) == rat(-1));
}

TEST_CASE("weight-1 pair of the zero operator is the identity tensor") {
  auto [first, second] = weight1_pair(op_of(Family::W1_ZERO));
  CHECK(equal_on_window(first, identity_tensor(Signature::WittSemidirect), 8));
  CHECK(equal_on_window(second, identity_tensor(Signature::WittSemidirect)
                                    .transpose()
                                    .scaled(rat(-1)),
                        8));
  auto [vfirst, vsecond] = weight1_pair(op_of(Family::V1_ZERO));
  CHECK(equal_on_window(vfirst, identity_tensor(Signature::VirasoroSemidirect), 8));
}

TEST_CASE("band validation") {
  FormalTensor t(Signature::WittSemidirect);
  // constant-symbol builder over an infinite set breaks row-finiteness
  CHECK_THROWS_AS(
      t.add_band({IndexSet::all(), BandCoef::constant(rat(1)), build_L(), build_Ld(0, 0)}),
      DomainError);
  FormalTensor v(Signature::VirasoroSemidirect);
  CHECK_THROWS_AS(
      v.add_band({IndexSet::at_least(0), BandCoef::constant(rat(1)), build_C(), build_Ld()}),
      DomainError);
  // coefficient pole inside the set
  CHECK_THROWS_AS(t.add_band({IndexSet::all(), BandCoef::rational_linear(rat(1), 1, 2),
                              build_L(), build_Ld()}),
                  DomainError);
  // pole excluded by a congruence set is fine
  t.add_band({IndexSet::congruence(-1, 2), BandCoef::rational_linear(rat(1), 1, 2), build_L(1, 1),
              build_Ld()});
  CHECK(t.bands().size() == 1);
  // dual symbols are illegal on the Witt side only through the signature
  CHECK_THROWS_AS(FormalTensor(Signature::Witt), DomainError);
}

TEST_CASE("rows and columns stay finite structurally") {
  auto r = make_cybe_solution(CybeSolutionId::CYBE_W0_III, with(1, "gamma", "1", 2));
  for (BasisSymbol s : window_symbols(Signature::WittSemidirect, 10)) {
    CHECK(r.row(s).size() <= r.bands().size());
    CHECK(r.column(s).size() <= r.bands().size());
  }
}

TEST_CASE("catalog solutions equal the operator-derived tensors on window 10") {
  struct Case {
    CybeSolutionId id;
    Family family;
    OperatorParams params;
  };
  std::vector<Case> cases = {
      {CybeSolutionId::CYBE_W0_I, Family::W0_I, with(2, "alpha", "3/2")},
      {CybeSolutionId::CYBE_W0_II, Family::W0_II, with(1, "beta", "-2")},
      {CybeSolutionId::CYBE_W0_III, Family::W0_III, with(1, "gamma", "1", 2)},
      {CybeSolutionId::CYBE_W0_III, Family::W0_III, with(2, "gamma", "-1/2", 3)},
      {CybeSolutionId::CYBE_V0_I, Family::V0_I, with(2, "theta", "5")},
      {CybeSolutionId::CYBE_V0_II, Family::V0_II, with(1, "alpha", "2")},
      {CybeSolutionId::CYBE_V0_IV, Family::V0_IV, with(3, "mu", "1/2")},
  };
  for (const auto& c : cases) {
    auto direct = make_cybe_solution(c.id, c.params);
    auto derived = skewize(make_operator(c.family, c.params));
    CHECK(equal_on_window(direct, derived, 10));
  }

  {
    OperatorParams p = with(1, "beta", "2");
    p.vartheta = rat(-1, 2);
    auto direct = make_cybe_solution(CybeSolutionId::CYBE_V0_III, p);
    auto derived = skewize(make_operator(Family::V0_III, p));
    CHECK(equal_on_window(direct, derived, 10));
  }
  {
    OperatorParams p;
    p.alpha = rat(1);
    p.theta = rat(2);
    p.mu = rat(-1);
    p.nu = rat(1, 3);
    auto direct = make_cybe_solution(CybeSolutionId::CYBE_V0_0, p);
    auto derived = skewize(make_operator(Family::V0_DEG0, p));
    CHECK(equal_on_window(direct, derived, 10));
  }

  // weight 1: the listed tensors are (R - R^21) + Id
  struct W1Case {
    CybeSolutionId id;
    Family family;
  };
  for (auto [id, family] : std::vector<W1Case>{
           {CybeSolutionId::CYBE_W1_LE1, Family::W1_LE1},
           {CybeSolutionId::CYBE_W1_GE_NEG1, Family::W1_GE_NEG1},
           {CybeSolutionId::CYBE_W1_ZERO, Family::W1_ZERO},
           {CybeSolutionId::CYBE_W1_GT1, Family::W1_GT1},
           {CybeSolutionId::CYBE_W1_LT_NEG1, Family::W1_LT_NEG1},
           {CybeSolutionId::CYBE_W1_EMPTY, Family::W1_EMPTY},
           {CybeSolutionId::CYBE_V1_ZERO, Family::V1_ZERO},
           {CybeSolutionId::CYBE_V1_EMPTY, Family::V1_EMPTY},
       }) {
    auto direct = make_cybe_solution(id, {});
    auto derived = weight1_pair(make_operator(family, {})).first;
    CHECK(equal_on_window(direct, derived, 10));
  }
  {
    OperatorParams p = with(0, "alpha", "2");
    auto direct = make_cybe_solution(CybeSolutionId::CYBE_W1_PLUS, p);
    CHECK(direct.coefficient_at(L(0), Ld(0)) == rat(3));
    CHECK(direct.coefficient_at(Ld(0), L(0)) == rat(-2));
    auto derived = weight1_pair(make_operator(Family::W1_PLUS, p)).first;
    CHECK(equal_on_window(direct, derived, 10));
  }
  {
    OperatorParams p = with(0, "mu", "3");
    p.nu = rat(-2);
    auto direct = make_cybe_solution(CybeSolutionId::CYBE_V1_LE1, p);
    auto derived = weight1_pair(make_operator(Family::V1_LE1, p)).first;
    CHECK(equal_on_window(direct, derived, 10));
  }
  {
    OperatorParams p = with(0, "alpha", "-1/2");
    p.theta = rat(1);
    p.mu = rat(2);
    p.nu = rat(0);
    auto direct = make_cybe_solution(CybeSolutionId::CYBE_V1_MINUS, p);
    auto derived = weight1_pair(make_operator(Family::V1_MINUS, p)).first;
    CHECK(equal_on_window(direct, derived, 10));
  }
  for (auto [id, family] : std::vector<W1Case>{
           {CybeSolutionId::CYBE_V1_GE_NEG1, Family::V1_GE_NEG1},
           {CybeSolutionId::CYBE_V1_GT1, Family::V1_GT1},
           {CybeSolutionId::CYBE_V1_LT_NEG1, Family::V1_LT_NEG1},
       }) {
    OperatorParams p = with(0, "mu", "-1/2");
    p.nu = rat(2);
    auto direct = make_cybe_solution(id, p);
    auto derived = weight1_pair(make_operator(family, p)).first;
    CHECK(equal_on_window(direct, derived, 10));
  }
  {
    OperatorParams p = with(0, "alpha", "1/3");
    p.theta = rat(-2);
    p.mu = rat(1);
    p.nu = rat(5);
    auto direct = make_cybe_solution(CybeSolutionId::CYBE_V1_PLUS, p);
    auto derived = weight1_pair(make_operator(Family::V1_PLUS, p)).first;
    CHECK(equal_on_window(direct, derived, 10));
  }
}

TEST_CASE("explicit catalog tensor entries") {
  OperatorParams p;
  p.alpha = rat(1);
  auto e00 = make_cybe_solution(CybeSolutionId::CYBE_V0_0, p);
  CHECK(e00.coefficient_at(L(0), Ld(0)) == rat(1));
  CHECK(e00.coefficient_at(Ld(0), L(0)) == rat(-1));
  CHECK(e00.coefficient_at(C(), Cd()) == 0);

  auto idv = make_cybe_solution(CybeSolutionId::CYBE_V1_ZERO, {});
  CHECK(equal_on_window(idv, identity_tensor(Signature::VirasoroSemidirect), 8));
}

TEST_CASE("formal CYBE holds for derived tensors and fails for a perturbation") {
  auto r = skewize(op_of(Family::W0_I, with(1, "alpha", "1")));
  CHECK(verify_formal_cybe(r, 6).pass());
  CHECK(verify_formal_cybe(identity_tensor(Signature::WittSemidirect), 5).pass());

  FormalTensor perturbed = r;
  perturbed.add_band({IndexSet::point(0), BandCoef::constant(rat(1)), build_L(), build_Ld()});
  auto report = verify_formal_cybe(perturbed, 4);
  CHECK(!report.pass());
  // the located component recomputes to the reported value
  REQUIRE(!report.failures.empty());
  const auto& f = report.failures.front();
  CHECK(cybe_component(perturbed, f.i, f.j, f.k) == f.value);

  FormalTensor empty(Signature::WittSemidirect);
  CHECK(verify_formal_cybe(empty, 8).pass());
}

TEST_CASE("rota-baxter and formal cybe verdicts agree in both directions") {
  // passes on W, and its skewization solves the formal CYBE
  auto good = op_of(Family::W0_III, with(1, "gamma", "1", 2));
  CHECK(verify_rb(good, rat(0), 8).pass());
  CHECK(verify_formal_cybe(skewize(good), 6).pass());

  // fails on V, and its skewization violates the formal CYBE
  auto bad = lift_to_virasoro(good, rat(0), rat(0), rat(0));
  CHECK(!verify_rb(bad, rat(0), 8).pass());
  CHECK(!verify_formal_cybe(skewize(bad), 6).pass());
}

TEST_CASE("serial and parallel cybe kernels agree") {
  auto r = skewize(op_of(Family::W0_I, with(1, "alpha", "1")));
  FormalTensor perturbed = r;
  perturbed.add_band({IndexSet::point(0), BandCoef::constant(rat(1)), build_L(), build_Ld()});
  auto s = verify_formal_cybe_serial(perturbed, 4);
  auto p = verify_formal_cybe_parallel(perturbed, 4);
  REQUIRE(s.failures.size() == p.failures.size());
  for (std::size_t i = 0; i < s.failures.size(); ++i) {
    CHECK(s.failures[i].i == p.failures[i].i);
    CHECK(s.failures[i].j == p.failures[i].j);
    CHECK(s.failures[i].k == p.failures[i].k);
    CHECK(s.failures[i].value == p.failures[i].value);
  }
}
