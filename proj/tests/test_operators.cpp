#include <doctest.h>

#include <random>

#include "rbwv/verify.hpp"

using namespace rbwv;

namespace {

Element term(BasisSymbol s, long num, long den = 1) {
  return Element::term(s, rat(num, den));
}

Element unit(BasisSymbol s) {
  return Element::term(s, rat(1));
}

HomogeneousOperator op_of(Family f, long k = 0, long l = 0, const char* a = nullptr,
                          const char* b = nullptr, const char* g = nullptr,
                          const char* th = nullptr, const char* mu = nullptr,
                          const char* nu = nullptr) {
  OperatorParams p;
  p.k = k;
  p.l = l;
  if (a) p.alpha = parse_rational(a);
  if (b) p.beta = parse_rational(b);
  if (g) p.gamma = parse_rational(g);
  if (th) p.theta = parse_rational(th);
  if (mu) p.mu = parse_rational(mu);
  if (nu) p.nu = parse_rational(nu);
  return make_operator(f, p);
}

}  // namespace

TEST_CASE("catalog constructors evaluate per the cited formulas") {
  CHECK(apply(op_of(Family::W0_I, 1, 0, "1"), L(-2)) == unit(L(-1)));
  CHECK(apply(op_of(Family::W0_III, 1, 2, nullptr, nullptr, "1"), L(1)) == term(L(2), 1, 3));
  auto v4 = op_of(Family::V0_IV, 3, 0, nullptr, nullptr, nullptr, nullptr, "1");
  CHECK(apply(v4, C()) == unit(L(3)));
  CHECK(apply(v4, L(0)) == term(L(3), -1, 3));
  CHECK(apply(op_of(Family::W0_II, 1, 0, nullptr, "1"), L(-3)) == term(L(-1), 2));
}

TEST_CASE("apply is linear and degree-homogeneous") {
  OperatorParams p;
  p.alpha = rat(2);
  p.theta = rat(5);
  auto op = make_operator(Family::V1_PLUS, p);
  CHECK(apply(op, L(0)) == term(L(0), 2) + term(C(), 5));
  CHECK(apply(op, Element::zero()).is_zero());
  CHECK(apply(op_of(Family::W1_LE1), L(3)) == term(L(3), -1));

  struct DegreeCase {
    HomogeneousOperator op;
    long degree;
  };
  std::vector<DegreeCase> graded = {
      {op_of(Family::W0_III, 2, 3, nullptr, nullptr, "1/2"), 2},
      {op_of(Family::W0_II, 2, 0, nullptr, "1"), 4},
      {op_of(Family::V0_IV, -3, 0, nullptr, nullptr, nullptr, nullptr, "2"), -3},
      {op_of(Family::V0_III, 1, 0, nullptr, "1", nullptr, nullptr, nullptr), 2},
      {op_of(Family::V1_LT_NEG1), 0},
  };
  for (const auto& [op, degree] : graded)
    for (long m = -6; m <= 6; ++m)
      CHECK(apply(op, L(m)).homogeneous_of_degree(m + degree));
}

TEST_CASE("out-of-domain parameters are rejected") {
  OperatorParams p;
  p.k = 2;
  p.l = 2;  // l divides k
  p.gamma = rat(1);
  CHECK_THROWS_AS(make_operator(Family::W0_III, p), DomainError);
  OperatorParams q;
  q.k = 1;
  q.beta = rat(0);
  CHECK_THROWS_AS(make_operator(Family::W0_II, q), DomainError);
  OperatorParams r;
  r.mu = rat(1);  // k missing
  CHECK_THROWS_AS(make_operator(Family::V0_IV, r), DomainError);
}

TEST_CASE("rb defect frozen examples") {
  // identity operator as a window table, weight 0
  std::map<long, Rational> ones;
  for (long m = -8; m <= 8; ++m)
    ones[m] = rat(1);
  auto ident = make_witt_operator(0, CoefficientFunction::table(8, ones));
  CHECK(rb_defect(ident, rat(0), unit(L(1)), unit(L(2))) == unit(L(3)));

  CHECK(rb_defect(op_of(Family::W1_LE1), rat(1), unit(L(2)), unit(L(3))).is_zero());
  CHECK(rb_defect(op_of(Family::W1_ZERO), rat(5, 7), unit(L(2)), unit(L(3))).is_zero());
}

TEST_CASE("table-backed evaluation outside its window errors") {
  auto tbl = make_witt_operator(0, CoefficientFunction::table(2, {{0, rat(1)}}));
  CHECK_THROWS_AS(apply(tbl, L(5)), WindowError);
}

TEST_CASE("verify_rb on catalog members and a non-member") {
  CHECK(verify_rb(op_of(Family::W0_I, 1, 0, "1"), rat(0), 10).pass());
  CHECK(verify_rb(op_of(Family::V0_IV, 2, 0, nullptr, nullptr, nullptr, nullptr, "1"), rat(0),
                  10)
            .pass());

  // the congruence family is inconsistent with the central extension
  auto lifted = lift_to_virasoro(op_of(Family::W0_III, 1, 2, nullptr, nullptr, "1"), rat(0),
                                 rat(0), rat(0));
  auto report = verify_rb(lifted, rat(0), 10);
  CHECK(!report.pass());
  // derived by hand: the pair (L_1, L_-3) leaves the defect -1/6 C
  CHECK(rb_defect(lifted, rat(0), unit(L(1)), unit(L(-3))) == term(C(), -1, 6));
}

TEST_CASE("weight-0 defect scales quadratically") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-3, 3);
  std::map<long, Rational> values;
  for (long m = -12; m <= 12; ++m)
    values[m] = rat(num(rng), 2);
  auto base = make_witt_operator(0, CoefficientFunction::table(12, values));
  std::map<long, Rational> scaled_values;
  const Rational c = rat(3, 2);
  for (auto& [m, v] : values)
    scaled_values[m] = c * v;
  auto scaled = make_witt_operator(0, CoefficientFunction::table(12, scaled_values));
  for (long m = -3; m <= 3; ++m)
    for (long n = m + 1; n <= 3; ++n)
      CHECK(rb_defect(scaled, rat(0), unit(L(m)), unit(L(n))) ==
            (c * c) * rb_defect(base, rat(0), unit(L(m)), unit(L(n))));
}

TEST_CASE("companion is the cataloged involution") {
  CHECK(companion(op_of(Family::W1_LE1)) == op_of(Family::W1_GT1));
  CHECK(companion(op_of(Family::W1_GE_NEG1)) == op_of(Family::W1_LT_NEG1));
  CHECK(companion(op_of(Family::W1_ZERO)) == op_of(Family::W1_EMPTY));

  OperatorParams p;
  p.alpha = rat(2);
  p.theta = rat(3);
  p.mu = rat(-1, 2);
  p.nu = rat(5);
  auto plus = make_operator(Family::V1_PLUS, p);
  OperatorParams q;
  q.alpha = rat(-3);
  q.theta = rat(-3);
  q.mu = rat(1, 2);
  q.nu = rat(-6);
  CHECK(companion(plus) == make_operator(Family::V1_MINUS, q));

  for (Family f : {Family::W1_LE1, Family::W1_GE_NEG1, Family::W1_ZERO, Family::W1_GT1,
                   Family::W1_LT_NEG1, Family::W1_EMPTY}) {
    auto op = op_of(f);
    CHECK(companion(companion(op)) == op);
    CHECK(verify_rb(companion(op), rat(1), 8).pass());
  }
  CHECK(companion(companion(plus)) == plus);
  CHECK(verify_rb(companion(plus), rat(1), 8).pass());

  OperatorParams le;
  le.mu = rat(2);
  le.nu = rat(-1, 3);
  auto vle = make_operator(Family::V1_LE1, le);
  OperatorParams gt;
  gt.mu = rat(-2);
  gt.nu = rat(-2, 3);
  CHECK(companion(vle) == make_operator(Family::V1_GT1, gt));
  CHECK(verify_rb(companion(vle), rat(1), 8).pass());

  CHECK_THROWS_AS(companion(op_of(Family::W0_I, 1, 0, "1")), DomainError);
}

TEST_CASE("restrict and lift") {
  auto v2 = op_of(Family::V0_II, 3, 0, "1");
  CHECK(restrict_to_witt(v2) == op_of(Family::W0_I, 3, 0, "1"));
  CHECK(lift_to_virasoro(op_of(Family::W0_I, 3, 0, "1"), rat(0), rat(0), rat(0)) == v2);
  CHECK(lift_to_virasoro(op_of(Family::W1_ZERO), rat(0), rat(0), rat(0)) ==
        op_of(Family::V1_ZERO));

  auto v4 = op_of(Family::V0_IV, 2, 0, nullptr, nullptr, nullptr, nullptr, "1");
  CHECK(lift_to_virasoro(restrict_to_witt(v4), v4.theta, v4.mu, v4.nu) == v4);
}

TEST_CASE("lifting obstruction") {
  auto report = lifting_obstruction(op_of(Family::W1_EMPTY), 5);
  CHECK(!report.pass());
  REQUIRE(!report.failures.empty());
  CHECK(report.failures.front().m == 2);
  CHECK(report.failures.front().n == -2);
  CHECK(report.failures.front().value == rat(1, 2));
  for (const auto& f : report.failures) {
    CHECK(f.m + f.n == 0);
    CHECK(std::labs(f.m) >= 2);
  }

  CHECK(lifting_obstruction(op_of(Family::W1_LE1), 8).pass());
  CHECK(lifting_obstruction(op_of(Family::W1_ZERO), 8).pass());
}

TEST_CASE("no weight-1 operator of nonzero degree survives") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-2, 2), pos(-4, 4);
  for (long k : {1L, -1L, 2L, 3L}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::map<long, Rational> values;
      for (int t = 0; t < 3; ++t)
        values[pos(rng)] = rat(num(rng));
      bool nonzero = false;
      for (const auto& [m, v] : values)
        if (v != 0)
          nonzero = true;
      if (!nonzero)
        values[0] = rat(1);
      auto op = make_witt_operator(k, CoefficientFunction::table(30, values));
      CHECK(!verify_rb(op, rat(1), 6).pass());
    }
  }
}

TEST_CASE("rescaling a weight-1 operator gives general weights") {
  // lambda * R is Rota-Baxter of weight lambda when R has weight 1
  const Rational lambda = rat(3, 2);
  std::map<long, Rational> values;
  for (long m = -12; m <= 12; ++m)
    values[m] = lambda * op_of(Family::W1_LE1).f.eval(m);
  auto scaled = make_witt_operator(0, CoefficientFunction::table(12, values));
  for (long m = -4; m <= 4; ++m)
    for (long n = m + 1; n <= 4; ++n)
      CHECK(rb_defect(scaled, lambda, unit(L(m)), unit(L(n))).is_zero());
  // and fails at the wrong weight
  CHECK(!rb_defect(scaled, rat(1), unit(L(2)), unit(L(3))).is_zero());
}

TEST_CASE("parallel and serial verification kernels agree") {
  auto good = op_of(Family::W0_III, 1, 2, nullptr, nullptr, "1");
  auto rs = verify_rb_serial(good, rat(0), 9);
  auto rp = verify_rb_parallel(good, rat(0), 9);
  CHECK(rs.pass());
  CHECK(rp.pass());

  auto bad = lift_to_virasoro(good, rat(0), rat(0), rat(0));
  auto fs = verify_rb_serial(bad, rat(0), 9);
  auto fp = verify_rb_parallel(bad, rat(0), 9);
  REQUIRE(fs.failures.size() == fp.failures.size());
  for (std::size_t i = 0; i < fs.failures.size(); ++i) {
    CHECK(fs.failures[i].x == fp.failures[i].x);
    CHECK(fs.failures[i].y == fp.failures[i].y);
    CHECK(fs.failures[i].defect == fp.failures[i].defect);
  }

  auto os = lifting_obstruction_serial(op_of(Family::W1_EMPTY), 6);
  auto oparallel = lifting_obstruction_parallel(op_of(Family::W1_EMPTY), 6);
  REQUIRE(os.failures.size() == oparallel.failures.size());
  for (std::size_t i = 0; i < os.failures.size(); ++i) {
    CHECK(os.failures[i].m == oparallel.failures[i].m);
    CHECK(os.failures[i].n == oparallel.failures[i].n);
    CHECK(os.failures[i].value == oparallel.failures[i].value);
  }
}

TEST_CASE("operator text encoding round-trips") {
  OperatorParams p;
  p.k = 1;
  p.l = 2;
  p.gamma = rat(1);
  CHECK(encode_operator(Family::W0_III, p) == "W0_III{k=1,l=2,gamma=1}");
  auto parsed = parse_operator("W0_III{k=1,l=2,gamma=1}");
  CHECK(parsed.family == Family::W0_III);
  CHECK(make_operator(parsed.family, parsed.params) == make_operator(Family::W0_III, p));
  CHECK_THROWS_AS(parse_operator("NOPE{k=1}"), DomainError);
}
