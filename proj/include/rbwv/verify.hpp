#ifndef RBWV_VERIFY_HPP
#define RBWV_VERIFY_HPP

#include <string>
#include <vector>

#include "rbwv/operators.hpp"

namespace rbwv {

// Deterministic rank of a basis symbol in the canonical scan order
// L(0), L(1), L(-1), ..., then C. Failure lists are sorted by it.
long canonical_rank(BasisSymbol s, long window);

struct PairFailure {
  BasisSymbol x, y;
  Element defect;
};

struct VerifyReport {
  long window = 0;
  Rational weight;
  std::vector<PairFailure> failures;
  bool pass() const { return failures.empty(); }
};

// Exhaustive check of the Rota-Baxter identity over all basis pairs with
// indices in [-N, N] (plus C on the Virasoro algebra). The parallel kernel
// and the serial reference return identical reports.
VerifyReport verify_rb(const HomogeneousOperator& op, const Rational& weight, long window);
VerifyReport verify_rb_serial(const HomogeneousOperator& op, const Rational& weight, long window);
VerifyReport verify_rb_parallel(const HomogeneousOperator& op, const Rational& weight, long window);

struct ObstructionFailure {
  long m, n;
  Rational value;
};

struct ObstructionReport {
  long window = 0;
  std::vector<ObstructionFailure> failures;
  bool pass() const { return failures.empty(); }
};

// Evaluates the central-extension cocycle on (R L_m, R L_n) over the window;
// an empty failure list means the Witt operator lifts to the Virasoro algebra
// with theta = mu = nu = 0.
ObstructionReport lifting_obstruction(const HomogeneousOperator& op, long window);
ObstructionReport lifting_obstruction_serial(const HomogeneousOperator& op, long window);
ObstructionReport lifting_obstruction_parallel(const HomogeneousOperator& op, long window);

}  // namespace rbwv

#endif
