#ifndef RBWV_COEFF_FUNCTION_HPP
#define RBWV_COEFF_FUNCTION_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>

#include "rbwv/rational.hpp"

namespace rbwv {

// Closed-form coefficient function f : Z -> Q of a homogeneous operator.
// The catalog families are total on Z; Table is window-backed classifier
// output and errors outside its window.
class CoefficientFunction {
 public:
  enum class Kind {
    Zero,
    DeltaAt,              // f(m) = value * [m == target]
    DoubleDelta,          // f(m) = value * [m == a] + 2 value * [m == b]
    CongruenceRational,   // f(m) = (k/(m+k)) * value * [m in lZ]
    Step,                 // the -1/0 threshold shapes of the weight-1 catalog
    SignSplit,            // -1 on one sign, value at 0, 0 on the other sign
    Table,
  };

  enum class StepKind {
    LeOne,        // zero set {m <= 1}:  f(m) = -1 for m >= 2
    GeMinusOne,   // zero set {m >= -1}: f(m) = -1 for m <= -2
    GtOne,        // zero set {m > 1}:   f(m) = -1 for m <= 1
    LtMinusOne,   // zero set {m < -1}:  f(m) = -1 for m >= -1
    Empty,        // f = -1 everywhere
  };

  enum class Sign { Plus, Minus };  // Plus: -1 on m < 0; Minus: -1 on m > 0

  static CoefficientFunction zero();
  static CoefficientFunction delta_at(long target, Rational value);
  static CoefficientFunction double_delta(long a, long b, Rational value);
  // requires l != 0 and l not dividing k
  static CoefficientFunction congruence_rational(long k, long l, Rational value);
  static CoefficientFunction step(StepKind s);
  static CoefficientFunction sign_split(Sign s, Rational f0);
  static CoefficientFunction table(long window, std::map<long, Rational> values);

  Kind kind() const { return kind_; }
  bool is_table() const { return kind_ == Kind::Table; }
  long table_window() const { return window_; }

  // shape fields (meaning depends on kind)
  long target() const { return target_; }
  long point_a() const { return a_; }
  long point_b() const { return b_; }
  long cong_k() const { return k_; }
  long cong_l() const { return l_; }
  StepKind step_kind() const { return step_; }
  Sign sign() const { return sign_; }
  const Rational& value() const { return value_; }

  // Throws WindowError when a Table is evaluated outside its window.
  Rational eval(long m) const;

  // The closed-form complement -f - 1 used by the -R-Id involution.
  // Defined on the weight-1 catalog shapes and tables; DomainError otherwise.
  CoefficientFunction complement() const;

  friend bool operator==(const CoefficientFunction&, const CoefficientFunction&) = default;

 private:
  Kind kind_ = Kind::Zero;
  StepKind step_ = StepKind::Empty;
  Sign sign_ = Sign::Plus;
  long target_ = 0, a_ = 0, b_ = 0, k_ = 0, l_ = 0, window_ = 0;
  Rational value_;
  std::map<long, Rational> values_;
};

}  // namespace rbwv

#endif
