#include "rbwv/coeff_function.hpp"

namespace rbwv {

CoefficientFunction CoefficientFunction::zero() {
  return CoefficientFunction();
}

CoefficientFunction CoefficientFunction::delta_at(long target, Rational value) {
  CoefficientFunction f;
  f.kind_ = Kind::DeltaAt;
  f.target_ = target;
  f.value_ = std::move(value);
  return f;
}

CoefficientFunction CoefficientFunction::double_delta(long a, long b, Rational value) {
  if (a == b)
    throw DomainError("double delta needs distinct points");
  CoefficientFunction f;
  f.kind_ = Kind::DoubleDelta;
  f.a_ = a;
  f.b_ = b;
  f.value_ = std::move(value);
  return f;
}

CoefficientFunction CoefficientFunction::congruence_rational(long k, long l, Rational value) {
  if (l == 0)
    throw DomainError("congruence modulus must be nonzero");
  if (k % l == 0)
    throw DomainError("congruence family requires l not dividing k");
  CoefficientFunction f;
  f.kind_ = Kind::CongruenceRational;
  f.k_ = k;
  f.l_ = l < 0 ? -l : l;
  f.value_ = std::move(value);
  return f;
}

CoefficientFunction CoefficientFunction::step(StepKind s) {
  CoefficientFunction f;
  f.kind_ = Kind::Step;
  f.step_ = s;
  return f;
}

CoefficientFunction CoefficientFunction::sign_split(Sign s, Rational f0) {
  CoefficientFunction f;
  f.kind_ = Kind::SignSplit;
  f.sign_ = s;
  f.value_ = std::move(f0);
  return f;
}

CoefficientFunction CoefficientFunction::table(long window, std::map<long, Rational> values) {
  CoefficientFunction f;
  f.kind_ = Kind::Table;
  f.window_ = window;
  for (auto& [m, v] : values)
    if (m < -window || m > window)
      throw DomainError("table entry outside its window");
  f.values_ = std::move(values);
  return f;
}

Rational CoefficientFunction::eval(long m) const {
  switch (kind_) {
    case Kind::Zero:
      return Rational(0);
    case Kind::DeltaAt:
      return m == target_ ? value_ : Rational(0);
    case Kind::DoubleDelta:
      if (m == a_) return value_;
      if (m == b_) return 2 * value_;
      return Rational(0);
    case Kind::CongruenceRational: {
      if (m % l_ != 0)
        return Rational(0);
      // m + k != 0 on lZ since l does not divide k
      return value_ * rat(k_, m + k_);
    }
    case Kind::Step:
      switch (step_) {
        case StepKind::LeOne: return m >= 2 ? rat(-1) : Rational(0);
        case StepKind::GeMinusOne: return m <= -2 ? rat(-1) : Rational(0);
        case StepKind::GtOne: return m <= 1 ? rat(-1) : Rational(0);
        case StepKind::LtMinusOne: return m >= -1 ? rat(-1) : Rational(0);
        case StepKind::Empty: return rat(-1);
      }
      break;
    case Kind::SignSplit:
      if (m == 0) return value_;
      if (sign_ == Sign::Plus)
        return m < 0 ? rat(-1) : Rational(0);
      return m > 0 ? rat(-1) : Rational(0);
    case Kind::Table: {
      if (m < -window_ || m > window_)
        throw WindowError("table evaluated outside window " + std::to_string(window_));
      auto it = values_.find(m);
      return it == values_.end() ? Rational(0) : it->second;
    }
  }
  throw DomainError("bad coefficient function kind");
}

CoefficientFunction CoefficientFunction::complement() const {
  switch (kind_) {
    case Kind::Zero:
      return step(StepKind::Empty);
    case Kind::Step:
      switch (step_) {
        case StepKind::LeOne: return step(StepKind::GtOne);
        case StepKind::GtOne: return step(StepKind::LeOne);
        case StepKind::GeMinusOne: return step(StepKind::LtMinusOne);
        case StepKind::LtMinusOne: return step(StepKind::GeMinusOne);
        case StepKind::Empty: return zero();
      }
      break;
    case Kind::SignSplit:
      return sign_split(sign_ == Sign::Plus ? Sign::Minus : Sign::Plus, -value_ - 1);
    case Kind::Table: {
      std::map<long, Rational> vals;
      for (long m = -window_; m <= window_; ++m) {
        auto it = values_.find(m);
        Rational v = it == values_.end() ? Rational(0) : it->second;
        v = -v - 1;
        if (v != 0)
          vals[m] = std::move(v);
      }
      return table(window_, std::move(vals));
    }
    default:
      break;
  }
  throw DomainError("-f-1 leaves the closed-form catalog for this shape");
}

}  // namespace rbwv
