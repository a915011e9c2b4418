#ifndef RBWV_RATIONAL_HPP
#define RBWV_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace rbwv {

// Exact rational scalar. cpp_rational keeps lowest terms with a positive
// denominator, so equality is structural.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct WindowError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

inline Rational rat(long long num, long long den = 1) {
  if (den == 0)
    throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(Integer(num), Integer(den));
}

// Canonical form: "p" or "p/q" with q > 1.
std::string to_string(const Rational& r);

// Accepts "p", "p/q", optional leading '-'. Throws DomainError on junk.
Rational parse_rational(const std::string& text);

}  // namespace rbwv

#endif
