#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cansym {

/// Exact rational number. Always kept canonical (lowest terms, positive
/// denominator); every constructor path below canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

/// Malformed user input (bad rational literal, wrong shape, unknown name).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p", "-p", "p/q" with arbitrary-size integers. Decimal points are
/// rejected so every value stays exact.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Named parameter values, e.g. {a: 2, b: 1/2}.
using ParamMap = std::map<std::string, Rational>;

/// "a=2, b=1/2"; empty map gives "".
std::string to_string(const ParamMap& params);

}  // namespace cansym
