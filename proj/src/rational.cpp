#include "uminflow/rational.hpp"

#include <stdexcept>

namespace uminflow {

ExactRational::ExactRational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  value_ = denominator < 0 ? Value(-numerator, -denominator) : Value(numerator, denominator);
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
  if (b.value_ == 0) throw std::domain_error("division by zero");
  return ExactRational(a.value_ / b.value_);
}

std::string ExactRational::to_string() const {
  const BigInt den = denominator();
  if (den == 1) return numerator().str();
  return numerator().str() + "/" + den.str();
}

ExactRational ExactRational::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return ExactRational(BigInt(text));
    return ExactRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

ExactRational dyadic_unit(unsigned k) { return ExactRational(BigInt(1), BigInt(1) << k); }

ExactRational DyadicApprox::value() const { return ExactRational(mantissa, BigInt(1) << precision); }

std::string DyadicApprox::to_string() const { return mantissa.str() + "/2^" + std::to_string(precision); }

DyadicApprox round_to_dyadic(const ExactRational& x, unsigned k) {
  // floor((2 * p * 2^k + q) / (2q)) for x = p/q.
  const BigInt p = x.numerator();
  const BigInt q = x.denominator();
  BigInt num = 2 * p * (BigInt(1) << k) + q;
  BigInt den = 2 * q;
  BigInt m = num / den;
  if (num < 0 && m * den != num) m -= 1;  // truncation toward zero -> floor
  return DyadicApprox{m, k};
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace uminflow
