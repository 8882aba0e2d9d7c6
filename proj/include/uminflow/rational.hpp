#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace uminflow {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction with positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  ExactRational(const BigInt& n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  // Throws std::domain_error on a zero denominator.
  ExactRational(const BigInt& numerator, const BigInt& denominator);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  // "p/q", or "p" when q == 1.
  std::string to_string() const;
  // Accepts "p/q" or "p".
  static ExactRational parse(const std::string& text);
  double to_double() const { return value_.convert_to<double>(); }

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) { return ExactRational(a.value_ + b.value_); }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) { return ExactRational(a.value_ - b.value_); }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) { return ExactRational(a.value_ * b.value_); }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
  ExactRational operator-() const { return ExactRational(-value_); }
  ExactRational& operator+=(const ExactRational& b) { value_ += b.value_; return *this; }
  ExactRational& operator-=(const ExactRational& b) { value_ -= b.value_; return *this; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
  friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const ExactRational& a, const ExactRational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const ExactRational& a, const ExactRational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const ExactRational& a, const ExactRational& b) { return a.value_ >= b.value_; }

 private:
  using Value = boost::multiprecision::cpp_rational;
  explicit ExactRational(Value v) : value_(std::move(v)) {}
  Value value_{0};
};

// 2^-k.
ExactRational dyadic_unit(unsigned k);

// m / 2^k, an approximation to some real number.
struct DyadicApprox {
  BigInt mantissa;
  unsigned precision = 0;

  ExactRational value() const;
  // "m/2^k".
  std::string to_string() const;
};

// Nearest dyadic m/2^k to x (ties rounded up). |result - x| <= 2^-(k+1).
DyadicApprox round_to_dyadic(const ExactRational& x, unsigned k);

BigInt factorial(unsigned n);

}  // namespace uminflow
