#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "mrp/bigint.hpp"

namespace mrp {

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
/// coeffs()[i] is the coefficient of x^i; trailing zeros are never stored, so
/// the zero polynomial has an empty coefficient vector.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial constant(const BigInt& c);
  static IntPolynomial monomial(const BigInt& c, std::size_t exponent);
  /// Build from coefficients listed highest degree first, as printed by hand.
  static IntPolynomial from_descending(std::initializer_list<long> coeffs);

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const BigInt& leading() const;
  BigInt coeff(std::size_t i) const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const BigInt& c);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const BigInt& c) { return a *= c; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  IntPolynomial operator-() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Divide every coefficient by d; throws std::logic_error if any division
  /// leaves a remainder.
  IntPolynomial divexact(const BigInt& d) const;

  /// P(x^k).
  IntPolynomial substitute_power(std::size_t k) const;

  /// P(x + c), computed exactly by repeated synthetic division.
  IntPolynomial shift(const BigInt& c) const;

  /// Quotient of P by (x - root); throws std::logic_error unless P(root) == 0.
  IntPolynomial deflate(const BigInt& root) const;

  BigInt evaluate(const BigInt& x) const;
  std::uint64_t evaluate_mod(std::uint64_t x, std::uint64_t p) const;
  /// Coefficients reduced into [0, p).
  std::vector<std::uint64_t> reduce_mod(std::uint64_t p) const;

  /// Human-readable form in the variable `var`, highest degree first.
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();

  std::vector<BigInt> coeffs_;
};

/// Horner evaluation of already-reduced coefficients modulo p.
std::uint64_t evaluate_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t x,
                           std::uint64_t p);

}  // namespace mrp
