#include "mrp/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace mrp {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

IntPolynomial IntPolynomial::monomial(const BigInt& c, std::size_t exponent) {
  std::vector<BigInt> v(exponent + 1);
  v[exponent] = c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::from_descending(std::initializer_list<long> coeffs) {
  std::vector<BigInt> v;
  v.reserve(coeffs.size());
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) v.emplace_back(*it);
  return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

const BigInt& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

BigInt IntPolynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const BigInt& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  // Generating polynomials are sparse (p_i(x) = f_A(x^i)), so skip zeros.
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
    const BigInt& bj = b.coeffs_[j];
    if (sgn(bj) == 0) continue;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      const BigInt& ai = a.coeffs_[i];
      if (sgn(ai) == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
    }
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPolynomial IntPolynomial::divexact(const BigInt& d) const {
  if (sgn(d) == 0) throw std::logic_error("division of a polynomial by zero");
  IntPolynomial r = *this;
  for (auto& c : r.coeffs_) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
      throw std::logic_error("inexact polynomial division by " + d.get_str());
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  }
  return r;
}

IntPolynomial IntPolynomial::substitute_power(std::size_t k) const {
  if (k == 0) return constant(evaluate(BigInt(1)));
  if (coeffs_.empty()) return {};
  std::vector<BigInt> out((coeffs_.size() - 1) * k + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * k] = coeffs_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::shift(const BigInt& c) const {
  // Taylor shift: for i from 0, fold x -> x + c into the tail.
  std::vector<BigInt> a = coeffs_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) mpz_addmul(a[j - 1].get_mpz_t(), a[j].get_mpz_t(), c.get_mpz_t());
  return IntPolynomial(std::move(a));
}

IntPolynomial IntPolynomial::deflate(const BigInt& root) const {
  if (coeffs_.empty()) return {};
  std::vector<BigInt> q(coeffs_.size() - 1);
  BigInt carry = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    BigInt cur = coeffs_[i] + carry * root;
    if (i == 0) {
      if (sgn(cur) != 0) throw std::logic_error(root.get_str() + " is not a root");
      break;
    }
    q[i - 1] = cur;
    carry = std::move(cur);
  }
  return IntPolynomial(std::move(q));
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs_[i];
  }
  return acc;
}

std::vector<std::uint64_t> IntPolynomial::reduce_mod(std::uint64_t p) const {
  std::vector<std::uint64_t> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(mod_u64(c, p));
  return out;
}

std::uint64_t IntPolynomial::evaluate_mod(std::uint64_t x, std::uint64_t p) const {
  return mrp::evaluate_mod(reduce_mod(p), x, p);
}

std::uint64_t evaluate_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t x, std::uint64_t p) {
  unsigned __int128 acc = 0;
  x %= p;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = (acc * x + coeffs[i]) % p;
  return static_cast<std::uint64_t>(acc);
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const BigInt& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace mrp
