#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace mrp {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big(std::int64_t v) {
  BigInt r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

inline BigInt big_u(std::uint64_t v) {
  BigInt r;
  mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(v));
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// Exact parse of a base-10 integer with optional sign; nullopt on garbage.
std::optional<BigInt> parse_bigint(const std::string& text);

/// The value as int64 if it fits.
std::optional<std::int64_t> to_int64(const BigInt& v);

BigInt pow(const BigInt& base, unsigned long exp);
BigInt factorial(unsigned long n);

/// Generalised binomial n(n-1)...(n-k+1)/k!, valid for any integer n.
BigInt binomial(const BigInt& n, unsigned long k);

/// Exact binomial in 64 bits; nullopt on overflow.
std::optional<std::uint64_t> binomial_u64(std::uint64_t n, std::uint64_t k);

/// Residue in [0, p).
std::uint64_t mod_u64(const BigInt& v, std::uint64_t p);

bool is_probable_prime(std::uint64_t p);

}  // namespace mrp
