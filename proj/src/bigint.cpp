#include "mrp/bigint.hpp"

#include <cctype>
#include <limits>

namespace mrp {

std::optional<BigInt> parse_bigint(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return std::nullopt;
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) return std::nullopt;
  BigInt v;
  if (v.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0) return std::nullopt;
  return v;
}

std::optional<std::int64_t> to_int64(const BigInt& v) {
  if (!mpz_fits_slong_p(v.get_mpz_t())) return std::nullopt;
  return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(const BigInt& n, unsigned long k) {
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

std::optional<std::uint64_t> binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t p) {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
}

bool is_probable_prime(std::uint64_t p) {
  BigInt v = big_u(p);
  return mpz_probab_prime_p(v.get_mpz_t(), 30) > 0;
}

}  // namespace mrp
