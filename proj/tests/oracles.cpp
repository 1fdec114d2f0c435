#include "oracles.hpp"

#include <functional>

namespace oracle {

std::map<long, std::uint64_t> subset_sums(const std::vector<long>& values, unsigned s) {
  std::map<long, std::uint64_t> out;
  std::function<void(std::size_t, unsigned, long)> go = [&](std::size_t i, unsigned left, long acc) {
    if (left == 0) {
      ++out[acc];
      return;
    }
    if (values.size() - i < left) return;
    go(i + 1, left - 1, acc + values[i]);
    go(i + 1, left, acc);
  };
  go(0, s, 0);
  return out;
}

std::map<BigInt, BigInt> submultiset_sums(const mrp::IntMultiset& a, std::uint64_t t) {
  const auto& e = a.entries();
  std::vector<std::uint64_t> tail(e.size() + 1, 0);  // elements available from index i on
  for (std::size_t i = e.size(); i-- > 0;) tail[i] = tail[i + 1] + e[i].multiplicity;
  std::map<BigInt, BigInt> out;
  std::function<void(std::size_t, std::uint64_t, const BigInt&, const BigInt&)> go =
      [&](std::size_t i, std::uint64_t left, const BigInt& sum, const BigInt& weight) {
        if (i == e.size()) {
          if (left == 0) out[sum] += weight;
          return;
        }
        const std::uint64_t hi = std::min<std::uint64_t>(left, e[i].multiplicity);
        const std::uint64_t lo = left > tail[i + 1] ? left - tail[i + 1] : 0;
        for (std::uint64_t j = lo; j <= hi; ++j)
          go(i + 1, left - j, sum + e[i].value * BigInt(static_cast<unsigned long>(j)),
             weight * choose(BigInt(static_cast<unsigned long>(e[i].multiplicity)), static_cast<unsigned>(j)));
      };
  go(0, t, BigInt(0), BigInt(1));
  return out;
}

mrp::IntPolynomial to_polynomial(const std::map<long, std::uint64_t>& sums) {
  std::vector<BigInt> c;
  for (auto [v, cnt] : sums) {
    if (static_cast<std::size_t>(v) >= c.size()) c.resize(static_cast<std::size_t>(v) + 1);
    c[static_cast<std::size_t>(v)] = BigInt(static_cast<unsigned long>(cnt));
  }
  return mrp::IntPolynomial(std::move(c));
}

BigInt choose(const BigInt& n, unsigned j) {
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < j; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

BigInt fact(long s) {
  BigInt f = 1;
  for (long i = 2; i <= s - 1; ++i) f *= i;
  return f;
}

BigInt scaled_moser_value(long s, unsigned k, const BigInt& n) {
  if (s < 1) return 0;
  BigInt total = 0;
  for (long p = 1; p <= s; ++p) {
    BigInt pk = 1;
    for (unsigned i = 1; i < k; ++i) pk *= p;
    const BigInt term = pk * choose(n, static_cast<unsigned>(s - p));
    total += (p % 2 == 1) ? term : BigInt(-term);
  }
  return total * fact(s);
}

mrp::IntPolynomial falling_product(long lo, long hi) {
  mrp::IntPolynomial out{1};
  for (long p = lo; p <= hi; ++p) out = out * mrp::IntPolynomial{-p, 1};
  return out;
}

}  // namespace oracle
