#include "mrp/moser.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mrp/error.hpp"
#include "mrp/registry.hpp"

namespace mrp {

namespace {

const WitnessLookup& effective(const WitnessLookup& witness) {
  static const WitnessLookup fallback = [](std::uint64_t n, std::uint64_t s) { return has_witness(n, s); };
  return witness ? witness : fallback;
}

}  // namespace

std::string_view to_string(RootClass c) {
  switch (c) {
    case RootClass::kTrivial: return "trivial";
    case RootClass::kCollapse: return "collapse";
    case RootClass::kSuspect: return "suspect";
    case RootClass::kConfirmedSingular: return "confirmed-singular";
  }
  return "unknown";
}

RootClass classify_root(std::uint64_t n, unsigned s, const WitnessLookup& witness) {
  if (n <= s) return RootClass::kTrivial;
  if (n == 2 * static_cast<std::uint64_t>(s)) return RootClass::kCollapse;
  return effective(witness)(n, s) ? RootClass::kConfirmedSingular : RootClass::kSuspect;
}

BigRational moser_value(long s, unsigned k, const BigInt& n) {
  if (k < 1) throw InvalidArgument("moser_value requires k >= 1");
  if (s < 1) return 0;
  BigInt total = 0;
  for (long p = 1; p <= s; ++p) {
    BigInt term = pow(BigInt(p), k - 1) * binomial(n, static_cast<unsigned long>(s - p));
    if (p % 2 == 1)
      total += term;
    else
      total -= term;
  }
  return BigRational(total);
}

MoserPolynomial moser_polynomial(unsigned s, unsigned k) {
  if (s < 1 || k < 1) throw InvalidArgument("moser_polynomial requires s >= 1 and k >= 1");
  // falling[j] = n (n-1) ... (n-j+1)
  std::vector<IntPolynomial> falling{IntPolynomial::constant(1)};
  for (unsigned j = 1; j < s; ++j)
    falling.push_back(falling.back() * IntPolynomial{-static_cast<long>(j - 1), 1});

  IntPolynomial g;
  BigInt ratio = 1;  // (s-1)! / (s-p)!, built up as p grows
  for (unsigned p = 1; p <= s; ++p) {
    if (p > 1) ratio *= s - p + 1;
    IntPolynomial term = falling[s - p] * (pow(BigInt(p), k - 1) * ratio);
    if (p % 2 == 1)
      g += term;
    else
      g -= term;
  }
  return {s, k, std::move(g)};
}

bool check_recurrences(unsigned s, unsigned k) {
  if (s < 2 || k < 2) throw InvalidArgument("check_recurrences requires s >= 2 and k >= 2");
  // Scaled by (s-1)!: (s-1)! F_{s-1,.} = (s-1) G_{s-1,.}.
  const BigInt lower = s - 1;
  const IntPolynomial x{0, 1};
  const IntPolynomial g = moser_polynomial(s, k).scaled;

  const IntPolynomial first =
      g.shift(-1) + moser_polynomial(s - 1, k).scaled.shift(-1) * lower;
  const IntPolynomial second = moser_polynomial(s, k - 1).scaled * BigInt(s) -
                               x * moser_polynomial(s - 1, k - 1).scaled.shift(-1) * lower;
  return g == first && g == second;
}

const std::vector<std::uint64_t>& default_filter_primes() {
  static const std::vector<std::uint64_t> primes{1009, 1013, 1019, 1021, 1031};
  return primes;
}

std::vector<std::uint64_t> integer_roots_in_range(const IntPolynomial& poly, std::uint64_t bound,
                                                  const std::vector<std::uint64_t>& filter_primes) {
  if (poly.is_zero()) throw InvalidArgument("every integer is a root of the zero polynomial");
  std::vector<std::uint64_t> roots;
  if (poly.degree() == 0) return roots;

  auto exact_root = [&](std::uint64_t n) { return sgn(poly.evaluate(big_u(n))) == 0; };

  if (filter_primes.empty()) {
    std::clog << "warning: no filter primes given, evaluating every candidate exactly (slow path)\n";
    for (std::uint64_t n = 1; n <= bound; ++n)
      if (exact_root(n)) roots.push_back(n);
    return roots;
  }

  // masks[i][r] is true when poly(r) == 0 mod filter_primes[i].
  std::vector<std::vector<bool>> masks;
  masks.reserve(filter_primes.size());
  for (std::uint64_t p : filter_primes) {
    if (p < 2) throw InvalidArgument("filter modulus must be at least 2");
    const auto reduced = poly.reduce_mod(p);
    std::vector<bool> mask(p);
    for (std::uint64_t r = 0; r < p; ++r) mask[r] = evaluate_mod(reduced, r, p) == 0;
    masks.push_back(std::move(mask));
  }

  const std::uint64_t p0 = filter_primes.front();
  for (std::uint64_t r = 0; r < p0; ++r) {
    if (!masks[0][r]) continue;
    for (std::uint64_t n = r == 0 ? p0 : r; n <= bound; n += p0) {
      bool survives = true;
      for (std::size_t i = 1; i < filter_primes.size() && survives; ++i)
        survives = masks[i][n % filter_primes[i]];
      if (survives && exact_root(n)) roots.push_back(n);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<RootRecord> integer_roots(const MoserPolynomial& p, std::uint64_t bound,
                                      const std::vector<std::uint64_t>& filter_primes,
                                      const WitnessLookup& witness) {
  if (bound < p.s) throw InvalidArgument("bound must be at least s");
  std::vector<RootRecord> out;
  for (std::uint64_t n : integer_roots_in_range(p.scaled, bound, filter_primes))
    out.push_back({p.s, p.k, n, classify_root(n, p.s, witness)});
  return out;
}

std::vector<RootRecord> scan_table(unsigned s_lo, unsigned s_hi, KLimit k_limit, std::uint64_t bound,
                                   unsigned workers, const WitnessLookup& witness) {
  if (s_lo < 3 || s_lo > s_hi) throw InvalidArgument("scan_table requires 3 <= s_lo <= s_hi");
  if (k_limit.fixed != 0 && k_limit.fixed < 3) throw InvalidArgument("scan_table requires k_limit >= 3");

  std::vector<std::vector<RootRecord>> rows(s_hi - s_lo + 1);
  std::atomic<unsigned> next{s_lo};
  auto work = [&] {
    for (unsigned s = next++; s <= s_hi; s = next++) {
      std::map<std::uint64_t, unsigned> first_k;
      for (unsigned k = 1; k <= k_limit.for_s(s); ++k) {
        for (std::uint64_t n : integer_roots_in_range(moser_polynomial(s, k).scaled, bound, default_filter_primes())) {
          if (n <= s || n == 2 * static_cast<std::uint64_t>(s)) continue;
          first_k.emplace(n, k);
        }
      }
      auto& row = rows[s - s_lo];
      for (auto [n, k] : first_k) row.push_back({s, k, n, classify_root(n, s, witness)});
    }
  };

  workers = std::max(1u, std::min(workers, s_hi - s_lo + 1));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  std::vector<RootRecord> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

std::optional<unsigned> k_max(unsigned s, unsigned k_limit, std::uint64_t bound) {
  if (s < 3) throw InvalidArgument("k_max requires s >= 3");
  for (unsigned k = k_limit; k >= 1; --k) {
    for (std::uint64_t n : integer_roots_in_range(moser_polynomial(s, k).scaled, bound, default_filter_primes()))
      if (n > s) return k;
  }
  return std::nullopt;
}

bool odd_k_collapse_check(unsigned s) {
  if (s < 3) throw InvalidArgument("odd_k_collapse_check requires s >= 3");
  const BigInt n = 2 * s;
  for (unsigned k = 3; k < 2 * s; k += 2)
    if (sgn(moser_value(s, k, n)) != 0) return false;
  return true;
}

ModpCertificate modp_no_root_certificate(const IntPolynomial& poly, std::uint64_t p) {
  if (!is_probable_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (poly.is_zero() || mod_u64(poly.leading(), p) == 0)
    throw InvalidArgument("p divides the leading coefficient");
  ModpCertificate cert;
  cert.p = p;
  const auto reduced = poly.reduce_mod(p);
  for (std::uint64_t r = 0; r < p; ++r)
    if (evaluate_mod(reduced, r, p) == 0) cert.roots_mod_p.push_back(r);
  cert.certified = cert.roots_mod_p.empty();
  return cert;
}

ModpCertificate modp_no_root_certificate(const MoserPolynomial& poly, std::uint64_t p) {
  return modp_no_root_certificate(poly.scaled, p);
}

std::string format_root_table(const std::vector<RootRecord>& records) {
  std::ostringstream os;
  os << "  s | n\n";
  std::size_t i = 0;
  while (i < records.size()) {
    const unsigned s = records[i].s;
    os << (s < 10 ? "  " : s < 100 ? " " : "") << s << " | ";
    for (bool first = true; i < records.size() && records[i].s == s; ++i, first = false) {
      if (!first) os << ", ";
      if (records[i].classification == RootClass::kSuspect) os << '*';
      os << records[i].n << '[' << records[i].k << ']';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mrp
