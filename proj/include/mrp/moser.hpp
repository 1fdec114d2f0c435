#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrp/bigint.hpp"
#include "mrp/polynomial.hpp"

namespace mrp {

/// F_{s,k}(n) = sum_{p=1..s} (-1)^(p-1) p^(k-1) C(n, s-p), stored scaled by
/// (s-1)! so that the polynomial in n has integer coefficients and is monic.
struct MoserPolynomial {
  unsigned s = 1;
  unsigned k = 1;
  IntPolynomial scaled;  ///< G = (s-1)! * F_{s,k}

  /// (s-1)!, the factor between G and F.
  BigInt scale() const { return factorial(s - 1); }
};

enum class RootClass { kTrivial, kCollapse, kSuspect, kConfirmedSingular };

std::string_view to_string(RootClass c);

struct RootRecord {
  unsigned s = 0;
  unsigned k = 0;  ///< for table scans: the smallest k with F_{s,k}(n) = 0
  std::uint64_t n = 0;
  RootClass classification = RootClass::kSuspect;

  friend bool operator==(const RootRecord&, const RootRecord&) = default;
};

/// Returns true if a witness pair of s-equivalent n-multisets is known.
using WitnessLookup = std::function<bool(std::uint64_t n, std::uint64_t s)>;

/// n <= s trivial, n == 2s collapse, otherwise confirmed or suspect by lookup.
RootClass classify_root(std::uint64_t n, unsigned s, const WitnessLookup& witness);

/// Exact F_{s,k}(n) from the binomial sum; zero for s < 1.
BigRational moser_value(long s, unsigned k, const BigInt& n);

MoserPolynomial moser_polynomial(unsigned s, unsigned k);

/// Both recurrences in x, checked as exact polynomial identities:
///   F_{s,k}(x) = F_{s,k}(x-1) + F_{s-1,k}(x-1)
///   F_{s,k}(x) = s F_{s,k-1}(x) - x F_{s-1,k-1}(x-1)
bool check_recurrences(unsigned s, unsigned k);

/// First five primes above 1000.
const std::vector<std::uint64_t>& default_filter_primes();

/// All n in [1, bound] with G(n) = 0. Candidates are sieved by the residue
/// classes where G vanishes modulo each filter prime; survivors are checked
/// exactly. An empty prime list falls back to exact evaluation at every n.
std::vector<RootRecord> integer_roots(const MoserPolynomial& p, std::uint64_t bound,
                                      const std::vector<std::uint64_t>& filter_primes = default_filter_primes(),
                                      const WitnessLookup& witness = {});

/// Integer roots in [1, bound] of an arbitrary polynomial, by the same sieve.
std::vector<std::uint64_t> integer_roots_in_range(const IntPolynomial& poly, std::uint64_t bound,
                                                  const std::vector<std::uint64_t>& filter_primes);

/// Per-s k limit: either fixed, or "auto" meaning 2s + 5.
struct KLimit {
  unsigned fixed = 0;  ///< 0 selects auto

  static KLimit automatic() { return {}; }
  static KLimit of(unsigned k) { return {k}; }
  unsigned for_s(unsigned s) const { return fixed != 0 ? fixed : 2 * s + 5; }
};

/// Nontrivial roots n > s, n != 2s of F_{s,k} for s in [s_lo, s_hi] and
/// k <= k_limit, each tagged with the smallest vanishing k, ordered by (s, n).
std::vector<RootRecord> scan_table(unsigned s_lo, unsigned s_hi, KLimit k_limit, std::uint64_t bound,
                                   unsigned workers = 1, const WitnessLookup& witness = {});

/// Largest k <= k_limit for which F_{s,k} has an integer root in (s, bound].
/// This is the root-based proxy for the factorisation-based k_max.
std::optional<unsigned> k_max(unsigned s, unsigned k_limit, std::uint64_t bound);

/// True iff F_{s,k}(2s) = 0 for every odd k with 1 < k < 2s.
bool odd_k_collapse_check(unsigned s);

struct ModpCertificate {
  bool certified = false;  ///< no residue is a root, so no integer root exists
  std::uint64_t p = 0;
  std::vector<std::uint64_t> roots_mod_p;
};

ModpCertificate modp_no_root_certificate(const IntPolynomial& poly, std::uint64_t p);
ModpCertificate modp_no_root_certificate(const MoserPolynomial& poly, std::uint64_t p);

/// Table-style rendering: one row per s, entries "n[k]" with suspects
/// prefixed by '*'.
std::string format_root_table(const std::vector<RootRecord>& records);

}  // namespace mrp
