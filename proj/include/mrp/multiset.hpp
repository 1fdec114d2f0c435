#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrp/bigint.hpp"
#include "mrp/polynomial.hpp"

namespace mrp {

struct MultisetEntry {
  BigInt value;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const MultisetEntry&, const MultisetEntry&) = default;
};

/// Finite multiset of integers stored run-length encoded: entries are strictly
/// increasing by value and every multiplicity is at least one.
///
/// Instances are immutable once built; all operations below are pure.
class IntMultiset {
 public:
  /// Normalises (sorts, merges runs). Throws InvalidArgument on empty input.
  static IntMultiset from_values(std::span<const BigInt> values);
  static IntMultiset from_values(std::initializer_list<long> values);
  /// Entries may be in any order and may repeat values; zero multiplicities
  /// are dropped. Throws InvalidArgument if the total size is zero.
  static IntMultiset from_entries(std::vector<MultisetEntry> entries);

  const std::vector<MultisetEntry>& entries() const noexcept { return entries_; }
  std::uint64_t size() const noexcept { return size_; }
  std::size_t distinct() const noexcept { return entries_.size(); }
  const BigInt& min() const { return entries_.front().value; }
  const BigInt& max() const { return entries_.back().value; }

  /// Sorted expansion a_1 <= a_2 <= ... <= a_n.
  std::vector<BigInt> values() const;

  /// Text form, e.g. "0,1^16,2^10".
  std::string to_string() const;

  friend bool operator==(const IntMultiset&, const IntMultiset&) = default;

 private:
  IntMultiset() = default;

  std::vector<MultisetEntry> entries_;
  std::uint64_t size_ = 0;
};

/// Lexicographic comparison of the sorted expansions (shorter prefix first).
int lex_compare(const IntMultiset& a, const IntMultiset& b);

struct MultisetLess {
  bool operator()(const IntMultiset& a, const IntMultiset& b) const { return lex_compare(a, b) < 0; }
};

IntMultiset make_multiset(std::span<const BigInt> values);

/// Parse the comma-separated `value` / `value^multiplicity` format. Negative
/// values may be written bare (`-5^2`) or parenthesised (`(-5)^2`).
IntMultiset parse_multiset(std::string_view text);

/// Multiset of all sums over s-subsets of positions, by direct enumeration.
IntMultiset s_sums(const IntMultiset& a, std::uint64_t s);

/// sigma_k(A) = sum of multiplicity * value^k.
BigInt power_sum(const IntMultiset& a, unsigned long k);

/// f_A(x) = sum of multiplicity * x^value. Values must be nonnegative.
IntPolynomial generating_polynomial(const IntMultiset& a);

/// Generating polynomial of the s-sum multiset, via Newton's identities on
/// p_i(x) = f_A(x^i); never enumerates subsets. Values must be nonnegative.
IntPolynomial ssum_genpoly(const IntMultiset& a, std::uint64_t s);

/// Sum of the s smallest / s largest elements (the extreme s-sums).
BigInt sum_smallest(const IntMultiset& a, std::uint64_t s);
BigInt sum_largest(const IntMultiset& a, std::uint64_t s);

struct EquivalenceTrace {
  bool equivalent = false;
  /// Name of the stage that decided the verdict: "size", "sum", "min-s-sum",
  /// "max-s-sum" or "genpoly".
  std::string decided_by;
  /// One line per executed stage, e.g. "sum: 48 == 48".
  std::vector<std::string> steps;
};

/// s-equivalence test: quick rejects on size, sigma_1 and the extreme s-sums,
/// then exact comparison of s-sum generating polynomials after one common
/// affine normalisation of both multisets.
EquivalenceTrace equivalence_trace(const IntMultiset& a, const IntMultiset& b, std::uint64_t s);
bool is_equivalent(const IntMultiset& a, const IntMultiset& b, std::uint64_t s);

struct MirrorPair {
  BigInt scale;  ///< c, the smallest positive integer with n | 2cS
  IntMultiset scaled;
  IntMultiset mirrored;
};

/// Reflect A about its mean; scales by the least c that keeps values integral.
MirrorPair mirror(const IntMultiset& a);

/// {p*a + q}. Throws InvalidArgument("degenerate map") when p == 0.
IntMultiset affine(const IntMultiset& a, const BigInt& p, const BigInt& q);

/// Unique representative of the affine orbit {pA + q : p != 0}.
IntMultiset canonical_form(const IntMultiset& a);

/// {k <= k_limit : sigma_k(A) != sigma_k(B)}. Sizes must match.
std::vector<unsigned> sigma_divergence(const IntMultiset& a, const IntMultiset& b, unsigned k_limit);

}  // namespace mrp
