#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrp/multiset.hpp"

namespace mrp {

/// Weak composition n = k_1 + ... + k_m, visited in lexicographic order from
/// (0, ..., 0, n) to (n, 0, ..., 0).
struct CompositionCursor {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> parts;
  bool exhausted = false;
};

CompositionCursor first_composition(std::uint64_t n, std::size_t m);

/// Successor: find the last nonzero part, add one to the part before it, zero
/// everything after, and put the remainder in the last part. The cursor is
/// marked exhausted after (n, 0, ..., 0). Throws on an exhausted cursor.
void next_composition(CompositionCursor& c);

/// C(n+m-1, m-1). Throws if it does not fit in 64 bits.
std::uint64_t composition_count(std::uint64_t n, std::size_t m);

/// Position of `parts` in the visiting order, and its inverse.
std::uint64_t rank_composition(const std::vector<std::uint64_t>& parts);
std::vector<std::uint64_t> unrank_composition(std::uint64_t ordinal, std::uint64_t n, std::size_t m);

/// {1^k_1, 2^k_2, ..., m^k_m}, offset by first_value - 1.
IntMultiset multiset_of(const std::vector<std::uint64_t>& parts, long first_value = 1);
inline IntMultiset multiset_of(const CompositionCursor& c) { return multiset_of(c.parts); }

using Digest = std::array<std::uint8_t, 16>;

/// Keyed 128-bit BLAKE2b digest of the coefficients of ssum_genpoly(A, s).
Digest signature(const IntMultiset& a, std::uint64_t s);
Digest polynomial_digest(const IntPolynomial& p);
std::string to_hex(const Digest& d);

/// Flat (digest, ordinal) index; 24 bytes per composition.
class SignatureIndex {
 public:
  struct Entry {
    Digest digest;
    std::uint64_t ordinal;
  };
  static constexpr std::size_t kEntryBytes = sizeof(Entry);

  void add(const Digest& d, std::uint64_t ordinal) { entries_.push_back({d, ordinal}); }
  void append(std::vector<Entry>&& more);
  std::size_t size() const { return entries_.size(); }
  std::size_t bytes() const { return entries_.size() * kEntryBytes; }

  /// Sort by (digest, ordinal) and return the ordinal groups sharing a digest
  /// with at least `min_size` members, in digest order.
  std::vector<std::vector<std::uint64_t>> groups(std::size_t min_size = 2);
  std::size_t distinct_digests();

  void save(const std::string& path) const;
  static SignatureIndex load(const std::string& path);

 private:
  std::vector<Entry> entries_;
  bool sorted_ = false;
  void sort();
};

struct SearchProgress {
  std::uint64_t visited = 0;
  std::uint64_t total = 0;
  std::size_t index_entries = 0;
  double seconds = 0;
};

struct SearchOptions {
  unsigned workers = 1;
  std::uint64_t memory_budget = std::uint64_t{1} << 30;  ///< bytes for the index
  long first_value = 1;                                   ///< values are first_value .. first_value+m-1
  std::string checkpoint;  ///< written when stopping early; empty disables
  bool resume = false;     ///< continue from `checkpoint`
  std::function<void(const SearchProgress&)> progress;
  const std::atomic<bool>* stop = nullptr;  ///< external interrupt
};

struct SearchClass {
  /// Members after a common translation to minimum 0, division by the common
  /// gcd, and the lexicographically smaller of the class and its reflection.
  std::vector<IntMultiset> canonical;
  /// Members as found (values in the searched range), from the first raw class
  /// with this canonical form.
  std::vector<IntMultiset> members;
  std::vector<std::uint64_t> ordinals;
  /// Ordinal lists of every raw class in the range with this canonical form
  /// (translates, reflections), the representative first.
  std::vector<std::vector<std::uint64_t>> variants;
  std::size_t raw_variants() const { return variants.size(); }
};

struct SearchStatistics {
  std::uint64_t total = 0;
  std::uint64_t visited = 0;
  std::size_t buckets = 0;
  std::size_t collision_groups = 0;
  std::size_t false_collisions = 0;
  std::size_t raw_classes = 0;
  std::size_t classes = 0;
  double wall_seconds = 0;
};

struct SearchResult {
  std::uint64_t n = 0, s = 0, m = 0;
  long first_value = 1;
  std::vector<SearchClass> classes;
  SearchStatistics stats;
  bool partial = false;
  std::string stop_reason;  ///< "memory-budget" or "interrupted" when partial
};

/// Enumerate every composition of n into m parts, file its s-sum signature,
/// confirm digest collisions by exact generating-polynomial comparison and
/// merge classes with equal canonical form. Stops early with a checkpoint when
/// the index would exceed the memory budget or `stop` is raised.
SearchResult run_search(std::uint64_t n, std::uint64_t s, std::size_t m, const SearchOptions& options = {});

/// Joint canonical form of a family of equal-size multisets.
std::vector<IntMultiset> canonical_class(std::vector<IntMultiset> members);

/// Pairwise brute force over all compositions (no signatures): raw classes as
/// ordinal lists, in order of first ordinal. For cross-checking run_search.
std::vector<std::vector<std::uint64_t>> brute_force_classes(std::uint64_t n, std::uint64_t s, std::size_t m);

struct ConfinementAudit {
  std::size_t pairs = 0;
  std::size_t full_set_confined = 0;   ///< whole divergence set inside the zero set
  std::size_t first_k_confined = 0;    ///< smallest divergent k inside the zero set
};

/// For each pair of members of each class: compare {k <= n : sigma_k differs}
/// with {k <= n : F_{s,k}(n) = 0}.
ConfinementAudit audit_sigma_confinement(const std::vector<std::vector<IntMultiset>>& classes, std::uint64_t s);

}  // namespace mrp
