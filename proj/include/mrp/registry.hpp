#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrp/multiset.hpp"

namespace mrp {

enum class ExampleKind { kPair, kTriple, kQuadruple, kMirrorPair, kSplit };

std::string_view to_string(ExampleKind kind);
ExampleKind parse_example_kind(std::string_view text);

/// A known family of pairwise s-equivalent, pairwise distinct n-multisets.
struct ExampleRecord {
  std::string id;
  std::uint64_t n = 0;
  std::uint64_t s = 0;
  std::vector<IntMultiset> members;
  std::string source;
  ExampleKind kind = ExampleKind::kPair;
};

/// The embedded corpus of singular examples, in order of discovery.
const std::vector<ExampleRecord>& known_examples();

/// True if (n, s) or its dual (n, n - s) has a known witness: a corpus record,
/// the power-of-two family for s = 2, or the mirror construction for n = 2s.
bool has_witness(std::uint64_t n, std::uint64_t s);

struct DoublingResult {
  IntMultiset first;   ///< A u (B + d)
  IntMultiset second;  ///< B u (A + d)
  bool degenerate = false;
};

/// A u (B+d) ~2 B u (A+d). Throws InvalidArgument unless A ~2 B.
DoublingResult doubling(const IntMultiset& a, const IntMultiset& b, const BigInt& d);

/// Distinct 2-equivalent multisets of size 2^p, grown from ({1,1},{0,2}).
std::pair<IntMultiset, IntMultiset> power2_family(unsigned p);

/// ({1^(2s-1), 1-2s}, {(-1)^(2s-1), 2s-1}).
std::pair<IntMultiset, IntMultiset> mirror_pair(unsigned s);

/// Split of {0, ..., 2^p - 1} by parity of binary weight (even weight first).
std::pair<IntMultiset, IntMultiset> thue_morse_split(unsigned p);

struct RecordReport {
  std::string id;
  std::uint64_t n = 0;
  std::uint64_t s = 0;
  bool passed = false;
  std::size_t pairs_checked = 0;
  bool distinct = false;
  bool gf_identity_checked = false;
  bool direct_enumeration = false;
  std::vector<std::string> failures;
  double seconds = 0;
};

struct VerificationReport {
  std::vector<RecordReport> records;  ///< sorted by id
  bool passed() const;
  std::vector<std::string> failed_ids() const;
};

struct VerifyOptions {
  /// Also confirm every member pair by enumerating all s-subsets.
  bool direct_enumeration = false;
  /// Run families: mirror pairs up to this s, Thue-Morse splits up to this p,
  /// power-of-two family up to this p.
  unsigned mirror_max_s = 8;
  unsigned thue_morse_max_p = 6;
  unsigned power2_max_p = 5;
  bool include_families = true;
  unsigned workers = 1;
};

/// Check a list of records: pairwise distinctness, pairwise s-equivalence,
/// and for s = 2 the identity f_A(x)^2 - f_A(x^2) = f_B(x)^2 - f_B(x^2).
VerificationReport verify_records(const std::vector<ExampleRecord>& records, const VerifyOptions& options = {});

/// Corpus plus generated family instances.
std::vector<ExampleRecord> family_instances(const VerifyOptions& options);
VerificationReport verify_all(const VerifyOptions& options = {});

/// Structural kind of a member list: 3 or 4 members give triple/quadruple;
/// two members are a split if they partition {0..2^p-1}, a mirror pair if
/// one is a reflection of the other, and a plain pair otherwise.
ExampleKind infer_kind(const std::vector<IntMultiset>& members);

/// Corpus text format: `id|n|s|multiset;multiset;...|source`, one record per
/// line. Blank lines and lines starting with '#' are skipped on load; the
/// kind is not stored and is recovered with infer_kind.
std::string format_corpus(const std::vector<ExampleRecord>& records);
std::vector<ExampleRecord> parse_corpus(std::string_view text);

}  // namespace mrp
