#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mrp/bigint.hpp"

namespace mrp {

struct RootPair {
  BigInt n;
  BigInt s;

  friend bool operator==(const RootPair&, const RootPair&) = default;
};

enum class ConjugationMove { kN, kS };

std::string_view to_string(ConjugationMove m);

struct ConjugationChain {
  unsigned k = 4;
  std::vector<RootPair> pairs;
  std::vector<ConjugationMove> moves;  ///< moves[i] takes pairs[i] to pairs[i+1]
  std::vector<bool> compliant;
};

/// n^2 - (6s-1)n + 6s^2 for k = 4, n^2 - (12s-5)n + 12s^2 for k = 5.
BigInt conjugation_quadratic(unsigned k, const BigInt& n, const BigInt& s);

/// (n, s) -> (n, n - s). Requires 0 < s < n.
RootPair n_conjugate(const BigInt& n, const BigInt& s);

/// (n, s) -> (6s-1-n, s) or (12s-5-n, s). Requires (n, s) to be a root of
/// the k-quadratic.
RootPair s_conjugate(const BigInt& n, const BigInt& s, unsigned k);

/// A root of the k-quadratic is compliant (a genuine root of F_{s,k}) when
/// s > k - 2 and n > s.
bool is_compliant(unsigned k, const RootPair& p);

/// k = 4: `length` pairs starting at (2,1), alternating s- and n-moves.
/// k = 5: the merged two-sided chain through (3,2) <-> (3,1), with
/// ceil(length/2) pairs on the (3,1) side and floor(length/2) on the (3,2)
/// side, listed from the far end of the (3,2) side.
ConjugationChain build_chain(unsigned k, std::size_t length);

struct CompletenessReport {
  unsigned k = 4;
  std::uint64_t bound = 0;
  std::size_t solutions = 0;          ///< roots (n, s) with n <= bound
  std::vector<RootPair> missing;      ///< roots not on the chain
};

/// Every positive root (n, s) of the k-quadratic with n <= bound, compared
/// against the chain.
CompletenessReport check_chain_completeness(unsigned k, std::uint64_t bound = 100000);

/// Arrow notation, non-compliant pairs prefixed with '!':
/// `!(2,1) -s-> !(3,1) -n-> ...`
std::string format_chain(const ConjugationChain& chain);

}  // namespace mrp
