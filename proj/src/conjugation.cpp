#include "mrp/conjugation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mrp/error.hpp"

namespace mrp {

namespace {

void require_k(unsigned k) {
  if (k != 4 && k != 5) throw InvalidArgument("conjugation chains exist only for k = 4 and k = 5");
}

// 6s - 1 for k = 4, 12s - 5 for k = 5.
BigInt linear_coeff(unsigned k, const BigInt& s) { return k == 4 ? BigInt(6 * s - 1) : BigInt(12 * s - 5); }

// Walk from `start`, first move an s-move, collecting `count` pairs.
std::vector<RootPair> walk(unsigned k, RootPair start, std::size_t count) {
  std::vector<RootPair> out;
  bool s_move = true;
  while (out.size() < count) {
    out.push_back(start);
    start = s_move ? s_conjugate(start.n, start.s, k) : n_conjugate(start.n, start.s);
    s_move = !s_move;
  }
  return out;
}

ConjugationChain assemble(unsigned k, std::vector<RootPair> pairs) {
  ConjugationChain chain;
  chain.k = k;
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    if (pairs[i].n == pairs[i + 1].n)
      chain.moves.push_back(ConjugationMove::kN);
    else if (pairs[i].s == pairs[i + 1].s)
      chain.moves.push_back(ConjugationMove::kS);
    else
      throw std::logic_error("chain pairs are not related by a single move");
  }
  for (const auto& p : pairs) chain.compliant.push_back(is_compliant(k, p));
  chain.pairs = std::move(pairs);
  return chain;
}

}  // namespace

std::string_view to_string(ConjugationMove m) { return m == ConjugationMove::kN ? "n" : "s"; }

BigInt conjugation_quadratic(unsigned k, const BigInt& n, const BigInt& s) {
  require_k(k);
  const BigInt c = k == 4 ? 6 : 12;
  return n * n - linear_coeff(k, s) * n + c * s * s;
}

RootPair n_conjugate(const BigInt& n, const BigInt& s) {
  if (sgn(s) <= 0 || s >= n) throw InvalidArgument("n-conjugation requires 0 < s < n");
  return {n, n - s};
}

RootPair s_conjugate(const BigInt& n, const BigInt& s, unsigned k) {
  require_k(k);
  if (sgn(conjugation_quadratic(k, n, s)) != 0) throw InvalidArgument("not a root of the conjugation quadratic");
  return {linear_coeff(k, s) - n, s};
}

bool is_compliant(unsigned k, const RootPair& p) { return p.s > k - 2 && p.n > p.s; }

ConjugationChain build_chain(unsigned k, std::size_t length) {
  require_k(k);
  if (length < 1) throw InvalidArgument("chain length must be at least 1");
  if (k == 4) return assemble(k, walk(k, {2, 1}, length));

  std::vector<RootPair> back = walk(k, {3, 2}, length / 2);
  std::vector<RootPair> fwd = walk(k, {3, 1}, length - length / 2);
  std::reverse(back.begin(), back.end());
  back.insert(back.end(), fwd.begin(), fwd.end());
  return assemble(k, std::move(back));
}

CompletenessReport check_chain_completeness(unsigned k, std::uint64_t bound) {
  require_k(k);
  CompletenessReport report;
  report.k = k;
  report.bound = bound;

  // Grow the chain until both ends have left [1, bound].
  std::set<std::pair<BigInt, BigInt>> on_chain;
  const BigInt limit = big_u(bound);
  for (std::size_t length = 8;; length *= 2) {
    const ConjugationChain chain = build_chain(k, length);
    const bool front_done = k == 4 || chain.pairs.front().n > limit;
    if (front_done && chain.pairs.back().n > limit) {
      for (const auto& p : chain.pairs) on_chain.emplace(p.n, p.s);
      break;
    }
  }

  // Roots in s for fixed n: a s^2 - a n s + (n^2 + b n) = 0 with (a, b) = (6, 1)
  // or (12, 5); s = (a n +- sqrt(D)) / (2a), D = a^2 n^2 - 4a (n^2 + b n).
  const long a = k == 4 ? 6 : 12;
  const long b = k == 4 ? 1 : 5;
  for (std::uint64_t nv = 1; nv <= bound; ++nv) {
    const BigInt n = big_u(nv);
    const BigInt disc = a * a * n * n - 4 * a * (n * n + b * n);
    if (sgn(disc) < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    std::set<BigInt> roots;
    for (const BigInt num : {BigInt(a * n + root), BigInt(a * n - root)}) {
      if (num % (2 * a) != 0) continue;
      const BigInt s = num / (2 * a);
      if (sgn(s) > 0) roots.insert(s);
    }
    for (const auto& s : roots) {
      ++report.solutions;
      if (!on_chain.count({n, s})) report.missing.push_back({n, s});
    }
  }
  return report;
}

std::string format_chain(const ConjugationChain& chain) {
  std::ostringstream os;
  for (std::size_t i = 0; i < chain.pairs.size(); ++i) {
    if (i > 0) os << " -" << to_string(chain.moves[i - 1]) << "-> ";
    if (!chain.compliant[i]) os << '!';
    os << '(' << chain.pairs[i].n << ',' << chain.pairs[i].s << ')';
  }
  return os.str();
}

}  // namespace mrp
