#include "mrp/multiset.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <stdexcept>

#include "mrp/error.hpp"

namespace mrp {

namespace {

// Largest exponent we are willing to materialise as a dense polynomial.
constexpr std::uint64_t kMaxGenpolyDegree = 50'000'000;

std::vector<MultisetEntry> merge_sorted(std::vector<MultisetEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const MultisetEntry& a, const MultisetEntry& b) { return cmp(a.value, b.value) < 0; });
  std::vector<MultisetEntry> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (e.multiplicity == 0) continue;
    if (!out.empty() && out.back().value == e.value)
      out.back().multiplicity += e.multiplicity;
    else
      out.push_back(std::move(e));
  }
  return out;
}

std::uint64_t checked_degree(const BigInt& v) {
  if (sgn(v) < 0) throw InvalidArgument("translate to nonnegative first");
  if (!mpz_fits_ulong_p(v.get_mpz_t()) || mpz_get_ui(v.get_mpz_t()) > kMaxGenpolyDegree)
    throw InvalidArgument("value " + v.get_str() + " too large for a generating polynomial");
  return mpz_get_ui(v.get_mpz_t());
}

void check_s(const IntMultiset& a, std::uint64_t s) {
  if (s < 1 || s > a.size())
    throw InvalidArgument("s = " + std::to_string(s) + " out of range [1, " + std::to_string(a.size()) + "]");
}

BigInt gcd_of_values(const IntMultiset& a, BigInt g = 0) {
  for (const auto& e : a.entries()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
  return g;
}

// Divide every value by d (which must divide all of them).
IntMultiset scale_down(const IntMultiset& a, const BigInt& d) {
  std::vector<MultisetEntry> out = a.entries();
  for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), d.get_mpz_t());
  return IntMultiset::from_entries(std::move(out));
}

// Dense counting of s-sums when every partial sum fits comfortably in int64.
std::optional<IntMultiset> s_sums_small(const IntMultiset& a, std::uint64_t s) {
  const auto lo = to_int64(a.min());
  const auto hi = to_int64(a.max());
  if (!lo || !hi) return std::nullopt;
  const __int128 span = static_cast<__int128>(*hi - *lo) * static_cast<__int128>(s);
  if (*lo < -(std::int64_t{1} << 40) || *hi > (std::int64_t{1} << 40) || span > (1 << 26)) return std::nullopt;

  // Work with offsets from the minimum so partial sums index a dense array.
  std::vector<std::int64_t> v;
  v.reserve(a.size());
  for (const auto& e : a.entries())
    v.insert(v.end(), e.multiplicity, *to_int64(e.value) - *lo);
  const std::size_t n = v.size();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(span) + 1, 0);

  // idx[0..s) is the current position subset, prefix[d] the sum of its first d.
  std::vector<std::size_t> idx(s);
  std::vector<std::int64_t> prefix(s + 1, 0);
  for (std::size_t d = 0; d < s; ++d) {
    idx[d] = d;
    prefix[d + 1] = prefix[d] + v[d];
  }
  const std::size_t last = s - 1;
  while (true) {
    for (std::size_t i = idx[last]; i < n; ++i) ++counts[static_cast<std::size_t>(prefix[last] + v[i])];
    // Advance the deepest index that can still move, excluding the last one
    // (already swept above).
    std::size_t d = last;
    while (d > 0 && idx[d - 1] == n - s + d - 1) --d;
    if (d == 0) break;
    --d;
    ++idx[d];
    prefix[d + 1] = prefix[d] + v[idx[d]];
    for (std::size_t e = d + 1; e < s; ++e) {
      idx[e] = idx[e - 1] + 1;
      prefix[e + 1] = prefix[e] + v[idx[e]];
    }
  }

  std::vector<MultisetEntry> out;
  const std::int64_t base = *lo * static_cast<std::int64_t>(s);
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != 0) out.push_back({big(base + static_cast<std::int64_t>(i)), counts[i]});
  return IntMultiset::from_entries(std::move(out));
}

IntMultiset s_sums_big(const IntMultiset& a, std::uint64_t s) {
  const std::vector<BigInt> v = a.values();
  const std::size_t n = v.size();
  std::map<BigInt, std::uint64_t> counts;
  std::vector<std::size_t> idx(s);
  std::vector<BigInt> prefix(s + 1, BigInt(0));
  for (std::size_t d = 0; d < s; ++d) {
    idx[d] = d;
    prefix[d + 1] = prefix[d] + v[d];
  }
  const std::size_t last = s - 1;
  BigInt sum;
  while (true) {
    for (std::size_t i = idx[last]; i < n; ++i) {
      sum = prefix[last] + v[i];
      ++counts[sum];
    }
    std::size_t d = last;
    while (d > 0 && idx[d - 1] == n - s + d - 1) --d;
    if (d == 0) break;
    --d;
    ++idx[d];
    prefix[d + 1] = prefix[d] + v[idx[d]];
    for (std::size_t e = d + 1; e < s; ++e) {
      idx[e] = idx[e - 1] + 1;
      prefix[e + 1] = prefix[e] + v[idx[e]];
    }
  }
  std::vector<MultisetEntry> out;
  out.reserve(counts.size());
  for (auto& [value, count] : counts) out.push_back({value, count});
  return IntMultiset::from_entries(std::move(out));
}

}  // namespace

IntMultiset IntMultiset::from_values(std::span<const BigInt> values) {
  if (values.empty()) throw InvalidArgument("empty multiset");
  std::vector<MultisetEntry> entries;
  entries.reserve(values.size());
  for (const auto& v : values) entries.push_back({v, 1});
  return from_entries(std::move(entries));
}

IntMultiset IntMultiset::from_values(std::initializer_list<long> values) {
  std::vector<BigInt> v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return from_values(std::span<const BigInt>(v));
}

IntMultiset IntMultiset::from_entries(std::vector<MultisetEntry> entries) {
  IntMultiset m;
  m.entries_ = merge_sorted(std::move(entries));
  for (const auto& e : m.entries_) m.size_ += e.multiplicity;
  if (m.size_ == 0) throw InvalidArgument("empty multiset");
  return m;
}

std::vector<BigInt> IntMultiset::values() const {
  std::vector<BigInt> out;
  out.reserve(size_);
  for (const auto& e : entries_) out.insert(out.end(), e.multiplicity, e.value);
  return out;
}

std::string IntMultiset::to_string() const {
  std::string out;
  for (const auto& e : entries_) {
    if (!out.empty()) out += ',';
    out += e.value.get_str();
    if (e.multiplicity != 1) out += '^' + std::to_string(e.multiplicity);
  }
  return out;
}

int lex_compare(const IntMultiset& a, const IntMultiset& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0, j = 0;
  std::uint64_t ra = ea.empty() ? 0 : ea[0].multiplicity;
  std::uint64_t rb = eb.empty() ? 0 : eb[0].multiplicity;
  while (i < ea.size() && j < eb.size()) {
    const int c = cmp(ea[i].value, eb[j].value);
    if (c != 0) return c < 0 ? -1 : 1;
    const std::uint64_t take = std::min(ra, rb);
    ra -= take;
    rb -= take;
    if (ra == 0 && ++i < ea.size()) ra = ea[i].multiplicity;
    if (rb == 0 && ++j < eb.size()) rb = eb[j].multiplicity;
  }
  if (i < ea.size()) return 1;
  if (j < eb.size()) return -1;
  return 0;
}

IntMultiset make_multiset(std::span<const BigInt> values) { return IntMultiset::from_values(values); }

IntMultiset parse_multiset(std::string_view text) {
  std::vector<MultisetEntry> entries;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&](bool allow_sign) -> std::optional<std::string> {
    const std::size_t start = pos;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      return std::nullopt;
    }
    return std::string(text.substr(start, pos - start));
  };

  skip_ws();
  if (pos == text.size()) throw ParseError("empty multiset", pos);
  while (true) {
    skip_ws();
    const std::size_t token_start = pos;
    std::optional<std::string> value;
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      skip_ws();
      value = read_int(true);
      skip_ws();
      if (!value || pos >= text.size() || text[pos] != ')') throw ParseError("malformed parenthesised value", token_start);
      ++pos;
    } else {
      value = read_int(true);
    }
    if (!value) throw ParseError("expected an integer value", pos);
    std::uint64_t mult = 1;
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip_ws();
      const std::size_t mult_start = pos;
      auto m = read_int(false);
      if (!m) throw ParseError("expected a multiplicity after '^'", mult_start);
      try {
        mult = std::stoull(*m);
      } catch (const std::out_of_range&) {
        throw ParseError("multiplicity out of range", mult_start);
      }
      if (mult == 0) throw ParseError("multiplicity must be positive", mult_start);
      skip_ws();
    }
    entries.push_back({*parse_bigint(*value), mult});
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    ++pos;
  }
  return IntMultiset::from_entries(std::move(entries));
}

IntMultiset s_sums(const IntMultiset& a, std::uint64_t s) {
  check_s(a, s);
  if (auto fast = s_sums_small(a, s)) return *fast;
  return s_sums_big(a, s);
}

BigInt power_sum(const IntMultiset& a, unsigned long k) {
  if (k < 1) throw InvalidArgument("power_sum requires k >= 1");
  BigInt total = 0, term;
  for (const auto& e : a.entries()) {
    mpz_pow_ui(term.get_mpz_t(), e.value.get_mpz_t(), k);
    mpz_addmul_ui(total.get_mpz_t(), term.get_mpz_t(), e.multiplicity);
  }
  return total;
}

IntPolynomial generating_polynomial(const IntMultiset& a) {
  std::vector<BigInt> c(checked_degree(a.max()) + 1);
  checked_degree(a.min());
  for (const auto& e : a.entries()) c[mpz_get_ui(e.value.get_mpz_t())] = big_u(e.multiplicity);
  return IntPolynomial(std::move(c));
}

IntPolynomial ssum_genpoly(const IntMultiset& a, std::uint64_t s) {
  check_s(a, s);
  const IntPolynomial f = generating_polynomial(a);
  std::vector<IntPolynomial> power(s + 1);  // power[i] = f(x^i), built on demand
  std::vector<IntPolynomial> e;
  e.reserve(s + 1);
  e.push_back(IntPolynomial::constant(1));
  for (std::uint64_t j = 1; j <= s; ++j) {
    power[j] = f.substitute_power(j);
    IntPolynomial acc;
    for (std::uint64_t i = 1; i <= j; ++i) {
      IntPolynomial term = e[j - i] * power[i];
      if (i % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    e.push_back(acc.divexact(big_u(j)));
  }
  return e[s];
}

BigInt sum_smallest(const IntMultiset& a, std::uint64_t s) {
  BigInt total = 0;
  for (const auto& e : a.entries()) {
    if (s == 0) break;
    const std::uint64_t take = std::min(s, e.multiplicity);
    mpz_addmul_ui(total.get_mpz_t(), e.value.get_mpz_t(), take);
    s -= take;
  }
  return total;
}

BigInt sum_largest(const IntMultiset& a, std::uint64_t s) {
  BigInt total = 0;
  for (auto it = a.entries().rbegin(); it != a.entries().rend() && s > 0; ++it) {
    const std::uint64_t take = std::min(s, it->multiplicity);
    mpz_addmul_ui(total.get_mpz_t(), it->value.get_mpz_t(), take);
    s -= take;
  }
  return total;
}

EquivalenceTrace equivalence_trace(const IntMultiset& a, const IntMultiset& b, std::uint64_t s) {
  EquivalenceTrace t;
  auto decide = [&](bool same, const std::string& stage, const std::string& lhs, const std::string& rhs) {
    t.steps.push_back(stage + ": " + lhs + (same ? " == " : " != ") + rhs);
    if (!same) {
      t.equivalent = false;
      t.decided_by = stage;
    }
    return same;
  };

  if (!decide(a.size() == b.size(), "size", std::to_string(a.size()), std::to_string(b.size()))) return t;
  if (s < 1 || s > a.size())
    throw InvalidArgument("s = " + std::to_string(s) + " out of range [1, " + std::to_string(a.size()) + "]");

  const BigInt sa = power_sum(a, 1), sb = power_sum(b, 1);
  if (!decide(sa == sb, "sum", sa.get_str(), sb.get_str())) return t;
  const BigInt lo_a = sum_smallest(a, s), lo_b = sum_smallest(b, s);
  if (!decide(lo_a == lo_b, "min-s-sum", lo_a.get_str(), lo_b.get_str())) return t;
  const BigInt hi_a = sum_largest(a, s), hi_b = sum_largest(b, s);
  if (!decide(hi_a == hi_b, "max-s-sum", hi_a.get_str(), hi_b.get_str())) return t;

  // One affine map x -> (x + shift) / g applied to both sides keeps the
  // comparison exact while making exponents nonnegative and small.
  const BigInt shift = -std::min(a.min(), b.min());
  IntMultiset na = affine(a, 1, shift);
  IntMultiset nb = affine(b, 1, shift);
  // g == 0 means both sides are the same constant multiset.
  const BigInt g = gcd_of_values(nb, gcd_of_values(na));
  if (g > 1) {
    na = scale_down(na, g);
    nb = scale_down(nb, g);
  }
  t.steps.push_back("normalise: x -> (x + " + shift.get_str() + ") / " + (g > 1 ? g.get_str() : std::string("1")));
  const bool same = sgn(g) == 0 || ssum_genpoly(na, s) == ssum_genpoly(nb, s);
  decide(same, "genpoly", "f_A", "f_B");
  t.equivalent = same;
  t.decided_by = "genpoly";
  return t;
}

bool is_equivalent(const IntMultiset& a, const IntMultiset& b, std::uint64_t s) {
  return equivalence_trace(a, b, s).equivalent;
}

MirrorPair mirror(const IntMultiset& a) {
  const BigInt total = power_sum(a, 1);
  const BigInt n = big_u(a.size());
  BigInt g;
  const BigInt twice = 2 * total;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), twice.get_mpz_t());
  const BigInt c = n / g;
  const BigInt centre = c * twice / n;
  return MirrorPair{c, affine(a, c, 0), affine(a, -c, centre)};
}

IntMultiset affine(const IntMultiset& a, const BigInt& p, const BigInt& q) {
  if (sgn(p) == 0) throw InvalidArgument("degenerate map");
  std::vector<MultisetEntry> out;
  out.reserve(a.distinct());
  for (const auto& e : a.entries()) out.push_back({p * e.value + q, e.multiplicity});
  return IntMultiset::from_entries(std::move(out));
}

IntMultiset canonical_form(const IntMultiset& a) {
  if (a.distinct() == 1) return IntMultiset::from_entries({{BigInt(0), a.size()}});
  IntMultiset r = affine(a, 1, -a.min());
  r = scale_down(r, gcd_of_values(r));
  IntMultiset reflected = affine(r, -1, r.max());
  return lex_compare(reflected, r) < 0 ? reflected : r;
}

std::vector<unsigned> sigma_divergence(const IntMultiset& a, const IntMultiset& b, unsigned k_limit) {
  if (a.size() != b.size()) throw InvalidArgument("sigma_divergence requires multisets of equal size");
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= k_limit; ++k)
    if (power_sum(a, k) != power_sum(b, k)) out.push_back(k);
  return out;
}

}  // namespace mrp
