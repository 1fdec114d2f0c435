#include "mrp/search.hpp"

#include <sodium.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "mrp/error.hpp"
#include "mrp/moser.hpp"

namespace mrp {

namespace {

using u128 = unsigned __int128;

// C(a, b) for small b, throwing on 64-bit overflow.
std::uint64_t choose(std::uint64_t a, std::uint64_t b) {
  const auto v = binomial_u64(a, b);
  if (!v) throw InvalidArgument("composition count does not fit in 64 bits");
  return *v;
}

// Number of weak compositions of x into r parts.
std::uint64_t weak_count(std::uint64_t x, std::uint64_t r) {
  if (r == 0) return x == 0 ? 1 : 0;
  return choose(x + r - 1, r - 1);
}

void ensure_sodium() {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw std::runtime_error("libsodium initialisation failed");
}

constexpr unsigned char kSignatureKey[16] = {'m', 'r', 'p', '-', 's', 'i', 'g', 'n',
                                             'a', 't', 'u', 'r', 'e', '-', 'v', '1'};

struct Unit {
  std::uint64_t begin = 0, end = 0, next = 0;
};

nlohmann::json units_json(const std::vector<Unit>& units) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& u : units) arr.push_back({{"begin", u.begin}, {"end", u.end}, {"next", u.next}});
  return arr;
}

IntMultiset divide_values(const IntMultiset& a, const BigInt& g) {
  std::vector<MultisetEntry> entries = a.entries();
  for (auto& e : entries) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  return IntMultiset::from_entries(std::move(entries));
}

bool list_less(const std::vector<IntMultiset>& a, const std::vector<IntMultiset>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), MultisetLess{});
}

}  // namespace

CompositionCursor first_composition(std::uint64_t n, std::size_t m) {
  if (m < 1) throw InvalidArgument("a composition needs at least one part");
  CompositionCursor c;
  c.n = n;
  c.parts.assign(m, 0);
  c.parts.back() = n;
  return c;
}

void next_composition(CompositionCursor& c) {
  if (c.exhausted) throw std::logic_error("next_composition called on an exhausted cursor");
  std::size_t j = c.parts.size();
  while (j > 0 && c.parts[j - 1] == 0) --j;
  if (j <= 1) {  // (n, 0, ..., 0), or n = 0
    c.exhausted = true;
    return;
  }
  --j;
  const std::uint64_t rest = c.parts[j] - 1;
  ++c.parts[j - 1];
  c.parts[j] = 0;
  c.parts.back() = rest;
}

std::uint64_t composition_count(std::uint64_t n, std::size_t m) {
  if (m < 1) throw InvalidArgument("a composition needs at least one part");
  return weak_count(n, m);
}

std::uint64_t rank_composition(const std::vector<std::uint64_t>& parts) {
  std::uint64_t rem = std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const std::uint64_t r = parts.size() - 1 - i;  // parts after i
    // sum_{v < k_i} weak_count(rem - v, r) = C(rem + r, r) - C(rem - k_i + r, r)
    rank += choose(rem + r, r) - choose(rem - parts[i] + r, r);
    rem -= parts[i];
  }
  return rank;
}

std::vector<std::uint64_t> unrank_composition(std::uint64_t ordinal, std::uint64_t n, std::size_t m) {
  if (ordinal >= composition_count(n, m)) throw InvalidArgument("composition ordinal out of range");
  std::vector<std::uint64_t> parts(m, 0);
  std::uint64_t rem = n;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const std::uint64_t r = m - 1 - i;
    std::uint64_t v = 0;
    for (;; ++v) {
      const std::uint64_t cnt = weak_count(rem - v, r);
      if (ordinal < cnt) break;
      ordinal -= cnt;
    }
    parts[i] = v;
    rem -= v;
  }
  parts.back() = rem;
  return parts;
}

IntMultiset multiset_of(const std::vector<std::uint64_t>& parts, long first_value) {
  std::vector<MultisetEntry> entries;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i] > 0) entries.push_back({BigInt(first_value + static_cast<long>(i)), parts[i]});
  return IntMultiset::from_entries(std::move(entries));
}

Digest polynomial_digest(const IntPolynomial& p) {
  ensure_sodium();
  crypto_generichash_state st;
  crypto_generichash_init(&st, kSignatureKey, sizeof kSignatureKey, 16);
  auto put_u64 = [&](std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    crypto_generichash_update(&st, buf, 8);
  };
  put_u64(p.coeffs().size());
  std::vector<unsigned char> bytes;
  for (const BigInt& c : p.coeffs()) {
    const unsigned char sign = static_cast<unsigned char>(sgn(c) + 1);
    std::size_t count = 0;
    bytes.resize((mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8 + 1);
    mpz_export(bytes.data(), &count, 1, 1, 1, 0, c.get_mpz_t());
    crypto_generichash_update(&st, &sign, 1);
    const std::uint32_t len = static_cast<std::uint32_t>(count);
    unsigned char lenbuf[4] = {static_cast<unsigned char>(len), static_cast<unsigned char>(len >> 8),
                               static_cast<unsigned char>(len >> 16), static_cast<unsigned char>(len >> 24)};
    crypto_generichash_update(&st, lenbuf, 4);
    crypto_generichash_update(&st, bytes.data(), count);
  }
  Digest d{};
  crypto_generichash_final(&st, d.data(), d.size());
  return d;
}

Digest signature(const IntMultiset& a, std::uint64_t s) {
  if (sgn(a.min()) < 0) throw InvalidArgument("signature requires nonnegative values");
  return polynomial_digest(ssum_genpoly(a, s));
}

std::string to_hex(const Digest& d) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (auto b : d) {
    out += digits[b >> 4];
    out += digits[b & 15];
  }
  return out;
}

void SignatureIndex::append(std::vector<Entry>&& more) {
  if (entries_.empty())
    entries_ = std::move(more);
  else
    entries_.insert(entries_.end(), more.begin(), more.end());
  sorted_ = false;
}

void SignatureIndex::sort() {
  if (sorted_) return;
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.digest != b.digest ? a.digest < b.digest : a.ordinal < b.ordinal;
  });
  sorted_ = true;
}

std::vector<std::vector<std::uint64_t>> SignatureIndex::groups(std::size_t min_size) {
  sort();
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t i = 0; i < entries_.size();) {
    std::size_t j = i;
    while (j < entries_.size() && entries_[j].digest == entries_[i].digest) ++j;
    if (j - i >= min_size) {
      std::vector<std::uint64_t> g;
      for (std::size_t t = i; t < j; ++t) g.push_back(entries_[t].ordinal);
      out.push_back(std::move(g));
    }
    i = j;
  }
  return out;
}

std::size_t SignatureIndex::distinct_digests() {
  sort();
  std::size_t count = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (i == 0 || entries_[i].digest != entries_[i - 1].digest) ++count;
  return count;
}

void SignatureIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write index snapshot " + path);
  const std::uint64_t count = entries_.size();
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(entries_.data()), static_cast<std::streamsize>(count * kEntryBytes));
  if (!out) throw std::runtime_error("failed writing index snapshot " + path);
}

SignatureIndex SignatureIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read index snapshot " + path);
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  SignatureIndex idx;
  idx.entries_.resize(count);
  in.read(reinterpret_cast<char*>(idx.entries_.data()), static_cast<std::streamsize>(count * kEntryBytes));
  if (!in) throw std::runtime_error("truncated index snapshot " + path);
  return idx;
}

std::vector<IntMultiset> canonical_class(std::vector<IntMultiset> members) {
  if (members.empty()) return members;
  BigInt lo = members.front().min(), hi = members.front().max();
  for (const auto& a : members) {
    lo = std::min(lo, a.min());
    hi = std::max(hi, a.max());
  }
  BigInt g = 0;
  for (auto& a : members) {
    a = affine(a, 1, -lo);
    for (const auto& e : a.entries()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
  }
  BigInt top = hi - lo;
  if (g > 1) {
    for (auto& a : members) a = divide_values(a, g);
    top /= g;
  }
  std::vector<IntMultiset> reflected;
  for (const auto& a : members) reflected.push_back(affine(a, -1, top));
  std::sort(members.begin(), members.end(), MultisetLess{});
  std::sort(reflected.begin(), reflected.end(), MultisetLess{});
  return list_less(reflected, members) ? reflected : members;
}

SearchResult run_search(std::uint64_t n, std::uint64_t s, std::size_t m, const SearchOptions& options) {
  if (s < 1 || s >= n) throw InvalidArgument("search requires 1 <= s < n");
  if (m < 2) throw InvalidArgument("search requires m >= 2");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  SearchResult result;
  result.n = n;
  result.s = s;
  result.m = m;
  result.first_value = options.first_value;
  const std::uint64_t total = composition_count(n, m);
  result.stats.total = total;

  SignatureIndex index;
  std::vector<Unit> units;
  if (options.resume) {
    if (options.checkpoint.empty()) throw InvalidArgument("resume requires a checkpoint path");
    std::ifstream in(options.checkpoint);
    if (!in) throw InvalidArgument("cannot read checkpoint " + options.checkpoint);
    const nlohmann::json cp = nlohmann::json::parse(in);
    if (cp.at("n") != n || cp.at("s") != s || cp.at("m") != m)
      throw InvalidArgument("checkpoint parameters do not match the requested search");
    for (const auto& u : cp.at("units")) units.push_back({u.at("begin"), u.at("end"), u.at("next")});
    index = SignatureIndex::load(cp.at("index").get<std::string>());
  } else {
    const std::uint64_t count = std::min<std::uint64_t>(total, std::max<std::uint64_t>(64, 8ull * options.workers));
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t b = static_cast<std::uint64_t>(static_cast<u128>(total) * i / count);
      const std::uint64_t e = static_cast<std::uint64_t>(static_cast<u128>(total) * (i + 1) / count);
      units.push_back({b, e, b});
    }
  }

  const std::uint64_t max_entries = options.memory_budget / SignatureIndex::kEntryBytes;
  std::atomic<std::uint64_t> reserved{index.size()};
  std::atomic<std::uint64_t> visited{0};
  for (const auto& u : units) visited += u.next - u.begin;
  std::atomic<bool> budget_hit{false}, interrupted{false};
  std::atomic<std::size_t> next_unit{0}, finished_workers{0};
  std::mutex merge_mutex;

  auto work = [&] {
    for (std::size_t ui = next_unit++; ui < units.size(); ui = next_unit++) {
      Unit& u = units[ui];
      if (u.next >= u.end) continue;
      std::vector<SignatureIndex::Entry> local;
      CompositionCursor c;
      c.n = n;
      c.parts = unrank_composition(u.next, n, m);
      while (u.next < u.end) {
        if (options.stop && options.stop->load()) {
          interrupted = true;
          break;
        }
        if (reserved++ >= max_entries) {
          --reserved;
          budget_hit = true;
          break;
        }
        local.push_back({signature(multiset_of(c.parts), s), u.next});
        ++u.next;
        ++visited;
        next_composition(c);
      }
      {
        std::lock_guard lock(merge_mutex);
        index.append(std::move(local));
      }
      if (budget_hit || interrupted) break;
    }
    ++finished_workers;
  };

  const unsigned workers = std::max(1u, options.workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    while (finished_workers.load() < workers) {
      std::this_thread::sleep_for(std::chrono::milliseconds(options.progress ? 200 : 5));
      if (options.progress) options.progress({visited.load(), total, static_cast<std::size_t>(reserved.load()), elapsed()});
    }
  }
  if (options.progress) options.progress({visited.load(), total, index.size(), elapsed()});

  result.stats.visited = visited;
  result.partial = result.stats.visited < total;
  if (result.partial) {
    result.stop_reason = interrupted ? "interrupted" : "memory-budget";
    if (!options.checkpoint.empty()) {
      const std::string snapshot = options.checkpoint + ".index";
      index.save(snapshot);
      nlohmann::json cp = {{"version", 1}, {"n", n},           {"s", s},
                           {"m", m},       {"units", units_json(units)}, {"index", snapshot},
                           {"visited", result.stats.visited}};
      std::ofstream out(options.checkpoint, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write checkpoint " + options.checkpoint);
      out << cp.dump(2) << '\n';
    }
  }

  // Confirm digest groups exactly.
  const auto digest_groups = index.groups(2);
  result.stats.buckets = index.distinct_digests();
  result.stats.collision_groups = digest_groups.size();
  std::vector<std::vector<std::uint64_t>> raw;
  for (const auto& group : digest_groups) {
    std::vector<std::pair<IntPolynomial, std::vector<std::uint64_t>>> exact;
    for (std::uint64_t ord : group) {
      const IntPolynomial p = ssum_genpoly(multiset_of(unrank_composition(ord, n, m)), s);
      auto it = std::find_if(exact.begin(), exact.end(), [&](const auto& e) { return e.first == p; });
      if (it == exact.end())
        exact.push_back({p, {ord}});
      else
        it->second.push_back(ord);
    }
    if (exact.size() > 1) ++result.stats.false_collisions;
    for (auto& e : exact)
      if (e.second.size() >= 2) raw.push_back(std::move(e.second));
  }
  std::sort(raw.begin(), raw.end());
  result.stats.raw_classes = raw.size();

  // Merge raw classes with the same canonical form; keep the first found.
  std::map<std::vector<IntMultiset>, std::size_t, decltype(&list_less)> seen(&list_less);
  for (const auto& ords : raw) {
    std::vector<IntMultiset> members;
    for (std::uint64_t ord : ords) members.push_back(multiset_of(unrank_composition(ord, n, m), options.first_value));
    auto key = canonical_class(members);
    auto [it, inserted] = seen.emplace(key, result.classes.size());
    if (inserted) {
      SearchClass c;
      c.canonical = std::move(key);
      c.members = std::move(members);
      c.ordinals = ords;
      result.classes.push_back(std::move(c));
    }
    result.classes[it->second].variants.push_back(ords);
  }
  result.stats.classes = result.classes.size();
  result.stats.wall_seconds = elapsed();
  return result;
}

std::vector<std::vector<std::uint64_t>> brute_force_classes(std::uint64_t n, std::uint64_t s, std::size_t m) {
  std::map<IntMultiset, std::vector<std::uint64_t>, MultisetLess> by_sums;
  std::uint64_t ord = 0;
  for (CompositionCursor c = first_composition(n, m); !c.exhausted; next_composition(c), ++ord)
    by_sums[s_sums(multiset_of(c.parts), s)].push_back(ord);
  std::vector<std::vector<std::uint64_t>> out;
  for (auto& [sums, ords] : by_sums)
    if (ords.size() >= 2) out.push_back(std::move(ords));
  std::sort(out.begin(), out.end());
  return out;
}

ConfinementAudit audit_sigma_confinement(const std::vector<std::vector<IntMultiset>>& classes, std::uint64_t s) {
  ConfinementAudit audit;
  std::map<std::uint64_t, std::vector<unsigned>> zero_sets;
  for (const auto& members : classes) {
    if (members.size() < 2) continue;
    const std::uint64_t n = members.front().size();
    auto [it, fresh] = zero_sets.try_emplace(n);
    if (fresh)
      for (unsigned k = 1; k <= n; ++k)
        if (sgn(moser_value(static_cast<long>(s), k, big_u(n))) == 0) it->second.push_back(k);
    const auto& zeros = it->second;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const auto div = sigma_divergence(members[i], members[j], static_cast<unsigned>(n));
        ++audit.pairs;
        const bool full = std::includes(zeros.begin(), zeros.end(), div.begin(), div.end());
        if (full) ++audit.full_set_confined;
        if (!div.empty() && std::binary_search(zeros.begin(), zeros.end(), div.front())) ++audit.first_k_confined;
      }
    }
  }
  return audit;
}

}  // namespace mrp
