#include "mrp/registry.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <sstream>
#include <thread>

#include "mrp/error.hpp"

namespace mrp {

namespace {

IntMultiset ms(std::string_view text) { return parse_multiset(text); }

ExampleRecord record(std::string id, std::uint64_t s, std::vector<IntMultiset> members, std::string source) {
  ExampleRecord r;
  r.id = std::move(id);
  r.n = members.front().size();
  r.s = s;
  r.kind = infer_kind(members);
  r.members = std::move(members);
  r.source = std::move(source);
  return r;
}

ExampleRecord mirror_record(std::string id, std::string_view base, std::string source) {
  const MirrorPair m = mirror(ms(base));
  return record(std::move(id), 3, {m.scaled, m.mirrored}, std::move(source));
}

std::vector<ExampleRecord> build_corpus() {
  std::vector<ExampleRecord> c;
  {
    auto [a, b] = mirror_pair(3);
    c.push_back(record("ss-6-3", 3, {a, b}, "Selfridge & Straus (1958)"));
  }
  c.push_back(record("doubling-seed", 2, {ms("1,1"), ms("0,2")}, "doubling construction base (n = s = 2)"));
  c.push_back(record("doubling-4", 2, {ms("1,1,1,3"), ms("0,2,2,2")}, "doubling construction, d = 1"));
  c.push_back(record("gfs-triple", 2,
                     {ms("0,5,6,7,9,10,11,16"), ms("1,4,5,6,10,11,12,15"), ms("2,3,4,7,9,12,13,14")},
                     "Gordon, Fraenkel & Straus (1962)"));
  c.push_back(record("ewell-quad", 3,
                     {ms("0,5,9,10,11,13"), ms("1,5,8,9,10,15"), ms("1,6,7,8,11,15"), ms("3,5,6,7,11,16")},
                     "Ewell (1968)"));
  c.push_back(mirror_record("a27-1", "0,1^16,2^10", "Boman & Linusson (1996)"));
  c.push_back(mirror_record("a27-2", "0^5,1^10,2^10,3^2", "Boman & Linusson (1996)"));
  c.push_back(mirror_record("a27-3", "0,1^5,2^10,3^6,4^5", "Boman & Linusson (1996)"));
  c.push_back(mirror_record("a486", "0^22,1^176,2^231,3^56,4", "Boman & Linusson (1996)"));
  c.push_back(record("ik-12-4", 4, {ms("1^2,4,6,7,8^2,9,10,12,15^2"), ms("0,3,4,5,6,7,9,10,11,12,13,16")},
                     "Isomurodov & Kokhas (2016)"));
  return c;
}

IntMultiset disjoint_union(const IntMultiset& a, const IntMultiset& b) {
  std::vector<MultisetEntry> entries = a.entries();
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return IntMultiset::from_entries(std::move(entries));
}

bool is_reflection(const IntMultiset& a, const IntMultiset& b) {
  return affine(a, -1, a.min() + b.max()) == b;
}

bool is_range_partition(const std::vector<IntMultiset>& members) {
  IntMultiset all = members.front();
  for (std::size_t i = 1; i < members.size(); ++i) all = disjoint_union(all, members[i]);
  if (!std::has_single_bit(all.size()) || all.distinct() != all.size()) return false;
  return all.min() == 0 && all.max() == big_u(all.size() - 1);
}

BigInt common_shift(const std::vector<IntMultiset>& members) {
  BigInt lo = members.front().min();
  for (const auto& m : members) lo = std::min(lo, m.min());
  return -lo;
}

// f(x)^2 - f(x^2): generating polynomial of twice the 2-sum multiset.
IntPolynomial pair_sum_identity(const IntMultiset& a) {
  const IntPolynomial f = generating_polynomial(a);
  return f * f - f.substitute_power(2);
}

RecordReport verify_one(const ExampleRecord& rec, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RecordReport rep;
  rep.id = rec.id;
  rep.n = rec.n;
  rep.s = rec.s;
  rep.distinct = true;
  rep.direct_enumeration = options.direct_enumeration;

  if (rec.members.size() < 2) rep.failures.push_back("fewer than two members");
  for (std::size_t i = 0; i < rec.members.size(); ++i) {
    if (rec.members[i].size() != rec.n)
      rep.failures.push_back("member " + std::to_string(i) + " has size " + std::to_string(rec.members[i].size()));
  }
  if (rep.failures.empty()) {
    const BigInt shift = common_shift(rec.members);
    std::vector<IntMultiset> direct;
    if (options.direct_enumeration)
      for (const auto& m : rec.members) direct.push_back(s_sums(m, rec.s));

    for (std::size_t i = 0; i < rec.members.size(); ++i) {
      for (std::size_t j = i + 1; j < rec.members.size(); ++j) {
        const std::string tag = std::to_string(i) + "," + std::to_string(j);
        if (rec.members[i] == rec.members[j]) {
          rep.distinct = false;
          rep.failures.push_back("members " + tag + " are equal");
        }
        ++rep.pairs_checked;
        if (!is_equivalent(rec.members[i], rec.members[j], rec.s))
          rep.failures.push_back("members " + tag + " are not " + std::to_string(rec.s) + "-equivalent");
        if (options.direct_enumeration && direct[i] != direct[j])
          rep.failures.push_back("members " + tag + " differ by direct enumeration");
        if (rec.s == 2) {
          rep.gf_identity_checked = true;
          if (pair_sum_identity(affine(rec.members[i], 1, shift)) != pair_sum_identity(affine(rec.members[j], 1, shift)))
            rep.failures.push_back("members " + tag + " violate f(x)^2 - f(x^2) identity");
        }
      }
    }
  }
  rep.passed = rep.failures.empty();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

std::string_view to_string(ExampleKind kind) {
  switch (kind) {
    case ExampleKind::kPair: return "pair";
    case ExampleKind::kTriple: return "triple";
    case ExampleKind::kQuadruple: return "quadruple";
    case ExampleKind::kMirrorPair: return "mirror-pair";
    case ExampleKind::kSplit: return "split";
  }
  return "pair";
}

ExampleKind parse_example_kind(std::string_view text) {
  for (auto k : {ExampleKind::kPair, ExampleKind::kTriple, ExampleKind::kQuadruple, ExampleKind::kMirrorPair,
                 ExampleKind::kSplit})
    if (to_string(k) == text) return k;
  throw InvalidArgument("unknown example kind '" + std::string(text) + "'");
}

ExampleKind infer_kind(const std::vector<IntMultiset>& members) {
  if (members.size() == 3) return ExampleKind::kTriple;
  if (members.size() == 4) return ExampleKind::kQuadruple;
  if (members.size() == 2) {
    if (is_range_partition(members)) return ExampleKind::kSplit;
    if (is_reflection(members[0], members[1])) return ExampleKind::kMirrorPair;
  }
  return ExampleKind::kPair;
}

const std::vector<ExampleRecord>& known_examples() {
  static const std::vector<ExampleRecord> corpus = build_corpus();
  return corpus;
}

bool has_witness(std::uint64_t n, std::uint64_t s) {
  if (s == 0 || n <= s) return false;
  for (std::uint64_t t : {s, n - s}) {
    if (n == 2 * t) return true;
    if (t == 2 && n >= 4 && std::has_single_bit(n)) return true;
    for (const auto& rec : known_examples())
      if (rec.n == n && rec.s == t) return true;
  }
  return false;
}

DoublingResult doubling(const IntMultiset& a, const IntMultiset& b, const BigInt& d) {
  if (a.size() != b.size() || a.size() < 2 || !is_equivalent(a, b, 2))
    throw InvalidArgument("doubling requires 2-equivalent inputs");
  DoublingResult r{disjoint_union(a, affine(b, 1, d)), disjoint_union(b, affine(a, 1, d)), false};
  r.degenerate = r.first == r.second;
  return r;
}

std::pair<IntMultiset, IntMultiset> power2_family(unsigned p) {
  if (p < 1) throw InvalidArgument("power2_family requires p >= 1");
  if (p > 24) throw InvalidArgument("power2_family: p too large");
  IntMultiset a = ms("1,1"), b = ms("0,2");
  for (unsigned i = 1; i < p; ++i) {
    DoublingResult r = doubling(a, b, 1);
    if (r.degenerate) {
      // Separate the halves entirely; the lower halves then differ.
      const BigInt span = std::max(a.max(), b.max()) - std::min(a.min(), b.min()) + 1;
      r = doubling(a, b, span);
    }
    a = std::move(r.first);
    b = std::move(r.second);
  }
  return {a, b};
}

std::pair<IntMultiset, IntMultiset> mirror_pair(unsigned s) {
  if (s < 2) throw InvalidArgument("mirror_pair requires s >= 2");
  const std::uint64_t m = 2 * static_cast<std::uint64_t>(s) - 1;
  const BigInt big_m = big_u(m);
  IntMultiset a = IntMultiset::from_entries({{BigInt(1), m}, {-big_m, 1}});
  IntMultiset b = IntMultiset::from_entries({{BigInt(-1), m}, {big_m, 1}});
  return {a, b};
}

std::pair<IntMultiset, IntMultiset> thue_morse_split(unsigned p) {
  if (p < 2) throw InvalidArgument("thue_morse_split requires p >= 2");
  if (p > 26) throw InvalidArgument("thue_morse_split: p too large");
  std::vector<MultisetEntry> even, odd;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << p); ++v)
    (std::popcount(v) % 2 == 0 ? even : odd).push_back({big_u(v), 1});
  return {IntMultiset::from_entries(std::move(even)), IntMultiset::from_entries(std::move(odd))};
}

bool VerificationReport::passed() const {
  return std::all_of(records.begin(), records.end(), [](const RecordReport& r) { return r.passed; });
}

std::vector<std::string> VerificationReport::failed_ids() const {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (!r.passed) out.push_back(r.id);
  return out;
}

VerificationReport verify_records(const std::vector<ExampleRecord>& records, const VerifyOptions& options) {
  VerificationReport report;
  report.records.resize(records.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) report.records[i] = verify_one(records[i], options);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(records.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  std::sort(report.records.begin(), report.records.end(),
            [](const RecordReport& a, const RecordReport& b) { return a.id < b.id; });
  return report;
}

std::vector<ExampleRecord> family_instances(const VerifyOptions& options) {
  std::vector<ExampleRecord> out;
  for (unsigned s = 2; s <= options.mirror_max_s; ++s) {
    auto [a, b] = mirror_pair(s);
    out.push_back(record("mirror-s" + std::to_string(s), s, {a, b}, "mirror construction, n = 2s"));
  }
  for (unsigned p = 2; p <= options.thue_morse_max_p; ++p) {
    auto [a, b] = thue_morse_split(p);
    out.push_back(record("thue-morse-p" + std::to_string(p), 2, {a, b}, "Thue-Morse split of Z_2^p"));
  }
  for (unsigned p = 1; p <= options.power2_max_p; ++p) {
    auto [a, b] = power2_family(p);
    out.push_back(record("power2-p" + std::to_string(p), 2, {a, b}, "iterated doubling"));
  }
  return out;
}

VerificationReport verify_all(const VerifyOptions& options) {
  std::vector<ExampleRecord> records = known_examples();
  if (options.include_families) {
    auto fam = family_instances(options);
    records.insert(records.end(), fam.begin(), fam.end());
  }
  return verify_records(records, options);
}

std::string format_corpus(const std::vector<ExampleRecord>& records) {
  std::ostringstream os;
  for (const auto& r : records) {
    os << r.id << '|' << r.n << '|' << r.s << '|';
    for (std::size_t i = 0; i < r.members.size(); ++i) os << (i ? ";" : "") << r.members[i].to_string();
    os << '|' << r.source << '\n';
  }
  return os.str();
}

std::vector<ExampleRecord> parse_corpus(std::string_view text) {
  std::vector<ExampleRecord> out;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(line_start, line_end - line_start);
    const std::size_t base = line_start;
    line_start = line_end + 1;
    if (line.empty() || line.front() == '#' || line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    std::vector<std::pair<std::string_view, std::size_t>> fields;  // text, offset
    std::size_t f = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t bar = line.find('|', f);
      if (bar == std::string_view::npos) throw ParseError("expected 5 '|'-separated fields", base + f);
      fields.emplace_back(line.substr(f, bar - f), base + f);
      f = bar + 1;
    }
    std::string_view source = line.substr(f);
    if (!source.empty() && source.back() == '\r') source.remove_suffix(1);
    fields.emplace_back(source, base + f);

    auto number = [](std::string_view field, std::size_t offset) {
      const auto v = parse_bigint(std::string(field));
      if (!v || sgn(*v) <= 0 || !mpz_fits_ulong_p(v->get_mpz_t())) throw ParseError("expected a positive integer", offset);
      return static_cast<std::uint64_t>(mpz_get_ui(v->get_mpz_t()));
    };

    ExampleRecord r;
    r.id = std::string(fields[0].first);
    if (r.id.empty()) throw ParseError("empty record id", fields[0].second);
    r.n = number(fields[1].first, fields[1].second);
    r.s = number(fields[2].first, fields[2].second);
    std::string_view members = fields[3].first;
    std::size_t m = 0;
    while (true) {
      const std::size_t semi = members.find(';', m);
      const std::string_view item = members.substr(m, semi == std::string_view::npos ? std::string_view::npos : semi - m);
      try {
        r.members.push_back(parse_multiset(item));
      } catch (const ParseError& e) {
        throw ParseError(std::string("bad multiset in record '") + r.id + "': " + e.what(),
                         fields[3].second + m + e.position());
      }
      if (r.members.back().size() != r.n)
        throw ParseError("member size does not match n in record '" + r.id + "'", fields[3].second + m);
      if (semi == std::string_view::npos) break;
      m = semi + 1;
    }
    r.source = std::string(fields[4].first);
    r.kind = infer_kind(r.members);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mrp
