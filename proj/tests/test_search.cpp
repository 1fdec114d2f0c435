#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>

#include "mrp/error.hpp"
#include "mrp/search.hpp"
#include "oracles.hpp"

using namespace mrp;

namespace {

std::vector<std::vector<std::uint64_t>> all_parts(std::uint64_t n, std::size_t m) {
  std::vector<std::vector<std::uint64_t>> out;
  for (auto c = first_composition(n, m); !c.exhausted; next_composition(c)) out.push_back(c.parts);
  return out;
}

std::vector<std::vector<std::uint64_t>> flattened(const SearchResult& r) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& c : r.classes)
    for (const auto& v : c.variants) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mrp-test-" + name)).string();
}

}  // namespace

TEST(Compositions, Order) {
  using V = std::vector<std::vector<std::uint64_t>>;
  EXPECT_EQ(all_parts(3, 2), (V{{0, 3}, {1, 2}, {2, 1}, {3, 0}}));
  EXPECT_EQ(all_parts(1, 1), (V{{1}}));
  EXPECT_EQ(all_parts(2, 3), (V{{0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}}));
  auto c = first_composition(0, 3);
  next_composition(c);
  EXPECT_TRUE(c.exhausted);
  EXPECT_THROW(next_composition(c), std::logic_error);
}

TEST(Compositions, CountMatchesEnumeration) {
  for (std::uint64_t n = 0; n <= 9; ++n)
    for (std::size_t m = 1; m <= 6; ++m) {
      EXPECT_EQ(all_parts(n, m).size(), composition_count(n, m));
      EXPECT_EQ(BigInt(composition_count(n, m)), oracle::choose(static_cast<long>(n + m - 1), m - 1));
    }
  EXPECT_EQ(composition_count(486, 3), 118828u);
}

TEST(Compositions, RankUnrankRoundTrip) {
  for (std::uint64_t n : {0u, 1u, 5u, 9u})
    for (std::size_t m : {1u, 2u, 4u, 5u}) {
      const auto parts = all_parts(n, m);
      for (std::uint64_t i = 0; i < parts.size(); ++i) {
        EXPECT_EQ(rank_composition(parts[i]), i);
        EXPECT_EQ(unrank_composition(i, n, m), parts[i]);
      }
    }
  EXPECT_THROW(unrank_composition(4, 3, 2), InvalidArgument);
}

TEST(Compositions, MultisetOf) {
  EXPECT_EQ(multiset_of({1, 16, 10}).to_string(), "1,2^16,3^10");
  EXPECT_EQ(multiset_of({2, 1, 0, 0, 1}).to_string(), "1^2,2,5");
  EXPECT_EQ(multiset_of({1, 16, 10}, 0).to_string(), "0,1^16,2^10");
}

TEST(Signature, EquivalentPairsShareDigest) {
  const auto a = parse_multiset("1^2,4,6,7,8^2,9,10,12,15^2");
  const auto b = parse_multiset("0,3,4,5,6,7,9,10,11,12,13,16");
  EXPECT_EQ(signature(a, 4), signature(b, 4));
  EXPECT_NE(signature(a, 3), signature(b, 3));
  EXPECT_EQ(to_hex(signature(a, 4)).size(), 32u);
  EXPECT_THROW(signature(parse_multiset("-1,2"), 1), InvalidArgument);
}

TEST(Signature, ConstantMultiset) {
  const auto a = parse_multiset("3^6");
  EXPECT_EQ(signature(a, 2), polynomial_digest(IntPolynomial::monomial(BigInt(15), 6)));
}

TEST(Signature, NoCollisionsAmongRandomDistinctPolynomials) {
  std::mt19937_64 rng(99);
  std::set<std::string> seen_poly;
  std::set<Digest> seen_digest;
  while (seen_poly.size() < 10000) {
    std::vector<BigInt> c(1 + rng() % 8);
    for (auto& x : c) x = static_cast<long>(rng() % 2001) - 1000;
    const IntPolynomial p(c);
    if (!seen_poly.insert(p.to_string()).second) continue;
    EXPECT_TRUE(seen_digest.insert(polynomial_digest(p)).second) << p.to_string();
  }
}

TEST(Index, GroupsAndPersistence) {
  SignatureIndex idx;
  Digest a{}, b{};
  b[0] = 1;
  idx.add(b, 4);
  idx.add(a, 7);
  idx.add(b, 2);
  idx.add(a, 1);
  idx.add(Digest{{9}}, 3);
  EXPECT_EQ(idx.bytes(), 5 * 24u);
  EXPECT_EQ(idx.groups(), (std::vector<std::vector<std::uint64_t>>{{1, 7}, {2, 4}}));
  EXPECT_EQ(idx.distinct_digests(), 3u);
  const auto path = temp_path("index.bin");
  idx.save(path);
  auto back = SignatureIndex::load(path);
  EXPECT_EQ(back.size(), 5u);
  EXPECT_EQ(back.groups(1).size(), 3u);
  std::filesystem::remove(path);
}

TEST(Search, SmallDegreeTwo) {
  const auto r = run_search(4, 2, 5);
  EXPECT_FALSE(r.partial);
  EXPECT_EQ(r.stats.total, 70u);
  EXPECT_EQ(r.stats.visited, 70u);
  ASSERT_EQ(r.classes.size(), 2u);
  EXPECT_EQ(r.classes[0].members[0].to_string(), "3^3,5");
  EXPECT_EQ(r.classes[0].members[1].to_string(), "2,4^3");
  EXPECT_EQ(r.classes[1].members[0].to_string(), "2^2,3,5");
  EXPECT_EQ(r.classes[1].members[1].to_string(), "1,3,4^2");
  for (const auto& c : r.classes) EXPECT_TRUE(is_equivalent(c.members[0], c.members[1], 2));
  EXPECT_EQ(r.stats.false_collisions, 0u);
}

TEST(Search, MatchesBruteForce) {
  for (auto [n, s, m] : std::vector<std::tuple<int, int, int>>{{4, 2, 5}, {6, 3, 5}, {8, 2, 5}, {6, 2, 6}}) {
    const auto r = run_search(n, s, m);
    auto expected = brute_force_classes(n, s, m);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(flattened(r), expected) << n << " " << s << " " << m;
  }
}

TEST(Search, WorkerCountDoesNotChangeResult) {
  SearchOptions one, four;
  four.workers = 4;
  const auto a = run_search(6, 3, 7, one), b = run_search(6, 3, 7, four);
  EXPECT_EQ(flattened(a), flattened(b));
  ASSERT_EQ(a.classes.size(), b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) EXPECT_EQ(a.classes[i].canonical, b.classes[i].canonical);
}

TEST(Search, ShiftedRangeGivesSameCanonicalClasses) {
  SearchOptions shifted;
  shifted.first_value = 0;
  const auto a = run_search(6, 2, 6), b = run_search(6, 2, 6, shifted);
  ASSERT_EQ(a.classes.size(), b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    EXPECT_EQ(a.classes[i].canonical, b.classes[i].canonical);
    EXPECT_EQ(a.classes[i].ordinals, b.classes[i].ordinals);
  }
}

TEST(Search, MemoryBudgetCheckpointAndResume) {
  const auto full = run_search(6, 3, 7);
  const auto path = temp_path("ckpt.json");
  SearchOptions limited;
  limited.memory_budget = 200 * SignatureIndex::kEntryBytes;
  limited.checkpoint = path;
  const auto part = run_search(6, 3, 7, limited);
  EXPECT_TRUE(part.partial);
  EXPECT_EQ(part.stop_reason, "memory-budget");
  EXPECT_LT(part.stats.visited, full.stats.total);
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_TRUE(std::filesystem::exists(path + ".index"));

  SearchOptions resume;
  resume.checkpoint = path;
  resume.resume = true;
  const auto rest = run_search(6, 3, 7, resume);
  EXPECT_FALSE(rest.partial);
  EXPECT_EQ(rest.stats.visited, full.stats.total);
  EXPECT_EQ(flattened(rest), flattened(full));
  EXPECT_THROW(run_search(6, 2, 7, resume), InvalidArgument);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".index");
}

TEST(Search, InterruptFlag) {
  std::atomic<bool> stop{true};
  SearchOptions o;
  o.stop = &stop;
  const auto r = run_search(6, 3, 7, o);
  EXPECT_TRUE(r.partial);
  EXPECT_EQ(r.stop_reason, "interrupted");
}

TEST(Search, RejectsBadParameters) {
  EXPECT_THROW(run_search(4, 0, 3), InvalidArgument);
  EXPECT_THROW(run_search(4, 4, 3), InvalidArgument);
  EXPECT_THROW(run_search(4, 2, 1), InvalidArgument);
}

TEST(CanonicalClass, JointNormalisation) {
  const auto a = canonical_class({parse_multiset("2^3,4"), parse_multiset("1,3^3")});
  const auto b = canonical_class({parse_multiset("4,8^3"), parse_multiset("6^3,10")});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[0].to_string(), "0,2^3");
  EXPECT_EQ(a[1].to_string(), "1^3,3");
}

TEST(Audit, Counts) {
  const auto r = run_search(6, 3, 7);
  std::vector<std::vector<IntMultiset>> classes;
  for (const auto& c : r.classes) classes.push_back(c.members);
  const auto audit = audit_sigma_confinement(classes, 3);
  EXPECT_GT(audit.pairs, 0u);
  EXPECT_EQ(audit.first_k_confined, audit.pairs);
  EXPECT_LE(audit.full_set_confined, audit.pairs);
}
