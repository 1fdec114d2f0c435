#include <gtest/gtest.h>

#include "mrp/conjugation.hpp"
#include "mrp/error.hpp"
#include "mrp/moser.hpp"

using namespace mrp;

namespace {

std::vector<std::pair<long, long>> pairs_of(const ConjugationChain& c) {
  std::vector<std::pair<long, long>> out;
  for (const auto& p : c.pairs) out.push_back({p.n.get_si(), p.s.get_si()});
  return out;
}

}  // namespace

TEST(Conjugation, NMove) {
  EXPECT_EQ(n_conjugate(8, 6), (RootPair{8, 2}));
  EXPECT_EQ(n_conjugate(27, 6), (RootPair{27, 21}));
  EXPECT_EQ(n_conjugate(10, 5), (RootPair{10, 5}));
  EXPECT_THROW(n_conjugate(5, 5), InvalidArgument);
  EXPECT_THROW(n_conjugate(5, 0), InvalidArgument);
}

TEST(Conjugation, SMove) {
  EXPECT_EQ(s_conjugate(8, 6, 4), (RootPair{27, 6}));
  EXPECT_EQ(s_conjugate(27, 3, 5), (RootPair{4, 3}));
  EXPECT_EQ(s_conjugate(98, 21, 4), (RootPair{27, 21}));
  try {
    s_conjugate(9, 6, 4);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "not a root of the conjugation quadratic");
  }
  EXPECT_THROW(s_conjugate(8, 6, 6), InvalidArgument);
}

TEST(Conjugation, ChainFourPrefix) {
  const auto c = build_chain(4, 10);
  const std::vector<std::pair<long, long>> expected{{2, 1},   {3, 1},   {3, 2},   {8, 2},   {8, 6},
                                                    {27, 6},  {27, 21}, {98, 21}, {98, 77}, {363, 77}};
  EXPECT_EQ(pairs_of(c), expected);
  for (std::size_t i = 0; i < c.moves.size(); ++i)
    EXPECT_EQ(c.moves[i], i % 2 == 0 ? ConjugationMove::kS : ConjugationMove::kN);
  EXPECT_EQ(c.compliant, (std::vector<bool>{false, false, false, false, true, true, true, true, true, true}));
}

TEST(Conjugation, ChainLengthOne) {
  const auto c = build_chain(4, 1);
  ASSERT_EQ(c.pairs.size(), 1u);
  EXPECT_EQ(c.pairs[0], (RootPair{2, 1}));
  EXPECT_FALSE(c.compliant[0]);
  EXPECT_TRUE(c.moves.empty());
  EXPECT_THROW(build_chain(4, 0), InvalidArgument);
}

TEST(Conjugation, ChainFiveBothDirections) {
  const auto c = build_chain(5, 15);
  const std::vector<std::pair<long, long>> expected{
      {1444, 1311}, {1444, 133}, {147, 133}, {147, 14}, {16, 14},  {16, 2},    {3, 2},     {3, 1},
      {4, 1},       {4, 3},      {27, 3},    {27, 24},  {256, 24}, {256, 232}, {2523, 232}};
  EXPECT_EQ(pairs_of(c), expected);
  const std::vector<bool> compliant{true,  true,  true,  true,  true,  false, false, false,
                                    false, false, false, true,  true,  true,  true};
  EXPECT_EQ(c.compliant, compliant);
  // The move between (3,2) and (3,1) is an n-move; labels alternate throughout.
  for (std::size_t i = 0; i < c.moves.size(); ++i)
    EXPECT_EQ(c.moves[i], i % 2 == 0 ? ConjugationMove::kN : ConjugationMove::kS) << i;
  // Odd lengths put the extra pair on the (3,1) side.
  const auto c13 = build_chain(5, 13);
  const std::vector<std::pair<long, long>> inner(expected.begin() + 1, expected.end() - 1);
  EXPECT_EQ(pairs_of(c13), inner);
}

TEST(Conjugation, ChainInvariants) {
  for (unsigned k : {4u, 5u}) {
    const auto c = build_chain(k, 40);
    for (std::size_t i = 0; i < c.pairs.size(); ++i) {
      const auto& p = c.pairs[i];
      EXPECT_EQ(conjugation_quadratic(k, p.n, p.s), 0);
      EXPECT_GT(p.n, p.s);
      EXPECT_GT(p.s, 0);
      EXPECT_GT(k == 4 ? BigInt(6 * p.s - 1) : BigInt(12 * p.s - 5), p.n);
      // Both maps are involutions.
      const auto sc = s_conjugate(p.n, p.s, k);
      EXPECT_EQ(s_conjugate(sc.n, sc.s, k), p);
      if (p.s < p.n) EXPECT_EQ(n_conjugate(n_conjugate(p.n, p.s).n, n_conjugate(p.n, p.s).s), p);
      if (c.compliant[i] && p.n < 2000) {
        EXPECT_EQ(moser_value(p.s.get_si(), k, p.n), 0) << p.n << "," << p.s;
      }
    }
  }
}

TEST(Conjugation, CompletenessUpToBound) {
  for (unsigned k : {4u, 5u}) {
    const auto r = check_chain_completeness(k, 100000);
    EXPECT_TRUE(r.missing.empty());
    EXPECT_GT(r.solutions, 10u);
  }
}

TEST(Conjugation, TextFormat) {
  EXPECT_EQ(format_chain(build_chain(4, 6)), "!(2,1) -s-> !(3,1) -n-> !(3,2) -s-> !(8,2) -n-> (8,6) -s-> (27,6)");
}
