#include <gtest/gtest.h>

#include "mrp/error.hpp"
#include "mrp/moser.hpp"
#include "oracles.hpp"

using namespace mrp;

namespace {

IntPolynomial desc(std::initializer_list<long> c) { return IntPolynomial::from_descending(c); }
IntPolynomial lin(long root) { return IntPolynomial{-root, 1}; }
IntPolynomial g(unsigned s, unsigned k) { return moser_polynomial(s, k).scaled; }

// Unscaled general form of g_{s,6}.
IntPolynomial g6_quartic(long s) {
  return IntPolynomial({BigInt(120 * s * s * s * s), BigInt(-(240 * s * s * s - 90 * s * s + 4)),
                        BigInt(150 * s * s - 90 * s + 11), BigInt(-(30 * s - 16)), BigInt(1)});
}

}  // namespace

TEST(MoserPolynomial, MatchesDefiningSum) {
  for (unsigned s = 1; s <= 9; ++s)
    for (unsigned k = 1; k <= 12; ++k) {
      const auto p = g(s, k);
      EXPECT_EQ(p.degree(), static_cast<long>(s) - 1);
      EXPECT_EQ(p.leading(), 1);
      for (long n = -3; n <= 30; ++n) EXPECT_EQ(p.evaluate(n), oracle::scaled_moser_value(s, k, n)) << s << k << n;
    }
}

TEST(MoserPolynomial, ValueZeroBelowOne) {
  EXPECT_EQ(moser_value(0, 3, 10), 0);
  EXPECT_EQ(moser_value(-2, 3, 10), 0);
  EXPECT_THROW(moser_polynomial(0, 1), InvalidArgument);
}

TEST(MoserPolynomial, KTwoIsShiftedBinomial) {
  for (long s = 1; s <= 8; ++s)
    for (long n = 0; n <= 20; ++n) EXPECT_EQ(moser_value(s, 2, n), BigRational(binomial(n - 2, s - 1)));
}

TEST(MoserPolynomial, ThreeFactoredForms) {
  EXPECT_EQ(g(3, 1), lin(1) * lin(2));
  EXPECT_EQ(g(3, 2), lin(2) * lin(3));
  EXPECT_EQ(g(3, 3), lin(3) * lin(6));
  EXPECT_EQ(g(3, 5), lin(6) * lin(27));
  EXPECT_EQ(g(3, 9), lin(27) * lin(486));
  for (unsigned k = 1; k <= 12; ++k)  // 2 F_{3,k} = n^2 - (2^k + 1) n + 2 * 3^(k-1)
    EXPECT_EQ(g(3, k), IntPolynomial({2 * pow(BigInt(3), k - 1), -(pow(BigInt(2), k) + 1), BigInt(1)}));
}

TEST(MoserPolynomial, FourFactoredForms) {
  EXPECT_EQ(g(4, 1), lin(1) * lin(2) * lin(3));
  EXPECT_EQ(g(4, 2), lin(2) * lin(3) * lin(4));
  EXPECT_EQ(g(4, 3), lin(3) * lin(4) * lin(8));
  EXPECT_EQ(g(4, 4), lin(4) * desc({1, -23, 96}));
  EXPECT_EQ(g(4, 5), lin(8) * desc({1, -43, 192}));
  EXPECT_EQ(g(4, 6), lin(12) * desc({1, -87, 512}));
  EXPECT_EQ(g(4, 7), lin(8) * desc({1, -187, 3072}));
}

TEST(MoserPolynomial, FourExpandedForm) {
  // 6 F_{4,k} = n^3 - (3 + 3*2^(k-1)) n^2 + (2 + 3*2^(k-1) + 2*3^k) n - 6*4^(k-1)
  for (unsigned k = 1; k <= 15; ++k) {
    const BigInt t = 3 * pow(BigInt(2), k - 1);
    EXPECT_EQ(g(4, k), IntPolynomial({-6 * pow(BigInt(4), k - 1), 2 + t + 2 * pow(BigInt(3), k), -(3 + t), BigInt(1)}));
  }
}

TEST(MoserPolynomial, GeneralFormsForSmallK) {
  for (long s = 3; s <= 16; ++s) {
    const unsigned us = static_cast<unsigned>(s);
    EXPECT_EQ(g(us, 1), oracle::falling_product(1, s - 1));
    EXPECT_EQ(g(us, 2), oracle::falling_product(2, s));
    EXPECT_EQ(g(us, 3), lin(2 * s) * oracle::falling_product(3, s));
    if (s >= 4) {
      const IntPolynomial q4({BigInt(6 * s * s), BigInt(-(6 * s - 1)), BigInt(1)});
      const IntPolynomial q5({BigInt(12 * s * s), BigInt(-(12 * s - 5)), BigInt(1)});
      EXPECT_EQ(g(us, 4), q4 * oracle::falling_product(4, s));
      EXPECT_EQ(g(us, 5), q5 * lin(2 * s) * oracle::falling_product(5, s));
    }
    if (s >= 5) EXPECT_EQ(g(us, 6), g6_quartic(s) * oracle::falling_product(6, s));
  }
}

TEST(MoserPolynomial, SixQuarticFactorisations) {
  EXPECT_EQ(g6_quartic(8), lin(12) * desc({1, -212, 6347, -40960}));
  EXPECT_EQ(g6_quartic(10), lin(32) * desc({1, -252, 6047, -37500}));
  EXPECT_EQ(g6_quartic(22), lin(32) * desc({1, -612, 51047, -878460}));
  EXPECT_EQ(g6_quartic(30), lin(32) * desc({1, -852, 105047, -3037500}));
}

TEST(MoserPolynomial, FiveQuartics) {
  EXPECT_EQ(g(5, 6), desc({1, -134, 3311, -27754, 75000}));
  EXPECT_EQ(g(5, 7), desc({1, -262, 9527, -107570, 375000}));
  EXPECT_EQ(g(5, 8), desc({1, -518, 27791, -420490, 1875000}));
  EXPECT_EQ(g(5, 9), desc({1, -1030, 81815, -1653650, 9375000}));
  EXPECT_EQ(g(5, 7), lin(10) * desc({1, -252, 7007, -37500}));
  EXPECT_EQ(g(5, 9), lin(10) * desc({1, -1020, 71615, -937500}));
  const long xs[] = {6, 7, 8, 15, 16, 104, 105};
  const long expected[] = {1, -25, 15, 85, -199, -31065, 3895};
  for (int i = 0; i < 7; ++i) EXPECT_EQ(moser_value(5, 6, xs[i]), expected[i]) << xs[i];
}

TEST(MoserPolynomial, Recurrences) {
  for (unsigned s = 2; s <= 12; ++s)
    for (unsigned k = 2; k <= 25; ++k) EXPECT_TRUE(check_recurrences(s, k));
  EXPECT_THROW(check_recurrences(1, 3), InvalidArgument);
}

TEST(Roots, SieveMatchesExhaustiveEvaluation) {
  for (unsigned s = 3; s <= 8; ++s)
    for (unsigned k = 1; k <= 2 * s + 5; ++k) {
      const auto p = g(s, k);
      EXPECT_EQ(integer_roots_in_range(p, 3000, default_filter_primes()), integer_roots_in_range(p, 3000, {1009}));
      std::vector<std::uint64_t> slow;
      for (std::uint64_t n = 1; n <= 3000; ++n)
        if (sgn(p.evaluate(big_u(n))) == 0) slow.push_back(n);
      EXPECT_EQ(integer_roots_in_range(p, 3000, default_filter_primes()), slow) << s << " " << k;
    }
}

TEST(Roots, RootsOfF39) {
  const auto r = integer_roots(moser_polynomial(3, 9), 1000000);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].n, 27u);
  EXPECT_EQ(r[1].n, 486u);
  EXPECT_EQ(r[0].classification, RootClass::kConfirmedSingular);
  EXPECT_THROW(integer_roots(moser_polynomial(5, 5), 4), InvalidArgument);
}

TEST(Roots, Classification) {
  auto none = [](std::uint64_t, std::uint64_t) { return false; };
  EXPECT_EQ(classify_root(3, 3, none), RootClass::kTrivial);
  EXPECT_EQ(classify_root(12, 6, none), RootClass::kCollapse);
  EXPECT_EQ(classify_root(27, 6, none), RootClass::kSuspect);
  EXPECT_EQ(classify_root(27, 6, {}), RootClass::kSuspect);
  EXPECT_EQ(classify_root(8, 6, {}), RootClass::kConfirmedSingular);   // dual of (8, 2)
  EXPECT_EQ(classify_root(12, 4, {}), RootClass::kConfirmedSingular);  // corpus pair
  EXPECT_EQ(classify_root(32, 10, {}), RootClass::kSuspect);
  EXPECT_EQ(classify_root(147, 14, {}), RootClass::kSuspect);
}

TEST(Table, SmallRangeAndFormatting) {
  const auto rows = scan_table(3, 6, KLimit::automatic(), 100000);
  std::vector<std::pair<unsigned, std::uint64_t>> got;
  for (const auto& r : rows) got.push_back({r.s, r.n});
  const std::vector<std::pair<unsigned, std::uint64_t>> expected{{3, 27}, {3, 486}, {4, 12}, {6, 8}, {6, 27}};
  EXPECT_EQ(got, expected);
  EXPECT_EQ(format_root_table(rows), "  s | n\n  3 | 27[5], 486[9]\n  4 | 12[6]\n  6 | 8[4], *27[4]\n");
  EXPECT_EQ(scan_table(3, 6, KLimit::automatic(), 100000, 3), rows);
  EXPECT_THROW(scan_table(2, 6, KLimit::automatic(), 10), InvalidArgument);
}

TEST(KMax, SmallS) {
  EXPECT_EQ(k_max(3, 11, 1000000), 9u);
  EXPECT_EQ(k_max(4, 13, 1000000), 7u);
  EXPECT_EQ(k_max(5, 15, 1000000), 9u);
}

TEST(OddK, CollapseAtTwoS) {
  for (unsigned s = 3; s <= 20; ++s) EXPECT_TRUE(odd_k_collapse_check(s));
  EXPECT_NE(moser_value(4, 4, 8), 0);
}

TEST(Certificate, FiveQuarticsModP) {
  EXPECT_TRUE(modp_no_root_certificate(moser_polynomial(5, 6), 13).certified);
  EXPECT_TRUE(modp_no_root_certificate(moser_polynomial(5, 8), 13).certified);
  EXPECT_TRUE(modp_no_root_certificate(g(5, 7).deflate(10), 23).certified);
  EXPECT_TRUE(modp_no_root_certificate(g(5, 9).deflate(10), 13).certified);
  const auto c = modp_no_root_certificate(moser_polynomial(5, 7), 23);
  EXPECT_FALSE(c.certified);
  EXPECT_EQ(c.roots_mod_p, std::vector<std::uint64_t>{10});
  EXPECT_THROW(modp_no_root_certificate(moser_polynomial(5, 6), 15), InvalidArgument);
}
