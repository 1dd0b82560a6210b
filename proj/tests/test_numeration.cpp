#include <gtest/gtest.h>

#include <algorithm>
#include <unordered_set>

#include "systems.hpp"

using namespace radixion;
using namespace radixion::testing;

TEST(ValidateSystem, Examples) {
  EXPECT_NO_THROW(knuth());
  EXPECT_THROW(make_system("2,1", "0;2"), configuration_error);  // 2 - 0 divisible by q = -2
  EXPECT_NO_THROW(make_system("2,1", "0;1"));
}

TEST(ValidateSystem, DigitSetShape) {
  EXPECT_THROW(make_system("2,2,1", "0,0"), configuration_error);            // too few digits
  EXPECT_THROW(make_system("2,2,1", "1,0;3,0"), configuration_error);        // no zero
  EXPECT_THROW(make_system("2,2,1", "0,0;1,0;1,1"), configuration_error);    // too many
  EXPECT_THROW(make_system("2,2,1", "0,0;1,0,0"), parse_error);              // wrong arity
}

TEST(ValidateSystem, DigitsAreCompleteResidueSystem) {
  for (const auto& ns : {knuth(), gauss5(), gauss5_twisted()}) {
    const auto& digits = ns.digits();
    EXPECT_EQ(digits.size(), ns.base_norm());
    EXPECT_TRUE(std::any_of(digits.begin(), digits.end(), [](const auto& b) { return b.is_zero(); }));
    for (std::size_t i = 0; i < digits.size(); ++i)
      for (std::size_t j = i + 1; j < digits.size(); ++j)
        EXPECT_FALSE(ns.order().divide_exact_by_q(digits[i] - digits[j]).has_value());
  }
}

TEST(Expand, Examples) {
  const auto ns = knuth();
  EXPECT_TRUE(std::get<Expansion>(expand(ns, big({0, 0}))).digits.empty());
  EXPECT_EQ(std::get<Expansion>(expand(ns, big({-1, 0}))).digits, (std::vector<std::size_t>{1, 0, 1, 1, 1}));
}

TEST(Expand, CycleForOnePlusI) {
  const auto ns = make_system("2,-2,1", "0,0;1,0");
  const auto r = expand(ns, big({-1, 0}));
  ASSERT_TRUE(std::holds_alternative<CycleDetected<BigInt>>(r));
  const auto& cyc = std::get<CycleDetected<BigInt>>(r).cycle;
  ASSERT_EQ(cyc.size(), 1u);
  EXPECT_EQ(cyc[0], big({-1, 1}));  // i = -1 + q
  auto x = cyc[0];
  ns.step(x.coords());
  EXPECT_EQ(x, cyc[0]);
  EXPECT_THROW(expand_or_throw(ns, big({-1, 0})), cycle_error);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(knuth(), Expansion{}), big({0, 0}));
  EXPECT_EQ(evaluate(knuth(), Expansion{{1, 0, 1, 1, 1}}), big({-1, 0}));
  EXPECT_EQ(evaluate(negabinary(), Expansion{{1, 1}}), big({-1}));
}

TEST(DigitSlice, Examples) {
  const auto ns = knuth();
  EXPECT_EQ(digit_slice(ns, big({-1, 0}), 1, 3), big({0, 1}));
  const auto n = big({17, -4});
  EXPECT_EQ(digit_slice(ns, n, 0), n);
  EXPECT_EQ(digit_slice(ns, big({0, 0}), 2, 5), big({0, 0}));
}

TEST(DigitalFunctions, Examples) {
  const auto ns = knuth();
  EXPECT_EQ(sum_of_digits(ns, big({0, 0})), big({0, 0}));
  EXPECT_EQ(sum_of_digits(ns, big({-1, 0})), big({4, 0}));
  for (const auto& b : gauss5_twisted().digits()) EXPECT_EQ(sum_of_digits(gauss5_twisted(), b), b);
  EXPECT_EQ(rudin_shapiro(ns, big({0, 0})), 0u);
  EXPECT_EQ(rudin_shapiro(ns, big({-1, 0})), 2u);
  EXPECT_EQ(rudin_shapiro(ns, big({3, 0})), 1u);
  EXPECT_EQ(std::get<Expansion>(expand(ns, big({3, 0}))).digits, (std::vector<std::size_t>{1, 0, 1, 1}));
}

TEST(IsFns, Examples) {
  const auto k = is_fns(knuth());
  EXPECT_TRUE(k.is_fns);
  EXPECT_FALSE(k.witness_cycle.has_value());

  const auto ns = make_system("2,-2,1", "0,0;1,0");
  const auto v = is_fns(ns);
  EXPECT_FALSE(v.is_fns);
  ASSERT_TRUE(v.witness_cycle.has_value());
  const auto& cyc = *v.witness_cycle;
  EXPECT_NE(std::find(cyc.begin(), cyc.end(), big({-1, 1})), cyc.end());

  EXPECT_TRUE(is_fns(negabinary()).is_fns);
  EXPECT_TRUE(is_fns(gauss5()).is_fns);
  EXPECT_FALSE(is_fns(gauss5_twisted()).is_fns);
}

TEST(IsFns, WitnessIsAGenuineCycle) {
  for (const auto& ns : {make_system("2,-2,1", "0,0;1,0"), gauss5_twisted(), make_system("2,1", "0;-1"),
                         make_system("3,3,1")}) {
    const auto v = is_fns(ns);
    if (v.is_fns) continue;
    const auto& cyc = *v.witness_cycle;
    ASSERT_FALSE(cyc.empty());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      EXPECT_FALSE(cyc[i].is_zero());
      auto x = cyc[i];
      ns.step(x.coords());
      EXPECT_EQ(x, cyc[(i + 1) % cyc.size()]);
    }
  }
}

TEST(IsFns, StableUnderDigitReordering) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"5,4,1", {"0,0", "1,0", "2,0", "3,0", "4,0"}},
      {"5,4,1", {"0,0", "-4,-2", "2,0", "3,0", "4,0"}},
      {"2,-2,1", {"0,0", "1,0"}},
      {"2,2,1", {"0,0", "1,0"}},
  };
  for (const auto& [poly, digits] : cases) {
    auto perm = digits;
    std::sort(perm.begin(), perm.end());
    std::optional<bool> verdict;
    do {
      std::string text;
      for (const auto& d : perm) text += (text.empty() ? "" : ";") + d;
      const bool v = is_fns(make_system(poly, text)).is_fns;
      if (verdict) {
        EXPECT_EQ(*verdict, v) << poly << " " << text;
      }
      verdict = v;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

using SystemSpec = std::pair<std::string, std::string>;  // poly, digits

class RoundTrip : public ::testing::TestWithParam<SystemSpec> {};

TEST_P(RoundTrip, ExhaustiveBox) {
  const auto ns = make_system(GetParam().first, GetParam().second);
  const std::size_t d = ns.degree();
  std::vector<std::int64_t> point(d, -5);
  std::size_t checked = 0;
  while (true) {
    const auto x = FieldElement<BigInt>(std::vector<BigInt>(point.begin(), point.end()));
    const auto r = expand(ns, x);
    if (const auto* e = std::get_if<Expansion>(&r)) {
      ASSERT_EQ(evaluate(ns, *e), x);
      if (!e->digits.empty()) {
        ASSERT_NE(e->digits.back(), ns.zero_digit());
      }
      ++checked;
    }
    std::size_t k = 0;
    while (k < d && point[k] == 5) point[k++] = -5;
    if (k == d) break;
    ++point[k];
  }
  EXPECT_GT(checked, 0u);
}

INSTANTIATE_TEST_SUITE_P(Systems, RoundTrip,
                         ::testing::Values(SystemSpec{"2,2,1", "0,0;1,0"}, SystemSpec{"5,4,1", ""},
                                           SystemSpec{"5,4,1", "0,0;-4,-2;2,0;3,0;4,0"}, SystemSpec{"2,1", "0;1"},
                                           SystemSpec{"2,-2,1", "0,0;1,0"}, SystemSpec{"3,3,3,1", ""}),
                         [](const auto& info) { return "system" + std::to_string(info.index); });

TEST(EnumerateN, Examples) {
  const auto ns = knuth();
  EXPECT_EQ(enumerate_N(ns, 0), std::vector<FieldElement<BigInt>>{big({0, 0})});
  const auto two = enumerate_N(ns, 2);
  EXPECT_EQ(two, (std::vector<FieldElement<BigInt>>{big({0, 0}), big({1, 0}), big({0, 1}), big({1, 1})}));
}

TEST(EnumerateN, InjectiveUpToTwelve) {
  const auto ns = knuth<Checked64>();
  for (std::size_t lambda = 0; lambda <= 12; ++lambda) {
    std::unordered_set<FieldElement<Checked64>, ElementHash<Checked64>> seen;
    for_each_in_N(ns, lambda, [&](std::span<const Checked64> x, std::span<const std::size_t>) {
      seen.emplace(std::vector<Checked64>(x.begin(), x.end()));
    });
    EXPECT_EQ(seen.size(), std::size_t{1} << lambda);
  }
}

TEST(EnumerateN, VisitorDigitsEvaluateToElement) {
  const auto ns = gauss5<Checked64>();
  for_each_in_N(ns, 4, [&](std::span<const Checked64> x, std::span<const std::size_t> digits) {
    ASSERT_EQ(evaluate_digits(ns, digits), FieldElement<Checked64>(std::vector<Checked64>(x.begin(), x.end())));
  });
}

TEST(EnumerateN, PartitionsCoverInOrder) {
  const auto ns = knuth<Checked64>();
  const std::size_t lambda = 9;
  const auto all = enumerate_N(ns, lambda);
  const PlaceTable<Checked64> places(ns, lambda);
  const std::size_t depth = partition_depth(2, lambda, 8);
  ASSERT_EQ(depth, 3u);
  std::vector<FieldElement<Checked64>> joined;
  for (std::uint64_t p = 0; p < 8; ++p) {
    const auto prefix = partition_prefix(2, depth, p);
    for_each_in_N(ns, places, std::span<const std::size_t>(prefix), [&](std::span<const Checked64> x, std::span<const std::size_t>) {
      joined.emplace_back(std::vector<Checked64>(x.begin(), x.end()));
    });
  }
  EXPECT_EQ(joined, all);
}

TEST(EnumerateN, RespectsCap) {
  Limits limits;
  limits.enumeration_cap = 1000;
  EXPECT_THROW(enumerate_N(knuth(), 10, limits), resource_error);
  EXPECT_NO_THROW(enumerate_N(knuth(), 9, limits));
}

TEST(SumOfDigits, ConcatenationAdditivity) {
  const auto ns = knuth<Checked64>();
  for (std::size_t kappa = 0; kappa <= 6; ++kappa) {
    const auto shift = ns.order().pow_q(kappa);
    const auto us = enumerate_N(ns, kappa);
    for (std::size_t lambda = 0; lambda <= 6; ++lambda) {
      const auto vs = enumerate_N(ns, lambda);
      for (const auto& u : us)
        for (const auto& v : vs)
          ASSERT_EQ(sum_of_digits(ns, u + ns.order().mul(shift, v)), sum_of_digits(ns, u) + sum_of_digits(ns, v));
    }
  }
}

TEST(DigitSlice, RecombinesToElement) {
  std::mt19937_64 rng(5);
  for (const auto& ns : {knuth(), gauss5()}) {
    for (int i = 0; i < 300; ++i) {
      const auto n = random_element<BigInt>(rng, 2, -1000, 1000);
      for (std::size_t nu : {0u, 1u, 3u, 7u, 40u}) {
        const auto low = digit_slice(ns, n, 0, nu);
        const auto high = digit_slice(ns, n, nu);
        ASSERT_EQ(low + ns.order().mul(ns.order().pow_q(nu), high), n);
      }
    }
  }
}

TEST(Expand, CheckedAndBigAgree) {
  const auto a = gauss5<Checked64>();
  const auto b = gauss5();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_element<BigInt>(rng, 2, -100000, 100000);
    const auto y = FieldElement<Checked64>(std::vector<Checked64>{integer_cast<Checked64>(x[0]), integer_cast<Checked64>(x[1])});
    ASSERT_EQ(std::get<Expansion>(expand(a, y)), std::get<Expansion>(expand(b, x)));
  }
}

TEST(Expand, BeyondSixtyFourBits) {
  const auto ns = knuth();
  const FieldElement<BigInt> y(std::vector<BigInt>{BigInt(1) << 90, -(BigInt(3) << 80)});
  const auto e = std::get<Expansion>(expand(ns, y));
  EXPECT_EQ(evaluate(ns, e), y);
}
