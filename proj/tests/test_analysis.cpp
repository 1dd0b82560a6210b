#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "systems.hpp"

using namespace radixion;
using namespace radixion::testing;

namespace {

PrimeKind kind_of(const NumberSystem<BigInt>& ns, std::initializer_list<std::int64_t> x) {
  return is_prime_element(ns.order(), big(x)).kind;
}

}  // namespace

TEST(Primes, KnuthClassification) {
  const auto ns = knuth();
  EXPECT_EQ(kind_of(ns, {0, 0}), PrimeKind::zero);
  EXPECT_EQ(kind_of(ns, {1, 1}), PrimeKind::unit);         // i
  EXPECT_EQ(kind_of(ns, {2, 1}), PrimeKind::prime_split);  // 1+i
  EXPECT_EQ(kind_of(ns, {3, 0}), PrimeKind::prime_inert);
  EXPECT_EQ(kind_of(ns, {2, 0}), PrimeKind::composite);
  const auto v = is_prime_element(ns.order(), big({3, 0}));
  EXPECT_EQ(v.norm, 9u);
  EXPECT_EQ(v.rational_prime, 3u);
}

TEST(Primes, RationalIntegers) {
  const auto ns = negabinary();
  EXPECT_EQ(kind_of(ns, {-7}), PrimeKind::prime_split);
  EXPECT_EQ(kind_of(ns, {1}), PrimeKind::unit);
  EXPECT_EQ(kind_of(ns, {-1}), PrimeKind::unit);
  EXPECT_EQ(kind_of(ns, {15}), PrimeKind::composite);
}

TEST(Primes, MillerRabin) {
  EXPECT_FALSE(is_rational_prime(0));
  EXPECT_FALSE(is_rational_prime(1));
  EXPECT_TRUE(is_rational_prime(2));
  EXPECT_FALSE(is_rational_prime(561));
  EXPECT_TRUE(is_rational_prime(2305843009213693951ULL));
  EXPECT_FALSE(is_rational_prime(3215031751ULL));
  std::size_t count = 0;
  for (std::uint64_t n = 0; n < 10000; ++n) count += is_rational_prime(n);
  EXPECT_EQ(count, 1229u);
}

TEST(Primes, KnuthCountsMatchGaussianOracle) {
  // tests/oracles/primes_oracle.py, classical Gaussian-prime criterion
  const std::pair<std::size_t, std::size_t> expected[] = {{1, 0}, {3, 3}, {8, 73}, {10, 234}, {12, 798}, {14, 2717}};
  for (auto [lambda, count] : expected) EXPECT_EQ(enumerate_primes(knuth(), lambda).size(), count) << lambda;
  EXPECT_EQ(enumerate_primes(knuth<Checked64>(), 12).size(), 798u);
}

TEST(Primes, KindsAgreeWithNorm) {
  const auto ns = knuth();
  for_each_in_N(ns, 10, [&](std::span<const BigInt> x, std::span<const std::size_t>) {
    const FieldElement<BigInt> e(std::vector<BigInt>(x.begin(), x.end()));
    const auto v = is_prime_element(ns.order(), e);
    const BigInt n = abs(ns.order().norm(e));
    ASSERT_EQ(BigInt(v.norm), n);
    if (v.kind == PrimeKind::prime_split) {
      ASSERT_EQ(BigInt(v.rational_prime), n);
    }
    if (v.kind == PrimeKind::prime_inert) {
      ASSERT_EQ(BigInt(v.rational_prime * v.rational_prime), n);
    }
  });
}

TEST(Primes, HigherDegreeUnsupported) {
  EXPECT_THROW(enumerate_primes(make_system("3,3,3,1"), 2), configuration_error);
}

TEST(LinearForms, ParseCoefficient) {
  EXPECT_EQ(*parse_coefficient("1/3").exact, BigRational(1, 3));
  EXPECT_EQ(*parse_coefficient("-2").exact, BigRational(-2));
  EXPECT_EQ(*parse_coefficient("0.618").exact, BigRational(618, 1000));
  EXPECT_EQ(*parse_coefficient("-0.5").exact, BigRational(-1, 2));
  const auto irr = parse_coefficient("irr:0.618");
  EXPECT_FALSE(irr.is_rational());
  EXPECT_DOUBLE_EQ(irr.value, 0.618);
  EXPECT_THROW(parse_coefficient("1/0"), parse_error);
  EXPECT_THROW(parse_coefficient("irr:x"), parse_error);
  EXPECT_THROW(parse_coefficient("0."), parse_error);
  EXPECT_THROW(parse_coefficient("1.2.3"), parse_error);
}

TEST(LinearForms, ParseArity) {
  EXPECT_EQ(LinearForm::parse("1/2,irr:0.3", 2).t.size(), 2u);
  EXPECT_THROW(LinearForm::parse("1/2", 2), parse_error);
}

TEST(Equidistribution, Condition) {
  const auto ns = knuth();
  EXPECT_FALSE(equidist_condition(ns, LinearForm::parse("1/3,1/7", 2)));
  EXPECT_TRUE(equidist_condition(ns, LinearForm::parse("irr:0.618,0", 2)));
  // Tr(q * 1) = -2, nonzero
  EXPECT_TRUE(equidist_condition(ns, LinearForm::parse("0,irr:0.618", 2)));
  EXPECT_THROW(equidist_condition(ns, LinearForm::parse("1", 1)), configuration_error);
}

TEST(Equidistribution, InvariantUnderScaling) {
  for (const auto& ns : {knuth(), gauss5(), gauss5_twisted()})
    for (const char* phi : {"1/3,1/7", "irr:0.618,0", "0,irr:0.2", "irr:0.1,irr:0.9"}) {
      const auto f = LinearForm::parse(phi, 2);
      EXPECT_EQ(equidist_condition(ns, f), equidist_condition(ns, f.scaled(BigRational(2)))) << phi;
    }
}

TEST(SumDigitConstants, Values) {
  const auto k = sumdigit_fourier_constants(knuth(), LinearForm::parse("1/3,0", 2));
  EXPECT_EQ(k.mu_q, BigInt(5));
  EXPECT_EQ(k.big_m_q, BigInt(9));
  EXPECT_TRUE(k.exact);
  // digits 0 and 1: phi(5) = 5 * (1/3) * Tr(1) = 10/3, distance 1/3
  EXPECT_NEAR(k.digit_norm_sum, 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(k.scaled, 1.0 / 9.0 / 27.0, 1e-15);

  const auto n = sumdigit_fourier_constants(negabinary(), LinearForm::parse("1", 1));
  EXPECT_EQ(n.mu_q, BigInt(3));
  EXPECT_EQ(n.big_m_q, BigInt(5));
  EXPECT_EQ(n.digit_norm_sum, 0.0);

  EXPECT_FALSE(sumdigit_fourier_constants(knuth(), LinearForm::parse("irr:0.3,0", 2)).exact);
}

TEST(Weyl, HalfCancels) {
  const auto ns = knuth();
  const auto chr = sod_character(ns, parse_coefficient("1/2"));
  for (std::size_t lambda : {1u, 5u, 10u}) {
    const auto row = weyl_sum(ns, chr, lambda, Filter::all);
    EXPECT_EQ(row.count, std::uint64_t{1} << lambda);
    EXPECT_NEAR(std::abs(row.sum), 0.0, 1e-9);
  }
}

TEST(Weyl, ZeroIsCount) {
  const auto ns = gauss5();
  const auto row = weyl_sum(ns, sod_character(ns, parse_coefficient("0")), 6, Filter::all);
  EXPECT_NEAR(row.sum.real(), 15625.0, 1e-9);
  EXPECT_NEAR(row.sum.imag(), 0.0, 1e-9);
  EXPECT_NEAR(row.normalized, 1.0, 1e-12);
}

TEST(Weyl, SodFactorizes) {
  // sum over all digit strings of e(sum theta_b) = (sum_b e(theta_b))^lambda
  for (const auto& ns : {knuth(), gauss5(), gauss5_twisted()}) {
    const auto chr = sod_character(ns, LinearForm::parse("irr:0.618,1/7", 2));
    std::complex<double> one = 0.0;
    for (double t : chr.digit_phase) one += unit_phase(t);
    for (std::size_t lambda : {3u, 6u}) {
      const auto row = weyl_sum(ns, chr, lambda, Filter::all);
      const auto expected = std::pow(one, static_cast<int>(lambda));
      EXPECT_NEAR(std::abs(row.sum - expected), 0.0, 1e-8 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(Weyl, NormalizedBounded) {
  const auto ns = knuth();
  for (const char* a : {"irr:0.618", "1/3", "0.25"})
    for (auto filter : {Filter::all, Filter::primes}) {
      const auto sod = weyl_sum(ns, sod_character(ns, parse_coefficient(a)), 10, filter);
      const auto rs = weyl_sum(ns, rs_character(parse_coefficient(a)), 10, filter);
      EXPECT_LE(sod.normalized, 1.0 + 1e-12);
      EXPECT_LE(rs.normalized, 1.0 + 1e-12);
      if (filter == Filter::primes) {
        EXPECT_EQ(sod.count, 234u);
      }
    }
}

TEST(Weyl, ThreadCountDoesNotMatter) {
  const auto ns = knuth();
  const auto chr = rs_character(parse_coefficient("irr:0.618"));
  const auto a = weyl_sum(ns, chr, 14, Filter::primes, 1, {}, 1);
  const auto b = weyl_sum(ns, chr, 14, Filter::primes, 1, {}, 3);
  EXPECT_EQ(a.count, b.count);
  EXPECT_EQ(a.sum, b.sum);
}

TEST(Weyl, RsMatchesBruteForce) {
  const auto ns = knuth();
  const double alpha = 0.37;
  const auto row = weyl_sum(ns, rs_character(FormCoefficient::irrational(alpha)), 9, Filter::all);
  std::complex<double> sum = 0.0;
  for (std::uint32_t n = 0; n < 512; ++n) {
    int pairs = 0;
    for (int j = 0; j + 1 < 9; ++j) pairs += ((n >> j) & 3u) == 3u;
    sum += unit_phase(alpha * pairs);
  }
  EXPECT_NEAR(std::abs(row.sum - sum), 0.0, 1e-9);
}

TEST(Weyl, CapEnforced) {
  Limits limits;
  limits.enumeration_cap = 1000;
  const auto ns = knuth();
  EXPECT_THROW(weyl_sum(ns, rs_character(parse_coefficient("1/3")), 10, Filter::all, 1, limits), resource_error);
}

TEST(TwistedSum, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& ns : {knuth(), gauss5_twisted()}) {
    for (const auto& chr : {sod_character(ns, LinearForm::parse("irr:0.618,1/5", 2)), rs_character(parse_coefficient("irr:0.3"))}) {
      const std::size_t lambda = 5;
      const TwistedSum<BigInt> twisted(ns, chr, lambda);
      for (int trial = 0; trial < 5; ++trial) {
        const double t[2] = {u(rng), u(rng)};
        std::complex<double> brute = 0.0;
        for_each_in_N(ns, lambda, [&](std::span<const BigInt> x, std::span<const std::size_t> digits) {
          const FieldElement<BigInt> e(std::vector<BigInt>(x.begin(), x.end()));
          double phase = character_phase(chr, digits, ns.zero_digit());
          for (std::size_t k = 0; k < 2; ++k) phase += t[k] * to_double(ns.order().trace_pow(e, k));
          brute += unit_phase(phase);
        });
        EXPECT_NEAR(std::abs(twisted(t, lambda) - brute), 0.0, 1e-8);
      }
    }
  }
}

TEST(FourierDecay, TrivialCharacterAtZero) {
  const auto ns = knuth();
  const auto rep = fourier_decay(ns, sod_character(ns, parse_coefficient("0")), 8, 0, 1);
  ASSERT_EQ(rep.rows.size(), 8u);
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(row.max_log, static_cast<double>(row.lambda), 1e-9);
    EXPECT_NEAR(row.gamma_emp, 0.0, 1e-9);
  }
}

TEST(FourierDecay, IntegerFormDoesNotDecay) {
  const auto ns = knuth();
  const auto rep = fourier_decay(ns, sod_character(ns, LinearForm::parse("1,2", 2)), 12, 50, 7);
  for (const auto& row : rep.rows) EXPECT_LE(row.gamma_emp, 2.0);
}

TEST(FourierDecay, RsDecaysAtHalf) {
  const auto ns = knuth();
  const auto rep = fourier_decay(ns, rs_character(parse_coefficient("1/2")), 14, 200, 1, 0.5);
  ASSERT_TRUE(rep.rs_gamma_rate.has_value());
  EXPECT_NEAR(*rep.rs_gamma_rate, 0.5, 1e-12);
  EXPECT_GT(rep.rows.back().gamma_emp, 0.25 * 14);
  for (const auto& row : rep.rows) EXPECT_EQ(row.samples, 201u);
}

TEST(FourierDecay, SeedDeterminesResult) {
  const auto ns = knuth();
  const auto chr = rs_character(parse_coefficient("1/2"));
  const auto a = fourier_decay(ns, chr, 10, 30, 9);
  const auto b = fourier_decay(ns, chr, 10, 30, 9);
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].max_log, b.rows[i].max_log);
}
