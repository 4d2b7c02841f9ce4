#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "tristream/analysis.hpp"
#include "tristream/generators.hpp"
#include "tristream/oracle.hpp"

namespace tristream {
namespace {

// Exact fractions for recomputing the variance terms without the library.
struct Fraction {
  std::int64_t num;
  std::int64_t den = 1;

  Fraction reduced() const {
    const std::int64_t g = std::gcd(num, den);
    const std::int64_t s = den < 0 ? -1 : 1;
    return {s * num / g, s * den / g};
  }
  friend Fraction operator+(Fraction a, Fraction b) { return Fraction{a.num * b.den + b.num * a.den, a.den * b.den}.reduced(); }
  friend Fraction operator-(Fraction a, Fraction b) { return a + Fraction{-b.num, b.den}; }
  friend Fraction operator*(Fraction a, Fraction b) { return Fraction{a.num * b.num, a.den * b.den}.reduced(); }
  friend Fraction operator/(Fraction a, Fraction b) { return Fraction{a.num * b.den, a.den * b.num}.reduced(); }
  friend bool operator==(Fraction a, Fraction b) { return a.num * b.den == b.num * a.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

const GraphStats kFigureOne{11, 13, 3, 32, 1, 0.28125};

TEST(PesVariance, FigureOneTermsMatchExactArithmetic) {
  // p = 1/2, n = 4, Lambda = 32, Delta = 3, Phi = 1
  const Fraction p{1, 2}, n{4}, lambda{32}, tri{3}, phi{1}, one{1};
  const Fraction p_lambda = p * lambda;
  const Fraction q = n / p_lambda;
  const Fraction q2 = (n * n - n) / (p_lambda * p_lambda - p_lambda);
  const Fraction phi_prime = tri * tri - Fraction{2} * phi - tri;
  const Fraction unit = tri * (one - p * q) / (p * q);
  const Fraction shared = Fraction{2} * phi * (q2 - p * q * q) / (Fraction{5} * p * q * q);
  const Fraction indep = phi_prime * (q2 - q * q) / (q * q);
  ASSERT_EQ(q, (Fraction{1, 4}));
  ASSERT_EQ(q2, (Fraction{1, 20}));
  ASSERT_EQ(phi_prime, Fraction{4});
  ASSERT_EQ(unit, Fraction{21});
  ASSERT_EQ(shared, (Fraction{6, 25}));
  ASSERT_EQ(indep, (Fraction{-4, 5}));
  ASSERT_EQ(unit + shared + indep, (Fraction{511, 25}));  // 20.44

  const VarianceBreakdown v = pes_variance(kFigureOne, {0.5, 4});
  EXPECT_DOUBLE_EQ(v.q, q.value());
  EXPECT_DOUBLE_EQ(v.q_prime_sq, q2.value());
  EXPECT_DOUBLE_EQ(v.phi_prime, phi_prime.value());
  EXPECT_DOUBLE_EQ(v.term_unit, unit.value());
  EXPECT_NEAR(v.term_shared, shared.value(), 1e-12);
  EXPECT_NEAR(v.term_indep, indep.value(), 1e-12);
  EXPECT_NEAR(v.total, 20.44, 1e-12);
}

TEST(PesVariance, TriangleFreeIsZero) {
  const VarianceBreakdown v = pes_variance(GraphStats{10, 9, 0, 36, 0, 0.0}, {0.5, 4});
  EXPECT_EQ(v.total, 0.0);
  EXPECT_EQ(v.phi_prime, 0.0);
}

TEST(PesVariance, CertainSamplingHasNoUnitVariance) {
  // p = 1 and n = Lambda give pq = 1
  const VarianceBreakdown v = pes_variance(GraphStats{3, 3, 1, 3, 0, 1.0}, {1.0, 3});
  EXPECT_EQ(v.term_unit, 0.0);
}

TEST(PesVariance, DomainAndParameterErrors) {
  EXPECT_THROW(pes_variance(kFigureOne, {0.03, 1}), DomainError);  // p Lambda = 0.96
  EXPECT_THROW(pes_variance(kFigureOne, {0.5, 17}), DomainError);  // q > 1
  EXPECT_THROW(pes_variance(kFigureOne, {0.0, 4}), ParameterError);
  EXPECT_THROW(pes_variance(kFigureOne, {0.5, 0}), ParameterError);
  EXPECT_NO_THROW(pes_variance(kFigureOne, {0.5, 16}));  // q = 1 exactly
}

TEST(PesRseFull, FigureOneValue) {
  // (1 - 1/8 + (2/15)(1/4 - 1/8)) / (3/8) = (107/120) / (3/8) = 107/45
  EXPECT_NEAR(pes_rse_full(kFigureOne, {0.5, 4}), std::sqrt(107.0 / 45.0), 1e-12);
  EXPECT_NEAR(pes_rse_full(kFigureOne, {0.5, 4}), 1.54201, 1e-5);
}

TEST(PesRseFull, WithoutSharedPairsReducesToSimpleForm) {
  const GraphStats s{100, 500, 40, 900, 0, 0.1333};
  const double pq = 0.4 * (100.0 / (0.4 * 900.0));
  EXPECT_NEAR(pes_rse_full(s, {0.4, 100}), std::sqrt((1.0 - pq) / (40.0 * pq)), 1e-12);
  EXPECT_NEAR(pes_rse_full(GraphStats{3, 3, 1, 3, 0, 1.0}, {1.0, 3}), 0.0, 1e-12);
  EXPECT_THROW(pes_rse_full(GraphStats{10, 9, 0, 36, 0, 0.0}, {0.5, 4}), DomainError);
}

TEST(SimpleRse, ObservedCounts) {
  EXPECT_DOUBLE_EQ(*pes_rse_simple(25), 0.2);
  EXPECT_DOUBLE_EQ(*pes_rse_simple(1), 1.0);
  EXPECT_FALSE(pes_rse_simple(0).has_value());
  EXPECT_DOUBLE_EQ(*nes_rse_simple(25), 0.2);
  EXPECT_DOUBLE_EQ(*nes_rse_simple(100), 0.1);
  EXPECT_FALSE(nes_rse_simple(0).has_value());
  EXPECT_FALSE(rse_from_observed(0.0).has_value());
  EXPECT_DOUBLE_EQ(*rse_from_observed(6.25), 0.4);
}

TEST(ObservedRse, Examples) {
  const std::vector<double> exact(5, 7.0);
  EXPECT_EQ(observed_rse(exact, 7.0), 0.0);
  const std::vector<double> two_point = {0.0, 14.0};
  EXPECT_DOUBLE_EQ(observed_rse(two_point, 7.0), 1.0);
  const std::vector<double> one = {7.0};
  EXPECT_THROW(observed_rse(one, 7.0), DomainError);
  EXPECT_THROW(observed_rse(two_point, 0.0), DomainError);
}

TEST(CalibrateNes, Examples) {
  const NesCalibration a = calibrate_nes(0.2, 625);
  EXPECT_DOUBLE_EQ(a.p, 0.2);
  EXPECT_FALSE(a.clamped);
  const NesCalibration b = calibrate_nes(0.1, 100);
  EXPECT_EQ(b.p, 1.0);
  EXPECT_FALSE(b.clamped);  // exactly 1, not above
  const NesCalibration c = calibrate_nes(0.2, 3);
  EXPECT_EQ(c.p, 1.0);
  EXPECT_TRUE(c.clamped);
  EXPECT_THROW(calibrate_nes(0.2, 0), DomainError);
  EXPECT_THROW(calibrate_nes(0.0, 10), ParameterError);
}

TEST(CalibratePesPool, Examples) {
  EXPECT_EQ(calibrate_pes_pool(0.2, 0.05), 500u);
  EXPECT_EQ(calibrate_pes_pool(0.2, 1.0), 25u);
  EXPECT_EQ(calibrate_pes_pool(0.1, 0.28125), 356u);
  EXPECT_THROW(calibrate_pes_pool(0.2, 0.0), DomainError);
  EXPECT_THROW(calibrate_pes_pool(-0.2, 0.5), ParameterError);
}

TEST(CalibratePesPool, Monotone) {
  std::uint64_t last = 0;
  for (double target = 0.5; target >= 0.05; target -= 0.01) {
    const std::uint64_t n = calibrate_pes_pool(target, 0.1);
    ASSERT_GE(n, last);
    last = n;
  }
  last = 0;
  for (double c = 1.0; c >= 0.01; c -= 0.01) {
    const std::uint64_t n = calibrate_pes_pool(0.2, c);
    ASSERT_GE(n, last);
    last = n;
  }
}

TEST(CalibratePes, HitsTargetCount) {
  const GraphStats s = stats(erdos_renyi(300, 0.15, 11));
  for (double target : {0.1, 0.2, 0.3, 0.4}) {
    const PesCalibration c = calibrate_pes(target, s);
    EXPECT_FALSE(c.p_clamped);
    EXPECT_EQ(c.n, static_cast<std::uint64_t>(std::ceil(c.p * static_cast<double>(s.edges) - 1e-9)));
    EXPECT_NEAR(c.expected_triangles_observed, 1.0 / (target * target), 0.01 / (target * target));
  }
  const PesCalibration clamped = calibrate_pes(0.1, kFigureOne);
  EXPECT_TRUE(clamped.p_clamped);
  EXPECT_EQ(clamped.n, 32u);
  EXPECT_TRUE(clamped.n_capped);
}

TEST(NesPesRatio, Examples) {
  EXPECT_DOUBLE_EQ(nes_pes_ratio(40, 40, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(nes_pes_ratio(13, 32, 0.5), 0.8125);
  EXPECT_THROW(nes_pes_ratio(13, 32, 0.0), ParameterError);
}

// Only the total is constrained; the shared term is negative near p = 1.
TEST(PesVariance, TotalNonNegativeOnRandomGraphsAndParameters) {
  SeededRandom rng(31);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const GraphStats s = stats(erdos_renyi(10 + rng.uniform_index(50), 0.05 + 0.9 * rng.uniform01(), trial));
    for (int k = 0; k < 20; ++k) {
      const double p = 0.01 + 0.99 * rng.uniform01();
      const double p_lambda = p * static_cast<double>(s.wedges);
      if (p_lambda <= 1.0) continue;
      const std::uint64_t n = 1 + rng.uniform_index(static_cast<std::size_t>(std::floor(p_lambda)));
      const VarianceBreakdown v = pes_variance(s, {p, n});
      ASSERT_GE(v.term_unit, 0.0);
      ASSERT_GE(v.total, -1e-9 * (1.0 + v.term_unit)) << "p=" << p << " n=" << n << " wedges=" << s.wedges;
      ++checked;
    }
  }
  EXPECT_GT(checked, 3000);
}

// Scaling Delta, Lambda, Phi by k scales the unit and shared terms by k.
TEST(PesVariance, LinearTermsScaleWithGraph) {
  const GraphStats s{0, 0, 50, 5000, 40, 0.0};
  const GraphStats t{0, 0, 200, 20000, 160, 0.0};
  const VarianceBreakdown a = pes_variance(s, {0.5, 500});
  const VarianceBreakdown b = pes_variance(t, {0.5, 2000});
  EXPECT_DOUBLE_EQ(a.q, b.q);
  EXPECT_NEAR(b.term_unit, 4.0 * a.term_unit, 1e-9 * b.term_unit);
}

TEST(PesRseFull, AgreesWithExactVarianceOnLargeGraphs) {
  const GraphStats s{0, 0, 100000, 5000000, 300000, 0.0};
  const PesParams params{0.3, 60000};
  const double exact = std::sqrt(pes_variance(s, params).total) / 100000.0;
  EXPECT_NEAR(pes_rse_full(s, params) / exact, 1.0, 0.1);
}

}  // namespace
}  // namespace tristream
