#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "published_values.hpp"
#include "ringcc/parallel.hpp"
#include "ringcc/ring_sums.hpp"

using namespace ringcc;
using std::numbers::pi;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Reference sums evaluated in 40-digit arithmetic.
struct SumOracle {
  std::int64_t n;
  double csc;
  double csc3;
};

constexpr SumOracle kOracles[] = {
    {3, 2.309401076758503058, 3.0792014356780040774},
    {4, 3.8284271247461900976, 6.6568542494923801952},
    {5, 5.5055276818846941528, 12.173523408577965723},
    {7, 9.219059483849946021, 30.828806367252148448},
    {8, 11.219463384836484147, 44.880136892192708142},
    {10, 15.449799591883852938, 84.727698688571236008},
    {20, 39.73809441564462685, 639.09736205851504237},
    {50, 128.52083581924444171, 9753.6521254734460151},
    {100, 301.17140951220359511, 77681.639440397944844},
    {1000, 4477.5939321602205281, 77538544.951121437443},
};

}  // namespace

TEST(CscSum, ClosedFormsForTinyRings) {
  EXPECT_DOUBLE_EQ(csc_sum(2), 1.0);
  EXPECT_DOUBLE_EQ(csc3_sum(2), 1.0);
  EXPECT_NEAR(csc_sum(3), 4.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(csc_sum(4), 1.0 + 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(csc3_sum(4), 1.0 + 4.0 * std::sqrt(2.0), 1e-14);
}

TEST(CscSum, MatchesHighPrecisionReference) {
  for (const auto& o : kOracles) {
    EXPECT_LT(rel_err(csc_sum(o.n), o.csc), 2e-15) << "N=" << o.n;
    EXPECT_LT(rel_err(csc3_sum(o.n), o.csc3), 2e-15) << "N=" << o.n;
  }
}

TEST(CscSum, LargeRingReference) {
  EXPECT_LT(rel_err(csc_sum(1'000'000), 8875207.612703152258223), 1e-13);
  EXPECT_LT(rel_err(csc3_sum(100'000), 77536359570995.25385899), 1e-13);
}

TEST(CscSum, RejectsDegenerateRing) {
  EXPECT_THROW(csc_sum(1), std::invalid_argument);
  EXPECT_THROW(csc3_sum(0), std::invalid_argument);
  EXPECT_THROW(csc_sum_asymptotic(1), std::invalid_argument);
}

TEST(CscSum, StrictlyIncreasingInN) {
  double prev1 = 0.0;
  double prev3 = 0.0;
  for (std::int64_t n = 2; n <= 400; ++n) {
    const double c1 = csc_sum(n);
    const double c3 = csc3_sum(n);
    EXPECT_GT(c1, prev1) << n;
    EXPECT_GT(c3, prev3) << n;
    prev1 = c1;
    prev3 = c3;
  }
}

TEST(CscSum, Csc3DominatesCsc) {
  for (std::int64_t n = 2; n <= 200; ++n) EXPECT_GE(csc3_sum(n), csc_sum(n)) << n;
}

TEST(CscSum, NearestNeighboursDominateCsc3) {
  for (const std::int64_t n : {50, 100, 1000, 10000}) {
    const double nearest = 2.0 / std::pow(std::sin(pi / static_cast<double>(n)), 3);
    EXPECT_GT(nearest / csc3_sum(n), 0.8) << n;
  }
}

TEST(CscSum, RingSumDispatch) {
  EXPECT_EQ(ring_sum(SumKind::Csc, 37), csc_sum(37));
  EXPECT_EQ(ring_sum(SumKind::Csc3, 37), csc3_sum(37));
}

TEST(Asymptotic, CorrectedFormTracksDirectSum) {
  EXPECT_NEAR(csc_sum_asymptotic(10), 15.4585162390896, 1e-12);
  EXPECT_LT(rel_err(csc_sum_asymptotic(1'000'000), 8875207.612703152258223), 1e-12);
  EXPECT_NEAR(csc_sum_asymptotic(1'000'000'000'000), 17670434799256.4, 1.0);
}

TEST(Asymptotic, LiteralConstantIsFarOff) {
  EXPECT_NEAR(csc_sum_asymptotic(10, AsymptoticVariant::Literal), 8.09145250739149, 1e-12);
  EXPECT_NEAR(csc_sum_asymptotic(1'000'000, AsymptoticVariant::Literal), 8138501.23953343, 1e-6);
  EXPECT_GT(rel_err(csc_sum_asymptotic(1'000'000, AsymptoticVariant::Literal), csc_sum(1'000'000)), 1e-2);
}

TEST(Asymptotic, RelativeErrorShrinksWithN) {
  double prev = 1.0;
  for (const std::int64_t n : {10, 100, 1000, 10000, 100000}) {
    const double e1 = rel_err(csc_sum_asymptotic(n), csc_sum(n));
    const double e3 = rel_err(csc3_sum_asymptotic(n), csc3_sum(n));
    EXPECT_LT(e1, prev) << n;
    EXPECT_LT(e3, 1e-3) << n;
    prev = e1;
  }
  EXPECT_LT(rel_err(csc3_sum_asymptotic(100'000), 77536359570995.25385899), 1e-12);
}

TEST(Asymptotic, ThresholdSwitchesPaths) {
  SumOptions low;
  low.asymptotic_threshold = 100;
  EXPECT_EQ(csc_sum(1000, low), csc_sum_asymptotic(1000));
  EXPECT_EQ(csc3_sum(1000, low), csc3_sum_asymptotic(1000));
  EXPECT_EQ(csc_sum(100, low), csc_sum(100));
  EXPECT_NE(csc_sum(1000, low), csc_sum(1000));
}

TEST(Asymptotic, ContinuousAcrossDefaultThreshold) {
  const std::int64_t t = kDefaultAsymptoticThreshold;
  EXPECT_LT(rel_err(csc_sum(t + 1), csc_sum(t)), 1e-6);
  EXPECT_LT(rel_err(csc3_sum(t + 1), csc3_sum(t)), 1e-6);
}

TEST(Alpha, ReferenceValues) {
  const std::pair<std::int64_t, double> ref[] = {
      {2, 3.87578458503748},  {4, 3.22506663562797},   {10, 2.62709046802292}, {20, 2.47700370420451},
      {50, 2.41939549156659}, {100, 2.40861840546827}, {1250, 2.40415858978322},
  };
  for (const auto& [n, a] : ref) EXPECT_NEAR(alpha(n), a, 1e-13) << n;
}

TEST(Alpha, DecreasesTowardTwoZeta3) {
  double prev = alpha(2);
  for (std::int64_t n = 3; n <= 3000; n += 7) {
    const double a = alpha(n);
    EXPECT_LT(a, prev) << n;
    EXPECT_GT(a, kTwoZeta3) << n;
    prev = a;
  }
  EXPECT_NEAR(alpha(1'000'000), kTwoZeta3, 1e-9);
}

TEST(Alpha, TabulatedConventionAddsOneTerm) {
  for (const std::int64_t n : {10, 20, 50, 1250}) {
    const double q = pi / static_cast<double>(n);
    EXPECT_NEAR(alpha_tabulated(n) - alpha(n), q * q * q, 1e-15) << n;
  }
  EXPECT_NEAR(alpha_tabulated(20), published::kCoefficients[1].alpha, 1e-5);
}

TEST(AlphaPrime, DoubleSumMatchesPartialZeta) {
  EXPECT_DOUBLE_EQ(alpha_prime(2), 2.0);
  EXPECT_DOUBLE_EQ(alpha_prime(4), 2.25);
  EXPECT_NEAR(alpha_prime(10), 2.0 * (1.0 + 1.0 / 8 + 1.0 / 27 + 1.0 / 64 + 1.0 / 125), 1e-15);
  EXPECT_NEAR(alpha_prime(2'000'000), kTwoZeta3, 1e-11);
  EXPECT_THROW(alpha_prime(11), std::domain_error);
  EXPECT_THROW(alpha_prime<float>(11), std::domain_error);
}

TEST(AlphaPrime, SinglePrecisionAccumulationMatchesPublishedColumn) {
  for (const auto& row : published::kCoefficients)
    EXPECT_NEAR(alpha_prime<float>(row.n), row.alpha_prime, 1e-6) << "N=" << row.n;
}

TEST(AlphaPrime, SinglePrecisionSaturates) {
  EXPECT_EQ(alpha_prime<float>(1250), alpha_prime<float>(20000));
  EXPECT_GT(std::abs(alpha_prime<float>(20000) - alpha_prime(20000)), 5e-6);
  EXPECT_EQ(alpha_prime<float>(1'000'000'000'000), alpha_prime<float>(1250));
}

TEST(AlphaPrime, TailFormulaAboveThreshold) {
  const SumOptions direct{std::int64_t{1} << 40};
  for (const std::int64_t n : {20'000'002, 40'000'000}) {
    EXPECT_NEAR(alpha_prime(n), alpha_prime(n, direct), 1e-15) << n;
  }
  EXPECT_NEAR(alpha_prime(1'000'000'000'000), kTwoZeta3, 1e-15);
  EXPECT_LE(alpha_prime(1'000'000'000'000), kTwoZeta3);
}

TEST(CoeffAB, ScalesWithMassAndRadius) {
  RingSystem s;
  s.n_particles = 10;
  s.particle_mass = 2.0;
  s.radius = 3.0;
  const auto ab = coeff_AB(s);
  EXPECT_NEAR(ab.a_coeff, 2.0 / (8.0 * 27.0) * csc3_sum(10), 1e-14);
  EXPECT_NEAR(ab.b_coeff, 2.0 / (4.0 * 9.0) * csc_sum(10), 1e-14);
}

TEST(Determinism, SumsIdenticalAcrossThreadCounts) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 2; n < 3000; n += 37) ns.push_back(n);
  auto run = [&](unsigned threads) {
    return parallel_map(ns.size(), threads, [&](std::size_t i) {
      return std::vector<double>{csc_sum(ns[i]), csc3_sum(ns[i]), alpha(ns[i])};
    });
  };
  const auto one = run(1);
  for (const unsigned t : {2u, 5u}) {
    const auto many = run(t);
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t i = 0; i < one.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(std::bit_cast<std::uint64_t>(one[i][k]), std::bit_cast<std::uint64_t>(many[i][k]));
  }
}
