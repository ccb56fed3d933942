#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include <boost/math/tools/roots.hpp>

#include "planardeg/nu.hpp"

namespace pd = planardeg;

namespace {

// Independent root: TOMS 748 on a wide bracket instead of the library's bisection.
double nu_oracle(double n_bins, double n_balls) {
  auto f = [&](double x) {
    return x * std::log(n_balls) + x - (x + 0.5) * std::log(x) - (x - 1.0) * std::log(n_bins);
  };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, 1.0, 8.0 * n_balls + 64.0, boost::math::tools::eps_tolerance<double>(50),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

TEST(FEval, HandComputedValues) {
  EXPECT_NEAR(pd::f_eval(1.0, {100, 5}), std::log(5.0) + 1.0, 1e-12);
  EXPECT_NEAR(pd::f_eval(1.0, {100, 5}), 2.6094379124341003, 1e-12);
  const double ln_million = std::log(1e6);
  EXPECT_NEAR(pd::f_eval(9.0, {1'000'000, 1'000'000}), ln_million + 9.0 - 9.5 * std::log(9.0), 1e-12);
  EXPECT_GT(pd::f_eval(9.0, {1'000'000, 1'000'000}), 0.0);
  EXPECT_LT(pd::f_eval(10.0, {1'000'000, 1'000'000}), 0.0);
}

TEST(FEval, RejectsNonPositiveX) {
  EXPECT_THROW(pd::f_eval(0.0, {10, 10}), pd::DomainError);
  EXPECT_THROW(pd::f_eval(-1.0, {10, 10}), pd::DomainError);
  EXPECT_THROW(pd::f_eval(1.0, {0, 10}), pd::DomainError);
}

TEST(FEval, PositiveOnUnitInterval) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> xs(1e-9, 1.0);
  std::uniform_int_distribution<std::uint64_t> sizes(1, 1'000'000'000);
  for (int i = 0; i < 20000; ++i) {
    const pd::ConcentrationQuery q{sizes(gen), sizes(gen)};
    EXPECT_GT(pd::f_eval(xs(gen), q), 0.0);
  }
}

TEST(Nu, MatchesIndependentRootFinder) {
  for (std::uint64_t n : {1ULL, 2ULL, 10ULL, 1000ULL, 100000ULL, 1000000ULL, 100000000ULL}) {
    for (std::uint64_t k : std::initializer_list<std::uint64_t>{1, 3, 100, n, 2 * n}) {
      EXPECT_NEAR(pd::nu(n, k), nu_oracle(static_cast<double>(n), static_cast<double>(k)), 1e-8)
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(Nu, DocumentedBrackets) {
  const double v = pd::nu(1'000'000, 1'000'000);
  EXPECT_GT(v, 9.0);
  EXPECT_LT(v, 10.0);
  const double small = pd::nu(1'000'000, 100);
  EXPECT_GT(small, 1.0);
  EXPECT_LT(small, 5.0 / 3.0);
  // Sign of f at the bracket ends is what pins the bracket.
  EXPECT_GT(pd::f_eval(1.0, {1'000'000, 100}), 0.0);
  EXPECT_LT(pd::f_eval(5.0 / 3.0, {1'000'000, 100}), 0.0);
  EXPECT_DOUBLE_EQ(pd::nu_hat(1'000'000), pd::nu(1'000'000, 1'000'000));
}

TEST(Nu, ResidualAndSignChange) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<std::uint64_t> sizes(1, 10'000'000'000ULL);
  const double tol = 1e-9;
  for (int i = 0; i < 2000; ++i) {
    const pd::ConcentrationQuery q{sizes(gen), sizes(gen)};
    const double x = pd::nu(q, tol);
    EXPECT_GT(x, 1.0);
    EXPECT_LE(std::fabs(pd::f_eval(x, q)), 10 * tol);
    EXPECT_GE(pd::f_eval(x - tol, q), 0.0);
    EXPECT_LE(pd::f_eval(x + tol, q), 0.0);
  }
}

TEST(Nu, RejectsBadTolerance) { EXPECT_THROW(pd::nu(10, 10, 0.0), pd::DomainError); }

TEST(NuProperties, IncreasingInBalls) {
  for (std::uint64_t n : {10ULL, 1000ULL, 1'000'000ULL, 100'000'000ULL}) {
    double prev = pd::nu(n, 1);
    for (std::uint64_t k = 2; k <= 300; ++k) {
      const double cur = pd::nu(n, k);
      EXPECT_GT(cur, prev) << "n=" << n << " k=" << k;
      prev = cur;
    }
    for (std::uint64_t k = 400; k <= 10 * n; k = k * 3 / 2) {
      const double cur = pd::nu(n, k);
      EXPECT_GT(cur, prev) << "n=" << n << " k=" << k;
      prev = cur;
    }
  }
}

TEST(NuProperties, NuHatIncreasing) {
  double prev = pd::nu_hat(1);
  for (std::uint64_t n = 2; n <= 3000; ++n) {
    const double cur = pd::nu_hat(n);
    EXPECT_GT(cur, prev) << n;
    prev = cur;
  }
  for (std::uint64_t n = 4000; n <= 10'000'000'000ULL; n = n * 5 / 4) {
    const double cur = pd::nu_hat(n);
    EXPECT_GT(cur, prev) << n;
    prev = cur;
  }
}

TEST(NuProperties, FewBallsStayBelowFiveThirds) {
  for (double n : {1e6, 1e8, 1e10}) {
    const auto kmax = static_cast<std::uint64_t>(std::floor(std::cbrt(n)));
    for (std::uint64_t k = 1; k <= kmax; ++k) {
      const double v = pd::nu(static_cast<std::uint64_t>(n), k);
      EXPECT_GT(v, 1.0);
      EXPECT_LE(v, 5.0 / 3.0 + 0.05) << "n=" << n << " k=" << k;
    }
  }
}

TEST(NuProperties, LogOverLogLogRatioApproachesOne) {
  double prev = 1e9;
  for (double n : {1e4, 1e6, 1e8}) {
    const double ln = std::log(n);
    const double gap = std::fabs(pd::nu_hat(static_cast<std::uint64_t>(n)) * std::log(ln) / ln - 1.0);
    EXPECT_LT(gap, prev) << n;
    prev = gap;
  }
}

TEST(NuProperties, SmallShiftInBallsIsImmaterial) {
  for (std::uint64_t n : {1'000'000ULL, 100'000'000ULL}) {
    const auto d = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    EXPECT_LE(std::fabs(pd::nu(n, n + d) - pd::nu(n, n)), 0.05) << n;
  }
}

TEST(NuProperties, JointScalingDifferenceShrinks) {
  for (double c : {0.5, 2.0}) {
    double prev = 1e9;
    for (double n : {1e4, 1e6, 1e8}) {
      const auto cn = static_cast<std::uint64_t>(std::ceil(c * n));
      const auto nn = static_cast<std::uint64_t>(n);
      const double diff = std::fabs(pd::nu(cn, cn) - pd::nu(nn, nn));
      EXPECT_LT(diff, prev) << "c=" << c << " n=" << n;
      prev = diff;
    }
  }
}

TEST(Regime, ParametersFollowTable) {
  auto p = pd::regime_parameters({pd::Regime::B_intermediate, 100000, 0, 1.5});
  EXPECT_DOUBLE_EQ(p.left, 1e5);
  EXPECT_DOUBLE_EQ(p.right, 1e5);
  p = pd::regime_parameters({pd::Regime::A_supercritical, 1'000'000, 100'000, 1.5});
  EXPECT_DOUBLE_EQ(p.left, 1e5);
  EXPECT_DOUBLE_EQ(p.right, 1e6);
  p = pd::regime_parameters({pd::Regime::C_below_n, 1'000'000, -100'000, 1.5});
  EXPECT_DOUBLE_EQ(p.left, 1e6);
  EXPECT_DOUBLE_EQ(p.right, 1e5);
  p = pd::regime_parameters({pd::Regime::D_critical_t, 1'000'000, 0, 1.5});
  EXPECT_NEAR(p.right, std::pow(1e6, 0.6), 1e-6);
  p = pd::regime_parameters({pd::Regime::E_above_n, 1'000'000, 10'000, 1.5});
  EXPECT_NEAR(p.right, 1e3, 1e-9);
}

TEST(Regime, InconsistentSpecsRejected) {
  EXPECT_THROW(pd::regime_parameters({pd::Regime::A_supercritical, 100, 0, 1.5}), pd::ValidationError);
  EXPECT_THROW(pd::regime_parameters({pd::Regime::C_below_n, 100, 5, 1.5}), pd::ValidationError);
  EXPECT_THROW(pd::regime_parameters({pd::Regime::E_above_n, 100, -5, 1.5}), pd::ValidationError);
  EXPECT_THROW(pd::regime_parameters({pd::Regime::B_intermediate, 100, 0, 2.5}), pd::ValidationError);
  EXPECT_THROW(pd::parse_regime("F"), pd::ValidationError);
}

TEST(PredictedInterval, SparseWindow) {
  const auto p = pd::predicted_interval_sparse(1'000'000, 500'000, 1.0 / 3.0);
  const double v = nu_oracle(1e6, 1e6);
  EXPECT_EQ(p.delta_star, static_cast<std::int64_t>(std::floor(v - 1.0 / 3.0)));
  EXPECT_EQ(p.lo, static_cast<std::int64_t>(std::floor(v - 1.0 / 3.0)));
  EXPECT_EQ(p.hi, static_cast<std::int64_t>(std::floor(v + 1.0 / 3.0)));
  EXPECT_LE(p.hi - p.lo, 1);

  const auto zero = pd::predicted_interval_sparse(1'000'000, 500'000, 0.0);
  EXPECT_EQ(zero.lo, zero.hi);
  EXPECT_EQ(zero.lo, static_cast<std::int64_t>(std::floor(v)));
}

TEST(PredictedInterval, WidthAtMostOneAwayFromIntegers) {
  for (std::uint64_t n = 100; n < 100'000'000; n = n * 3 / 2) {
    for (double eps : {0.1, 0.25, 1.0 / 3.0}) {
      const double v = pd::nu(n, n);
      if (std::fabs(v - std::round(v)) <= eps) continue;
      const auto p = pd::predicted_interval_sparse(n, n / 2, eps);
      EXPECT_LE(p.hi - p.lo, 1);
      EXPECT_LE(p.lo, p.hi);
    }
  }
}

TEST(PredictedTwoPoint, RegimeBUsesNOnly) {
  const std::uint64_t n = 1'000'000;
  const auto expected = static_cast<std::int64_t>(std::floor(nu_oracle(1e6, 1e6) + 2.0 / 3.0));
  for (double d : {1.1, 1.5, 1.9}) {
    EXPECT_EQ(pd::predicted_two_point({pd::Regime::B_intermediate, n, 0, d}), expected);
  }
  EXPECT_EQ(pd::predicted_two_point({pd::Regime::A_supercritical, n, static_cast<std::int64_t>(n), 1.5}), expected);
}

TEST(PredictedTwoPoint, RegimeCCombinesBothScales) {
  const double left = nu_oracle(1e6, 1e6);
  const double right = nu_oracle(1e5, 1e5);
  const auto expected = std::max(static_cast<std::int64_t>(std::floor(left + 2.0 / 3.0)),
                                 static_cast<std::int64_t>(std::floor(right - 1.0 / 3.0)));
  EXPECT_EQ(pd::predicted_two_point({pd::Regime::C_below_n, 1'000'000, -100'000, 1.5}), expected);
}
