#include <picard/quadrature.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace picard;

namespace {

const cd a0 = j3_a(0).first;
const cd a2 = j3_a(2).first;

// int_0^2 a^b a' ds along the j3 chain
cd chain_moment(int b) { return (std::pow(a2, b + 1) - std::pow(a0, b + 1)) / double(b + 1); }

// int_1^X (-x)^n e^{-x} dx via the incomplete gamma recursion
double exp_moment(int n, double X) {
  double lo = 0, hi = 0;
  for (int j = 0; j <= n; ++j) {
    lo += std::pow(1.0, n - j) / std::tgamma(n - j + 1);
    hi += std::pow(X, n - j) / std::tgamma(n - j + 1);
  }
  double fact = std::tgamma(n + 1);
  return (n % 2 ? -1 : 1) * fact * (std::exp(-1.0) * lo - std::exp(-X) * hi);
}

double multinomial(int d, int a, int b) {
  return std::tgamma(d + 1) / (std::tgamma(a + 1) * std::tgamma(b + 1) * std::tgamma(d - a - b + 1));
}

}  // namespace

TEST(Gauss, TwoPointNodes) {
  GaussRule g = gauss_legendre(2);
  ASSERT_EQ(g.x.size(), 2u);
  EXPECT_NEAR(g.x[0], -1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(g.x[1], 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(g.w[0], 1, 1e-15);
}

TEST(Gauss, ExactToDegree2nMinus1) {
  for (int n : {1, 2, 3, 4, 7, 12}) {
    GaussRule g = gauss_legendre(n);
    ASSERT_EQ(static_cast<int>(g.x.size()), n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], p);
      double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "n=" << n << " p=" << p;
    }
    double s = 0;
    for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], 2 * n);
    EXPECT_GT(std::abs(s - 2.0 / (2 * n + 1)), 1e-12) << n;
  }
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(Moments, PolyUsesMultinomials) {
  Moments m(3);
  m.accumulate(cd(2), cd(1, 1), cd(0, -1));
  CPoly p = m.poly();
  // 2 * (z1 X0 + z2 X1 + X2)^3
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      cd expected = 2.0 * multinomial(3, a, b) * std::pow(cd(1, 1), a) * std::pow(cd(0, -1), b);
      EXPECT_LT(std::abs(p.coeff({a, b, 3 - a - b}) - expected), 1e-12);
    }
}

TEST(Quadrature, LAgainstClosedForm) {
  IntegrandSpec spec;
  spec.custom = [](const BallCoord& z) { return std::exp(z.z1); };
  spec.k = 2;
  spec.u_max = 32;
  QuadResult q = integrate_D(spec, true, false);
  ASSERT_EQ(q.degree, 3);
  const double X = 1 + spec.u_max / 2;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      cd m = 0.5 * chain_moment(b) * 2.0 * exp_moment(a, X);
      cd expected = multinomial(3, a, b) * m;
      EXPECT_LT(std::abs(q.L.coeff({a, b, 3 - a - b}) - expected), 1e-9 * std::max(1.0, std::abs(expected)))
          << a << "," << b;
    }
  EXPECT_TRUE(q.RL.is_zero());
}

TEST(Quadrature, RLAgainstClosedForm) {
  IntegrandSpec spec;
  spec.custom = [](const BallCoord&) { return cd(1); };
  spec.k = 3;
  QuadResult q = integrate_D(spec, false, true);
  ASSERT_EQ(q.degree, 6);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b) {
      cd m = (a % 2 ? -1.0 : 1.0) * chain_moment(b) / double(a + b + 2);
      EXPECT_LT(std::abs(q.RL.coeff({a, b, 6 - a - b}) - multinomial(6, a, b) * m), 1e-11) << a << "," << b;
    }
}

TEST(Quadrature, NonDecayingIntegrandsAreRejected) {
  IntegrandSpec spec;
  spec.f = FormKind::one;
  EXPECT_THROW(integrate_D(spec), NonDecayError);
  spec.f = FormKind::P6sq;
  EXPECT_THROW(integrate_D(spec), NonDecayError);
}

TEST(Quadrature, SpecErrors) {
  IntegrandSpec spec;
  spec.n_s = 6;
  EXPECT_THROW(integrate_D(spec), std::invalid_argument);
  spec.n_s = 33;
  EXPECT_THROW(integrate_D(spec), std::invalid_argument);
  spec.n_s = 32;
  spec.u_max = 0;
  EXPECT_THROW(integrate_D(spec), std::invalid_argument);
  IntegrandSpec custom;
  custom.custom = [](const BallCoord&) { return cd(1); };
  custom.k.reset();
  EXPECT_THROW(integrate_D(custom), std::invalid_argument);
}

TEST(Quadrature, ZeroFormGivesZero) {
  IntegrandSpec spec;
  spec.f = FormKind::zero;
  QuadResult q = integrate_D(spec);
  EXPECT_TRUE(q.total.is_zero() || max_abs(q.total) == 0);
  EXPECT_EQ(r2_residual(q.total).relative, 0);
}

TEST(Quadrature, DefaultSuitePasses) {
  Report r = verify_quadrature(IntegrandSpec{});
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.id << " " << c.detail.dump();
}
