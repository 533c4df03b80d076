#include <picard/thetaforms.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace picard;

namespace {

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) ADD_FAILURE() << r.name << ": " << c.id << " " << c.detail.dump();
  return r.all_pass();
}

// full cube sum with no pruning
cd naive_theta(int label, const CMat3& om, int radius) {
  const auto& k = theta_characteristics()[label - 1];
  cd sum = 0;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b)
      for (int c = -radius; c <= radius; ++c) {
        double v[3] = {a + 0.5 * k[0], b + 0.5 * k[1], c + 0.5 * k[2]};
        cd q = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) q += v[i] * om[i][j] * v[j];
        sum += std::exp(cd(0, 2 * std::numbers::pi) * q);
      }
  return sum;
}

}  // namespace

TEST(PeriodMatrix, SymmetricWithPositiveImaginaryPart) {
  for (const auto& p : random_interior(40, 7)) {
    SiegelPoint s = period_matrix(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(s.omega[i][j], s.omega[j][i]);
    EXPECT_GT(s.min_eig_im, 0);
  }
}

TEST(PeriodMatrix, RejectsPointsOutsideTheBall) {
  EXPECT_THROW(period_matrix({cd(1, 0), cd(0, 0)}), domain_error);
  EXPECT_THROW(period_matrix({cd(-0.5, 0), cd(1, 0)}), domain_error);
}

TEST(Theta, MatchesUnprunedSum) {
  for (const auto& p : random_interior(4, 21)) {
    SiegelPoint s = period_matrix(p);
    for (int l = 1; l <= 3; ++l) {
      cd fast = theta_constant(l, s, 6).value;
      cd slow = naive_theta(l, s.omega, 6);
      EXPECT_LT(std::abs(fast - slow), 1e-12 * std::max(1.0, std::abs(slow))) << l;
    }
  }
}

TEST(Theta, RadiusIndependence) {
  for (const auto& p : random_interior(4, 22)) {
    SiegelPoint s = period_matrix(p);
    for (int l = 1; l <= 3; ++l) {
      auto lo = theta_constant(l, s, 8), hi = theta_constant(l, s, 14);
      EXPECT_LT(std::abs(lo.value - hi.value), 1e-10 * std::max(1.0, std::abs(hi.value)));
      EXPECT_LE(hi.tail, lo.tail);
    }
  }
}

TEST(Theta, BadArguments) {
  SiegelPoint s = period_matrix(random_interior(1, 1)[0]);
  EXPECT_THROW(theta_constant(0, s, 5), std::invalid_argument);
  EXPECT_THROW(theta_constant(4, s, 5), std::invalid_argument);
  EXPECT_THROW(theta_constant(1, s, 0), std::invalid_argument);
}

TEST(Theta, BoundaryAgainstProducts) {
  // q = e^{-pi sqrt 3}: label 1 is theta_4(q), label 2 is e^{i pi/4} theta_2(q)
  const double q = std::exp(-std::numbers::pi * std::sqrt(3.0));
  double t4 = 1, t2 = 2 * std::pow(q, 0.25);
  for (int n = 1; n < 40; ++n) {
    t4 *= (1 - std::pow(q, 2 * n)) * std::pow(1 - std::pow(q, 2 * n - 1), 2);
    t2 *= (1 - std::pow(q, 2 * n)) * std::pow(1 + std::pow(q, 2 * n), 2);
  }
  EXPECT_LT(std::abs(boundary_theta(1, 10).value - cd(t4)), 1e-14);
  EXPECT_LT(std::abs(boundary_theta(2, 10).value - std::polar(t2, std::numbers::pi / 4)), 1e-14);
}

TEST(Runge, Invariance) {
  EXPECT_TRUE(all_pass(runge_invariance("P6")));
  EXPECT_TRUE(all_pass(runge_invariance("P12")));
  EXPECT_THROW(runge_poly("P7"), std::invalid_argument);
}

TEST(Modularity, WeightUnderR) {
  auto pts = random_interior(5, 11);
  WeightFit w = weight_infer(builtin3("R"), FormKind::P6sq, pts, 12);
  EXPECT_EQ(w.ties, std::vector<int>{4});
  EXPECT_EQ(w.k, 4);
  EXPECT_GT(w.separation, 1e4);
}

TEST(Modularity, CommonWeightsIntersect) {
  WeightFit a, b;
  a.ties = {3, 6, 9, 12};
  b.ties = {6, 12};
  EXPECT_EQ(common_weights({a, b}), (std::vector<int>{6, 12}));
  b.ties = {4};
  EXPECT_TRUE(common_weights({a, b}).empty());
}

TEST(Forms, Parse) {
  for (auto f : {FormKind::P6sq, FormKind::P12, FormKind::cusp, FormKind::zero, FormKind::one})
    EXPECT_EQ(parse_form(form_name(f)), f);
  EXPECT_THROW(parse_form("P7"), std::invalid_argument);
}

TEST(Suite, ExpectedOutcomes) {
  Report r = verify_theta();
  for (const auto& c : r.checks) {
    if (c.id == "modularity/common_weight") continue;
    EXPECT_TRUE(c.pass) << c.id << " " << c.detail.dump();
  }
}
