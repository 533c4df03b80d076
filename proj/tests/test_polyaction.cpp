#include <picard/ball.hpp>
#include <picard/polyaction.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace picard;

namespace {

CycPoly random_poly(std::mt19937& g, int nvars, int degree) {
  CycPoly p(nvars, degree);
  std::uniform_int_distribution<int> c(-4, 4);
  std::vector<int> e(nvars, 0);
  for (int t = 0; t < 6; ++t) {
    std::fill(e.begin(), e.end(), 0);
    int left = degree;
    for (int k = 0; k + 1 < nvars; ++k) {
      int x = static_cast<int>(g() % (left + 1));
      e[k] = x;
      left -= x;
    }
    e[nvars - 1] = left;
    p.add_term(e, Cyc(c(g)) + Cyc(c(g)) * Cyc::rho());
  }
  return p;
}

std::complex<double> eval_at(const CycPoly& p, const std::vector<std::complex<double>>& x) {
  std::complex<double> s = 0;
  for (const auto& [e, c] : p.terms()) {
    std::complex<double> t = c.embed<double>();
    for (std::size_t k = 0; k < x.size(); ++k) t *= std::pow(x[k], e[k]);
    s += t;
  }
  return s;
}

}  // namespace

TEST(Polyaction, SubstitutionMatchesEvaluation) {
  // (P o L)(x) = P(L x), with the linear map applied numerically as the oracle
  std::mt19937 g(4);
  for (const auto& name : {"R", "P", "R1", "R2", "A0"}) {
    const Mat3& m = builtin3(name);
    CycPoly p = random_poly(g, 3, 6);
    LinearSub<Cyc> s = pu21_sub(m);
    CycPoly q = substitute(p, s);
    std::vector<std::complex<double>> x{{0.3, -0.2}, {1.1, 0.4}, {-0.7, 0.9}}, y(3);
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) y[k] += s.images[k][j].embed<double>() * x[j];
    EXPECT_NEAR(std::abs(eval_at(q, x) - eval_at(p, y)), 0, 1e-9 * (1 + std::abs(eval_at(q, x))));
  }
}

TEST(Polyaction, ActionIsHomomorphismUpToUnit) {
  std::mt19937 g(8);
  const std::vector<std::string> n{"R", "P", "R1", "R2", "R3"};
  for (const auto& a : n)
    for (const auto& b : n) {
      CycPoly p = random_poly(g, 3, 6);
      CycPoly lhs = act_pu21(builtin3(a) * builtin3(b), p);
      CycPoly rhs1 = act_pu21(builtin3(a), act_pu21(builtin3(b), p));
      CycPoly rhs2 = act_pu21(builtin3(b), act_pu21(builtin3(a), p));
      EXPECT_TRUE(lhs == rhs1 || lhs == rhs2) << a << " " << b;
    }
}

TEST(Polyaction, DegreeMustBeMultipleOfThree) {
  CycPoly p(3, 4);
  p.add_term({4, 0, 0}, Cyc(1));
  EXPECT_THROW(act_pu21(builtin3("R"), p), domain_error);
  EXPECT_THROW(act_pu21(builtin3("R"), p, 2), std::invalid_argument);
}

TEST(Polyaction, Psl2Action) {
  CycPoly x0 = CycPoly::variable(2, 0);
  Mat2i s = std::get<Mat2i>(builtin("S"));
  CycPoly img = act_psl2(s, x0);
  EXPECT_EQ(img.size(), 1u);
  Mat2i bad{{{2, 0}, {0, 1}}};
  EXPECT_THROW(act_psl2(bad, x0), domain_error);
}

TEST(Polyaction, PairingInvariance) {
  for (const auto& name : {"R", "P", "R1", "R2", "R3"})
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(pairing_invariant(builtin3(name), k)) << name << " k=" << k;
}

TEST(Polyaction, PolynomialArithmetic) {
  std::mt19937 g(2);
  CycPoly a = random_poly(g, 3, 3), b = random_poly(g, 3, 3), c = random_poly(g, 3, 2);
  EXPECT_EQ((a + b) * c, a * c + b * c);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.pow(2), a * a);
  CycPoly wrong(3, 2);
  a += wrong;  // zero of any shape is neutral
  wrong.add_term({1, 1, 0}, Cyc(1));
  EXPECT_THROW(a += wrong, std::invalid_argument);
  EXPECT_THROW(wrong.add_term({1, 0, 0}, Cyc(1)), std::invalid_argument);
}
