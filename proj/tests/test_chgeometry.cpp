#include <picard/chgeometry.hpp>

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace picard;

namespace {

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) ADD_FAILURE() << r.name << ": " << c.id << " " << c.detail.dump();
  return r.all_pass();
}

// 2 Re(p0 conj(p2)) + |p1|^2, written out as the oracle
double form(const ProjPoint& p) { return 2 * (p[0] * std::conj(p[2])).real() + std::norm(p[1]); }

ProjPoint normalize(const ProjPoint& p) { return {p[0] / p[2], p[1] / p[2], 1.0}; }

}  // namespace

TEST(Geometry, FullSuite) { EXPECT_TRUE(all_pass(verify_geometry())); }

TEST(Geometry, IsometriesPreserveTheForm) {
  std::mt19937_64 g(5);
  std::normal_distribution<double> n;
  for (const auto& name : pu21_names()) {
    CMat3 m = to_complex(builtin3(name));
    for (int t = 0; t < 20; ++t) {
      ProjPoint p{cd(n(g), n(g)), cd(n(g), n(g)), cd(n(g), n(g))};
      ProjPoint q = apply_projective(m, p);
      EXPECT_NEAR(form(q), form(p), 1e-9 * (1 + std::abs(form(p)))) << name;
    }
  }
}

TEST(Geometry, HoroRoundTrip) {
  std::mt19937_64 g(6);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 200; ++t) {
    HoroCoord h{cd(u(g), u(g)), u(g), std::abs(u(g))};
    ProjPoint p = horo_to_proj(h);
    EXPECT_NEAR(form(p), -h.u, 1e-12);
    HoroCoord back = proj_to_horo(p);
    EXPECT_NEAR(std::abs(back.a - h.a), 0, 1e-12);
    EXPECT_NEAR(back.t, h.t, 1e-12);
    EXPECT_NEAR(back.u, h.u, 1e-12);
  }
  EXPECT_THROW(horo_to_proj({cd(0), 0, -1}), domain_error);
  EXPECT_THROW(proj_to_horo({cd(1), cd(0), cd(1)}), domain_error);
}

TEST(Geometry, GeoRoundTrip) {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> th(-1.5, 1.5), al(-1.5, 1.5), fr(-0.99, 0.99);
  for (int t = 0; t < 200; ++t) {
    double theta = th(g);
    GeoCoord c{fr(g) * std::sqrt(2 * std::cos(theta)), theta, al(g)};
    ProjPoint p = geo_to_proj(c);
    EXPECT_TRUE(on_isometric_sphere(p));
    EXPECT_LE(form(p), 1e-12);
    GeoCoord back = proj_to_geo(p);
    ProjPoint q = geo_to_proj(back);
    EXPECT_LT(proj_distance(p, q), 1e-12);
  }
  EXPECT_THROW(geo_to_proj({5, 0, 0}), domain_error);
  EXPECT_THROW(proj_to_geo({cd(-3), cd(0), cd(1)}), domain_error);
}

TEST(Geometry, ReflectionByR) {
  // R sends [z1 : z2 : 1] to [1/z1 : -z2/z1 : 1]; on |z1| = 1 this is theta -> -theta
  CMat3 r = to_complex(builtin3("R"));
  for (double theta : {-1.0, -0.3, 0.4, 1.2}) {
    GeoCoord c{0.5, theta, 0.7};
    ProjPoint img = normalize(apply_projective(r, geo_to_proj(c)));
    GeoCoord back = proj_to_geo(img);
    EXPECT_NEAR(back.theta, -theta, 1e-12);
    EXPECT_NEAR(std::abs(back.r), 0.5, 1e-12);
  }
}

TEST(Geometry, FixedPointsAreFixed) {
  for (const auto& name : {"R", "P", "R1", "R2", "R3", "A0", "Ay"}) {
    CMat3 m = to_complex(builtin3(name));
    FixedPoints fp = fixed_points(builtin3(name));
    ASSERT_FALSE(fp.sets.empty()) << name;
    for (const auto& s : fp.sets)
      for (const auto& p : s.basis) EXPECT_LT(proj_distance(apply_projective(m, p), p), 1e-9) << name;
  }
  // RP has eigenvalues outside the field, so it is handled numerically
  Mat3 rp = builtin3("R") * builtin3("P");
  FixedPoints fp = fixed_points(rp);
  EXPECT_FALSE(fp.exact);
  CMat3 m = to_complex(rp);
  for (const auto& s : fp.sets)
    for (const auto& p : s.basis) EXPECT_LT(proj_distance(apply_projective(m, p), p), 1e-9);
}

TEST(Geometry, Locations) {
  EXPECT_EQ(locate(exact_point("1", "0", "0")), Location::boundary);
  EXPECT_EQ(locate(exact_point("-1", "0", "1")), Location::interior);
  EXPECT_EQ(locate(exact_point("1", "0", "1")), Location::exterior);
  EXPECT_TRUE(proj_equal(exact_point("2", "0", "2"), exact_point("1", "0", "1")));
  EXPECT_FALSE(proj_equal(exact_point("-1", "1", "1"), exact_point("-1", "rho", "1")));
}

TEST(Geometry, J3Parameterization) {
  EXPECT_LT(std::abs(j3_a(0).first - std::polar(1.0, -std::numbers::pi / 3)), 1e-15);
  EXPECT_LT(std::abs(j3_a(1).first), 1e-15);
  EXPECT_LT(std::abs(j3_a(2).first - 1.0), 1e-15);
  EXPECT_THROW(j3_a(2.5), domain_error);
  // the two sides of D meet along j3 at u = 0
  for (double s : {0.0, 0.5, 1.5, 2.0}) {
    ProjPoint l = domain_D_param(s, 0, Side::L), rl = domain_D_param(s, 0, Side::RL);
    EXPECT_LT(proj_distance(l, rl), 1e-14);
  }
  EXPECT_THROW(domain_D_param(1, -1, Side::L), domain_error);
}
