#pragma once

#include "cocycle.hpp"
#include "polyaction.hpp"
#include "report.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace picard {

struct QSeries {
  int weight = 12;
  std::vector<mpz_class> a;  // a[n] is the coefficient of q^n, a[0] the constant term

  int terms() const { return static_cast<int>(a.size()) - 1; }
  bool cuspidal() const { return a.empty() || a[0] == 0; }
  QSeries operator+(const QSeries& o) const {
    if (o.weight != weight) throw std::invalid_argument("weight mismatch");
    QSeries r{weight, {}};
    r.a.resize(std::max(a.size(), o.a.size()));
    for (std::size_t n = 0; n < r.a.size(); ++n)
      r.a[n] = (n < a.size() ? a[n] : mpz_class(0)) + (n < o.a.size() ? o.a[n] : mpz_class(0));
    return r;
  }
  QSeries scaled(long c) const {
    QSeries r = *this;
    for (auto& x : r.a) x *= c;
    return r;
  }
};

// q * prod (1 - q^n)^24 through q^N
inline QSeries delta_coefficients(int N) {
  if (N < 1) throw std::invalid_argument("need at least one term");
  std::vector<mpz_class> p(N, 0);
  p[0] = 1;
  for (int n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (int m = N - 1; m >= n; --m) p[m] -= p[m - n];
  QSeries f{12, std::vector<mpz_class>(N + 1, 0)};
  for (int n = 1; n <= N; ++n) f.a[n] = p[n - 1];
  return f;
}

struct LValue {
  double value = 0;
  double tail = 0;
};

namespace detail {
// int_1^inf e^{-2 pi n t} t^{s-1} dt
inline double upper_moment(double s, int n) {
  double x = 2 * std::numbers::pi * n;
  return boost::math::tgamma(s, x) / std::pow(x, s);
}
inline double deligne_bound(int n, int w) { return 2 * std::sqrt(double(n)) * std::pow(double(n), (w - 1) / 2.0); }
}  // namespace detail

// Lambda(f, s) = int_0^inf f(it) t^{s-1} dt, folded at t = 1 with f(i/t) = (it)^w f(it).
inline LValue completed_L(const QSeries& f, double s) {
  if (!f.cuspidal()) throw domain_error("form is not cuspidal");
  const int w = f.weight;
  if (!(s > 0 && s < w)) throw domain_error("s outside (0, weight)");
  const double iw = (w / 2) % 2 == 0 ? 1.0 : -1.0;
  LValue r;
  for (int n = 1; n <= f.terms(); ++n) {
    if (f.a[n] == 0) continue;
    r.value += f.a[n].get_d() * (detail::upper_moment(s, n) + iw * detail::upper_moment(w - s, n));
  }
  for (int n = f.terms() + 1; n <= f.terms() + 40; ++n)
    r.tail += detail::deligne_bound(n, w) * (detail::upper_moment(s, n) + detail::upper_moment(w - s, n));
  return r;
}

// P_f = sum_j C(d,j) r_j X0^j X1^(d-j)
struct PeriodVec {
  int degree = 0;
  std::vector<std::complex<double>> r;
  double tail = 0;

  CPoly poly() const {
    CPoly p(2, degree);
    for (int j = 0; j <= degree; ++j) {
      double c = boost::math::binomial_coefficient<double>(degree, j);
      p.add_term({j, degree - j}, c * r[j]);
    }
    return p;
  }
};

// int_{i inf -> 0} f(tau) (X0 tau + X1)^d dtau with d = weight - 2, so r_j = -i^(j+1) Lambda(j+1).
inline PeriodVec period_polynomial(const QSeries& f) {
  PeriodVec v;
  v.degree = f.weight - 2;
  std::complex<double> ipow(0, 1);
  for (int j = 0; j <= v.degree; ++j) {
    LValue l = completed_L(f, j + 1);
    v.r.push_back(-ipow * l.value);
    v.tail = std::max(v.tail, l.tail);
    ipow *= std::complex<double>(0, 1);
  }
  return v;
}

inline CPoly to_complex(const CycPoly& p) {
  return p.map_coeffs<std::complex<double>>([](const Cyc& c) { return c.embed<double>(); });
}

inline LinearSub<std::complex<double>> complex_sub(const ArgMatrix& a) {
  LinearSub<std::complex<double>> s;
  for (const auto& row : a) {
    std::vector<std::complex<double>> r;
    for (const auto& x : row) r.push_back(x.embed<double>());
    s.images.push_back(r);
  }
  return s;
}

// Residual of sum_t P(args_t), normalized by the largest coefficient of P.
inline Residual relation_residual(const CPoly& p, const std::vector<ArgMatrix>& args) {
  CPoly sum(p.nvars(), p.degree());
  for (const auto& a : args) sum += substitute(p, complex_sub(a));
  Residual r;
  r.absolute = max_abs(sum);
  double scale = max_abs(p);
  r.relative = scale > 0 ? r.absolute / scale : r.absolute;
  return r;
}

inline Residual da1_residual(const PeriodVec& v) {
  return relation_residual(v.poly(), {parse_args("X0, X1", 2), parse_args("-X1, X0", 2)});
}
inline Residual da2_residual(const PeriodVec& v) {
  return relation_residual(v.poly(),
                           {parse_args("X0, X1", 2), parse_args("-X0 - X1, X0", 2), parse_args("X1, -X0 - X1", 2)});
}

inline Report check_theorem1(const QSeries& f, double tol = 1e-8) {
  Report rep;
  rep.name = "theorem1_numeric";
  PeriodVec v = period_polynomial(f);
  Residual r1 = da1_residual(v), r2 = da2_residual(v);
  json meta = {{"weight", f.weight}, {"terms", f.terms()}, {"degree", v.degree}, {"tolerance", tol},
               {"truncation_tail", v.tail}};
  json d1 = meta, d2 = meta;
  d1["absolute"] = r1.absolute;
  d1["relative"] = r1.relative;
  d2["absolute"] = r2.absolute;
  d2["relative"] = r2.relative;
  rep.add("DA1/numeric", r1.relative < tol, d1);
  rep.add("DA2/numeric", r2.relative < tol, d2);
  return rep;
}

}  // namespace picard
