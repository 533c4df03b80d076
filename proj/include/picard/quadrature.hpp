#pragma once

#include "ball.hpp"
#include "chgeometry.hpp"
#include "polyaction.hpp"
#include "report.hpp"
#include "thetaforms.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace picard {

struct IntegrandSpec {
  FormKind f = FormKind::cusp;
  std::function<cd(const BallCoord&)> custom;  // used instead of f when set
  std::optional<int> k = 4;                    // empty: inferred from R
  int radius = 10;
  double u_max = 16;
  int n_s = 32;
  int n_u = 32;
  int n_v = 0;  // R*L panels in v = 2/(2+u); 0 means n_u
  int order = 4;             // Gauss points per panel direction
  double direct_min_eig = 0.05;  // below this, R*L values come from the weight law under R
};

struct NonDecayError : domain_error {
  using domain_error::domain_error;
};

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

inline GaussRule gauss_legendre(int n) {
  if (n < 1 || n > 40) throw std::invalid_argument("Gauss order must be in [1, 40]");
  GaussRule g;
  auto zeros = boost::math::legendre_p_zeros<double>(n);
  for (double z : zeros) {
    double d = boost::math::legendre_p_prime(n, z);
    double w = 2 / ((1 - z * z) * d * d);
    if (z == 0) {
      g.x.push_back(0);
      g.w.push_back(w);
      continue;
    }
    g.x.push_back(-z);
    g.w.push_back(w);
    g.x.push_back(z);
    g.w.push_back(w);
  }
  std::vector<std::size_t> idx(g.x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return g.x[a] < g.x[b]; });
  GaussRule s;
  for (auto i : idx) {
    s.x.push_back(g.x[i]);
    s.w.push_back(g.w[i]);
  }
  return s;
}

// Moments m[a][b] of f z1^a z2^b dz1^dz2 for a + b <= degree.
struct Moments {
  int degree = 0;
  std::vector<cd> m;

  Moments() = default;
  explicit Moments(int d) : degree(d), m((d + 1) * (d + 1)) {}
  cd& at(int a, int b) { return m[a * (degree + 1) + b]; }
  cd at(int a, int b) const { return m[a * (degree + 1) + b]; }
  Moments& operator+=(const Moments& o) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += o.m[i];
    return *this;
  }
  void accumulate(cd weight, cd z1, cd z2) {
    cd p1 = weight;
    for (int a = 0; a <= degree; ++a) {
      cd p = p1;
      for (int b = 0; a + b <= degree; ++b) {
        at(a, b) += p;
        p *= z2;
      }
      p1 *= z1;
    }
  }
  // sum over a+b+c = d of multinomial * m[a][b] X0^a X1^b X2^c
  CPoly poly() const {
    CPoly p(3, degree);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) {
        int c = degree - a - b;
        double mult = boost::math::binomial_coefficient<double>(degree, a) *
                      boost::math::binomial_coefficient<double>(degree - a, b);
        cd v = at(a, b) * mult;
        if (v != cd{}) p.add_term({a, b, c}, v);
      }
    return p;
  }
};

struct QuadResult {
  int k = 0;
  int degree = 0;
  CPoly total, L, RL;
  std::vector<double> ring_u;        // upper u of each L panel ring
  std::vector<Moments> ring_cumulative;  // L moments integrated up to ring_u
  double tail_estimate = 0;
  double decay_rate = 0;
  int direct = 0;
  int via_weight_law = 0;
  json diagnostics = json::object();
};

namespace detail {

inline int resolve_weight(const IntegrandSpec& spec) {
  if (spec.k) return *spec.k;
  if (spec.custom) throw std::invalid_argument("custom integrands need an explicit weight");
  if (spec.f == FormKind::zero || spec.f == FormKind::one) return 1;
  auto pts = random_interior(5, 11);
  return weight_infer(builtin3("R"), spec.f, pts, 12).k;
}

inline cd evaluate(const IntegrandSpec& spec, const BallCoord& p) {
  if (spec.custom) return spec.custom(p);
  return eval_form(spec.f, p, spec.radius);
}

// |f| along L at s = 1/2; the rate is -d log|f| / du between u_max/2 and u_max
inline double decay_rate(const IntegrandSpec& spec, double* ratio) {
  cd a = j3_a(0.5).first;
  double u1 = spec.u_max / 2, u2 = spec.u_max;
  double f1 = std::abs(evaluate(spec, {cd(-1 - u1 / 2), a})), f2 = std::abs(evaluate(spec, {cd(-1 - u2 / 2), a}));
  double f0 = std::abs(evaluate(spec, {cd(-1.0), a}));
  *ratio = f0 > 0 ? f2 / f0 : 0;
  if (f1 == 0 || f2 == 0) return std::numeric_limits<double>::infinity();
  return -std::log(f2 / f1) / (u2 - u1);
}

}  // namespace detail

inline void check_spec(const IntegrandSpec& spec) {
  if (!(spec.u_max > 0)) throw std::invalid_argument("u_max must be positive");
  if (spec.n_s < 8 || spec.n_u < 8) throw std::invalid_argument("grid must be at least 8x8");
  if (spec.n_s % 2) throw std::invalid_argument("n_s must be even (one half per leg of j3)");
}

// D = L - R_*L with L oriented by ds^du. On L, z = (-1 - u/2, a(s)) and dz1^dz2 = a'/2 ds du.
// The R-image is parameterized by v = 2/(2+u) in (0,1], z = (-v, a v), contributing a' v ds dv.
inline QuadResult integrate_D(const IntegrandSpec& spec, bool with_L = true, bool with_RL = true) {
  check_spec(spec);
  QuadResult r;
  r.k = detail::resolve_weight(spec);
  r.degree = 3 * r.k - 3;
  if (r.degree < 0) throw std::invalid_argument("weight must be at least 1");
  const bool zero = !spec.custom && spec.f == FormKind::zero;
  if (!zero && with_L) {
    double ratio = 0;
    r.decay_rate = detail::decay_rate(spec, &ratio);
    r.diagnostics["decay_rate"] = r.decay_rate;
    r.diagnostics["decay_ratio_u_max_vs_0"] = ratio;
    if (!(ratio < 1e-6))
      throw NonDecayError("integrand does not decay toward the cusp along L: |f(u_max)|/|f(0)| = " +
                          std::to_string(ratio));
  }
  const GaussRule g = gauss_legendre(spec.order);
  const CMat3 R = to_complex(builtin3("R"));
  Moments mL(r.degree), mRL(r.degree);

  // s nodes: n_s/2 panels per leg, legs split at s = 1
  std::vector<double> s_nodes, s_weights;
  const double hs = 2.0 / spec.n_s;
  for (int i = 0; i < spec.n_s; ++i)
    for (std::size_t q = 0; q < g.x.size(); ++q) {
      s_nodes.push_back(hs * (i + 0.5 * (1 + g.x[q])));
      s_weights.push_back(0.5 * hs * g.w[q]);
    }

  if (with_L && !zero) {
    const double hu = spec.u_max / spec.n_u;
    for (int j = 0; j < spec.n_u; ++j) {
      Moments ring(r.degree);
      for (std::size_t q = 0; q < g.x.size(); ++q) {
        double u = hu * (j + 0.5 * (1 + g.x[q]));
        double wu = 0.5 * hu * g.w[q];
        for (std::size_t i = 0; i < s_nodes.size(); ++i) {
          auto [a, da] = j3_a(s_nodes[i]);
          BallCoord z{cd(-1 - u / 2), a};
          cd f = detail::evaluate(spec, z);
          ring.accumulate(f * da * 0.5 * (wu * s_weights[i]), z.z1, z.z2);
        }
      }
      mL += ring;
      r.ring_u.push_back(hu * (j + 1));
      r.ring_cumulative.push_back(mL);
    }
    if (r.ring_cumulative.size() >= 2) {
      const auto& last = r.ring_cumulative.back();
      const auto& prev = r.ring_cumulative[r.ring_cumulative.size() - 2];
      double d = 0;
      for (std::size_t i = 0; i < last.m.size(); ++i) d = std::max(d, std::abs(last.m[i] - prev.m[i]));
      r.tail_estimate = d;
    }
  }

  if (with_RL && !zero) {
    const int n_v = spec.n_v > 0 ? spec.n_v : spec.n_u;
    const double hv = 1.0 / n_v;
    for (int j = 0; j < n_v; ++j)
      for (std::size_t q = 0; q < g.x.size(); ++q) {
        double v = hv * (j + 0.5 * (1 + g.x[q]));
        double wv = 0.5 * hv * g.w[q];
        for (std::size_t i = 0; i < s_nodes.size(); ++i) {
          auto [a, da] = j3_a(s_nodes[i]);
          BallCoord z{cd(-v), a * v};
          cd f;
          bool direct = spec.custom || period_matrix(z).min_eig_im >= spec.direct_min_eig;
          if (direct) {
            f = detail::evaluate(spec, z);
            ++r.direct;
          } else {
            // f(z) = j_R(z)^k f(R z) with j_R(z) = det R / z1^3
            auto w = act_ball(R, z);
            f = std::pow(det3(R) / (z.z1 * z.z1 * z.z1), r.k) * detail::evaluate(spec, *w);
            ++r.via_weight_law;
          }
          mRL.accumulate(f * da * v * (wv * s_weights[i]), z.z1, z.z2);
        }
      }
  }
  r.L = mL.poly();
  r.RL = mRL.poly();
  r.total = r.L + r.RL;
  if (r.total.is_zero()) r.total = CPoly(3, r.degree);
  r.diagnostics["R*L_direct_points"] = r.direct;
  r.diagnostics["R*L_weight_law_points"] = r.via_weight_law;
  r.diagnostics["tail_estimate"] = r.tail_estimate;
  return r;
}

inline LinearSub<cd> r_args() { return {{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}}, cd(1)}; }

// relative max-norm of P(X0,X1,X2) + P(X2,-X1,X0); a zero polynomial counts as an exact pass
inline Residual r2_residual(const CPoly& p) {
  Residual res;
  if (p.is_zero()) return res;
  CPoly s = p + substitute(p, r_args());
  res.absolute = max_abs(s);
  res.relative = res.absolute / max_abs(p);
  return res;
}

// the R*L part against the L part carried over by the R substitution, with the orientation sign
inline Residual rl_transport_residual(const QuadResult& q) {
  Residual res;
  if (q.RL.is_zero() && q.L.is_zero()) return res;
  CPoly s = q.RL + substitute(q.L, r_args());
  res.absolute = max_abs(s);
  res.relative = res.absolute / std::max(max_abs(q.RL), max_abs(q.L));
  return res;
}

struct ConvergenceRow {
  double u_max = 0;
  CPoly L;
  double diff_prev = 0;  // max coefficient change against the previous row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool decreasing = false;
  double rl_spread = 0;  // R*L at the smallest vs largest u_max
  double l_first_last = 0;
  json to_json() const;
};

// One L pass at the largest u_max with a fixed panel width; every listed u_max must land on a
// panel boundary, so the rows differ only by truncation.
inline ConvergenceTable convergence_study(IntegrandSpec spec, const std::vector<double>& u_list) {
  if (u_list.empty()) throw std::invalid_argument("empty u_max list");
  for (std::size_t i = 1; i < u_list.size(); ++i)
    if (!(u_list[i] > u_list[i - 1])) throw std::invalid_argument("u_max list must increase");
  const double width = spec.u_max / spec.n_u;
  if (spec.n_v <= 0) spec.n_v = spec.n_u;
  spec.u_max = u_list.back();
  spec.n_u = static_cast<int>(std::lround(spec.u_max / width));
  QuadResult full = integrate_D(spec, true, false);
  IntegrandSpec small = spec;
  small.u_max = u_list.front();
  small.n_u = std::max(8, static_cast<int>(std::lround(small.u_max / width)));
  QuadResult rl_small = integrate_D(small, false, true);
  QuadResult rl_large = integrate_D(spec, false, true);

  ConvergenceTable t;
  for (double u : u_list) {
    std::size_t idx = full.ring_u.size();
    for (std::size_t i = 0; i < full.ring_u.size(); ++i)
      if (std::abs(full.ring_u[i] - u) < 1e-9 * u) idx = i;
    if (idx == full.ring_u.size()) throw std::invalid_argument("u_max not on a panel boundary");
    ConvergenceRow row{u, full.ring_cumulative[idx].poly(), 0};
    if (!t.rows.empty()) row.diff_prev = max_abs(row.L - t.rows.back().L);
    t.rows.push_back(row);
  }
  t.decreasing = t.rows.size() >= 3;
  for (std::size_t i = 2; i < t.rows.size(); ++i) t.decreasing = t.decreasing && t.rows[i].diff_prev < t.rows[i - 1].diff_prev;
  t.rl_spread = max_abs(rl_small.RL - rl_large.RL);
  t.l_first_last = max_abs(t.rows.front().L - t.rows.back().L);
  return t;
}

inline json ConvergenceTable::to_json() const {
  json j;
  json rs = json::array();
  for (const auto& r : rows) rs.push_back({{"u_max", r.u_max}, {"max_coefficient", max_abs(r.L)}, {"diff_prev", r.diff_prev}});
  j["rows"] = rs;
  j["decreasing"] = decreasing;
  j["R*L_spread"] = rl_spread;
  j["L_first_vs_last"] = l_first_last;
  return j;
}

inline json poly_json(const CPoly& p) {
  json j = json::array();
  for (const auto& [e, c] : p.terms()) j.push_back({{"exponents", e}, {"re", c.real()}, {"im", c.imag()}});
  return j;
}

inline Report verify_quadrature(const IntegrandSpec& spec, const std::vector<double>& u_list = {4, 8, 16, 32}) {
  Report rep;
  rep.name = "quadrature";
  QuadResult q = integrate_D(spec);
  Residual r2 = r2_residual(q.total), tr = rl_transport_residual(q);
  json base{{"form", spec.custom ? "custom" : form_name(spec.f)}, {"k", q.k},     {"u_max", spec.u_max},
            {"grid", {spec.n_s, spec.n_u}},                         {"order", spec.order}, {"radius", spec.radius}};
  json d = base;
  d["absolute"] = r2.absolute;
  d["relative"] = r2.relative;
  d["max_coefficient"] = max_abs(q.total);
  d["diagnostics"] = q.diagnostics;
  rep.add("R^2/residual", r2.relative < 1e-3, d);
  rep.add("R*L/transport", tr.relative < 1e-3, {{"relative", tr.relative}});
  rep.add("terms", static_cast<int>(q.total.size()) <= (q.degree + 1) * (q.degree + 2) / 2,
          {{"terms", q.total.size()}, {"expected_at_most", (q.degree + 1) * (q.degree + 2) / 2}});
  ConvergenceTable t = convergence_study(spec, u_list);
  rep.add("convergence/decreasing", t.decreasing, t.to_json());
  rep.add("convergence/R*L_independent", t.rl_spread < 1e-12, {{"spread", t.rl_spread}});
  rep.add("convergence/truncation_matters", t.l_first_last > 1e-15 * max_abs(t.rows.back().L), {{"L_first_vs_last", t.l_first_last}});
  rep.meta["polynomial"] = poly_json(q.total);
  return rep;
}

}  // namespace picard
