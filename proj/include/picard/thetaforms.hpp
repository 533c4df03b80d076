#pragma once

#include "ball.hpp"
#include "cyclotomic.hpp"
#include "matgroup.hpp"
#include "polyaction.hpp"
#include "report.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef PICARD_DATA_DIR
#define PICARD_DATA_DIR "data"
#endif

namespace picard {

struct SiegelPoint {
  CMat3 omega{};
  double min_eig_im = 0;
  bool siegel = false;
};

inline double min_eigenvalue_im(const CMat3& om) {
  Eigen::Matrix3d im;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) im(i, j) = om[i][j].imag();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(im, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Omega(z1, z2) without the domain check
inline CMat3 omega_matrix(cd z1, cd z2) {
  static const cd r = Cyc::rho().embed<double>(), r2 = (Cyc::rho() * Cyc::rho()).embed<double>();
  CMat3 o{};
  o[0][0] = (2.0 * r2 * z1 + z2 * z2) / (1.0 - r);
  o[0][1] = o[1][0] = r2 * z2;
  o[0][2] = o[2][0] = (r2 * z1 - r * z2 * z2) / (r - 1.0);
  o[1][1] = -r2;
  o[1][2] = o[2][1] = z2;
  o[2][2] = (2.0 * z1 + z2 * z2) / ((1.0 - r) * r);
  return o;
}

inline SiegelPoint period_matrix(const BallCoord& p) {
  SiegelPoint s;
  s.omega = omega_matrix(p.z1, p.z2);
  s.min_eig_im = min_eigenvalue_im(s.omega);
  s.siegel = s.min_eig_im > 0;
  if (!p.interior() || !s.siegel) throw domain_error("point is not in the interior of the ball");
  return s;
}

inline const std::array<std::array<int, 3>, 3>& theta_characteristics() {
  static const std::array<std::array<int, 3>, 3> k{{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}};
  return k;
}

struct ThetaValue {
  cd value;
  double tail = 0;
};

// sum over |m| > radius of (24 m^2 + 2) exp(-2 pi lambda (m - 1/2)^2)
inline double theta_tail(double lambda, int radius) {
  double t = 0;
  for (int m = radius + 1; m <= radius + 200; ++m) {
    double term = (24.0 * m * m + 2) * std::exp(-2 * std::numbers::pi * lambda * (m - 0.5) * (m - 0.5));
    t += term;
    if (term < 1e-300) break;
  }
  return t;
}

// theta[k/2; 0](0, 2 Omega) = sum_n exp(2 pi i (n + k/2)^t Omega (n + k/2))
inline ThetaValue theta_constant(int label, const SiegelPoint& s, int radius) {
  if (label < 1 || label > 3) throw std::invalid_argument("theta label must be 1, 2 or 3");
  if (!s.siegel) throw domain_error("not a Siegel point");
  if (radius < 1) throw std::invalid_argument("radius must be positive");
  const auto& k = theta_characteristics()[label - 1];
  double re[3][3], im[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      re[i][j] = s.omega[i][j].real();
      im[i][j] = s.omega[i][j].imag();
    }
  const double two_pi = 2 * std::numbers::pi;
  // terms more than e^-60 below the n = 0 term are dropped
  double cutoff = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) cutoff += 0.25 * k[i] * im[i][j] * k[j];
  cutoff = std::min(745.0, two_pi * cutoff + 60);
  const double limit = cutoff / two_pi;
  cd sum = 0;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b) {
      // the exponent is quadratic in w = c + k2/2: A w^2 + 2 B w + C
      double v0 = a + 0.5 * k[0], v1 = b + 0.5 * k[1];
      double A = im[2][2], B = im[2][0] * v0 + im[2][1] * v1;
      double C = im[0][0] * v0 * v0 + 2 * im[0][1] * v0 * v1 + im[1][1] * v1 * v1;
      double Ar = re[2][2], Br = re[2][0] * v0 + re[2][1] * v1;
      double Cr = re[0][0] * v0 * v0 + 2 * re[0][1] * v0 * v1 + re[1][1] * v1 * v1;
      double disc = B * B - A * (C - limit);
      if (disc < 0) continue;
      double root = std::sqrt(disc);
      int lo = std::max(-radius, static_cast<int>(std::ceil((-B - root) / A - 0.5 * k[2])));
      int hi = std::min(radius, static_cast<int>(std::floor((-B + root) / A - 0.5 * k[2])));
      for (int c = lo; c <= hi; ++c) {
        double w = c + 0.5 * k[2];
        double qi = A * w * w + 2 * B * w + C;
        double qr = Ar * w * w + 2 * Br * w + Cr;
        sum += std::exp(-two_pi * qi) * cd(std::cos(two_pi * qr), std::sin(two_pi * qr));
      }
    }
  return {sum, theta_tail(s.min_eig_im, radius)};
}

struct ThetaTriple {
  std::array<cd, 3> f;
  double tail = 0;
};

inline ThetaTriple theta_triple(const BallCoord& p, int radius) {
  SiegelPoint s = period_matrix(p);
  ThetaTriple t;
  for (int l = 1; l <= 3; ++l) {
    auto v = theta_constant(l, s, radius);
    t.f[l - 1] = v.value;
    t.tail = std::max(t.tail, v.tail);
  }
  return t;
}

// sum_n exp(-2 pi i (n + delta/2)^2 rho^2), the reduced series at [0:0:1]
inline ThetaValue boundary_theta(int label, int radius) {
  const int delta = label == 2 ? 1 : 0;
  const cd r2 = (Cyc::rho() * Cyc::rho()).embed<double>();
  cd sum = 0;
  double last = 0;
  for (int n = -radius; n <= radius; ++n) {
    double x = n + 0.5 * delta;
    cd term = std::exp(cd(0, -2 * std::numbers::pi) * x * x * r2);
    sum += term;
    last = std::max(last, std::abs(term) * (std::abs(n) == radius));
  }
  return {sum, 2 * last};
}

// ---------------------------------------------------------------------------
// Runge polynomials

struct RungeEntry {
  std::string poly;
  Exponents e;
  std::string reading;
  std::string text;
  Cyc coeff;
};

struct RungeTable {
  int version = 0;
  std::vector<RungeEntry> entries;

  std::vector<const RungeEntry*> alternates(const std::string& name) const {
    std::vector<const RungeEntry*> out;
    for (const auto& e : entries)
      if (e.poly == name && e.reading == "alt") out.push_back(&e);
    return out;
  }
  std::size_t raw_count(const std::string& name) const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.poly == name && e.reading == "raw";
    return n;
  }
  // use_alt lists the exponent vectors whose alternate reading replaces the raw one
  CycPoly build(const std::string& name, const std::vector<Exponents>& use_alt = {}) const {
    int deg = name == "P6" ? 6 : name == "P12" ? 12 : -1;
    if (deg < 0) throw std::invalid_argument("unknown Runge polynomial " + name);
    CycPoly p(3, deg);
    for (const auto& e : entries) {
      if (e.poly != name) continue;
      bool wants_alt = std::find(use_alt.begin(), use_alt.end(), e.e) != use_alt.end();
      if ((e.reading == "alt") != wants_alt) continue;
      p.add_term(e.e, e.coeff);
    }
    return p;
  }
};

inline std::string default_data_dir() {
  if (const char* d = std::getenv("PICARD_DATA_DIR")) return d;
  return PICARD_DATA_DIR;
}

inline RungeTable load_runge_table(const std::string& path = default_data_dir() + "/runge_coefficients.txt") {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  RungeTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string head;
    is >> head;
    if (head == "version") {
      is >> t.version;
      continue;
    }
    RungeEntry e;
    e.poly = head;
    e.e.resize(3);
    is >> e.e[0] >> e.e[1] >> e.e[2] >> e.reading;
    std::getline(is, e.text);
    if (!is && e.text.empty()) throw std::runtime_error("malformed line " + std::to_string(lineno) + " in " + path);
    e.coeff = parse_cyc(e.text);
    t.entries.push_back(std::move(e));
  }
  if (t.version != 1) throw std::runtime_error("unsupported table version in " + path);
  return t;
}

inline const RungeTable& runge_table() {
  static const RungeTable t = load_runge_table();
  return t;
}

inline LinearSub<Cyc> matrix_sub(const Mat3& m) {
  LinearSub<Cyc> s;
  s.images.assign(3, std::vector<Cyc>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.images[i][j] = m(i, j);
  return s;
}

// q = lambda p for a nonzero lambda
inline std::optional<Cyc> poly_ratio(const CycPoly& p, const CycPoly& q) {
  if (p.size() != q.size() || p.is_zero()) return std::nullopt;
  std::optional<Cyc> lam;
  for (const auto& [e, c] : p.terms()) {
    Cyc d = q.coeff(e);
    if (d.is_zero()) return std::nullopt;
    Cyc r = d / c;
    if (!lam)
      lam = r;
    else if (!(r == *lam))
      return std::nullopt;
  }
  return lam;
}

struct InvarianceResult {
  bool pass = false;
  std::vector<std::string> scalars;
  std::vector<bool> per_generator;
};

inline InvarianceResult invariance_under(const CycPoly& p, const std::vector<std::string>& gens) {
  InvarianceResult r;
  r.pass = true;
  for (const auto& g : gens) {
    CycPoly img = substitute(p, matrix_sub(builtin3(g)));
    auto lam = poly_ratio(p, img);
    bool ok = lam && root_of_unity_index(*lam).has_value() && img.degree() == p.degree();
    r.per_generator.push_back(ok);
    r.scalars.push_back(lam ? lam->pretty() : "none");
    r.pass = r.pass && ok;
  }
  return r;
}

struct RungeSelection {
  std::string name;
  std::string reading;  // "raw" or "alt"
  std::vector<Exponents> alt_terms;
  CycPoly poly;
};

inline Report runge_invariance(const std::string& name, const RungeTable& table = runge_table()) {
  Report rep;
  rep.name = "runge_invariance_" + name;
  const std::vector<std::string> gens{"G1", "G2"};
  const std::size_t expected = name == "P6" ? 28 : 91;
  CycPoly raw = table.build(name);
  rep.add(name + "/term_count", table.raw_count(name) == expected && raw.size() == expected,
          {{"raw_entries", table.raw_count(name)}, {"nonzero_terms", raw.size()}, {"expected", expected}});
  if (name == "P6") {
    bool sym = true;
    for (const auto& [e, c] : raw.terms()) sym = sym && raw.coeff({e[1], e[0], e[2]}) == c;
    rep.add("P6/f1_f2_symmetry_raw", true, {{"informational", true}, {"holds", sym}});
  }
  LinearSub<Cyc> id = matrix_sub(Mat3::identity());
  rep.add(name + "/identity", substitute(raw, id) == raw);

  InvarianceResult r_raw = invariance_under(raw, gens);
  json draw = {{"reading", "raw"}, {"scalars", r_raw.scalars}, {"per_generator", r_raw.per_generator}};
  std::vector<Exponents> alts;
  for (const auto* e : table.alternates(name)) alts.push_back(e->e);
  json selected;
  bool pass = r_raw.pass;
  if (r_raw.pass) {
    selected = draw;
  } else if (!alts.empty()) {
    CycPoly amended = table.build(name, alts);
    InvarianceResult r_alt = invariance_under(amended, gens);
    json ts = json::array();
    for (const auto& e : alts) ts.push_back(e);
    selected = {{"reading", "alt"},
                {"alt_terms", ts},
                {"scalars", r_alt.scalars},
                {"per_generator", r_alt.per_generator},
                {"raw_reading", draw}};
    pass = r_alt.pass;
  } else {
    selected = draw;
  }
  rep.add(name + "/invariance", pass, selected);
  return rep;
}

// the reading that passes, falling back to raw
inline CycPoly runge_poly(const std::string& name, const RungeTable& table = runge_table()) {
  CycPoly raw = table.build(name);
  if (invariance_under(raw, {"G1", "G2"}).pass) return raw;
  std::vector<Exponents> alts;
  for (const auto* e : table.alternates(name)) alts.push_back(e->e);
  return table.build(name, alts);
}

// ---------------------------------------------------------------------------
// forms on the ball

inline cd eval_poly(const CPoly& p, const std::array<cd, 3>& f) {
  std::array<std::vector<cd>, 3> pw;
  for (int k = 0; k < 3; ++k) {
    pw[k].push_back(1.0);
    for (int d = 1; d <= p.degree(); ++d) pw[k].push_back(pw[k].back() * f[k]);
  }
  cd s = 0;
  for (const auto& [e, c] : p.terms()) s += c * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
  return s;
}

inline CPoly embed_poly(const CycPoly& p) {
  return p.map_coeffs<cd>([](const Cyc& c) { return c.embed<double>(); });
}

// Q = P o theta_basis, i.e. P evaluated on theta_basis * (f1, f2, f3)
inline CycPoly in_theta_basis(const CycPoly& p) { return substitute(p, matrix_sub(builtin3("theta_basis"))); }

struct FormLibrary {
  CycPoly q6, q12, cusp;
  Cyc lambda;
  CPoly q6n, q12n, cuspn;
};

// cusp = Q6^2 - lambda Q12 with the f2^12 coefficient cancelled exactly
inline const FormLibrary& forms() {
  static const FormLibrary lib = [] {
    FormLibrary l;
    l.q6 = in_theta_basis(runge_poly("P6"));
    l.q12 = in_theta_basis(runge_poly("P12"));
    CycPoly sq = l.q6 * l.q6;
    Exponents top{0, 12, 0};
    l.lambda = sq.coeff(top) / l.q12.coeff(top);
    l.cusp = sq - l.q12.scaled(l.lambda);
    l.q6n = embed_poly(l.q6);
    l.q12n = embed_poly(l.q12);
    l.cuspn = embed_poly(l.cusp);
    return l;
  }();
  return lib;
}

enum class FormKind { P6sq, P12, cusp, zero, one };

inline FormKind parse_form(const std::string& s) {
  if (s == "P6sq" || s == "P6^2") return FormKind::P6sq;
  if (s == "P12") return FormKind::P12;
  if (s == "cusp" || s == "custom") return FormKind::cusp;
  if (s == "zero") return FormKind::zero;
  if (s == "one") return FormKind::one;
  throw std::invalid_argument("unknown form " + s);
}
inline const char* form_name(FormKind f) {
  switch (f) {
    case FormKind::P6sq: return "P6sq";
    case FormKind::P12: return "P12";
    case FormKind::cusp: return "cusp";
    case FormKind::zero: return "zero";
    case FormKind::one: return "one";
  }
  return "?";
}

inline cd eval_form(FormKind f, const std::array<cd, 3>& th) {
  switch (f) {
    case FormKind::P6sq: {
      cd v = eval_poly(forms().q6n, th);
      return v * v;
    }
    case FormKind::P12: return eval_poly(forms().q12n, th);
    case FormKind::cusp: return eval_poly(forms().cuspn, th);
    case FormKind::zero: return 0;
    case FormKind::one: return 1;
  }
  return 0;
}

inline cd eval_form(FormKind f, const BallCoord& p, int radius) {
  if (f == FormKind::zero) return 0;
  if (f == FormKind::one) return 1;
  return eval_form(f, theta_triple(p, radius).f);
}

// det g / (g20 z1 + g21 z2 + g22)^3
inline cd jacobian_factor(const CMat3& g, const BallCoord& p) {
  cd d = g[2][0] * p.z1 + g[2][1] * p.z2 + g[2][2];
  return det3(g) / (d * d * d);
}

// determinant of d(g z)/dz by central differences
inline cd numeric_jacobian(const CMat3& g, const BallCoord& p, double h = 1e-5) {
  auto img = [&](cd a, cd b) {
    auto e = apply_projective(g, {a, b, 1.0});
    return std::array<cd, 2>{e[0] / e[2], e[1] / e[2]};
  };
  auto d1p = img(p.z1 + h, p.z2), d1m = img(p.z1 - h, p.z2);
  auto d2p = img(p.z1, p.z2 + h), d2m = img(p.z1, p.z2 - h);
  cd a = (d1p[0] - d1m[0]) / (2 * h), c = (d1p[1] - d1m[1]) / (2 * h);
  cd b = (d2p[0] - d2m[0]) / (2 * h), d = (d2p[1] - d2m[1]) / (2 * h);
  return a * d - b * c;
}

struct ModularityResult {
  double residual = 0;
  double relative = 0;
  int used = 0;
  int rejected = 0;
};

struct ThetaCache {
  int radius;
  std::map<std::pair<std::pair<double, double>, std::pair<double, double>>, std::array<cd, 3>> values;
  const std::array<cd, 3>& at(const BallCoord& p) {
    auto key = std::make_pair(std::make_pair(p.z1.real(), p.z1.imag()), std::make_pair(p.z2.real(), p.z2.imag()));
    auto it = values.find(key);
    if (it == values.end()) it = values.emplace(key, theta_triple(p, radius).f).first;
    return it->second;
  }
};

// Samples whose image is within this margin of the boundary are rejected.
inline constexpr double kImageMargin = 0.05;

inline ModularityResult modularity_residual(const Mat3& g, int k, FormKind f, const std::vector<BallCoord>& samples,
                                            int radius, ThetaCache* cache = nullptr) {
  ThetaCache local{radius, {}};
  ThetaCache& c = cache ? *cache : local;
  CMat3 gn = to_complex(g);
  ModularityResult r;
  for (const auto& z : samples) {
    auto w = act_ball(gn, z);
    if (!w || w->ball_value() > -kImageMargin) {
      ++r.rejected;
      continue;
    }
    cd fz = f == FormKind::one ? cd(1) : f == FormKind::zero ? cd(0) : eval_form(f, c.at(z));
    cd fw = f == FormKind::one ? cd(1) : f == FormKind::zero ? cd(0) : eval_form(f, c.at(*w));
    cd rhs = std::pow(jacobian_factor(gn, z), k) * fw;
    double diff = std::abs(fz - rhs);
    r.residual = std::max(r.residual, diff / std::max(1.0, std::abs(fz)));
    r.relative = std::max(r.relative, std::abs(fz) > 0 ? diff / std::abs(fz) : diff);
    ++r.used;
  }
  return r;
}

struct WeightFit {
  int k = 0;
  std::vector<int> ties;
  std::vector<double> residuals;  // residuals[k - k_min]
  int k_min = 1;
  double residual = 0;
  double runner_up = 0;
  double separation = 0;
};

// Every k in [k_min, k_max] whose residual is below tol is a tie; k is the smallest tie, or the
// argmin when nothing passes. When j_g is a constant unit the residual is periodic in k.
inline WeightFit weight_infer(const Mat3& g, FormKind f, const std::vector<BallCoord>& samples, int radius,
                              ThetaCache* cache = nullptr, double tol = 1e-8, int k_min = 1, int k_max = 12) {
  ThetaCache local{radius, {}};
  ThetaCache& c = cache ? *cache : local;
  WeightFit w;
  w.k_min = k_min;
  for (int k = k_min; k <= k_max; ++k) w.residuals.push_back(modularity_residual(g, k, f, samples, radius, &c).relative);
  for (int k = k_min; k <= k_max; ++k)
    if (w.residuals[k - k_min] < tol) w.ties.push_back(k);
  if (w.ties.empty()) {
    auto it = std::min_element(w.residuals.begin(), w.residuals.end());
    w.k = k_min + static_cast<int>(it - w.residuals.begin());
  } else {
    w.k = w.ties.front();
  }
  double worst_tie = 0, best_other = 1e300;
  for (int k = k_min; k <= k_max; ++k) {
    double r = w.residuals[k - k_min];
    bool tie = w.ties.empty() ? k == w.k : std::find(w.ties.begin(), w.ties.end(), k) != w.ties.end();
    if (tie)
      worst_tie = std::max(worst_tie, r);
    else
      best_other = std::min(best_other, r);
  }
  w.residual = worst_tie;
  w.runner_up = best_other;
  w.separation = best_other / std::max(worst_tie, 1e-300);
  return w;
}

// weights accepted by every generator
inline std::vector<int> common_weights(const std::vector<WeightFit>& fits) {
  if (fits.empty()) return {};
  std::vector<int> r = fits.front().ties;
  for (const auto& w : fits) {
    std::vector<int> keep;
    std::set_intersection(r.begin(), r.end(), w.ties.begin(), w.ties.end(), std::back_inserter(keep));
    r = keep;
  }
  return r;
}

struct ThetaSuite {
  std::uint64_t seed = 1;
  std::size_t n_points = 100;
  std::size_t n_modular = 5;
  int radius = 12;
  int radius_low = 8;
  double truncation_tol = 1e-10;
  double modular_tol = 1e-6;
  FormKind form = FormKind::P6sq;
};

inline Report verify_theta(const ThetaSuite& cfg = {}) {
  Report rep;
  rep.name = "theta";
  rep.meta = {{"seed", cfg.seed}, {"radius", cfg.radius}, {"radius_low", cfg.radius_low}, {"form", form_name(cfg.form)}};
  auto pts = random_interior(cfg.n_points, cfg.seed);
  double asym = 0, min_eig = 1e300;
  bool siegel = true;
  for (const auto& p : pts) {
    SiegelPoint s = period_matrix(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) asym = std::max(asym, std::abs(s.omega[i][j] - s.omega[j][i]));
    min_eig = std::min(min_eig, s.min_eig_im);
    siegel = siegel && s.siegel;
  }
  rep.add("period_matrix/symmetric", asym == 0, {{"points", pts.size()}, {"max_asymmetry", asym}});
  rep.add("period_matrix/im_positive", siegel && min_eig > 0, {{"points", pts.size()}, {"min_eigenvalue", min_eig}});

  auto mod_pts = random_interior(cfg.n_modular, cfg.seed + 10);
  double trunc = 0, tail = 0;
  for (const auto& p : mod_pts) {
    SiegelPoint s = period_matrix(p);
    for (int l = 1; l <= 3; ++l) {
      auto hi = theta_constant(l, s, cfg.radius), lo = theta_constant(l, s, cfg.radius_low);
      trunc = std::max(trunc, std::abs(hi.value - lo.value) / std::max(1.0, std::abs(hi.value)));
      tail = std::max(tail, lo.tail);
    }
  }
  rep.add("theta/truncation_stable", trunc < cfg.truncation_tol,
          {{"points", mod_pts.size()}, {"difference", trunc}, {"tail_bound_low", tail}, {"tolerance", cfg.truncation_tol}});

  ThetaCache cache{cfg.radius, {}};
  std::vector<WeightFit> fits;
  for (const std::string g : {"R1", "R", "P"}) {
    WeightFit w = weight_infer(builtin3(g), cfg.form, mod_pts, cfg.radius, &cache);
    ModularityResult m = modularity_residual(builtin3(g), w.k, cfg.form, mod_pts, cfg.radius, &cache);
    json d = {{"k", w.k},         {"ties", w.ties},           {"residual", m.relative}, {"used", m.used},
              {"rejected", m.rejected}, {"separation", w.separation}, {"tolerance", cfg.modular_tol}};
    rep.add("modularity/" + g, m.used > 0 && m.relative < cfg.modular_tol, d);
    fits.push_back(w);
  }
  std::vector<int> common = common_weights(fits);
  json per = json::object();
  per["R1"] = fits[0].ties;
  per["R"] = fits[1].ties;
  per["P"] = fits[2].ties;
  rep.add("modularity/common_weight", !common.empty(), {{"common", common}, {"ties", per}});
  return rep;
}

}  // namespace picard
