// acceptance [N]: runs criterion N (1-10), or all of them, one line each
#include "dispatch.hpp"

#include <picard/chgeometry.hpp>
#include <picard/cocycle.hpp>
#include <picard/elliptic.hpp>
#include <picard/matgroup.hpp>
#include <picard/modulipaths.hpp>
#include <picard/quadrature.hpp>
#include <picard/thetaforms.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace picard;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Tally {
  std::vector<Report> reports;
  void add(Report r) { reports.push_back(std::move(r)); }
  std::vector<std::string> failing() const {
    std::vector<std::string> f;
    for (const auto& r : reports)
      for (const auto& id : r.failing()) f.push_back(r.name + ":" + id);
    return f;
  }
  std::size_t checks() const {
    std::size_t n = 0;
    for (const auto& r : reports) n += r.checks.size();
    return n;
  }
  const Check* find(const std::string& report, const std::string& id) const {
    for (const auto& r : reports)
      if (r.name == report)
        for (const auto& c : r.checks)
          if (c.id == id) return &c;
    return nullptr;
  }
};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// limit <= 0: untimed
Outcome summarize(const Tally& t, double secs, double limit, const std::string& extra = "") {
  auto f = t.failing();
  std::ostringstream os;
  os << t.checks() << " checks, " << f.size() << " failing";
  if (!f.empty()) os << " [" << join(f) << "]";
  if (limit > 0) os << "; " << secs << " s (limit " << limit << " s)";
  if (!extra.empty()) os << "; " << extra;
  return {f.empty() && (limit <= 0 || secs < limit) && t.checks() > 0, os.str()};
}

Outcome c1() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const auto& n : presentation_names()) t.add(verify_presentation(n));
  return summarize(t, seconds_since(t0), 5);
}

Outcome c2() {
  Tally t;
  t.add(verify_membership(24));
  const Check* order = t.find("membership", "M/order");
  std::string extra = order ? "order(M) = " + order->detail.value("order", json()).dump() : "order missing";
  auto o = summarize(t, 0, 0, extra);
  o.pass = o.pass && order && order->pass;
  return o;
}

Outcome c3() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  t.add(verify_theorem2({1, 2, 3, 4}));
  for (int k = 1; k <= 4; ++k) t.add(derive_R3_six(k));
  std::size_t logged = 0, relations = 0;
  for (const auto& c : t.reports.front().checks)
    if (c.id.find("/k=") != std::string::npos) {
      ++relations;
      logged += c.detail.contains("orientation");
    }
  auto o = summarize(t, seconds_since(t0), 10,
                     std::to_string(relations) + " relation blocks, orientation logged for " + std::to_string(logged));
  o.pass = o.pass && relations == 24 && logged == relations;
  return o;
}

Outcome c4() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  t.add(verify_theorem1(10));
  Report num = check_theorem1(delta_coefficients(40), 1e-8);
  std::ostringstream extra;
  for (const auto& c : num.checks) extra << c.id << " relative " << c.detail["relative"].get<double>() << " ";
  t.add(num);
  return summarize(t, seconds_since(t0), 30, extra.str() + "(tol 1e-8, N = 40, degree 10)");
}

Outcome c5() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  t.add(runge_invariance("P6"));
  t.add(runge_invariance("P12"));
  std::ostringstream extra;
  for (const auto& r : t.reports)
    for (const auto& c : r.checks) {
      if (c.id.ends_with("/term_count")) extra << c.id << " " << c.detail["nonzero_terms"] << " ";
      if (c.id.ends_with("/invariance"))
        extra << c.id << " reading " << c.detail["reading"].get<std::string>() << " scalars "
              << c.detail["scalars"].dump() << " ";
    }
  return summarize(t, seconds_since(t0), 300, extra.str());
}

Outcome c6() {
  Tally t;
  t.add(verify_geometry(1));
  std::size_t arrows = 0, reflection_points = 0;
  for (const auto& c : t.reports.front().checks)
    if (c.id.starts_with("chains/") && c.id.find("/arrow") != std::string::npos) ++arrows;
  if (const Check* r = t.find("geometry", "reflection/(r,theta,alpha) -> (r,-theta,alpha)"))
    reflection_points = r->detail.value("points", 0);
  auto o = summarize(t, 0, 0, std::to_string(arrows) + " chain arrows, reflection on " +
                                   std::to_string(reflection_points) + " points (tol 1e-12)");
  o.pass = o.pass && arrows == 10 && reflection_points >= 50;
  return o;
}

Outcome c7() {
  Tally t;
  ThetaSuite cfg;
  cfg.n_points = 100;
  cfg.n_modular = 5;
  cfg.radius_low = 8;
  cfg.radius = 12;
  cfg.truncation_tol = 1e-10;
  cfg.modular_tol = 1e-6;
  cfg.form = FormKind::P6sq;
  t.add(verify_theta(cfg));
  std::string extra;
  if (const Check* c = t.find("theta", "modularity/common_weight")) extra = "weight ties " + c->detail["ties"].dump();
  return summarize(t, 0, 0, extra);
}

Outcome c8() {
  Tally t;
  IntegrandSpec spec;
  spec.u_max = 16;
  spec.n_s = spec.n_u = 32;
  spec.radius = 10;
  t.add(verify_quadrature(spec, {4, 8, 16, 32}));
  std::ostringstream extra;
  if (const Check* c = t.find("quadrature", "R^2/residual")) extra << "R^2 relative " << c->detail["relative"].get<double>();
  if (const Check* c = t.find("quadrature", "convergence/R*L_independent"))
    extra << ", R*L spread " << c->detail["spread"].get<double>();
  return summarize(t, 0, 0, extra.str() + " (tol 1e-3, 1e-12)");
}

Outcome c9() {
  Tally t;
  t.add(verify_paths());
  // exhaustive endpoint and Upsilon check, independent of the suite
  Report ex;
  ex.name = "exhaustive";
  std::size_t n = 0, bad = 0;
  for (const auto& w : all_words(6)) {
    ++n;
    PathWord p = path_of(w);
    if (!chains(p) || p.end != s4_act(to_s4(w), fixed_base())) ++bad;
  }
  ex.add("end(T(w)) = to_s4(w).(01,01)", bad == 0, {{"words", n}, {"bad", bad}});
  t.add(ex);
  PathWord p = path_of(parse_genword("r(23) . r(24)"));
  PathWord cube = concat(concat(p, p), p);
  std::string extra = "r(23).r(24) = " + p.str() + "; cube = " + cube.str() + "; " + std::to_string(n) + " words";
  auto o = summarize(t, 0, 0, extra);
  o.pass = o.pass && is_trivial_times_ty_power(p, 2) && is_trivial_times_ty_power(cube, 6);
  return o;
}

std::string run_report_all() {
  const char* argv[] = {"picard", "report", "all", "--seed", "1", "--json"};
  std::ostringstream out, err;
  unsetenv(cli::kReportDirEnv);
  cli::run(6, argv, out, err);
  return out.str();
}

Outcome c10() {
  std::string a = run_report_all(), b = run_report_all();
  std::ostringstream os;
  os << "two runs, " << a.size() << " and " << b.size() << " bytes, " << (a == b ? "identical" : "different");
  return {!a.empty() && a == b, os.str()};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> c{
      {"exact group relations", c1},      {"membership and order of M", c2},
      {"cocycle relations k = 1..4", c3}, {"Delta period relations", c4},
      {"Runge invariance", c5},           {"geometry", c6},
      {"theta and modularity", c7},       {"quadrature", c8},
      {"paths", c9},                      {"determinism", c10}};
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > 10) {
      std::cerr << "usage: acceptance [1-10]\n";
      return 2;
    }
    which.push_back(n);
  } else {
    for (int n = 1; n <= 10; ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) {
    const auto& [name, f] = criteria()[n - 1];
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << n << " (" << name << "): " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "\n";
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
