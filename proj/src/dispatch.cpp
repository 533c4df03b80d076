#include "dispatch.hpp"

#include <picard/chgeometry.hpp>
#include <picard/cocycle.hpp>
#include <picard/elliptic.hpp>
#include <picard/matgroup.hpp>
#include <picard/modulipaths.hpp>
#include <picard/quadrature.hpp>
#include <picard/thetaforms.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace picard::cli {

namespace {

Report guarded(const std::string& name, const std::function<Report()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    Report r;
    r.name = name;
    r.add(name + "/completed", false, {{"error", e.what()}});
    return r;
  }
}

std::vector<Report> presentations() {
  std::vector<Report> out;
  for (const auto& n : presentation_names()) out.push_back(guarded(n, [&] { return verify_presentation(n); }));
  out.push_back(guarded("upsilon", [] { return verify_upsilon(); }));
  out.push_back(guarded("membership", [] { return verify_membership(); }));
  return out;
}

std::vector<Report> theorem2(const std::vector<int>& ks) {
  std::vector<Report> out{guarded("theorem2", [&] { return verify_theorem2(ks); })};
  for (int k : ks) {
    Report r = guarded("R3^6", [&] { return derive_R3_six(k); });
    r.name += "_k" + std::to_string(k);
    out.push_back(r);
  }
  return out;
}

std::vector<Report> theorem1(int terms, int degree, double tol) {
  return {guarded("theorem1", [&] { return verify_theorem1(degree); }),
          guarded("theorem1_numeric", [&] { return check_theorem1(delta_coefficients(terms), tol); })};
}

std::vector<Report> runge() {
  return {guarded("runge_invariance_P6", [] { return runge_invariance("P6"); }),
          guarded("runge_invariance_P12", [] { return runge_invariance("P12"); })};
}

std::vector<Report> quad(const IntegrandSpec& spec, const std::vector<double>& u_list) {
  return {guarded("quadrature", [&] { return verify_quadrature(spec, u_list); })};
}

std::vector<std::string> failing_ids(const std::vector<Report>& reports) {
  std::vector<std::string> f;
  for (const auto& r : reports)
    for (const auto& id : r.failing()) f.push_back(r.name + ":" + id);
  return f;
}

std::complex<double> parse_complex(const std::string& s) {
  std::istringstream is(s);
  double re = 0, im = 0;
  char comma = 0;
  is >> re;
  if (!is) throw std::invalid_argument("expected re,im but got " + s);
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw std::invalid_argument("expected re,im but got " + s);
  }
  if (is >> std::ws; !is.eof()) throw std::invalid_argument("expected re,im but got " + s);
  return {re, im};
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::string file_stem(const std::string& command) {
  std::string s;
  for (char c : command) s += (c == ' ' || c == '-') ? '_' : c;
  return s;
}

void emit(const RunConfig& cfg, const json& doc, std::ostream& out, std::ostream& err) {
  std::string text = doc.dump(2) + "\n";
  std::string path = cfg.out;
  if (path.empty())
    if (const char* dir = std::getenv(kReportDirEnv); dir && *dir)
      path = (std::filesystem::path(dir) / (file_stem(cfg.command) + ".json")).string();
  if (!path.empty()) {
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) err << "cannot write " << path << "\n";
  }
  if (cfg.json_stdout) {
    out << text;
    return;
  }
  if (doc.contains("reports")) {
    for (const auto& r : doc["reports"])
      for (const auto& c : r["checks"])
        out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << r["report"].get<std::string>() << ":"
            << c["id"].get<std::string>() << "\n";
    out << (doc["pass"].get<bool>() ? "all checks passed" : "failing checks: " + std::to_string(doc["failing"].size()))
        << "\n";
  } else {
    out << text;
  }
}

}  // namespace

json document(const RunConfig& cfg, const json& config, const std::vector<Report>& reports) {
  json d;
  d["schema"] = kSchema;
  d["command"] = cfg.command;
  d["seed"] = cfg.seed;
  d["config"] = config;
  auto failing = failing_ids(reports);
  d["pass"] = failing.empty();
  d["failing"] = failing;
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  d["reports"] = arr;
  return d;
}

json report_all(std::uint64_t seed) {
  std::vector<Report> all;
  auto add = [&](std::vector<Report> rs) {
    for (auto& r : rs) all.push_back(std::move(r));
  };
  add(presentations());
  add(theorem2({1, 2, 3, 4}));
  add(theorem1(40, 10, 1e-8));
  add(runge());
  all.push_back(guarded("geometry", [&] { return verify_geometry(seed); }));
  ThetaSuite ts;
  ts.seed = seed;
  all.push_back(guarded("theta", [&] { return verify_theta(ts); }));
  add(quad(IntegrandSpec{}, {4, 8, 16, 32}));
  all.push_back(guarded("paths", [] { return verify_paths(); }));
  RunConfig cfg{"report all", seed, {}, true};
  return document(cfg, {{"theorem2_k", {1, 2, 3, 4}}, {"theorem1_terms", 40}, {"theta_radius", ts.radius}}, all);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numerical checks for Picard modular forms on the complex 2-ball", "picard"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* c) {
    c->add_option("--out,-o", cfg.out, std::string("report file (default: $") + kReportDirEnv + "/<command>.json)");
    c->add_flag("--json", cfg.json_stdout, "print the JSON report instead of one line per check");
  };

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  auto* v_pres = verify->add_subcommand("presentations", "group relations and matrix membership");
  std::vector<int> ks{1, 2, 3, 4};
  auto* v_t2 = verify->add_subcommand("theorem2", "cocycle relations for the Picard period polynomials");
  v_t2->add_option("--k", ks, "weights to check")->check(CLI::Range(1, 4))->expected(1, 4);
  int terms = 40, degree = 10;
  double tol1 = 1e-8;
  auto* v_t1 = verify->add_subcommand("theorem1", "Eichler-Shimura relations for Delta");
  v_t1->add_option("--terms", terms, "Fourier coefficients of Delta")->check(CLI::Range(1, 400));
  v_t1->add_option("--degree", degree, "degree for the symbolic orbit check")->check(CLI::Range(0, 40));
  v_t1->add_option("--tol", tol1, "relative residual tolerance")->check(CLI::PositiveNumber);
  auto* v_geo = verify->add_subcommand("geometry", "fixed points, chains, charts and reflections");
  v_geo->add_option("--seed", cfg.seed, "seed for the random interior points");
  auto* v_runge = verify->add_subcommand("runge-invariance", "exact invariance of P6 and P12");
  ThetaSuite ts;
  auto* v_theta = verify->add_subcommand("theta", "period matrix, truncation and modularity");
  v_theta->add_option("--seed", cfg.seed, "seed for the random interior points");
  v_theta->add_option("--radius", ts.radius, "lattice radius")->check(CLI::Range(2, 40));
  v_theta->add_option("--tol", ts.modular_tol, "modularity tolerance")->check(CLI::PositiveNumber);
  auto* v_paths = verify->add_subcommand("paths", "tangential basepoints and r_sigma paths");
  for (auto* c : {v_pres, v_t2, v_t1, v_geo, v_runge, v_theta, v_paths}) common(c);

  auto* eval = app.add_subcommand("eval", "evaluate at a point of the ball");
  eval->require_subcommand(1);
  std::string z1s = "-1,0", z2s = "0,0";
  int radius = 12;
  auto* e_theta = eval->add_subcommand("theta", "the three theta constants");
  auto* e_pm = eval->add_subcommand("period-matrix", "the period matrix Omega(z1, z2)");
  for (auto* c : {e_theta, e_pm}) {
    c->add_option("--z1", z1s, "z1 as re,im");
    c->add_option("--z2", z2s, "z2 as re,im");
    common(c);
  }
  e_theta->add_option("--radius", radius, "lattice radius")->check(CLI::Range(1, 40));

  IntegrandSpec qs;
  std::string form = "cusp", kstr = "4";
  std::vector<double> u_list{4, 8, 16, 32};
  int grid = 32;
  auto* q = app.add_subcommand("quad", "integrate over the domain D and check the R^2 relation");
  q->add_option("--form", form, "integrand: cusp, P6sq or P12")->check(CLI::IsMember({"cusp", "P6sq", "P12"}));
  q->add_option("--k", kstr, "weight, or 'infer'");
  q->add_option("--radius", qs.radius, "theta lattice radius")->check(CLI::Range(2, 40));
  q->add_option("--u-max", qs.u_max, "truncation of the cusp direction")->check(CLI::PositiveNumber);
  q->add_option("--grid", grid, "panels per direction")->check(CLI::Range(8, 512));
  q->add_option("--order", qs.order, "Gauss points per panel")->check(CLI::Range(1, 12));
  q->add_option("--u-list", u_list, "truncations for the convergence table")->expected(1, 16);
  common(q);

  auto* report = app.add_subcommand("report", "aggregate report");
  report->require_subcommand(1);
  auto* r_all = report->add_subcommand("all", "every suite");
  r_all->add_option("--seed", cfg.seed, "seed for randomized suites");
  common(r_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Exit::pass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* leaf = &app;
    for (auto subs = leaf->get_subcommands(); !subs.empty(); subs = leaf->get_subcommands()) leaf = subs.front();
    err << leaf->help();
    return Exit::usage;
  }

  json config = json::object();
  std::vector<Report> reports;
  try {
    if (*verify) {
      cfg.command = "verify " + verify->get_subcommands().front()->get_name();
      if (*v_pres) reports = presentations();
      if (*v_t2) {
        reports = theorem2(ks);
        config["k"] = ks;
      }
      if (*v_t1) {
        reports = theorem1(terms, degree, tol1);
        config = {{"terms", terms}, {"degree", degree}, {"tolerance", tol1}};
      }
      if (*v_geo) reports = {guarded("geometry", [&] { return verify_geometry(cfg.seed); })};
      if (*v_runge) reports = runge();
      if (*v_theta) {
        ts.seed = cfg.seed;
        reports = {guarded("theta", [&] { return verify_theta(ts); })};
        config = {{"radius", ts.radius}, {"tolerance", ts.modular_tol}};
      }
      if (*v_paths) reports = {guarded("paths", [] { return verify_paths(); })};
    } else if (*eval) {
      BallCoord p{parse_complex(z1s), parse_complex(z2s)};
      SiegelPoint s = period_matrix(p);
      json d;
      d["schema"] = kSchema;
      d["z1"] = complex_json(p.z1);
      d["z2"] = complex_json(p.z2);
      if (*e_pm) {
        cfg.command = "eval period-matrix";
        json om = json::array();
        for (const auto& row : s.omega) {
          json r = json::array();
          for (const auto& x : row) r.push_back(complex_json(x));
          om.push_back(r);
        }
        d["omega"] = om;
        d["min_eigenvalue_im"] = s.min_eig_im;
      } else {
        cfg.command = "eval theta";
        json th = json::array();
        double tail = 0;
        for (int l = 1; l <= 3; ++l) {
          auto v = theta_constant(l, s, radius);
          th.push_back(complex_json(v.value));
          tail = std::max(tail, v.tail);
        }
        d["radius"] = radius;
        d["theta"] = th;
        d["tail_bound"] = tail;
      }
      d["command"] = cfg.command;
      emit(cfg, d, out, err);
      return Exit::pass;
    } else if (*q) {
      cfg.command = "quad";
      qs.f = parse_form(form);
      if (kstr == "infer")
        qs.k.reset();
      else
        qs.k = std::stoi(kstr);
      qs.n_s = qs.n_u = grid;
      reports = quad(qs, u_list);
      config = {{"form", form}, {"k", kstr},  {"radius", qs.radius}, {"u_max", qs.u_max},
                {"grid", grid}, {"order", qs.order}, {"u_list", u_list}};
    } else if (*report) {
      cfg.command = "report all";
      json d = report_all(cfg.seed);
      emit(cfg, d, out, err);
      return d["pass"].get<bool>() ? Exit::pass : Exit::fail;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const std::out_of_range& e) {
    err << "error: value out of range\n";
    return Exit::usage;
  }

  json d = document(cfg, config, reports);
  emit(cfg, d, out, err);
  if (!d["pass"].get<bool>()) {
    for (const auto& id : d["failing"]) err << "failed: " << id.get<std::string>() << "\n";
    return Exit::fail;
  }
  return Exit::pass;
}

}  // namespace picard::cli
