#pragma once

#include "cyclotomic.hpp"
#include "report.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace picard {

struct Mat3 {
  std::array<std::array<Cyc, 3>, 3> a{};

  Mat3() = default;
  Mat3(std::initializer_list<std::initializer_list<Cyc>> rows) {
    int i = 0;
    for (const auto& r : rows) {
      int j = 0;
      for (const auto& x : r) a[i][j++] = x;
      ++i;
    }
  }

  static Mat3 identity() { return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; }

  Cyc& operator()(int i, int j) { return a[i][j]; }
  const Cyc& operator()(int i, int j) const { return a[i][j]; }

  friend bool operator==(const Mat3& x, const Mat3& y) { return x.a == y.a; }

  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Cyc s;
        for (int k = 0; k < 3; ++k)
          if (!x.a[i][k].is_zero() && !y.a[k][j].is_zero()) s += x.a[i][k] * y.a[k][j];
        r.a[i][j] = s;
      }
    return r;
  }
  friend Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = x.a[i][j] - y.a[i][j];
    return r;
  }
  Mat3 scaled(const Cyc& s) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = a[i][j] * s;
    return r;
  }
  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = a[j][i];
    return r;
  }
  Mat3 conj() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = a[i][j].conj();
    return r;
  }
  Cyc det() const {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  }
  Mat3 adjugate() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        r.a[i][j] = a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
      }
    return r;
  }
  Mat3 pow(long n) const;

  json to_json() const {
    json rows = json::array();
    for (const auto& r : a) {
      json row = json::array();
      for (const auto& x : r) row.push_back(x.pretty());
      rows.push_back(row);
    }
    return rows;
  }
};

inline const Mat3& J0() {
  static const Mat3 m{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  return m;
}

// Returns the unit lambda with b = lambda * a, if any.
inline std::optional<UnitClass> proj_ratio(const Mat3& a, const Mat3& b) {
  std::optional<Cyc> lam;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (a(i, j).is_zero() != b(i, j).is_zero()) return std::nullopt;
      if (!a(i, j).is_zero() && !lam) lam = b(i, j) / a(i, j);
    }
  if (!lam) return std::nullopt;
  auto u = cyc_unit_class(*lam);
  if (!u) return std::nullopt;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(a(i, j) * *lam == b(i, j))) return std::nullopt;
  return u;
}

inline bool proj_eq(const Mat3& a, const Mat3& b) { return proj_ratio(a, b).has_value(); }
inline bool proj_identity(const Mat3& a) { return proj_eq(Mat3::identity(), a); }

inline bool pu21_member(const Mat3& m) { return proj_eq(J0(), m.transpose() * J0() * m.conj()); }

inline Mat3 inverse(const Mat3& m) {
  if (auto u = proj_ratio(J0(), m.transpose() * J0() * m.conj()); u && *u == UnitClass{0, 0})
    return J0() * m.conj().transpose() * J0();
  Cyc d = m.det();
  if (d.is_zero()) throw domain_error("singular matrix");
  return m.adjugate().scaled(d.inverse());
}

inline Mat3 Mat3::pow(long n) const {
  if (n < 0) return inverse(*this).pow(-n);
  Mat3 r = identity(), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

using IntMat6 = std::array<std::array<long, 6>, 6>;
using Mat2i = std::array<std::array<long, 2>, 2>;

inline IntMat6 mul6(const IntMat6& x, const IntMat6& y) {
  IntMat6 r{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) r[i][j] += x[i][k] * y[k][j];
  return r;
}
inline IntMat6 identity6() {
  IntMat6 r{};
  for (int i = 0; i < 6; ++i) r[i][i] = 1;
  return r;
}
inline IntMat6 transpose6(const IntMat6& x) {
  IntMat6 r{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r[i][j] = x[j][i];
  return r;
}
// J = [[0, I], [-I, 0]]
inline IntMat6 symplectic_form() {
  IntMat6 J{};
  for (int i = 0; i < 3; ++i) {
    J[i][i + 3] = 1;
    J[i + 3][i] = -1;
  }
  return J;
}
inline bool sp6_member(const IntMat6& m) { return mul6(mul6(transpose6(m), symplectic_form()), m) == symplectic_form(); }

inline Mat2i mul2(const Mat2i& x, const Mat2i& y) {
  Mat2i r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j] += x[i][k] * y[k][j];
  return r;
}
inline Mat2i inverse2(const Mat2i& m) {
  if (m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1) throw domain_error("matrix not unimodular");
  return {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
}
inline bool psl2_identity(const Mat2i& m) {
  return m == Mat2i{{{1, 0}, {0, 1}}} || m == Mat2i{{{-1, 0}, {0, -1}}};
}

// ---------------------------------------------------------------------------
// catalog

using Builtin = std::variant<Mat3, IntMat6, Mat2i>;

namespace detail {

inline Cyc q(long n, long d) { return Cyc(mpq_class(n, d)); }

inline std::map<std::string, Builtin> make_catalog() {
  const Cyc r = Cyc::rho(), r2 = Cyc::rho() * Cyc::rho();
  const Cyc I = Cyc::i(), s3 = Cyc::sqrt3();
  std::map<std::string, Builtin> c;
  Mat3 R{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
  Mat3 A1{{1, 0, 0}, {0, -r2, 0}, {0, 0, 1}};
  Mat3 Ay{{1, 1, r}, {0, -r2, r2}, {0, 0, 1}};
  Mat3 A0{{1, 0, 0}, {r, -r2, 0}, {r, r, 1}};
  Mat3 Ay0{{0, 0, -r2 - 1}, {0, 1, 0}, {-1 - r2, 0, 1 - r2}};
  c["R"] = R;
  c["P"] = Mat3{{1, 1, r}, {0, r, -r}, {0, 0, 1}};
  c["A1"] = A1;
  c["Ay"] = Ay;
  c["A0"] = A0;
  c["Ay0"] = Ay0;
  c["R1"] = A1;
  c["R2"] = R * Ay * R;
  c["R3"] = R * A0 * R;
  c["g_delta_1"] = Mat3{{1, 0, 0}, {0, r, 0}, {0, 0, 1}};
  c["g_delta_y0"] = Mat3{{r2, 0, r - 1}, {0, 1, 0}, {r - 1, 0, -2 * r2}};
  c["g_delta_y"] = Mat3{{1, 1 - r2, r - 1}, {0, r, r2 - r}, {0, 0, 1}};
  c["g_delta_yinf"] = Mat3{{1, 0, 0}, {0, 1, 0}, {r - r2, 0, 1}};
  c["g_delta_0"] = Mat3{{1, 0, 0}, {r - 1, r, 0}, {r - 1, r - 1, 1}};
  c["J0"] = J0();
  c["W"] = Mat3{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  c["S"] = Mat2i{{{0, 1}, {-1, 0}}};
  c["T"] = Mat2i{{{1, 1}, {0, 1}}};
  c["N_sigma0"] = Mat2i{{{1, 2}, {0, 1}}};
  c["N_sigma1"] = Mat2i{{{-1, 0}, {2, -1}}};
  c["M"] = IntMat6{{{0, 0, 0, -1, 0, 0},
                    {0, 0, 0, 0, -1, 0},
                    {0, 0, -1, 0, 0, 1},
                    {1, 0, 0, -1, 0, 0},
                    {0, 1, 0, 0, -1, 0},
                    {0, 0, -1, 0, 0, 0}}};
  const Cyc h = q(1, 2), f = q(1, 4);
  c["G1"] = Mat3{{h * (-1 + I * s3), 0, 0},
                 {h * I * (1 + s3), h * (-1 + I), h * (1 + I)},
                 {h * (2 + s3) * (1 - I), h * (-1 + I), h * (-1 - I)}};
  const Cyc u = f * (-1 + s3 - I - I * s3);
  c["G2"] = Mat3{{0, f * (-2 + 2 * I * s3), 0},
                 {u, f * (1 + s3 - I + I * s3), u},
                 {f * (-1 - 3 * s3 - I - I * s3), u, f * (-3 - s3 + I + I * s3)}};
  // change of basis from the displayed theta constants to the coordinates of G1, G2
  c["theta_basis"] = Mat3{{(-1 + s3 * h) * (1 + I), (-h + s3 * q(1, 6)) * (1 - I), I * (h - s3 * h)},
                          {0, (-1 + s3 * q(1, 3)) * (1 - I), 0},
                          {I * (q(3, 2) - s3 * h), 1, (-1 + s3 * h) * (1 - I)}};
  return c;
}

}  // namespace detail

inline const std::map<std::string, Builtin>& catalog() {
  static const auto c = detail::make_catalog();
  return c;
}

inline const Builtin& builtin(const std::string& name) {
  auto it = catalog().find(name);
  if (it == catalog().end()) throw std::invalid_argument("unknown catalog name: " + name);
  return it->second;
}

inline const Mat3& builtin3(const std::string& name) {
  const auto& b = builtin(name);
  if (!std::holds_alternative<Mat3>(b)) throw std::invalid_argument(name + " is not a 3x3 matrix");
  return std::get<Mat3>(b);
}

// named 3x3 members of PU(2,1)
inline const std::vector<std::string>& pu21_names() {
  static const std::vector<std::string> n{"R",         "P",          "R1",        "R2",           "R3",
                                          "A1",        "Ay",         "A0",        "Ay0",          "g_delta_1",
                                          "g_delta_y", "g_delta_0",  "g_delta_y0", "g_delta_yinf", "J0"};
  return n;
}

// ---------------------------------------------------------------------------
// words

struct Letter {
  std::string name;
  long exp = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct GroupWord {
  std::vector<Letter> letters;

  GroupWord inverse() const {
    GroupWord w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->name, -it->exp});
    return w;
  }
  GroupWord operator*(const GroupWord& o) const {
    GroupWord w = *this;
    w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
    return w;
  }
  GroupWord pow(long n) const {
    GroupWord base = n < 0 ? inverse() : *this, w;
    for (long k = 0; k < std::labs(n); ++k) w = w * base;
    return w;
  }
  bool empty() const { return letters.empty(); }
  std::string str() const {
    if (letters.empty()) return "I";
    std::string s;
    for (const auto& l : letters) {
      if (!s.empty()) s += " ";
      s += l.name;
      if (l.exp != 1) s += "^" + std::to_string(l.exp);
    }
    return s;
  }
};

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}
  GroupWord parse() {
    GroupWord w = seq();
    skip();
    if (p_ != s_.size()) fail("trailing input");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& m) const {
    throw std::invalid_argument("word parse error: " + m + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (p_ < s_.size() &&
           (std::isspace(static_cast<unsigned char>(s_[p_])) || s_[p_] == '*' || s_[p_] == '.'))
      ++p_;
    // U+00B7 middle dot
    while (p_ + 1 < s_.size() && static_cast<unsigned char>(s_[p_]) == 0xC2 &&
           static_cast<unsigned char>(s_[p_ + 1]) == 0xB7) {
      p_ += 2;
      while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
  }
  long exponent() {
    if (p_ < s_.size() && s_[p_] == '^') {
      ++p_;
      bool neg = false;
      if (p_ < s_.size() && s_[p_] == '-') {
        neg = true;
        ++p_;
      }
      std::size_t st = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      if (st == p_) fail("missing exponent");
      long e = std::stol(std::string(s_.substr(st, p_ - st)));
      return neg ? -e : e;
    }
    return 1;
  }
  GroupWord seq() {
    GroupWord w;
    for (;;) {
      skip();
      if (p_ >= s_.size() || s_[p_] == ')') break;
      if (s_[p_] == '(') {
        ++p_;
        GroupWord inner = seq();
        if (p_ >= s_.size() || s_[p_] != ')') fail("expected ')'");
        ++p_;
        w = w * inner.pow(exponent());
        continue;
      }
      std::size_t st = p_;
      while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
      if (st == p_) fail(std::string("unexpected character ") + s_[p_]);
      std::string name(s_.substr(st, p_ - st));
      if (name == "I") {
        exponent();
        continue;
      }
      w.letters.push_back({name, exponent()});
    }
    return w;
  }
  std::string_view s_;
  std::size_t p_ = 0;
};

}  // namespace detail

inline GroupWord parse_word(std::string_view s) { return detail::WordParser(s).parse(); }

// product in reading order
inline Mat3 eval_word(const GroupWord& w) {
  Mat3 m = Mat3::identity();
  for (const auto& l : w.letters) m = m * builtin3(l.name).pow(l.exp);
  return m;
}
inline Mat3 eval_word(std::string_view s) { return eval_word(parse_word(s)); }

inline Mat2i eval_word2(const GroupWord& w) {
  Mat2i m{{{1, 0}, {0, 1}}};
  for (const auto& l : w.letters) {
    const auto& b = builtin(l.name);
    if (!std::holds_alternative<Mat2i>(b)) throw std::invalid_argument(l.name + " is not a 2x2 matrix");
    Mat2i g = std::get<Mat2i>(b);
    if (l.exp < 0) g = inverse2(g);
    for (long k = 0; k < std::labs(l.exp); ++k) m = mul2(m, g);
  }
  return m;
}

struct Order {
  std::optional<long> value;  // empty: exceeds cap
};

inline Order element_order(const Mat3& m, long cap) {
  Mat3 p = m;
  for (long n = 1; n <= cap; ++n) {
    if (proj_identity(p)) return {n};
    p = p * m;
  }
  return {};
}

inline Order element_order(const IntMat6& m, long cap) {
  IntMat6 p = m;
  for (long n = 1; n <= cap; ++n) {
    if (p == identity6()) return {n};
    p = mul6(p, m);
  }
  return {};
}

// ---------------------------------------------------------------------------
// anharmonic group

struct AnharmonicOrbit {
  std::array<Cyc, 6> values;
  std::size_t distinct = 0;
  bool degenerate = false;
};

inline AnharmonicOrbit anharmonic_orbit(const Cyc& l) {
  if (l.is_zero() || l == Cyc(1)) throw domain_error("lambda must avoid 0, 1, infinity");
  AnharmonicOrbit o;
  const Cyc one(1);
  o.values = {l, one - l, (one - l).inverse(), l / (l - one), l.inverse(), (l - one) / l};
  std::vector<Cyc> u;
  for (const auto& v : o.values)
    if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
  o.distinct = u.size();
  o.degenerate = o.distinct < 6;
  return o;
}

// ---------------------------------------------------------------------------
// S4

// p[i] is the image of point i (points 0..3 stand for 1..4)
struct Perm {
  std::array<int, 4> p{0, 1, 2, 3};
  friend bool operator==(const Perm&, const Perm&) = default;
  friend bool operator<(const Perm& a, const Perm& b) { return a.p < b.p; }
  static Perm transposition(int a, int b) {
    Perm t;
    std::swap(t.p[a - 1], t.p[b - 1]);
    return t;
  }
  // (this o q)(i) = this(q(i))
  Perm after(const Perm& q) const {
    Perm r;
    for (int i = 0; i < 4; ++i) r.p[i] = p[q.p[i]];
    return r;
  }
  Perm inverse() const {
    Perm r;
    for (int i = 0; i < 4; ++i) r.p[p[i]] = i;
    return r;
  }
  bool is_identity() const { return *this == Perm{}; }
  std::string cycles() const {
    std::string s;
    std::array<bool, 4> seen{};
    for (int i = 0; i < 4; ++i) {
      if (seen[i] || p[i] == i) continue;
      s += "(";
      for (int j = i; !seen[j]; j = p[j]) {
        seen[j] = true;
        s += std::to_string(j + 1);
      }
      s += ")";
    }
    return s.empty() ? "e" : s;
  }
};

enum class Composition { first_letter_first, last_letter_first };

// first_letter_first: the permutation of w1 w2 applies w1 and then w2.
inline constexpr Composition kUpsilonConvention = Composition::first_letter_first;

inline Perm compose_word(const std::vector<Perm>& letters, Composition c) {
  Perm r;
  for (const auto& x : letters) r = (c == Composition::first_letter_first) ? x.after(r) : r.after(x);
  return r;
}

inline const std::map<std::string, Perm>& upsilon_images() {
  static const std::map<std::string, Perm> m = [] {
    std::map<std::string, Perm> m;
    m["R1"] = Perm::transposition(1, 2);
    m["R2"] = Perm::transposition(2, 4);
    m["R3"] = Perm::transposition(2, 3);
    m["R"] = Perm::transposition(1, 2).after(Perm::transposition(3, 4));
    return m;
  }();
  return m;
}

inline Perm upsilon(const GroupWord& w, Composition c = kUpsilonConvention) {
  std::vector<Perm> ls;
  for (const auto& l : w.letters) {
    Perm g;
    if (l.name == "P") {
      // P = R3 R1
      g = compose_word({upsilon_images().at("R3"), upsilon_images().at("R1")}, c);
    } else {
      auto it = upsilon_images().find(l.name);
      if (it == upsilon_images().end()) throw std::invalid_argument("no S4 image for " + l.name);
      g = it->second;
    }
    if (l.exp < 0) g = g.inverse();
    for (long k = 0; k < std::labs(l.exp); ++k) ls.push_back(g);
  }
  return compose_word(ls, c);
}

// ---------------------------------------------------------------------------
// presentations

struct Relation {
  std::string id;
  std::string lhs;
  std::string rhs = "I";
};

inline json residual_json(const Mat3& lhs, const Mat3& rhs) {
  json d;
  d["lhs"] = lhs.to_json();
  d["rhs"] = rhs.to_json();
  return d;
}

inline Check check_relation(const Relation& r) {
  Mat3 a = eval_word(r.lhs), b = eval_word(r.rhs);
  auto u = proj_ratio(a, b);
  json d;
  d["relation"] = r.lhs + " = " + r.rhs;
  if (u)
    d["scalar"] = u->str();
  else
    d["residual"] = residual_json(a, b);
  return {r.id, u.has_value(), d};
}

inline const std::vector<Relation>& relations_of(const std::string& which) {
  static const std::map<std::string, std::vector<Relation>> table = {
      {"falbel_parker_R123",
       {{"R1^6", "R1^6"},
        {"R2^6", "R2^6"},
        {"R3^6", "R3^6"},
        {"(R3R2R1)^4", "(R3 R2 R1)^4"},
        {"braid12", "R1 R2 R1", "R2 R1 R2"},
        {"braid23", "R2 R3 R2", "R3 R2 R3"},
        {"braid31", "R3 R1 R3", "R1 R3 R1"},
        {"R1R2R3R1", "R1 R2 R3 R1", "R3 R1 R2 R3"}}},
      {"falbel_parker_RPR1",
       {{"R^2", "R^2"},
        {"(RP)^6", "(R P)^6"},
        {"(RP)^3", "(R P)^3"},
        {"R1^6", "R1^6"},
        {"[R1,R]", "R1 R R1^-1 R^-1"},
        {"pent_P", "P R1^-1 P^-1 R1^-1 P"}}},
      {"gamma1_identities",
       {{"R1^2", "R1^2", "g_delta_1"},
        {"R2^2", "R2^2", "R^-1 g_delta_y R"},
        {"R3^2", "R3^2", "R^-1 g_delta_0 R"},
        {"(R1R2)^3", "(R1 R2)^3", "g_delta_yinf"},
        {"(R1R2R3R2^-1)^2", "(R1 R2 R3 R2^-1)^2", "R^-1 g_delta_1 g_delta_y0 R"},
        {"(R2^2R3R2^-1)^3", "(R2^2 R3 R2^-1)^3", "R^-1 g_delta_0 g_delta_y0 g_delta_y R"}}},
      {"squares",
       {{"A1^2", "A1^2", "g_delta_1"},
        {"Ay^2", "Ay^2", "g_delta_y"},
        {"A0^2", "A0^2", "g_delta_0"},
        {"Ay0^2", "Ay0^2", "g_delta_y0"},
        {"R2=RAyR", "R2", "R^-1 Ay R"},
        {"R3=RA0R", "R3", "R^-1 A0 R"},
        {"[A1,R]", "A1 R A1^-1 R^-1"}}},
      {"bracket_R",
       {{"(R3R1R2)^2", "(R3 R1 R2)^2", "R"},
        {"bracket_amended", "((R1 R2 R3)^-2 R1 R2 R1^-1 (R1 R2 R3)^-2 R1 R2)^2", "R"}}},
  };
  auto it = table.find(which);
  if (it == table.end()) throw std::invalid_argument("unknown presentation: " + which);
  return it->second;
}

inline Report verify_presentation(const std::string& which) {
  Report rep;
  rep.name = which;
  if (which == "psl2_s_t") {
    Mat2i S = eval_word2(parse_word("S")), ST = eval_word2(parse_word("S T"));
    Mat2i S2 = mul2(S, S), ST3 = mul2(mul2(ST, ST), ST);
    rep.add("S^2", psl2_identity(S2), {{"relation", "S^2 = I"}});
    rep.add("(ST)^3", psl2_identity(ST3), {{"relation", "(S T)^3 = I"}});
    rep.add("N_sigma0=T^2", eval_word2(parse_word("N_sigma0")) == eval_word2(parse_word("T^2")));
    Mat2i n1 = eval_word2(parse_word("N_sigma1")), st2s = eval_word2(parse_word("S T^2 S"));
    rep.add("N_sigma1=ST^2S", psl2_identity(mul2(n1, inverse2(st2s))));
    for (const char* nm : {"N_sigma0", "N_sigma1"}) {
      Mat2i m = eval_word2(parse_word(nm));
      bool gamma2 = ((m[0][0] - 1) % 2 == 0) && (m[0][1] % 2 == 0) && (m[1][0] % 2 == 0) && ((m[1][1] - 1) % 2 == 0);
      rep.add(std::string(nm) + "_mod2", gamma2);
    }
    return rep;
  }
  if (which == "s4") {
    Perm s1 = Perm::transposition(1, 2), s2 = Perm::transposition(2, 4), s3 = Perm::transposition(3, 4);
    auto ord = [](const Perm& x, int n) {
      Perm p;
      for (int k = 0; k < n; ++k) p = p.after(x);
      return p.is_identity();
    };
    rep.add("s1^2", ord(s1, 2));
    rep.add("s2^2", ord(s2, 2));
    rep.add("s3^2", ord(s3, 2));
    rep.add("(s1s2)^3", ord(s1.after(s2), 3));
    rep.add("(s1s3)^2", ord(s1.after(s3), 2));
    rep.add("(s2s3)^3", ord(s2.after(s3), 3));
    rep.add("s2^-1s3s2=(23)", s2.inverse().after(s3).after(s2) == Perm::transposition(2, 3));
    return rep;
  }
  if (which == "bracket_R") {
    for (const auto& r : relations_of(which)) rep.checks.push_back(check_relation(r));
    // printed reading, reported but not required
    Relation printed{"bracket_printed", "((R1 R3 R3)^-2 R1 R2 R1^-1 (R1 R2 R3)^-2 R1 R2)^2", "R"};
    Check c = check_relation(printed);
    c.detail["informational"] = true;
    c.detail["holds"] = c.pass;
    c.pass = true;
    rep.checks.push_back(c);
    return rep;
  }
  if (which == "falbel_parker_RPR1") {
    for (const auto& r : relations_of(which)) rep.checks.push_back(check_relation(r));
    Relation alt{"pent_R", "P R1^-1 P^-1 R1^-1 R"};
    Check c = check_relation(alt);
    c.detail["informational"] = true;
    c.detail["holds"] = c.pass;
    c.pass = true;
    rep.checks.push_back(c);
    return rep;
  }
  for (const auto& r : relations_of(which)) rep.checks.push_back(check_relation(r));
  return rep;
}

inline const std::vector<std::string>& presentation_names() {
  static const std::vector<std::string> n{"falbel_parker_R123", "falbel_parker_RPR1", "gamma1_identities",
                                          "squares",            "bracket_R",          "psl2_s_t",
                                          "s4"};
  return n;
}

// Upsilon sends every R123 relation to the identity and R to (12)(34).
inline Report verify_upsilon(Composition c = kUpsilonConvention) {
  Report rep;
  rep.name = "upsilon";
  for (const auto& r : relations_of("falbel_parker_R123")) {
    Perm a = upsilon(parse_word(r.lhs), c), b = upsilon(parse_word(r.rhs), c);
    rep.add(r.id, a == b, {{"lhs", a.cycles()}, {"rhs", b.cycles()}});
  }
  Perm r = upsilon(parse_word("(R3 R1 R2)^2"), c);
  rep.add("R->(12)(34)", r == upsilon_images().at("R"), {{"image", r.cycles()}});
  std::set<Perm> gen;
  std::vector<Perm> frontier{Perm{}};
  gen.insert(Perm{});
  while (!frontier.empty()) {
    Perm x = frontier.back();
    frontier.pop_back();
    for (const char* g : {"R1", "R2", "R3"}) {
      Perm y = upsilon_images().at(g).after(x);
      if (gen.insert(y).second) frontier.push_back(y);
    }
  }
  rep.add("surjective", gen.size() == 24, {{"image_size", gen.size()}});
  return rep;
}

inline Report verify_membership(long order_cap = 24) {
  Report rep;
  rep.name = "membership";
  for (const auto& n : pu21_names()) {
    const Mat3& g = builtin3(n);
    Mat3 lhs = g.transpose() * J0() * g.conj();
    rep.add(n + "/pu21", lhs == J0(), {{"exact", true}});
  }
  const IntMat6& m = std::get<IntMat6>(builtin("M"));
  rep.add("M/symplectic", sp6_member(m));
  Order o = element_order(m, order_cap);
  rep.add("M/order", o.value.has_value(), {{"order", o.value ? json(*o.value) : json(nullptr)}, {"cap", order_cap}});
  return rep;
}

}  // namespace picard
