#pragma once

#include "matgroup.hpp"
#include "report.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace picard {

// symbols 0, 1, inf, x0, y0 with 1 < x0 < y0 on the real line
enum class Sym { zero, one, inf, x0, y0 };

inline std::string sym_str(Sym s) {
  switch (s) {
    case Sym::zero: return "0";
    case Sym::one: return "1";
    case Sym::inf: return "∞";
    case Sym::x0: return "x0";
    case Sym::y0: return "y0";
  }
  return "?";
}

struct Arrow {
  Sym base = Sym::zero, dir = Sym::one;
  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
  std::string str() const { return sym_str(base) + sym_str(dir); }
};

enum class Coord { x, y };
inline const char* coord_name(Coord c) { return c == Coord::x ? "x" : "y"; }

struct TangBase {
  Arrow x, y;
  friend bool operator==(const TangBase&, const TangBase&) = default;
  friend auto operator<=>(const TangBase&, const TangBase&) = default;
  const Arrow& at(Coord c) const { return c == Coord::x ? x : y; }
  Arrow& at(Coord c) { return c == Coord::x ? x : y; }
  std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline std::optional<Sym> take_sym(std::string_view& s) {
  auto eat = [&](std::string_view tok) {
    if (s.substr(0, tok.size()) != tok) return false;
    s.remove_prefix(tok.size());
    return true;
  };
  if (eat("0")) return Sym::zero;
  if (eat("1")) return Sym::one;
  if (eat("∞") || eat("inf") || eat("oo")) return Sym::inf;
  if (eat("x0") || eat("x_0")) return Sym::x0;
  if (eat("y0") || eat("y_0")) return Sym::y0;
  return std::nullopt;
}
inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}
}  // namespace detail

inline Arrow parse_arrow(std::string_view s) {
  std::string_view rest = detail::trim(s);
  auto a = detail::take_sym(rest);
  auto b = a ? detail::take_sym(rest) : std::nullopt;
  if (!a || !b || !rest.empty() || *a == *b) throw ParseError("bad arrow: " + std::string(s));
  return {*a, *b};
}

inline TangBase parse_tangbase(std::string_view s) {
  std::string_view t = detail::trim(s);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw ParseError("bad basepoint: " + std::string(s));
  t = t.substr(1, t.size() - 2);
  auto comma = t.find(',');
  if (comma == std::string_view::npos) throw ParseError("bad basepoint: " + std::string(s));
  return {parse_arrow(t.substr(0, comma)), parse_arrow(t.substr(comma + 1))};
}

// ---------------------------------------------------------------------------
// the S4 table

struct TableRow {
  TangBase b;
  std::array<TangBase, 3> image;  // under (12), (24), (34)
};

inline const std::array<std::string, 3>& table_generators() {
  static const std::array<std::string, 3> g{"(12)", "(24)", "(34)"};
  return g;
}

inline const std::vector<TableRow>& s4_table() {
  static const std::vector<TableRow> rows = [] {
    const char* raw[16][4] = {
        {"(01,01)", "(1x0,∞y0)", "(01,0∞)", "(01,0∞)"},
        {"(01,0∞)", "(10,∞0)", "(01,01)", "(01,01)"},
        {"(0∞,01)", "(10,∞y0)", "(0∞,0∞)", "(0∞,0∞)"},
        {"(0∞,0∞)", "(1x0,∞0)", "(0∞,01)", "(0∞,01)"},
        {"(10,10)", "(10,1x0)", "(10,∞0)", "(∞0,10)"},
        {"(10,1x0)", "(10,10)", "(1x0,∞y0)", "(∞y0,1x0)"},
        {"(1x0,1x0)", "(1x0,10)", "(10,∞y0)", "(∞y0,10)"},
        {"(1x0,10)", "(1x0,1x0)", "(1x0,∞0)", "(∞0,1x0)"},
        {"(10,∞0)", "(01,0∞)", "(10,10)", "(1x0,∞y0)"},
        {"(10,∞y0)", "(0∞,01)", "(1x0,1x0)", "(1x0,∞0)"},
        {"(1x0,∞y0)", "(01,01)", "(10,1x0)", "(10,∞0)"},
        {"(1x0,∞0)", "(0∞,0∞)", "(1x0,10)", "(10,∞y0)"},
        {"(∞0,10)", "(∞y0,1x0)", "(∞y0,1x0)", "(10,10)"},
        {"(∞0,1x0)", "(∞y0,10)", "(∞y0,10)", "(1x0,10)"},
        {"(∞y0,1x0)", "(∞0,10)", "(∞0,10)", "(10,1x0)"},
        {"(∞y0,10)", "(∞0,1x0)", "(∞0,1x0)", "(1x0,1x0)"},
    };
    std::vector<TableRow> out;
    for (auto& r : raw)
      out.push_back({parse_tangbase(r[0]), {parse_tangbase(r[1]), parse_tangbase(r[2]), parse_tangbase(r[3])}});
    return out;
  }();
  return rows;
}

inline const std::vector<TangBase>& basepoints() {
  static const std::vector<TangBase> v = [] {
    std::vector<TangBase> out;
    for (const auto& r : s4_table()) out.push_back(r.b);
    return out;
  }();
  return v;
}

inline bool in_vocabulary(const TangBase& b) {
  return std::find(basepoints().begin(), basepoints().end(), b) != basepoints().end();
}

inline const TangBase& fixed_base() {
  static const TangBase b = parse_tangbase("(01,01)");
  return b;
}

inline const std::array<Perm, 3>& table_perms() {
  static const std::array<Perm, 3> p{Perm::transposition(1, 2), Perm::transposition(2, 4), Perm::transposition(3, 4)};
  return p;
}

inline TangBase apply_generator(int g, const TangBase& b) {
  for (const auto& r : s4_table())
    if (r.b == b) return r.image[g];
  throw std::invalid_argument("basepoint outside the table: " + b.str());
}

// shortest word in (12), (24), (34), first letter applied first
inline const std::map<Perm, std::vector<int>>& s4_decompositions() {
  static const std::map<Perm, std::vector<int>> m = [] {
    std::map<Perm, std::vector<int>> m;
    m[Perm{}] = {};
    std::deque<Perm> q{Perm{}};
    while (!q.empty()) {
      Perm p = q.front();
      q.pop_front();
      for (int g = 0; g < 3; ++g) {
        Perm n = table_perms()[g].after(p);
        if (m.count(n)) continue;
        m[n] = m[p];
        m[n].push_back(g);
        q.push_back(n);
      }
    }
    return m;
  }();
  return m;
}

inline std::string decomposition_str(const Perm& s) {
  std::string out;
  for (int g : s4_decompositions().at(s)) out += table_generators()[g];
  return out.empty() ? "e" : out;
}

inline TangBase s4_act(const Perm& s, const TangBase& b) {
  if (!in_vocabulary(b)) throw std::invalid_argument("basepoint outside the table: " + b.str());
  TangBase r = b;
  for (int g : s4_decompositions().at(s)) r = apply_generator(g, r);
  return r;
}

// ---------------------------------------------------------------------------
// moves

// arrows that occur in the table, the same six in each coordinate
inline const std::array<Arrow, 6>& coordinate_arrows() {
  static const std::array<Arrow, 6> a{parse_arrow("01"), parse_arrow("0∞"), parse_arrow("10"),
                                      parse_arrow("1x0"), parse_arrow("∞0"), parse_arrow("∞y0")};
  return a;
}

inline bool known_arrow(const Arrow& a) {
  return std::find(coordinate_arrows().begin(), coordinate_arrows().end(), a) != coordinate_arrows().end();
}

// infinity sits on the negative side of 0 and on the positive side of y0
inline bool points_positive(const Arrow& a) {
  if (a.base == Sym::inf) return a.dir == Sym::zero;
  if (a.dir == Sym::inf) return false;
  return static_cast<int>(a.dir) > static_cast<int>(a.base);
}

inline std::optional<Arrow> s_target(Coord c, const Arrow& a) {
  Arrow t{a.dir, a.base};
  if (c == Coord::x && a == Arrow{Sym::inf, Sym::y0}) t = {Sym::x0, Sym::y0};
  if (c == Coord::y && a == Arrow{Sym::inf, Sym::x0}) t = {Sym::y0, Sym::x0};
  if (!known_arrow(t)) return std::nullopt;
  return t;
}

inline std::optional<Arrow> t_target(const Arrow& a) {
  for (const auto& b : coordinate_arrows())
    if (b.base == a.base && b.dir != a.dir) return b;
  return std::nullopt;
}

enum class MoveKind { s, t };

struct Move {
  Coord coord = Coord::x;
  MoveKind kind = MoveKind::s;
  Arrow from, to;
  bool upper = false;  // half plane of a t arc, unused for s
  friend bool operator==(const Move&, const Move&) = default;

  Move inverse() const { return {coord, kind, to, from, upper}; }
  // a t arc traversed in its defining direction, as opposed to the reverse of one
  bool forward() const { return kind == MoveKind::s || upper == (points_positive(from) && !points_positive(to)); }
  Move conjugate() const {
    Move m = *this;
    if (kind == MoveKind::t) m.upper = !m.upper;
    return m;
  }
  std::string symbol() const { return kind == MoveKind::s ? "s" : (forward() ? "t" : "t^-1"); }
  std::string str() const {
    std::string k = symbol() + "_" + coord_name(coord);
    std::string arc = kind == MoveKind::t ? (upper ? " upper" : " lower") : "";
    return k + ":" + from.str() + "->" + to.str() + arc;
  }
};

inline Move s_move(Coord c, const Arrow& a) {
  auto t = s_target(c, a);
  if (!t) throw std::invalid_argument("s leaves the basepoint set at " + a.str());
  return {c, MoveKind::s, a, *t, false};
}

inline Move t_move(Coord c, const Arrow& a) {
  auto t = t_target(a);
  if (!t) throw std::invalid_argument("no t loop at " + a.str());
  return {c, MoveKind::t, a, *t, points_positive(a) && !points_positive(*t)};
}

// t^2 based at a: a positively oriented loop about the base point of a
inline std::vector<Move> t_squared(Coord c, const Arrow& a) {
  Move first = t_move(c, a);
  return {first, t_move(c, first.to)};
}

using Moves = std::vector<Move>;

inline Moves reduce(const Moves& w) {
  Moves out;
  for (const auto& m : w) {
    if (!out.empty() && out.back() == m.inverse())
      out.pop_back();
    else
      out.push_back(m);
  }
  return out;
}

inline Moves inverse(const Moves& w) {
  Moves out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Moves conjugate(const Moves& w) {
  Moves out;
  for (const auto& m : w) out.push_back(m.conjugate());
  return out;
}

// runs of equal symbols collapse to powers: t.t.t -> t^3
inline std::string moves_str(const Moves& w) {
  if (w.empty()) return "1";
  std::vector<std::pair<std::string, int>> runs;
  for (const auto& m : w) {
    std::string sym = m.symbol() == "t^-1" ? "t" : m.symbol();
    int e = m.symbol() == "t^-1" ? -1 : 1;
    if (!runs.empty() && runs.back().first == sym && (runs.back().second > 0) == (e > 0) && sym == "t")
      runs.back().second += e;
    else
      runs.push_back({sym, e});
  }
  std::string out;
  for (const auto& [sym, e] : runs) {
    if (!out.empty()) out += ".";
    out += sym;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

struct PathWord {
  TangBase start, end;
  Moves x, y;

  const Moves& at(Coord c) const { return c == Coord::x ? x : y; }
  bool is_loop() const { return start == end; }
  bool is_identity() const { return x.empty() && y.empty() && is_loop(); }
  friend bool operator==(const PathWord&, const PathWord&) = default;

  std::string str() const {
    return "(x: " + moves_str(x) + " | y: " + moves_str(y) + ") @ " + start.str() + "→" + end.str();
  }
  json to_json() const {
    json j;
    j["word"] = str();
    j["start"] = start.str();
    j["end"] = end.str();
    for (Coord c : {Coord::x, Coord::y}) {
      json arr = json::array();
      for (const auto& m : at(c)) arr.push_back(m.str());
      j[std::string("moves_") + coord_name(c)] = arr;
    }
    return j;
  }
};

inline PathWord identity_path(const TangBase& b) { return {b, b, {}, {}}; }

// walks a move list, checking that each move starts where the previous ended
inline Arrow walk(Coord c, const Arrow& from, const Moves& w) {
  Arrow a = from;
  for (const auto& m : w) {
    if (m.coord != c || m.from != a) throw std::logic_error("move does not chain at " + a.str());
    a = m.to;
  }
  return a;
}

inline bool chains(const PathWord& p) {
  try {
    return walk(Coord::x, p.start.x, p.x) == p.end.x && walk(Coord::y, p.start.y, p.y) == p.end.y;
  } catch (const std::logic_error&) {
    return false;
  }
}

class BasepointMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline PathWord concat(const PathWord& p, const PathWord& q) {
  if (p.end != q.start) throw BasepointMismatch("cannot concatenate " + p.end.str() + " with " + q.start.str());
  PathWord r{p.start, q.end, p.x, p.y};
  r.x.insert(r.x.end(), q.x.begin(), q.x.end());
  r.y.insert(r.y.end(), q.y.begin(), q.y.end());
  r.x = reduce(r.x);
  r.y = reduce(r.y);
  return r;
}

inline PathWord inverse(const PathWord& p) { return {p.end, p.start, inverse(p.x), inverse(p.y)}; }

// ---------------------------------------------------------------------------
// r_sigma

// all shortest move lists from a to b using s and t, up to a length bound
inline std::vector<Moves> minimal_moves(Coord c, const Arrow& a, const Arrow& b, int bound = 8) {
  std::vector<Moves> layer{{}};
  for (int len = 0; len <= bound; ++len) {
    std::vector<Moves> hits;
    for (const auto& w : layer)
      if (walk(c, a, w) == b) hits.push_back(w);
    if (!hits.empty()) return hits;
    std::vector<Moves> next;
    for (const auto& w : layer) {
      Arrow end = walk(c, a, w);
      if (s_target(c, end)) {
        next.push_back(w);
        next.back().push_back(s_move(c, end));
      }
      if (t_target(end)) {
        next.push_back(w);
        next.back().push_back(t_move(c, end));
      }
    }
    layer = std::move(next);
  }
  return {};
}

class NoDecomposition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RConstruction {
  PathWord path;
  bool exceptional = false;
  int candidates_x = 1, candidates_y = 1;
  bool tie() const { return candidates_x > 1 || candidates_y > 1; }
};

namespace detail {
inline bool single_s(const Moves& w) { return w.size() == 1 && w[0].kind == MoveKind::s; }
}  // namespace detail

// The replacement (t_x^2 s_x, s_y) puts the loop at the end of the s_x segment whose base is not 0.
inline RConstruction r_sigma_full(const Perm& sigma, const TangBase& b, int bound = 8) {
  TangBase target = s4_act(sigma, b);
  auto cx = minimal_moves(Coord::x, b.x, target.x, bound);
  auto cy = minimal_moves(Coord::y, b.y, target.y, bound);
  if (cx.empty() || cy.empty())
    throw NoDecomposition("no decomposition of r" + sigma.cycles() + " at " + b.str() + " within " +
                          std::to_string(bound) + " moves");
  RConstruction r;
  r.candidates_x = static_cast<int>(cx.size());
  r.candidates_y = static_cast<int>(cy.size());
  r.path = {b, target, cx.front(), cy.front()};
  if (detail::single_s(r.path.x) && detail::single_s(r.path.y)) {
    r.exceptional = true;
    Moves x;
    if (b.x.base != Sym::zero) {
      x = t_squared(Coord::x, b.x);
      x.push_back(r.path.x[0]);
    } else {
      x = r.path.x;
      auto loop = t_squared(Coord::x, target.x);
      x.insert(x.end(), loop.begin(), loop.end());
    }
    r.path.x = x;
  }
  return r;
}

inline PathWord r_sigma(const Perm& sigma, const TangBase& b) { return r_sigma_full(sigma, b).path; }

// r_sigma^{-1}: r_{sigma^{-1}} with every t arc replaced by its complex conjugate
inline PathWord r_sigma_inverse(const Perm& sigma, const TangBase& b) {
  PathWord p = r_sigma(sigma.inverse(), b);
  p.x = conjugate(p.x);
  p.y = conjugate(p.y);
  return p;
}

// ---------------------------------------------------------------------------
// words in the generators r_(12), r_(24), r_(23)

struct GenLetter {
  int gen = 0;  // 0: (12), 1: (24), 2: (23)
  int exp = 1;  // +1 or -1
  friend bool operator==(const GenLetter&, const GenLetter&) = default;
};
using GenWord = std::vector<GenLetter>;

inline const std::array<std::string, 3>& path_generators() {
  static const std::array<std::string, 3> g{"(12)", "(24)", "(23)"};
  return g;
}

inline const Perm& generator_perm(int g) {
  static const std::array<Perm, 3> p{Perm::transposition(1, 2), Perm::transposition(2, 4),
                                     Perm::transposition(2, 3)};
  return p.at(g);
}

inline std::string genword_str(const GenWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += " . ";
    out += "r" + path_generators()[l.gen] + (l.exp < 0 ? "^-1" : "");
  }
  return out;
}

inline GenWord parse_genword(std::string_view s) {
  GenWord w;
  std::string_view t = detail::trim(s);
  if (t == "1" || t.empty()) return w;
  while (!t.empty()) {
    t = detail::trim(t);
    if (!t.empty() && t.front() == '.') {
      t.remove_prefix(1);
      continue;
    }
    if (t.substr(0, 2) != "r(") throw ParseError("bad generator word: " + std::string(s));
    int g = -1;
    for (int k = 0; k < 3; ++k)
      if (t.substr(1, 4) == path_generators()[k]) g = k;
    if (g < 0) throw ParseError("unknown generator in: " + std::string(s));
    t.remove_prefix(5);
    int e = 1;
    if (t.substr(0, 3) == "^-1") {
      e = -1;
      t.remove_prefix(3);
    }
    w.push_back({g, e});
  }
  return w;
}

// the odot product of the letters, based at b
inline PathWord path_of(const GenWord& w, const TangBase& b = fixed_base()) {
  PathWord p = identity_path(b);
  for (const auto& l : w) {
    const Perm& s = generator_perm(l.gen);
    p = concat(p, l.exp > 0 ? r_sigma(s, p.end) : r_sigma_inverse(s, p.end));
  }
  return p;
}

inline Perm to_s4(const GenWord& w) {
  std::vector<Perm> ls;
  for (const auto& l : w) ls.push_back(l.exp > 0 ? generator_perm(l.gen) : generator_perm(l.gen).inverse());
  return compose_word(ls, kUpsilonConvention);
}

inline GroupWord to_group_word(const GenWord& w) {
  static const std::array<std::string, 3> names{"R1", "R2", "R3"};
  GroupWord g;
  for (const auto& l : w) g.letters.push_back({names[l.gen], l.exp});
  return g;
}

inline Mat3 to_pu21(const GenWord& w) { return eval_word(to_group_word(w)); }

inline std::vector<GenWord> all_words(int max_len) {
  std::vector<GenWord> out{{}};
  std::vector<GenWord> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<GenWord> next;
    for (const auto& w : layer)
      for (int g = 0; g < 3; ++g)
        for (int e : {1, -1}) {
          if (!w.empty() && w.back() == GenLetter{g, -e}) continue;
          next.push_back(w);
          next.back().push_back({g, e});
        }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// If a reduced loop is a conjugate c . core . c^-1 with core a run of forward t arcs about one point,
// returns that point and the signed number of full turns.
struct LoopAbout {
  Sym point = Sym::zero;
  int turns = 0;
};

inline std::optional<LoopAbout> loop_about(const Moves& w) {
  std::size_t i = 0, n = w.size();
  while (2 * i + 1 < n && w[i] == w[n - 1 - i].inverse() && w[i].kind == MoveKind::s) ++i;
  Moves core(w.begin() + i, w.end() - i);
  if (core.empty() || core.size() % 2) return std::nullopt;
  bool fwd = core[0].forward();
  for (const auto& m : core)
    if (m.kind != MoveKind::t || m.from.base != core[0].from.base || m.forward() != fwd) return std::nullopt;
  int turns = static_cast<int>(core.size()) / 2;
  return LoopAbout{core[0].from.base, fwd ? turns : -turns};
}

// signed half turns of the t arcs about each point
inline std::map<Sym, int> winding(const Moves& w) {
  std::map<Sym, int> h;
  for (const auto& m : w)
    if (m.kind == MoveKind::t) h[m.from.base] += m.forward() ? 1 : -1;
  return h;
}

// y part consisting of n forward t arcs and nothing else in x
inline bool is_trivial_times_ty_power(const PathWord& p, int n) {
  if (!p.x.empty() || static_cast<int>(p.y.size()) != n) return false;
  for (const auto& m : p.y)
    if (m.kind != MoveKind::t || !m.forward()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// checks

inline Report verify_table() {
  Report rep;
  rep.name = "s4_table";
  const auto& B = basepoints();
  std::set<TangBase> distinct(B.begin(), B.end());
  rep.add("rows", B.size() == 16 && distinct.size() == 16, {{"rows", B.size()}});
  for (int g = 0; g < 3; ++g) {
    std::set<TangBase> img;
    bool inv = true;
    for (const auto& b : B) {
      img.insert(apply_generator(g, b));
      inv = inv && apply_generator(g, apply_generator(g, b)) == b;
    }
    rep.add(table_generators()[g] + "/bijective", img.size() == 16);
    rep.add(table_generators()[g] + "^2", inv);
  }
  // Coxeter relations: (12)(24) and (24)(34) have order 3, (12)(34) order 2
  const std::array<std::array<int, 3>, 3> rel{{{0, 1, 3}, {1, 2, 3}, {0, 2, 2}}};
  for (const auto& [a, c, n] : rel) {
    bool ok = true;
    for (const auto& b : B) {
      TangBase t = b;
      for (int k = 0; k < n; ++k) t = apply_generator(c, apply_generator(a, t));
      ok = ok && t == b;
    }
    rep.add("(" + table_generators()[a] + table_generators()[c] + ")^" + std::to_string(n), ok);
  }
  // independence of the decomposition: every word of length <= 6 acts through its permutation
  bool consistent = true;
  std::vector<std::vector<int>> words{{}};
  for (int len = 0; len < 6; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      if (static_cast<int>(w.size()) == len)
        for (int g = 0; g < 3; ++g) {
          next.push_back(w);
          next.back().push_back(g);
        }
    words.insert(words.end(), next.begin(), next.end());
  }
  for (const auto& w : words) {
    Perm s;
    for (int g : w) s = table_perms()[g].after(s);
    for (const auto& b : B) {
      TangBase t = b;
      for (int g : w) t = apply_generator(g, t);
      consistent = consistent && t == s4_act(s, b);
    }
  }
  rep.add("action_well_defined", consistent, {{"words", words.size()}});
  std::set<TangBase> orbit;
  for (const auto& [p, w] : s4_decompositions()) orbit.insert(s4_act(p, fixed_base()));
  json decomp = json::object();
  for (const auto& [p, w] : s4_decompositions()) decomp[p.cycles()] = decomposition_str(p);
  rep.meta = {{"decompositions", decomp}, {"orbit_of_(01,01)", orbit.size()}};
  return rep;
}

inline Report verify_paths() {
  Report rep;
  rep.name = "paths";
  rep.merge(verify_table(), "table/");

  // worked examples
  {
    PathWord p = r_sigma(Perm::transposition(1, 2), fixed_base());
    bool ok = p.end == parse_tangbase("(1x0,∞y0)") && moves_str(p.x) == "s.t" && moves_str(p.y) == "t.s.t" &&
              p.x.size() == 2 && !p.x[1].upper && p.y[0].upper && p.y[2].upper;
    rep.add("r(12)@(01,01)", ok, p.to_json());
  }
  {
    RConstruction c = r_sigma_full(Perm::transposition(1, 2), parse_tangbase("(10,∞0)"));
    const PathWord& p = c.path;
    bool ok = c.exceptional && p.end == parse_tangbase("(01,0∞)") && moves_str(p.x) == "t^2.s" &&
              moves_str(p.y) == "s";
    json d = p.to_json();
    d["exceptional"] = c.exceptional;
    rep.add("r(12)@(10,∞0)", ok, d);
  }

  // r_sigma construction over every generator and basepoint
  {
    bool chained = true, reversal = true;
    json ties = json::array(), exceptional = json::array();
    for (int g = 0; g < 3; ++g)
      for (const auto& b : basepoints()) {
        RConstruction c = r_sigma_full(generator_perm(g), b);
        chained = chained && chains(c.path);
        if (c.tie()) ties.push_back({{"sigma", path_generators()[g]}, {"at", b.str()}});
        if (c.exceptional) exceptional.push_back({{"sigma", path_generators()[g]}, {"at", b.str()}});
        PathWord back = r_sigma_inverse(generator_perm(g), c.path.end);
        reversal = reversal && concat(c.path, back).is_identity() && back == inverse(c.path);
      }
    rep.add("r_sigma/chains", chained);
    rep.add("r_sigma/ties", ties.empty(), {{"ties", ties}});
    rep.add("r_sigma_inverse/reverses", reversal, {{"exceptional_cases", exceptional}});
  }

  // control case: r_sigma . r_sigma^-1 at the fixed basepoint
  for (int g = 0; g < 3; ++g) {
    PathWord p = path_of({{g, 1}, {g, -1}});
    rep.add("r" + path_generators()[g] + ".r" + path_generators()[g] + "^-1=1", p.is_identity(), p.to_json());
  }

  // r(23) . r(24) and its cube, the lift of ((23)(24))^3
  {
    PathWord p = path_of({{2, 1}, {1, 1}});
    PathWord p3 = path_of({{2, 1}, {1, 1}, {2, 1}, {1, 1}, {2, 1}, {1, 1}});
    json d = {{"product", p.to_json()}, {"cube", p3.to_json()}};
    rep.add("r(23).r(24)=(1,t_y^2)", is_trivial_times_ty_power(p, 2), d["product"]);
    rep.add("(r(23).r(24))^3=(1,t_y^6)", is_trivial_times_ty_power(p3, 6), d["cube"]);
  }

  // r(12) . r(12): a turn about 1 in x, a turn about infinity in y, all arcs positive
  {
    PathWord p = path_of({{0, 1}, {0, 1}});
    auto lx = loop_about(p.x);
    auto wy = winding(p.y);
    bool positive = std::all_of(p.y.begin(), p.y.end(), [](const Move& m) { return m.forward(); });
    bool ok = p.is_loop() && lx && lx->point == Sym::one && lx->turns == 1 && positive && wy[Sym::inf] == 2;
    PathWord inv = path_of({{0, -1}});
    json d = p.to_json();
    json wj = json::object();
    for (const auto& [pt, h] : wy) wj[sym_str(pt)] = h / 2.0;
    d["y_turns"] = wj;
    rep.add("r(12).r(12)", ok, d);
    rep.add("r(12)!=r(12)^-1", !(inv == path_of({{0, 1}})), inv.to_json());
  }

  // freeness evidence: lifts of the S4 relations are non-trivial
  {
    json d = json::object();
    bool ok = true;
    for (int g = 0; g < 3; ++g) {
      std::vector<std::size_t> len;
      GenWord w;
      for (int n = 1; n <= 4; ++n) {
        w.push_back({g, 1});
        w.push_back({g, 1});
        PathWord p = path_of(w);
        len.push_back(p.x.size() + p.y.size());
      }
      bool grows = std::is_sorted(len.begin(), len.end()) && len.front() > 0 &&
                   std::adjacent_find(len.begin(), len.end()) == len.end();
      ok = ok && grows;
      d["r" + path_generators()[g] + "^2"] = {{"word", path_of({{g, 1}, {g, 1}}).str()}, {"lengths", len}};
    }
    for (auto [a, c] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}}) {
      GenWord w;
      for (int k = 0; k < 3; ++k) {
        w.push_back({a, 1});
        w.push_back({c, 1});
      }
      PathWord p = path_of(w);
      ok = ok && p.is_loop() && !p.is_identity();
      d["(r" + path_generators()[a] + ".r" + path_generators()[c] + ")^3"] = p.str();
    }
    rep.add("freeness/relation_lifts_nontrivial", ok, d);
  }

  // homomorphisms on every reduced word of length <= 6
  {
    auto words = all_words(6);
    bool ups = true, ends = true;
    std::size_t trivial = 0;
    json witness;
    for (const auto& w : words) {
      Perm s = to_s4(w);
      ups = ups && upsilon(to_group_word(w)) == s;
      PathWord p = path_of(w);
      ends = ends && p.end == s4_act(s, fixed_base());
      if (!w.empty() && p.is_identity() && trivial++ == 0) witness = genword_str(w);
    }
    rep.add("upsilon(T(p))=to_s4(p)", ups, {{"words", words.size()}, {"max_length", 6}});
    rep.add("end(p)=to_s4(p).(01,01)", ends, {{"words", words.size()}});
    // r(24) and r(23) leave (01,01) along the same arc, so some reduced words give the identity path
    rep.meta["words_with_identity_path"] = {{"count", trivial}, {"shortest", witness}};
  }

  // images of the generators
  {
    bool ok = true;
    const std::array<std::string, 3> mats{"R1", "R2", "R3"};
    for (int g = 0; g < 3; ++g) {
      ok = ok && to_pu21({{g, 1}}) == builtin3(mats[g]) && to_s4({{g, 1}}) == generator_perm(g) &&
           upsilon(to_group_word({{g, 1}})) == generator_perm(g);
    }
    ok = ok && proj_identity(to_pu21({})) && to_s4({}).is_identity();
    Perm s = to_s4({{2, 1}, {1, 1}});
    rep.add("T/generators", ok, {{"r(23).r(24)", {{"matrix_word", "R3 R2"}, {"s4", s.cycles()}}}});
  }
  return rep;
}

}  // namespace picard
