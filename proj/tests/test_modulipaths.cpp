#include <picard/modulipaths.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace picard;

namespace {

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) ADD_FAILURE() << r.name << ": " << c.id << " " << c.detail.dump();
  return r.all_pass();
}

TangBase tb(const char* s) { return parse_tangbase(s); }

std::vector<Perm> all_perms() {
  std::vector<Perm> out;
  for (const auto& [p, _] : s4_decompositions()) out.push_back(p);
  return out;
}

std::set<TangBase> orbit(const TangBase& b) {
  std::set<TangBase> o;
  for (const auto& p : all_perms()) o.insert(s4_act(p, b));
  return o;
}

GenWord random_word(std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> g(0, 2), e(0, 1);
  GenWord w;
  while (static_cast<int>(w.size()) < len) {
    GenLetter l{g(rng), e(rng) ? 1 : -1};
    if (!w.empty() && w.back() == GenLetter{l.gen, -l.exp}) continue;
    w.push_back(l);
  }
  return w;
}

GenWord inverse_word(const GenWord& w) {
  GenWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->gen, -it->exp});
  return r;
}

}  // namespace

TEST(Table, Examples) {
  EXPECT_EQ(s4_act(Perm::transposition(1, 2), tb("(01,01)")), tb("(1x0,∞y0)"));
  EXPECT_EQ(s4_act(Perm::transposition(2, 4), tb("(10,10)")), tb("(10,∞0)"));
  EXPECT_EQ(s4_act(Perm::transposition(3, 4), tb("(∞y0,10)")), tb("(1x0,1x0)"));
  for (const auto& b : basepoints()) EXPECT_EQ(s4_act(Perm{}, b), b);
  EXPECT_EQ(basepoints().size(), 16u);
  EXPECT_EQ(s4_decompositions().size(), 24u);
}

TEST(Table, IsALeftAction) {
  for (const auto& p : all_perms())
    for (const auto& q : all_perms())
      for (const auto& b : basepoints()) ASSERT_EQ(s4_act(p.after(q), b), s4_act(p, s4_act(q, b)));
}

TEST(Table, OrbitOfFixedBase) {
  auto o = orbit(fixed_base());
  EXPECT_EQ(o.size(), 8u);
  EXPECT_TRUE(o.count(tb("(1x0,∞y0)")));
}

TEST(Table, OutsideVocabularyThrows) {
  EXPECT_THROW(s4_act(Perm{}, tb("(0∞,10)")), std::invalid_argument);
  EXPECT_THROW(apply_generator(0, tb("(∞0,∞0)")), std::invalid_argument);
}

TEST(Parse, Basepoints) {
  for (const auto& b : basepoints()) EXPECT_EQ(parse_tangbase(b.str()), b);
  EXPECT_EQ(tb("(0inf, 1x_0)"), tb("(0∞,1x0)"));
  EXPECT_EQ(tb("(oo0, ooy0)"), tb("(∞0,∞y0)"));
  EXPECT_THROW(tb("(01)"), ParseError);
  EXPECT_THROW(tb("(0q,01)"), ParseError);
}

TEST(Parse, GeneratorWords) {
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    GenWord w = random_word(rng, i % 7);
    EXPECT_EQ(parse_genword(genword_str(w)), w);
  }
  EXPECT_TRUE(parse_genword("1").empty());
  EXPECT_THROW(parse_genword("r(13)"), ParseError);
  EXPECT_THROW(parse_genword("s(12)"), ParseError);
}

TEST(Moves, ReduceCancelsInversePairs) {
  const Arrow a = parse_arrow("01");
  Move s = s_move(Coord::x, a);
  Move t = t_move(Coord::x, s.to);
  EXPECT_TRUE(reduce({s, t, t.inverse(), s.inverse()}).empty());
  EXPECT_EQ(reduce({s, t, t}).size(), 3u);
  EXPECT_NE(t.inverse(), t.conjugate());
  EXPECT_EQ(inverse(inverse(Moves{s, t})), (Moves{s, t}));
}

TEST(Moves, TSquaredIsAForwardLoop) {
  for (const auto& a : coordinate_arrows()) {
    Moves w = t_squared(Coord::y, a);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(walk(Coord::y, a, w), a);
    EXPECT_TRUE(w[0].forward() && w[1].forward());
    auto l = loop_about(w);
    ASSERT_TRUE(l.has_value());
    EXPECT_EQ(l->turns, 1);
    EXPECT_EQ(l->point, a.base);
  }
}

TEST(Paths, RSigmaLandsOnTheTableImage) {
  for (const auto& b : orbit(fixed_base()))
    for (int g = 0; g < 3; ++g) {
      const Perm& s = generator_perm(g);
      PathWord p = r_sigma(s, b);
      EXPECT_TRUE(chains(p)) << p.str();
      EXPECT_EQ(p.start, b);
      EXPECT_EQ(p.end, s4_act(s, b)) << p.str();
      PathWord q = r_sigma_inverse(s, p.end);
      EXPECT_EQ(q.end, b);
      EXPECT_TRUE(concat(p, q).is_identity()) << p.str() << " then " << q.str();
    }
}

TEST(Paths, RTwelveAtFixedBase) {
  PathWord p = r_sigma(Perm::transposition(1, 2), fixed_base());
  EXPECT_EQ(moves_str(p.x), "s.t");
  EXPECT_EQ(moves_str(p.y), "t.s.t");
  EXPECT_EQ(p.end, tb("(1x0,∞y0)"));
}

TEST(Paths, IdentityIsNeutral) {
  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    PathWord p = path_of(random_word(rng, 1 + i % 5));
    EXPECT_EQ(concat(identity_path(p.start), p), p);
    EXPECT_EQ(concat(p, identity_path(p.end)), p);
  }
}

TEST(Paths, InsertedCancellationsReduceAway) {
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    GenWord w = random_word(rng, 1 + i % 5);
    GenWord v = random_word(rng, 1 + i % 3);
    std::size_t cut = rng() % (w.size() + 1);
    GenWord padded(w.begin(), w.begin() + cut);
    for (const auto& l : v) padded.push_back(l);
    for (const auto& l : inverse_word(v)) padded.push_back(l);
    padded.insert(padded.end(), w.begin() + cut, w.end());
    EXPECT_EQ(path_of(padded), path_of(w)) << genword_str(padded);
  }
}

TEST(Paths, EndpointFollowsUpsilon) {
  for (const auto& w : all_words(4)) {
    PathWord p = path_of(w);
    ASSERT_EQ(p.end, s4_act(to_s4(w), fixed_base())) << genword_str(w);
    ASSERT_TRUE(chains(p));
  }
}

TEST(Paths, InverseWordGivesInversePath) {
  std::mt19937 rng(13);
  for (int i = 0; i < 30; ++i) {
    GenWord w = random_word(rng, 1 + i % 6);
    PathWord p = path_of(w);
    EXPECT_EQ(path_of(inverse_word(w), p.end), inverse(p)) << genword_str(w);
  }
}

TEST(Paths, ConcatMismatchThrows) {
  PathWord p = r_sigma(Perm::transposition(1, 2), fixed_base());
  EXPECT_THROW(concat(p, p), BasepointMismatch);
}

TEST(Paths, TwentyThreeTwentyFour) {
  PathWord p = path_of(parse_genword("r(23) . r(24)"));
  EXPECT_TRUE(p.is_loop());
  EXPECT_TRUE(is_trivial_times_ty_power(p, 2)) << p.str();
  PathWord cube = concat(concat(p, p), p);
  EXPECT_TRUE(is_trivial_times_ty_power(cube, 6)) << cube.str();
  EXPECT_FALSE(is_trivial_times_ty_power(cube, 18));
}

TEST(Paths, Winding) {
  PathWord p = path_of(parse_genword("r(12) . r(12)"));
  EXPECT_TRUE(p.is_loop());
  auto l = loop_about(p.x);
  ASSERT_TRUE(l.has_value());
  EXPECT_EQ(l->point, Sym::one);
  EXPECT_EQ(l->turns, 1);
  EXPECT_EQ(winding(p.y)[Sym::inf], 2);
}

TEST(Paths, Suites) {
  EXPECT_TRUE(all_pass(verify_table()));
  EXPECT_TRUE(all_pass(verify_paths()));
}
