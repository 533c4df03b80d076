#include <picard/matgroup.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace picard;

namespace {

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) ADD_FAILURE() << r.name << ": " << c.id << " " << c.detail.dump();
  return r.all_pass();
}

// Hermitian form 2 Re(a0 conj(b2)) + a1 conj(b1) evaluated on columns, by explicit sums
Cyc hermitian(const Mat3& g, int c1, int c2) {
  return g(0, c1) * g(2, c2).conj() + g(2, c1) * g(0, c2).conj() + g(1, c1) * g(1, c2).conj();
}

}  // namespace

TEST(Matgroup, Presentations) {
  for (const auto& n : presentation_names()) EXPECT_TRUE(all_pass(verify_presentation(n))) << n;
}

TEST(Matgroup, MembershipByColumns) {
  // columns of g are J0-orthonormal up to the pairing of the first and last
  for (const auto& n : pu21_names()) {
    const Mat3& g = builtin3(n);
    EXPECT_TRUE(pu21_member(g)) << n;
    EXPECT_EQ(hermitian(g, 0, 0), Cyc(0)) << n;
    EXPECT_EQ(hermitian(g, 2, 2), Cyc(0)) << n;
    EXPECT_EQ(hermitian(g, 1, 1), Cyc(1)) << n;
    EXPECT_EQ(hermitian(g, 0, 2), Cyc(1)) << n;
  }
  EXPECT_TRUE(all_pass(verify_membership()));
}

TEST(Matgroup, SymplecticOrder) {
  const IntMat6& m = std::get<IntMat6>(builtin("M"));
  IntMat6 p = identity6();
  int order = 0;
  for (int n = 1; n <= 24 && !order; ++n) {
    p = mul6(p, m);
    if (p == identity6()) order = n;
  }
  EXPECT_EQ(order, 3);
  EXPECT_EQ(element_order(m, 24).value, std::optional<long>(3));
}

TEST(Matgroup, WordParsing) {
  EXPECT_EQ(eval_word("R1 R1^-1"), Mat3::identity());
  EXPECT_TRUE(proj_identity(eval_word("(R3 R1 R2)^2 R^-1")));
  EXPECT_TRUE(proj_identity(eval_word("R1^6")));
  EXPECT_THROW(parse_word("R1 ^"), std::exception);
  EXPECT_THROW(eval_word("Q7"), std::invalid_argument);
}

TEST(Matgroup, InverseIsInverse) {
  for (const auto& n : pu21_names()) {
    const Mat3& g = builtin3(n);
    EXPECT_EQ(g * inverse(g), Mat3::identity()) << n;
  }
}

TEST(Matgroup, UpsilonHomomorphism) {
  EXPECT_TRUE(all_pass(verify_upsilon()));
  // random words: the image of a product is the composite of the images
  std::mt19937 g(9);
  const std::vector<std::string> names{"R1", "R2", "R3"};
  for (int n = 0; n < 300; ++n) {
    GroupWord a, b;
    for (int k = 0; k < 5; ++k) a.letters.push_back({names[g() % 3], (g() % 2) ? 1L : -1L});
    for (int k = 0; k < 4; ++k) b.letters.push_back({names[g() % 3], (g() % 2) ? 1L : -1L});
    EXPECT_EQ(upsilon(a * b), upsilon(b).after(upsilon(a)));
    EXPECT_EQ(upsilon(a * b, Composition::last_letter_first),
              upsilon(a, Composition::last_letter_first).after(upsilon(b, Composition::last_letter_first)));
  }
}

TEST(Matgroup, PermBasics) {
  Perm t = Perm::transposition(1, 2);
  EXPECT_TRUE(t.after(t).is_identity());
  EXPECT_EQ(t.cycles(), "(12)");
  Perm c = Perm::transposition(1, 2).after(Perm::transposition(2, 3));
  EXPECT_EQ(c.after(c).after(c), Perm{});
  EXPECT_EQ(c.inverse().after(c), Perm{});
}
