#include <picard/cocycle.hpp>

#include <gtest/gtest.h>

using namespace picard;

namespace {

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.pass) ADD_FAILURE() << r.name << ": " << c.id << " " << c.detail.dump();
  return r.all_pass();
}

ArgMatrix compose(const ArgMatrix& a, const ArgMatrix& b) {
  ArgMatrix r(3, std::vector<Cyc>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m) r[i][j] += a[i][m] * b[m][j];
  return r;
}

}  // namespace

class Theorem2 : public ::testing::TestWithParam<int> {};

TEST_P(Theorem2, EveryRelationMatches) {
  Report r = verify_theorem2({GetParam()});
  EXPECT_TRUE(all_pass(r));
  EXPECT_EQ(r.checks.size(), 2 * theorem2_specs().size());
}

TEST_P(Theorem2, SixTermR3Arguments) {
  Report r = derive_R3_six(GetParam());
  EXPECT_TRUE(all_pass(r));
}

INSTANTIATE_TEST_SUITE_P(Weights, Theorem2, ::testing::Values(1, 2, 3, 4));

TEST(Cocycle, GroupRelationsAreIdentities) {
  for (const auto& s : theorem2_specs()) EXPECT_TRUE(proj_identity(eval_word(s.group_relation))) << s.id;
}

TEST(Cocycle, ArgumentsCompose) {
  // the argument matrix of a product is a product of argument matrices, in one fixed order
  const std::vector<std::string> n{"R", "P", "R1", "R2", "R3"};
  for (const auto& a : n)
    for (const auto& b : n) {
      ArgMatrix ab = word_args(builtin3(a) * builtin3(b));
      ArgMatrix ga = word_args(builtin3(a)), gb = word_args(builtin3(b));
      EXPECT_EQ(ab, compose(ga, gb)) << a << " " << b;
    }
}

TEST(Cocycle, ArgsRatio) {
  ArgMatrix a = parse_args("X0, X1, X2");
  ArgMatrix b = parse_args("-X0, -X1, -X2");
  ASSERT_TRUE(args_ratio(a, b).has_value());
  EXPECT_EQ(*args_ratio(a, b), Cyc(-1));
  EXPECT_FALSE(args_ratio(a, parse_args("2*X0, 2*X1, 2*X2")).has_value());
  EXPECT_FALSE(args_ratio(a, parse_args("X0, -X1, X2")).has_value());
  EXPECT_THROW(parse_args("X0, X1"), std::invalid_argument);
}

TEST(Cocycle, Theorem1Symbolic) {
  for (int d : {0, 2, 10, 20}) EXPECT_TRUE(all_pass(verify_theorem1(d))) << d;
  EXPECT_THROW(verify_theorem1(3), std::invalid_argument);
}

TEST(Cocycle, WeightMustBePositive) { EXPECT_THROW(term_from_word("R", 0), std::invalid_argument); }
