#include <gtest/gtest.h>

#include "support.hpp"

using namespace nmr;
using nmr::testing::load;
using nmr::testing::q;

TEST(Cwa, UnmentionedAtomAssumedFalse) {
  auto kb = load("cwa-birds.kb");
  auto aug = cwa_augment(kb);
  const Atom flies_chilly{"Flies", {Term::constant("chilly")}, false};
  EXPECT_NE(std::find(aug.assumed_negations.begin(), aug.assumed_negations.end(), flies_chilly), aug.assumed_negations.end());
  EXPECT_TRUE(aug.consistent);
  EXPECT_TRUE(cwa_entails(kb, q(kb, "-Flies(chilly)")));
}

TEST(Cwa, NonMonotonicInNewFacts) {
  auto kb = load("cwa-birds.kb");
  EXPECT_TRUE(cwa_entails(kb, q(kb, "-Flies(chilly)")));
  kb.facts.push_back(q(kb, "Flies(chilly)"));
  EXPECT_FALSE(cwa_entails(kb, q(kb, "-Flies(chilly)")));
}

TEST(Cwa, NothingToAssumeWhenEverythingEntailed) {
  auto kb = parse_kb("const a.\npred P/1, Q/1.\nfact P(a).\nfact Q(a).\n");
  EXPECT_TRUE(cwa_augment(kb).assumed_negations.empty());
}

TEST(Cwa, EmptyKbNegatesEverything) {
  auto kb = load("empty.kb");
  EXPECT_TRUE(cwa_entails(kb, q(kb, "-p(a)")));
}

TEST(Cwa, InconsistentAugmentationEntailsEverything) {
  auto kb = load("cwa-inconsistent.kb");
  CwaEngine engine(kb);
  EXPECT_FALSE(engine.augmentation().consistent);
  EXPECT_TRUE(engine.entails(q(kb, "Swims(t)")));
  EXPECT_TRUE(engine.entails(q(kb, "-Swims(t)")));
  ASSERT_FALSE(engine.warnings().empty());
  EXPECT_NE(engine.warnings().back().find("inconsistent"), std::string::npos);
}

TEST(Cwa, DisjunctionLeavesBothDisjunctsAssumedFalse) {
  // The naive closure of "P(a) | Q(a)" is inconsistent: neither disjunct is entailed.
  auto kb = parse_kb("const a.\npred P/1, Q/1.\nfact P(a) | Q(a).\n");
  auto aug = cwa_augment(kb);
  EXPECT_EQ(aug.assumed_negations.size(), 2u);
  EXPECT_FALSE(aug.consistent);
}

TEST(Cwa, AgreesWithPerAtomOracleOnRandomKbs) {
  for (std::uint32_t seed = 0; seed < 100; ++seed) {
    auto kb = nmr::testing::RandomKb(seed).kb();
    auto aug = cwa_augment(kb);
    EXPECT_EQ(aug.assumed_negations, nmr::testing::cwa_oracle_negations(aug.base)) << to_source(kb);
  }
}

TEST(CwaDomainClosure, SingleConstantEverythingIsIt) {
  auto kb = parse_kb("const t.\npred Bird/1, Flies/1.\nfact Bird(t).\nall g: Bird(x) -> Flies(x).\n");
  EXPECT_TRUE(cwad_entails(kb, q(kb, "x = t")));
  EXPECT_THROW(cwa_entails(kb, q(kb, "x = t")), QueryError);
}

TEST(CwaDomainClosure, EveryIndividualIsNamed) {
  auto kb = load("cwa-birds.kb");
  EXPECT_TRUE(cwad_entails(kb, q(kb, "x = tweety | x = chilly")));
  EXPECT_TRUE(cwad_entails(kb, q(kb, "Bird(x)")));
  EXPECT_FALSE(cwad_entails(kb, q(kb, "Flies(x)")));
}

TEST(CwaDomainClosure, FlagMakesBothRelationsCoincide) {
  auto kb = load("cwa-birds.kb");
  kb.flags.domain_closure = true;
  for (const char* text : {"-Flies(chilly)", "Bird(x)", "Flies(x)", "x = tweety | x = chilly", "Flies(tweety) & -Flies(chilly)"})
    EXPECT_EQ(cwa_entails(kb, q(kb, text)), cwad_entails(kb, q(kb, text))) << text;
}

TEST(Cwa, RejectsBeliefQueries) {
  auto kb = load("cwa-birds.kb");
  EXPECT_THROW(cwa_entails(kb, q(kb, "B(Flies(tweety))")), QueryError);
}

TEST(Cwa, IgnoresDefeasibleContentWithWarning) {
  CwaEngine engine(load("tweety.kb"));
  ASSERT_EQ(engine.warnings().size(), 1u);
  EXPECT_NE(engine.warnings()[0].find("g"), std::string::npos);
}
