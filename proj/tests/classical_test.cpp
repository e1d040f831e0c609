#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace nmr;
using nmr::testing::q;

namespace {

GroundTheory theory_of(const std::string& src) { return ground(parse_kb(src)); }

const char* kBirds = "const t.\npred B1/1, F/1.\n";

/// Random ground formula over the given atoms.
Formula random_formula(std::mt19937& rng, const std::vector<Atom>& atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  std::uniform_int_distribution<std::size_t> atom(0, atoms.size() - 1);
  switch (pick(rng)) {
    case 0:
    case 1: return Formula::atom(atoms[atom(rng)]);
    case 2: return Formula::negation(random_formula(rng, atoms, depth - 1));
    case 3: return Formula::conjunction(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 4: return Formula::disjunction(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default: return Formula::implication(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

std::vector<Atom> propositions(std::size_t n) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Atom{"p" + std::string(i < 10 ? "0" : "") + std::to_string(i), {}, false});
  return out;
}

}  // namespace

TEST(Classical, ModusPonens) {
  auto kb = parse_kb(std::string(kBirds) + "fact B1(t).\nall g: B1(x) -> F(x).\n");
  EXPECT_TRUE(entails(ground(kb), q(kb, "F(t)")));
}

TEST(Classical, EmptyTheoryEntailsNothingContingent) {
  auto kb = parse_kb(kBirds);
  EXPECT_FALSE(entails(ground(kb), q(kb, "F(t)")));
  EXPECT_TRUE(entails(ground(kb), q(kb, "F(t) | -F(t)")));
}

TEST(Classical, InconsistentTheoryEntailsEverything) {
  auto kb = nmr::testing::load("cwa-inconsistent.kb");
  auto t = ground(kb);
  EXPECT_FALSE(consistent(t));
  EXPECT_TRUE(entails(t, q(kb, "Swims(t)")));
  EXPECT_TRUE(entails(t, q(kb, "-Swims(t)")));
}

TEST(Classical, ModelCounts) {
  EXPECT_EQ(models(theory_of("const a.\npred P/1.\n")).size(), 2u);
  EXPECT_EQ(models(theory_of("const a.\npred P/1.\nfact P(a).\nfact -P(a).\n")).size(), 0u);
  EXPECT_TRUE(consistent(theory_of("const a.\npred P/1.\nfact P(a).\n")));
  EXPECT_FALSE(consistent(theory_of("const a.\npred P/1.\nfact P(a).\nfact -P(a).\n")));
}

TEST(Classical, TweetyModelCountMatchesTruthTable) {
  auto t = ground(translate(nmr::testing::load("tweety.kb"), SemanticsId::circumscription));
  auto oracle = nmr::testing::truth_table_models(t.vocabulary, t.facts, t.unique_names);
  EXPECT_EQ(models(t), oracle);
  EXPECT_EQ(oracle.size(), 3u);  // Ab_g(chilly) forced; tweety free between Ab and Flies
}

TEST(Classical, ModelsAreLexicographicAndDistinct) {
  auto t = theory_of("const a, b.\npred P/1, Q/1.\nfact P(a) | Q(b).\n");
  auto ms = models(t);
  for (std::size_t i = 1; i < ms.size(); ++i) EXPECT_LT(ms[i - 1].values(), ms[i].values());
  EXPECT_EQ(ms, models(t));
}

TEST(Classical, RefutationIdentity) {
  std::mt19937 rng(7);
  auto atoms = propositions(6);
  for (int round = 0; round < 200; ++round) {
    Solver s(atoms, false);
    s.add(random_formula(rng, atoms, 3));
    s.add(random_formula(rng, atoms, 3));
    auto phi = random_formula(rng, atoms, 3);
    std::vector<Formula> neg{Formula::negation(phi)};
    EXPECT_EQ(s.entails(phi), !s.satisfiable(neg));
  }
}

TEST(Classical, AgreesWithTruthTableUpTo12Atoms) {
  std::mt19937 rng(42);
  for (std::size_t n = 1; n <= 12; ++n) {
    auto atoms = propositions(n);
    for (int round = 0; round < 12; ++round) {
      std::vector<Formula> theory;
      for (int k = 0; k < 3; ++k) theory.push_back(random_formula(rng, atoms, 3));
      auto phi = random_formula(rng, atoms, 3);
      auto oracle = nmr::testing::truth_table_models(atoms, theory, false);

      GroundTheory t;
      t.vocabulary = atoms;
      t.facts = theory;
      EXPECT_EQ(models(t), oracle) << "n=" << n;
      EXPECT_EQ(consistent(t), !oracle.empty());
      const bool every = std::all_of(oracle.begin(), oracle.end(), [&](const Interpretation& m) { return evaluate(phi, m, false); });
      EXPECT_EQ(entails(t, phi), every) << to_string(phi);
    }
  }
}

TEST(Classical, EqualityUnderUniqueNames) {
  auto kb = parse_kb("const a, b.\npred P/1.\nflag unique-names.\n");
  EXPECT_TRUE(entails(ground(kb), q(kb, "a = a")));
  EXPECT_TRUE(entails(ground(kb), q(kb, "a != b")));
  EXPECT_FALSE(consistent([&] {
    auto t = ground(kb);
    t.facts.push_back(q(kb, "a = b"));
    return t;
  }()));
}

TEST(Classical, RejectsNonClassicalQueries) {
  auto kb = parse_kb(kBirds);
  EXPECT_THROW(entails(ground(kb), q(kb, "B(F(t))")), QueryError);
  EXPECT_THROW(entails(ground(kb), q(kb, "F(y)")), QueryError);
}

TEST(Classical, InterpretationAccess) {
  auto kb = parse_kb("const a.\npred P/1, Q/1.\nfact P(a).\nfact -Q(a).\n");
  auto ms = models(ground(kb));
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_TRUE(ms[0].value(Atom{"P", {Term::constant("a")}, false}));
  EXPECT_EQ(ms[0].to_literals(), "P(a) -Q(a)");
  EXPECT_THROW(ms[0].value(Atom{"R", {Term::constant("a")}, false}), Error);
}
