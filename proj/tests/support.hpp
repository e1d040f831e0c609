#pragma once

// Fixture loading, a random KB generator and brute-force oracles shared by
// the unit, invariant and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nmr/analysis.hpp"
#include "nmr/parser.hpp"

namespace nmr::testing {

inline std::string sample_path(const std::string& name) { return std::string(NMR_SAMPLES) + "/" + name; }

inline std::string read_sample(const std::string& name) {
  std::ifstream in(sample_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline KnowledgeBase load(const std::string& name) { return parse_kb(read_sample(name)); }

inline Formula q(const KnowledgeBase& kb, const std::string& text) { return parse_formula(text, kb); }

// Random KBs.

struct RandomKbLimits {
  int max_constants = 3;
  int max_predicates = 3;
  int max_defeasible = 2;
  int max_defaults = 2;
  int max_modal_schemas = 3;  // B-nodes per schema, counted after translation
  int max_facts = 4;
  int max_universal = 1;
  bool force_unique_names = false;
};

/// Source text of a random valid KB over unary predicates P0.. and constants c0...
class RandomKb {
 public:
  explicit RandomKb(std::uint32_t seed, RandomKbLimits limits = {}) : rng_(seed), lim_(limits) {}

  std::string source() {
    const int nc = pick(1, lim_.max_constants);
    const int np = pick(1, lim_.max_predicates);
    preds_ = np;
    std::ostringstream out;
    out << "const ";
    for (int i = 0; i < nc; ++i) out << (i ? ", " : "") << "c" << i;
    out << ".\npred ";
    for (int i = 0; i < np; ++i) out << (i ? ", " : "") << "P" << i << "/1";
    out << ".\n";
    if (lim_.force_unique_names || coin()) out << "flag unique-names.\n";
    const int nf = pick(0, lim_.max_facts);
    for (int i = 0; i < nf; ++i) out << "fact " << literal("c" + std::to_string(pick(0, nc - 1))) << ".\n";
    const int nu = pick(0, lim_.max_universal);
    for (int i = 0; i < nu; ++i) out << "all u" << i << ": " << body() << " -> " << literal("x") << ".\n";
    const int ng = pick(0, lim_.max_defeasible);
    for (int i = 0; i < ng; ++i) out << "def g" << i << ": " << body() << " ~> " << literal("x") << ".\n";
    const int nd = pick(0, lim_.max_defaults);
    for (int i = 0; i < nd; ++i) {
      auto just = literal("x");
      out << "default d" << i << ": " << literal("x") << " : " << just << " / " << (coin() ? just : literal("x")) << ".\n";
    }
    const int na = pick(0, std::max(0, lim_.max_modal_schemas - ng));
    for (int i = 0; i < na; ++i) {
      switch (pick(0, 2)) {
        case 0: out << "ael a" << i << ": " << literal("x") << " & -B(" << literal("x") << ") -> " << literal("x") << ".\n"; break;
        case 1: out << "ael a" << i << ": B(" << literal("x") << ") -> " << literal("x") << ".\n"; break;
        default: out << "ael a" << i << ": -B(" << literal("x") << ") -> " << literal("x") << ".\n"; break;
      }
    }
    return out.str();
  }

  KnowledgeBase kb() { return parse_kb(source()); }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return pick(0, 1) == 1; }
  std::string literal(const std::string& arg) {
    return std::string(coin() ? "" : "-") + "P" + std::to_string(pick(0, preds_ - 1)) + "(" + arg + ")";
  }
  std::string body() { return pick(0, 3) == 0 ? "(" + literal("x") + " & " + literal("x") + ")" : literal("x"); }

  std::mt19937 rng_;
  RandomKbLimits lim_;
  int preds_ = 1;
};

// Oracles.

/// Every assignment over `vocabulary` satisfying all formulas, by truth table.
inline std::vector<Interpretation> truth_table_models(const std::vector<Atom>& vocabulary, const std::vector<Formula>& formulas,
                                                      bool unique_names) {
  auto shared = std::make_shared<const std::vector<Atom>>(vocabulary);
  std::vector<Interpretation> out;
  const std::size_t n = vocabulary.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (bits >> (n - 1 - i)) & 1;
    Interpretation interp(shared, v);
    if (std::all_of(formulas.begin(), formulas.end(), [&](const Formula& f) { return evaluate(f, interp, unique_names); }))
      out.push_back(interp);
  }
  return out;
}

/// Minimal models by pairwise dominance over all models, comparing Ab atoms as bitmasks.
inline std::vector<Interpretation> dominance_minimal_models(const std::vector<Interpretation>& all) {
  std::vector<std::uint64_t> masks;
  for (const auto& m : all) {
    std::uint64_t mask = 0;
    for (std::size_t k = 0, bit = 0; k < m.size(); ++k)
      if (m.vocabulary()[k].abnormal) {
        if (m.value(k)) mask |= std::uint64_t{1} << bit;
        ++bit;
      }
    masks.push_back(mask);
  }
  std::vector<Interpretation> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j)
      dominated = (masks[j] & ~masks[i]) == 0 && masks[j] != masks[i];
    if (!dominated) out.push_back(all[i]);
  }
  return out;
}

/// Atoms false in at least one model of the base: exactly the unentailed ones.
inline std::vector<Atom> cwa_oracle_negations(const GroundTheory& base) {
  std::vector<Atom> out;
  const auto ms = models(base);
  for (std::size_t k = 0; k < base.vocabulary.size(); ++k)
    if (std::any_of(ms.begin(), ms.end(), [&](const Interpretation& m) { return !m.value(k); }))
      out.push_back(base.vocabulary[k]);
  return out;
}

/// Generating sets found by checking every subset of the ground defaults.
inline std::vector<std::vector<std::size_t>> subset_oracle_extensions(const DefaultTheory& t) {
  Solver solver(t.facts);
  const std::size_t n = t.defaults.size();
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::vector<Formula> kernel;
    for (std::size_t d = 0; d < n; ++d)
      if (s >> d & 1) kernel.push_back(t.defaults[d].conclusion);
    bool fixpoint = true;
    for (std::size_t d = 0; d < n && fixpoint; ++d) {
      const bool app = solver.entails(kernel, t.defaults[d].prerequisite) &&
                       !solver.entails(kernel, Formula::negation(t.defaults[d].justification));
      fixpoint = app == static_cast<bool>(s >> d & 1);
    }
    if (!fixpoint) continue;
    std::vector<std::size_t> gen;
    for (std::size_t d = 0; d < n; ++d)
      if (s >> d & 1) gen.push_back(d);
    out.push_back(gen);
  }
  return out;
}

inline bool same_closure(const Solver& solver, const std::vector<Formula>& a, const std::vector<Formula>& b) {
  return solver.entails(a, Formula::conjunction(b)) && solver.entails(b, Formula::conjunction(a));
}

/// Engine extensions and oracle fixpoints describe the same set of extensions.
inline bool same_extensions(const DefaultTheory& t, const std::vector<ExtensionWitness>& engine,
                            const std::vector<std::vector<std::size_t>>& oracle) {
  Solver solver(t.facts);
  auto conclusions = [&](const std::vector<std::size_t>& gen) {
    std::vector<Formula> out;
    for (auto i : gen) out.push_back(t.defaults[i].conclusion);
    return out;
  };
  for (const auto& w : engine)
    if (std::none_of(oracle.begin(), oracle.end(), [&](const auto& g) { return g == w.generating; })) return false;
  for (const auto& g : oracle)
    if (std::none_of(engine.begin(), engine.end(),
                     [&](const ExtensionWitness& w) { return same_closure(solver, conclusions(g), conclusions(w.generating)); }))
      return false;
  // Engine extensions are pairwise distinct.
  for (std::size_t i = 0; i < engine.size(); ++i)
    for (std::size_t j = i + 1; j < engine.size(); ++j)
      if (same_closure(solver, conclusions(engine[i].generating), conclusions(engine[j].generating))) return false;
  return true;
}

/// Self-consistent modal assignments by direct enumeration. Atoms are keyed by
/// printed body; the result lists, per expansion, the bodies believed.
inline std::vector<std::set<std::string>> assignment_oracle_expansions(const GroundTheory& theory) {
  std::vector<Formula> bodies;
  auto visit = [&](auto&& self, const Formula& f) -> void {
    if (f.is(Formula::Kind::belief) && std::find(bodies.begin(), bodies.end(), f.operand()) == bodies.end())
      bodies.push_back(f.operand());
    for (const auto& c : f.children()) self(self, c);
  };
  for (const auto& f : theory.belief_formulas) visit(visit, f);

  GroundTheory objective = theory;
  objective.belief_formulas.clear();
  Solver solver(objective);
  std::vector<std::set<std::string>> out;
  const std::size_t m = bodies.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    auto believed = [&](const Formula& body) {
      for (std::size_t i = 0; i < m; ++i)
        if (bodies[i] == body) return static_cast<bool>(bits >> i & 1);
      return false;
    };
    auto reduce = [&](auto&& self, const Formula& f) -> Formula {
      switch (f.kind()) {
        case Formula::Kind::belief: return believed(f.operand()) ? Formula::top() : Formula::bottom();
        case Formula::Kind::negation: return Formula::negation(self(self, f.operand()));
        case Formula::Kind::conjunction: return Formula::conjunction(self(self, f.left()), self(self, f.right()));
        case Formula::Kind::disjunction: return Formula::disjunction(self(self, f.left()), self(self, f.right()));
        case Formula::Kind::implication: return Formula::implication(self(self, f.left()), self(self, f.right()));
        default: return f;
      }
    };
    std::vector<Formula> kernel;
    for (const auto& f : theory.belief_formulas) kernel.push_back(reduce(reduce, f));
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = solver.entails(kernel, reduce(reduce, bodies[i])) == believed(bodies[i]);
    if (!ok) continue;
    std::set<std::string> in;
    for (std::size_t i = 0; i < m; ++i)
      if (bits >> i & 1) in.insert(to_string(bodies[i]));
    out.push_back(in);
  }
  return out;
}

inline std::vector<std::set<std::string>> engine_expansions(const AutoepistemicEngine& e) {
  std::vector<std::set<std::string>> out;
  for (const auto& w : e.expansions()) {
    std::set<std::string> in;
    for (std::size_t i = 0; i < e.atoms().size(); ++i)
      if (w.assignment[i]) in.insert(to_string(e.atoms()[i].body));
    out.push_back(in);
  }
  return out;
}

// Invariant checks; each returns the violations found.

inline std::vector<std::string> default_fixpoint_violations(const DefaultEngine& engine) {
  std::vector<std::string> out;
  for (const auto& w : engine.extensions())
    if (applicable_defaults(engine.theory(), w.generating) != w.generating) out.push_back("extension is not a fixpoint");
  return out;
}

inline std::vector<std::string> supraclassicality_violations(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  CircumscriptionEngine engine(kb);
  Solver classical(engine.theory());
  for (const auto& a : engine.theory().vocabulary)
    for (const Formula& f : {Formula::atom(a), Formula::negation(Formula::atom(a))})
      if (classical.entails(f) && !engine.entails(f)) out.push_back("classical consequence lost: " + to_string(f));
  return out;
}

inline std::vector<std::string> cwa_completeness_violations(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  CwaEngine engine(kb);
  if (!engine.augmentation().consistent) return out;
  for (const auto& a : engine.augmentation().base.vocabulary) {
    const bool pos = engine.entails(Formula::atom(a)), neg = engine.entails(Formula::negation(Formula::atom(a)));
    if (pos == neg) out.push_back("atom not decided exactly once: " + to_string(a));
  }
  return out;
}

inline std::vector<std::string> stable_set_law_violations(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  AutoepistemicEngine engine(kb);
  std::vector<Formula> extra;
  for (const auto& a : engine.objective_solver().vocabulary()) extra.push_back(Formula::atom(a));
  for (const auto& w : engine.expansions())
    for (auto& v : stable_set_violations(engine, w, extra)) out.push_back(std::move(v));
  return out;
}

}  // namespace nmr::testing
