#pragma once

// Stable expansions of an autoepistemic KB.
//
// An expansion is determined by which of the KB's modal atoms Bφ it
// believes. For a guessed assignment the KB is reduced by replacing each
// Bφ with its assigned truth value, giving an objective kernel; the guess
// is an expansion iff every Bφ is assigned true exactly when the kernel
// entails (the reduction of) φ. Membership of an arbitrary formula ψ in the
// expansion is decided the same way: reduce ψ, then ask the kernel.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nmr/classical.hpp"
#include "nmr/ground.hpp"
#include "nmr/kb.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

struct ModalAtom {
  Formula body;  // the φ of Bφ

  Formula node() const { return Formula::belief(body); }
  friend bool operator==(const ModalAtom&, const ModalAtom&) = default;
};

/// Distinct ground Bφ subformulas, ordered by nesting depth and then by
/// printed form, so inner beliefs always precede the beliefs containing them.
inline std::vector<ModalAtom> modal_atoms(const GroundTheory& theory) {
  std::vector<Formula> bodies;
  auto visit = [&](auto&& self, const Formula& f) -> void {
    for (const auto& c : f.children()) self(self, c);
    if (f.is(Formula::Kind::belief) && std::find(bodies.begin(), bodies.end(), f.operand()) == bodies.end())
      bodies.push_back(f.operand());
  };
  for (const auto& f : theory.belief_formulas) visit(visit, f);
  for (const auto& f : theory.facts) visit(visit, f);
  std::stable_sort(bodies.begin(), bodies.end(), [](const Formula& a, const Formula& b) {
    const auto da = belief_depth(a), db = belief_depth(b);
    if (da != db) return da < db;
    return to_string(a) < to_string(b);
  });
  std::vector<ModalAtom> out;
  for (auto& b : bodies) out.push_back({std::move(b)});
  return out;
}

inline GroundTheory autoepistemic_theory(const KnowledgeBase& kb) {
  GroundTheory t = ground(translate(kb, SemanticsId::autoepistemic));
  t.defaults.clear();
  return t;
}

inline std::vector<ModalAtom> modal_atoms(const KnowledgeBase& kb) { return modal_atoms(autoepistemic_theory(kb)); }

struct ExpansionWitness {
  std::vector<bool> assignment;  // parallel to the engine's modal atoms
  std::vector<Formula> kernel;   // objective facts, then the reduced belief formulas
  bool degenerate = false;       // kernel inconsistent; every modal atom believed
};

/// Replaces belief nodes by truth constants. Listed modal atoms take their
/// assigned value; any other Bψ takes `membership(ψ)`.
template <class Membership>
Formula reduce_beliefs(const Formula& f, const std::vector<ModalAtom>& atoms, const std::vector<bool>& assignment,
                       Membership&& membership) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::belief: {
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i].body == f.operand()) return assignment[i] ? Formula::top() : Formula::bottom();
      return membership(f.operand()) ? Formula::top() : Formula::bottom();
    }
    case K::negation:
      return Formula::negation(reduce_beliefs(f.operand(), atoms, assignment, membership));
    case K::conjunction:
      return Formula::conjunction(reduce_beliefs(f.left(), atoms, assignment, membership),
                                  reduce_beliefs(f.right(), atoms, assignment, membership));
    case K::disjunction:
      return Formula::disjunction(reduce_beliefs(f.left(), atoms, assignment, membership),
                                  reduce_beliefs(f.right(), atoms, assignment, membership));
    case K::implication:
      return Formula::implication(reduce_beliefs(f.left(), atoms, assignment, membership),
                                  reduce_beliefs(f.right(), atoms, assignment, membership));
    default:
      return f;
  }
}

inline constexpr std::size_t kMaxModalAtoms = 20;

class AutoepistemicEngine {
 public:
  explicit AutoepistemicEngine(const KnowledgeBase& kb)
      : kb_(translate(kb, SemanticsId::autoepistemic)), theory_(autoepistemic_theory(kb)), solver_(objective_part(theory_)) {
    for (const auto& d : kb_.defaults) warnings_.push_back("autoepistemic: default rule " + d.id + " ignored");
    atoms_ = modal_atoms(theory_);
    if (atoms_.size() > kMaxModalAtoms)
      throw Error(std::to_string(atoms_.size()) + " modal atoms; at most " + std::to_string(kMaxModalAtoms) + " are supported");
    if (std::any_of(atoms_.begin(), atoms_.end(), [](const ModalAtom& a) { return belief_depth(a.body) > 0; }))
      warnings_.push_back("autoepistemic: nested beliefs present; reduced innermost-first");
    search();
    if (expansions_.empty()) warnings_.push_back("autoepistemic: no stable expansion");
    if (expansions_.size() > 1) warnings_.push_back("autoepistemic: " + std::to_string(expansions_.size()) + " stable expansions");
    for (std::size_t i = 0; i < expansions_.size(); ++i)
      if (expansions_[i].degenerate)
        warnings_.push_back("autoepistemic: expansion " + std::to_string(i + 1) + " is inconsistent (degenerate)");
  }

  /// Kernel for a guessed assignment: objective facts plus reduced belief formulas.
  std::vector<Formula> kernel_for(const std::vector<bool>& assignment) const {
    std::vector<Formula> out;
    for (const auto& f : theory_.belief_formulas)
      out.push_back(reduce_beliefs(f, atoms_, assignment, [](const Formula&) { return false; }));
    return out;
  }

  /// ψ ∈ ε for the expansion represented by `w`; ψ may contain belief nodes.
  bool holds(const ExpansionWitness& w, const Formula& psi) const {
    auto extra = reduced_kernel(w);
    auto membership = [&](const Formula& body) { return holds(w, body); };
    Formula reduced = reduce_beliefs(psi, atoms_, w.assignment, membership);
    return solver_.entails(extra, reduced);
  }

  bool entails(const Formula& query, Mode mode) const {
    Formula q = close_query(kb_, query, kb_.flags.domain_closure);
    for (const auto& w : expansions_) {
      const bool in = holds(w, q);
      if (mode == Mode::skeptical && !in) return false;
      if (mode == Mode::credulous && in) return true;
    }
    return mode == Mode::skeptical;
  }

  /// Self-consistency of a guessed assignment.
  bool self_consistent(const std::vector<bool>& assignment) const {
    auto extra = kernel_for(assignment);
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      Formula body = reduce_beliefs(atoms_[i].body, atoms_, assignment, [](const Formula&) { return false; });
      if (solver_.entails(extra, body) != assignment[i]) return false;
    }
    return true;
  }

  const KnowledgeBase& translated() const { return kb_; }
  const GroundTheory& theory() const { return theory_; }
  const std::vector<ModalAtom>& atoms() const { return atoms_; }
  const std::vector<ExpansionWitness>& expansions() const { return expansions_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const Solver& objective_solver() const { return solver_; }

 private:
  static GroundTheory objective_part(GroundTheory t) {
    t.belief_formulas.clear();
    return t;
  }

  std::vector<Formula> reduced_kernel(const ExpansionWitness& w) const {
    return {w.kernel.begin() + static_cast<std::ptrdiff_t>(theory_.facts.size()), w.kernel.end()};
  }

  void search() {
    const std::size_t m = atoms_.size();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
      // Atom 0 is the most significant bit: enumeration order is lexicographic.
      std::vector<bool> assignment(m);
      for (std::size_t i = 0; i < m; ++i) assignment[i] = (bits >> (m - 1 - i)) & 1;
      if (!self_consistent(assignment)) continue;
      ExpansionWitness w;
      w.assignment = assignment;
      w.kernel = theory_.facts;
      auto reduced = kernel_for(assignment);
      w.kernel.insert(w.kernel.end(), reduced.begin(), reduced.end());
      w.degenerate = !solver_.satisfiable(reduced);
      expansions_.push_back(std::move(w));
    }
  }

  KnowledgeBase kb_;
  GroundTheory theory_;
  Solver solver_;
  std::vector<ModalAtom> atoms_;
  std::vector<ExpansionWitness> expansions_;
  std::vector<std::string> warnings_;
};

inline std::vector<ExpansionWitness> stable_expansions(const KnowledgeBase& kb) { return AutoepistemicEngine(kb).expansions(); }

inline bool ael_entails(const KnowledgeBase& kb, const Formula& query, Mode mode) {
  return AutoepistemicEngine(kb).entails(query, mode);
}

/// Checks the three stable-set laws for `w` on the KB's modal vocabulary
/// plus `extra` formulas (and their negations). Returns one line per violation.
inline std::vector<std::string> stable_set_violations(const AutoepistemicEngine& engine, const ExpansionWitness& w,
                                                      const std::vector<Formula>& extra = {}) {
  std::vector<Formula> vocab;
  for (const auto& a : engine.atoms()) vocab.push_back(a.body);
  vocab.insert(vocab.end(), extra.begin(), extra.end());
  const std::size_t base = vocab.size();
  for (std::size_t i = 0; i < base; ++i) vocab.push_back(Formula::negation(vocab[i]));

  std::vector<std::string> out;
  std::vector<Formula> members;
  for (const auto& a : vocab)
    if (engine.holds(w, a)) members.push_back(a);
  // (1) closed under entailment: what the members jointly entail is a member.
  std::vector<Formula> member_kernel;
  for (const auto& m : members)
    member_kernel.push_back(reduce_beliefs(m, engine.atoms(), w.assignment, [&](const Formula& b) { return engine.holds(w, b); }));
  std::vector<Formula> kernel(w.kernel.begin() + static_cast<std::ptrdiff_t>(engine.theory().facts.size()), w.kernel.end());
  kernel.insert(kernel.end(), member_kernel.begin(), member_kernel.end());
  for (const auto& a : vocab) {
    Formula r = reduce_beliefs(a, engine.atoms(), w.assignment, [&](const Formula& b) { return engine.holds(w, b); });
    if (engine.objective_solver().entails(kernel, r) && !engine.holds(w, a)) out.push_back("closure: " + to_string(a));
  }
  // (2) positive and (3) negative introspection.
  for (const auto& a : vocab) {
    const bool in = engine.holds(w, a);
    if (in && !engine.holds(w, Formula::belief(a))) out.push_back("positive introspection: " + to_string(a));
    if (!in && !engine.holds(w, Formula::negation(Formula::belief(a)))) out.push_back("negative introspection: " + to_string(a));
  }
  return out;
}

}  // namespace nmr
