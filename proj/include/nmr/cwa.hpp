#pragma once

// Closed-world entailment: KB⁺ adds ¬p for every ground atom p the KB does
// not entail. The domain-closure variant additionally restricts the domain
// to the named constants, which grounding already realises by substitution;
// what it adds observably is that queries with free variables are answered.

#include <string>
#include <vector>

#include "nmr/classical.hpp"
#include "nmr/ground.hpp"
#include "nmr/kb.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

struct CwaAugmentation {
  GroundTheory base;
  std::vector<Atom> assumed_negations;  // atoms p with base ⊭ p, sorted
  bool consistent = true;

  GroundTheory augmented() const {
    GroundTheory t = base;
    for (const auto& a : assumed_negations) t.facts.push_back(Formula::negation(Formula::atom(a)));
    return t;
  }
};

namespace detail {

inline std::vector<std::string> cwa_ignored(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  for (const auto& g : kb.generalisations)
    if (g.mode == GeneralisationMode::defeasible)
      out.push_back("cwa: defeasible generalisation " + g.id + " has no closed-world reading and is ignored");
  for (const auto& d : kb.defaults) out.push_back("cwa: default rule " + d.id + " ignored");
  for (const auto& a : kb.ael_formulas) out.push_back("cwa: autoepistemic formula " + a.id + " ignored");
  return out;
}

}  // namespace detail

inline CwaAugmentation cwa_augment(const KnowledgeBase& kb) {
  CwaAugmentation out;
  out.base = ground(translate(kb, SemanticsId::cwa));
  out.base.belief_formulas.clear();
  out.base.defaults.clear();
  Solver solver(out.base);
  for (const auto& p : out.base.vocabulary)
    if (!solver.entails(Formula::atom(p))) out.assumed_negations.push_back(p);
  out.consistent = Solver(out.augmented()).satisfiable();
  return out;
}

class CwaEngine {
 public:
  explicit CwaEngine(const KnowledgeBase& kb, bool domain_closure = false)
      : kb_(kb),
        domain_closure_(domain_closure || kb.flags.domain_closure),
        augmentation_(cwa_augment(kb)),
        solver_(augmentation_.augmented()) {
    warnings_ = detail::cwa_ignored(kb);
    if (!augmentation_.consistent)
      warnings_.push_back(std::string(domain_closure_ ? "cwa-dc" : "cwa") + ": KB+ is inconsistent; every query is entailed");
  }

  bool entails(const Formula& query) const {
    Formula q = close_query(kb_, query, domain_closure_);
    require_classical_query(q);
    return solver_.entails(q);
  }

  const CwaAugmentation& augmentation() const { return augmentation_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  KnowledgeBase kb_;
  bool domain_closure_;
  CwaAugmentation augmentation_;
  Solver solver_;
  std::vector<std::string> warnings_;
};

/// KB ⊨_C query
inline bool cwa_entails(const KnowledgeBase& kb, const Formula& query) { return CwaEngine(kb).entails(query); }

/// KB ⊨_CD query: closed world plus domain closure over the named constants.
inline bool cwad_entails(const KnowledgeBase& kb, const Formula& query) { return CwaEngine(kb, true).entails(query); }

}  // namespace nmr
