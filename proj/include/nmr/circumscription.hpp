#pragma once

// Minimal-model entailment. Interpretations are preordered by the
// extensions of the abnormality predicates alone; every other predicate
// varies freely between compared interpretations.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "nmr/classical.hpp"
#include "nmr/ground.hpp"
#include "nmr/kb.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

/// True abnormality atoms of an interpretation, in vocabulary order.
inline std::vector<Atom> ab_extension(const Interpretation& i) {
  std::vector<Atom> out;
  for (std::size_t k = 0; k < i.size(); ++k)
    if (i.vocabulary()[k].abnormal && i.value(k)) out.push_back(i.vocabulary()[k]);
  return out;
}

/// i1 ≤ i2 iff every abnormality predicate's extension in i1 is a subset of its extension in i2.
inline bool ab_leq(const Interpretation& i1, const Interpretation& i2) {
  if (!i1.same_vocabulary(i2)) throw Error("ab_leq: interpretations over different atom sets");
  for (std::size_t k = 0; k < i1.size(); ++k)
    if (i1.vocabulary()[k].abnormal && i1.value(k) && !i2.value(k)) return false;
  return true;
}

struct AbOrderedModelSet {
  std::vector<Interpretation> all_models;
  std::vector<std::size_t> minimal;  // indices into all_models, ascending
  std::vector<std::vector<Atom>> ab_extensions;  // parallel to all_models

  std::vector<Interpretation> minimal_models() const {
    std::vector<Interpretation> out;
    for (auto i : minimal) out.push_back(all_models[i]);
    return out;
  }
  /// Distinct abnormality extensions among the minimal models, sorted.
  std::vector<std::vector<Atom>> minimal_extensions() const {
    std::vector<std::vector<Atom>> out;
    for (auto i : minimal) out.push_back(ab_extensions[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

inline AbOrderedModelSet order_models(const GroundTheory& theory) {
  AbOrderedModelSet out;
  out.all_models = models(theory);
  for (const auto& m : out.all_models) out.ab_extensions.push_back(ab_extension(m));

  // Compare distinct extensions only; many models share one.
  auto distinct = out.ab_extensions;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  auto strict_subset = [](const std::vector<Atom>& a, const std::vector<Atom>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  std::vector<std::vector<Atom>> minimal_ext;
  for (const auto& e : distinct) {
    bool dominated = std::any_of(distinct.begin(), distinct.end(), [&](const auto& o) { return strict_subset(o, e); });
    if (!dominated) minimal_ext.push_back(e);
  }
  for (std::size_t i = 0; i < out.all_models.size(); ++i)
    if (std::binary_search(minimal_ext.begin(), minimal_ext.end(), out.ab_extensions[i])) out.minimal.push_back(i);
  return out;
}

inline std::vector<Interpretation> minimal_models(const GroundTheory& theory) { return order_models(theory).minimal_models(); }

class CircumscriptionEngine {
 public:
  explicit CircumscriptionEngine(const KnowledgeBase& kb) : kb_(translate(kb, SemanticsId::circumscription)) {
    theory_ = ground(kb_);
    for (const auto& d : kb_.defaults) warnings_.push_back("circumscription: default rule " + d.id + " ignored");
    for (const auto& a : kb_.ael_formulas) warnings_.push_back("circumscription: autoepistemic formula " + a.id + " ignored");
    theory_.belief_formulas.clear();
    theory_.defaults.clear();
    models_ = order_models(theory_);
  }

  /// Every minimal model satisfies the query.
  bool entails(const Formula& query) const {
    Formula q = close_query(kb_, query, kb_.flags.domain_closure);
    require_classical_query(q);
    for (auto i : models_.minimal)
      if (!evaluate(q, models_.all_models[i], theory_.unique_names)) return false;
    return true;
  }
  /// Some minimal model satisfies the query.
  bool possible(const Formula& query) const {
    Formula q = close_query(kb_, query, kb_.flags.domain_closure);
    require_classical_query(q);
    for (auto i : models_.minimal)
      if (evaluate(q, models_.all_models[i], theory_.unique_names)) return true;
    return false;
  }

  const KnowledgeBase& translated() const { return kb_; }
  const GroundTheory& theory() const { return theory_; }
  const AbOrderedModelSet& models() const { return models_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  KnowledgeBase kb_;
  GroundTheory theory_;
  AbOrderedModelSet models_;
  std::vector<std::string> warnings_;
};

/// KB ⊨_≤ query
inline bool circ_entails(const KnowledgeBase& kb, const Formula& query) { return CircumscriptionEngine(kb).entails(query); }

}  // namespace nmr
