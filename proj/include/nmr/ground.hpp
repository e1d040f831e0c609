#pragma once

// Herbrand grounding over the declared constants.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/kb.hpp"

namespace nmr {

inline constexpr const char* kEqualityPredicate = "=";

/// Propositional stand-in for `a = b` when names are not assumed unique.
/// Arguments are stored in sorted order, so `a = b` and `b = a` coincide.
inline Atom equality_atom(const std::string& a, const std::string& b) {
  return a < b ? Atom{kEqualityPredicate, {Term::constant(a), Term::constant(b)}}
               : Atom{kEqualityPredicate, {Term::constant(b), Term::constant(a)}};
}

struct GroundDefault {
  std::string rule_id;
  std::vector<std::string> binding;  // one constant per variable, variables in sorted order
  Formula prerequisite;
  Formula justification;
  Formula conclusion;

  std::string name() const {
    if (binding.empty()) return rule_id;
    std::string out = rule_id + "(";
    for (std::size_t i = 0; i < binding.size(); ++i) out += (i ? ", " : "") + binding[i];
    return out + ")";
  }

  friend bool operator==(const GroundDefault&, const GroundDefault&) = default;
};

struct GroundTheory {
  std::vector<Atom> vocabulary;          // sorted, duplicate-free
  std::vector<Formula> facts;            // ground, objective
  std::vector<Formula> belief_formulas;  // ground, containing belief nodes
  std::vector<GroundDefault> defaults;
  bool unique_names = false;

  bool is_objective() const { return belief_formulas.empty(); }
};

namespace detail {

/// Every assignment of constants to `vars`, first variable varying slowest.
inline std::vector<Substitution> substitutions(const std::vector<std::string>& vars,
                                               const std::vector<std::string>& constants) {
  std::vector<Substitution> out;
  if (!vars.empty() && constants.empty()) return out;
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], Term::constant(constants[idx[i]]));
    out.push_back(std::move(s));
    std::size_t k = vars.size();
    while (k > 0) {
      if (++idx[k - 1] < constants.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

inline std::vector<Formula> instances(const Formula& schema, const std::vector<std::string>& constants) {
  auto fv = free_variables(schema);
  std::vector<std::string> vars(fv.begin(), fv.end());
  std::vector<Formula> out;
  for (const auto& s : substitutions(vars, constants)) out.push_back(substitute(schema, s));
  return out;
}

}  // namespace detail

/// All ground atoms over the KB's predicates and constants. Without unique
/// names the equality atoms between distinct constants are included too.
inline std::vector<Atom> herbrand_base(const KnowledgeBase& kb) {
  std::vector<Atom> out;
  for (const auto& p : kb.predicates) {
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < p.arity; ++i) vars.push_back("_" + std::to_string(i));
    for (const auto& s : detail::substitutions(vars, kb.constants)) {
      Atom a{p.name, {}, p.abnormal};
      for (const auto& v : vars) a.args.push_back(s.at(v));
      out.push_back(std::move(a));
    }
  }
  if (!kb.flags.unique_names)
    for (std::size_t i = 0; i < kb.constants.size(); ++i)
      for (std::size_t j = i + 1; j < kb.constants.size(); ++j)
        out.push_back(equality_atom(kb.constants[i], kb.constants[j]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Instantiates facts, universal generalisations, default rules and
/// autoepistemic formulas once per substitution. Defeasible generalisations
/// have no classical reading and are left to `translate`.
inline GroundTheory ground(const KnowledgeBase& kb) {
  validate(kb);
  GroundTheory t;
  t.unique_names = kb.flags.unique_names;
  t.vocabulary = herbrand_base(kb);
  t.facts = kb.facts;
  if (kb.flags.unique_names)
    for (std::size_t i = 0; i < kb.constants.size(); ++i)
      for (std::size_t j = i + 1; j < kb.constants.size(); ++j)
        t.facts.push_back(Formula::negation(Formula::equal(Term::constant(kb.constants[i]), Term::constant(kb.constants[j]))));
  for (const auto& g : kb.generalisations) {
    if (g.mode != GeneralisationMode::universal) continue;
    for (auto& f : detail::instances(g.as_implication(), kb.constants)) t.facts.push_back(std::move(f));
  }
  for (const auto& d : kb.defaults) {
    auto fv = free_variables(d.prerequisite);
    std::vector<std::string> vars(fv.begin(), fv.end());
    for (const auto& s : detail::substitutions(vars, kb.constants)) {
      GroundDefault gd{d.id, {}, substitute(d.prerequisite, s), substitute(d.justification, s), substitute(d.conclusion, s)};
      for (const auto& v : vars) gd.binding.push_back(s.at(v).name);
      t.defaults.push_back(std::move(gd));
    }
  }
  for (const auto& a : kb.ael_formulas)
    for (auto& f : detail::instances(a.formula, kb.constants)) t.belief_formulas.push_back(std::move(f));
  return t;
}

/// Grounds a query. Free variables are read universally over the named
/// constants, which is only sound under domain closure.
inline Formula close_query(const KnowledgeBase& kb, const Formula& query, bool domain_closure) {
  auto fv = free_variables(query);
  if (fv.empty()) return query;
  if (!domain_closure)
    throw QueryError("query '" + to_string(query) + "' has free variable '" + *fv.begin() +
                     "'; free variables need domain closure");
  return Formula::conjunction(detail::instances(query, kb.constants));
}

}  // namespace nmr
