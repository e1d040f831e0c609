#pragma once

// Knowledge-base data model and its canonical source printer.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"

namespace nmr {

struct PredicateSignature {
  std::string name;
  std::size_t arity = 0;
  bool abnormal = false;

  friend bool operator==(const PredicateSignature&, const PredicateSignature&) = default;
};

enum class GeneralisationMode { universal, defeasible };

/// Provenance tag for a generalisation. Carried along, never reasoned over.
enum class SourceTag { incomplete, uncertain, vague, simplified };

inline std::string_view to_string(SourceTag t) {
  switch (t) {
    case SourceTag::incomplete: return "incomplete";
    case SourceTag::uncertain: return "uncertain";
    case SourceTag::vague: return "vague";
    case SourceTag::simplified: return "simplified";
  }
  return {};
}

inline std::optional<SourceTag> source_tag_from(std::string_view s) {
  for (auto t : {SourceTag::incomplete, SourceTag::uncertain, SourceTag::vague, SourceTag::simplified})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// `antecedent -> consequent` over a single shared variable.
struct Generalisation {
  std::string id;
  GeneralisationMode mode = GeneralisationMode::universal;
  Formula antecedent;
  Formula consequent;
  std::optional<SourceTag> source;

  std::string variable() const {
    auto vars = free_variables(antecedent);
    return vars.empty() ? std::string{} : *vars.begin();
  }
  /// Universal reading as a single schematic implication.
  Formula as_implication() const { return Formula::implication(antecedent, consequent); }

  friend bool operator==(const Generalisation&, const Generalisation&) = default;
};

/// prerequisite : justification / conclusion
struct DefaultRule {
  std::string id;
  Formula prerequisite;
  Formula justification;
  Formula conclusion;

  friend bool operator==(const DefaultRule&, const DefaultRule&) = default;
};

struct AelFormula {
  std::string id;
  Formula formula;

  friend bool operator==(const AelFormula&, const AelFormula&) = default;
};

struct Flags {
  bool unique_names = false;
  bool domain_closure = false;

  friend bool operator==(const Flags&, const Flags&) = default;
};

struct KnowledgeBase {
  std::vector<std::string> constants;
  std::vector<PredicateSignature> predicates;
  std::vector<Formula> facts;
  std::vector<Generalisation> generalisations;
  std::vector<DefaultRule> defaults;
  std::vector<AelFormula> ael_formulas;
  Flags flags;

  bool has_constant(std::string_view name) const {
    return std::find(constants.begin(), constants.end(), name) != constants.end();
  }
  const PredicateSignature* find_predicate(std::string_view name) const {
    for (const auto& p : predicates)
      if (p.name == name) return &p;
    return nullptr;
  }
  const Generalisation* find_generalisation(std::string_view id) const {
    for (const auto& g : generalisations)
      if (g.id == id) return &g;
    return nullptr;
  }
  bool has_statement_id(std::string_view id) const {
    auto same = [&](const auto& x) { return x.id == id; };
    return std::any_of(generalisations.begin(), generalisations.end(), same) ||
           std::any_of(defaults.begin(), defaults.end(), same) ||
           std::any_of(ael_formulas.begin(), ael_formulas.end(), same);
  }
  bool has_schemas() const { return !generalisations.empty() || !defaults.empty() || !ael_formulas.empty(); }
  bool has_defeasible() const {
    return std::any_of(generalisations.begin(), generalisations.end(),
                       [](const auto& g) { return g.mode == GeneralisationMode::defeasible; });
  }

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

namespace detail {

inline void check_symbols(const KnowledgeBase& kb, const Formula& f, std::string_view where) {
  auto check_term = [&](const Term& t) {
    if (t.is_constant() && !kb.has_constant(t.name))
      throw ParseError(ParseError::Kind::undeclared_symbol,
                       "undeclared constant '" + t.name + "' in " + std::string(where));
  };
  switch (f.kind()) {
    case Formula::Kind::atom: {
      const auto& a = f.as_atom();
      const auto* sig = kb.find_predicate(a.predicate);
      if (!sig)
        throw ParseError(ParseError::Kind::undeclared_symbol,
                         "undeclared predicate '" + a.predicate + "' in " + std::string(where));
      if (sig->arity != a.arity())
        throw ParseError(ParseError::Kind::arity_mismatch,
                         "predicate '" + a.predicate + "' has arity " + std::to_string(sig->arity) + ", used with " +
                             std::to_string(a.arity()) + " in " + std::string(where));
      if (sig->abnormal != a.abnormal)
        throw ParseError(ParseError::Kind::invalid, "abnormality marker of '" + a.predicate + "' disagrees with its declaration");
      for (const auto& t : a.args) check_term(t);
      break;
    }
    case Formula::Kind::equal:
      check_term(f.lhs());
      check_term(f.rhs());
      break;
    default:
      for (const auto& c : f.children()) check_symbols(kb, c, where);
  }
}

}  // namespace detail

inline void check_fact(const KnowledgeBase& kb, const Formula& f) {
  using PE = ParseError;
  detail::check_symbols(kb, f, "fact");
  if (!is_objective(f)) throw PE(PE::Kind::invalid, "facts must be objective; use 'ael' for belief formulas");
  if (auto vars = free_variables(f); !vars.empty())
    throw PE(PE::Kind::undeclared_symbol, "undeclared constant '" + *vars.begin() + "' in fact");
}

inline void check_generalisation(const KnowledgeBase& kb, const Generalisation& g) {
  using PE = ParseError;
  const std::string where = "generalisation " + g.id;
  detail::check_symbols(kb, g.antecedent, where);
  detail::check_symbols(kb, g.consequent, where);
  if (!is_objective(g.antecedent) || !is_objective(g.consequent)) throw PE(PE::Kind::invalid, where + " must be objective");
  auto av = free_variables(g.antecedent);
  auto cv = free_variables(g.consequent);
  if (av.size() != 1) throw PE(PE::Kind::invalid, where + ": antecedent must have exactly one free variable");
  for (const auto& v : cv)
    if (!av.count(v)) throw PE(PE::Kind::variable_escape, "variable '" + v + "' of " + where + " escapes its antecedent");
  if (cv.empty()) throw PE(PE::Kind::invalid, where + ": consequent must mention the antecedent's variable");
}

inline void check_default(const KnowledgeBase& kb, const DefaultRule& d) {
  using PE = ParseError;
  const std::string where = "default " + d.id;
  for (const auto* f : {&d.prerequisite, &d.justification, &d.conclusion}) {
    detail::check_symbols(kb, *f, where);
    if (!is_objective(*f)) throw PE(PE::Kind::invalid, where + " must be objective");
  }
  auto pv = free_variables(d.prerequisite);
  for (const auto* f : {&d.justification, &d.conclusion})
    for (const auto& v : free_variables(*f))
      if (!pv.count(v)) throw PE(PE::Kind::variable_escape, "variable '" + v + "' of " + where + " escapes its prerequisite");
}

inline void check_ael(const KnowledgeBase& kb, const AelFormula& a) {
  detail::check_symbols(kb, a.formula, "ael " + a.id);
  if (is_objective(a.formula))
    throw ParseError(ParseError::Kind::invalid, "ael " + a.id + " contains no belief operator");
}

/// Checks every structural invariant of a KB; throws ParseError on the first violation.
inline void validate(const KnowledgeBase& kb) {
  using PE = ParseError;
  for (std::size_t i = 0; i < kb.constants.size(); ++i) {
    if (kb.constants[i].empty()) throw PE(PE::Kind::invalid, "empty constant name");
    for (std::size_t j = 0; j < i; ++j)
      if (kb.constants[j] == kb.constants[i]) throw PE(PE::Kind::invalid, "constant '" + kb.constants[i] + "' declared twice");
  }
  for (std::size_t i = 0; i < kb.predicates.size(); ++i) {
    const auto& name = kb.predicates[i].name;
    if (name.empty()) throw PE(PE::Kind::invalid, "empty predicate name");
    if (name == "B") throw PE(PE::Kind::invalid, "'B' is reserved for the belief operator");
    for (std::size_t j = 0; j < i; ++j)
      if (kb.predicates[j].name == name) throw PE(PE::Kind::invalid, "predicate '" + name + "' declared twice");
  }
  if (kb.has_schemas() && kb.constants.empty())
    throw PE(PE::Kind::invalid, "schematic statements need at least one declared constant");

  std::vector<std::string> ids;
  auto claim = [&](const std::string& id) {
    if (id.empty()) throw PE(PE::Kind::invalid, "empty statement id");
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) throw PE(PE::Kind::invalid, "statement id '" + id + "' used twice");
    ids.push_back(id);
  };
  for (const auto& f : kb.facts) check_fact(kb, f);
  for (const auto& g : kb.generalisations) {
    claim(g.id);
    check_generalisation(kb, g);
  }
  for (const auto& d : kb.defaults) {
    claim(d.id);
    check_default(kb, d);
  }
  for (const auto& a : kb.ael_formulas) {
    claim(a.id);
    check_ael(kb, a);
  }
}

/// Canonical KB source. Parsing the result yields an equal KnowledgeBase.
inline std::string to_source(const Generalisation& g) {
  std::string out = g.mode == GeneralisationMode::universal ? "all " : "def ";
  out += g.id;
  if (g.source) out += " [" + std::string(to_string(*g.source)) + "]";
  out += ": " + detail::wrap(g.antecedent);
  out += g.mode == GeneralisationMode::universal ? " -> " : " ~> ";
  out += detail::wrap(g.consequent);
  return out;
}

inline std::string to_source(const DefaultRule& d) {
  return "default " + d.id + ": " + to_string(d.prerequisite) + " : " + to_string(d.justification) + " / " +
         to_string(d.conclusion);
}

inline std::string to_source(const KnowledgeBase& kb) {
  std::string out;
  auto list = [&](const char* keyword, const auto& items, auto&& show) {
    if (items.empty()) return;
    out += keyword;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : " ") + show(items[i]);
    out += ".\n";
  };
  list("const", kb.constants, [](const std::string& c) { return c; });
  // Runs of same-kind declarations, so declaration order survives a round trip.
  auto sig = [](const PredicateSignature& p) { return p.name + "/" + std::to_string(p.arity); };
  for (std::size_t i = 0; i < kb.predicates.size();) {
    std::vector<PredicateSignature> run;
    const bool ab = kb.predicates[i].abnormal;
    while (i < kb.predicates.size() && kb.predicates[i].abnormal == ab) run.push_back(kb.predicates[i++]);
    list(ab ? "abpred" : "pred", run, sig);
  }
  if (kb.flags.unique_names) out += "flag unique-names.\n";
  if (kb.flags.domain_closure) out += "flag domain-closure.\n";
  for (const auto& f : kb.facts) out += "fact " + to_string(f) + ".\n";
  for (const auto& g : kb.generalisations) out += to_source(g) + ".\n";
  for (const auto& d : kb.defaults) out += to_source(d) + ".\n";
  for (const auto& a : kb.ael_formulas) out += "ael " + a.id + ": " + to_string(a.formula) + ".\n";
  return out;
}

}  // namespace nmr
