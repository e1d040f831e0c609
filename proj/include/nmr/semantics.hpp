#pragma once

// Semantics identifiers and the rewriting of defeasible generalisations
// into each formalism's native representation.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/kb.hpp"

namespace nmr {

enum class SemanticsId { cwa, cwa_dc, circumscription, default_logic, autoepistemic };

inline constexpr SemanticsId kAllSemantics[] = {SemanticsId::cwa, SemanticsId::cwa_dc, SemanticsId::circumscription,
                                                SemanticsId::default_logic, SemanticsId::autoepistemic};

inline std::string_view to_string(SemanticsId s) {
  switch (s) {
    case SemanticsId::cwa: return "cwa";
    case SemanticsId::cwa_dc: return "cwa-dc";
    case SemanticsId::circumscription: return "circumscription";
    case SemanticsId::default_logic: return "default";
    case SemanticsId::autoepistemic: return "autoepistemic";
  }
  return {};
}

inline std::optional<SemanticsId> semantics_from(std::string_view s) {
  for (auto id : kAllSemantics)
    if (to_string(id) == s) return id;
  return std::nullopt;
}

/// Consequence over several preferred structures: all of them, or at least one.
enum class Mode { skeptical, credulous };

inline std::string_view to_string(Mode m) { return m == Mode::skeptical ? "skeptical" : "credulous"; }

/// Fresh abnormality predicate per defeasible generalisation, in KB order.
/// Names are `Ab_<id>`, suffixed with `_<n>` on collision.
inline std::vector<std::pair<std::string, std::string>> abnormality_names(const KnowledgeBase& kb) {
  std::vector<std::pair<std::string, std::string>> out;
  auto taken = [&](const std::string& name) {
    if (kb.find_predicate(name) || kb.has_constant(name)) return true;
    for (const auto& [id, n] : out)
      if (n == name) return true;
    return false;
  };
  for (const auto& g : kb.generalisations) {
    if (g.mode != GeneralisationMode::defeasible) continue;
    std::string name = "Ab_" + g.id;
    for (int k = 1; taken(name); ++k) name = "Ab_" + g.id + "_" + std::to_string(k);
    out.emplace_back(g.id, name);
  }
  return out;
}

inline std::string abnormality_name(const KnowledgeBase& kb, std::string_view gen_id) {
  for (auto& [id, name] : abnormality_names(kb))
    if (id == gen_id) return name;
  throw AnalysisError("no defeasible generalisation '" + std::string(gen_id) + "'");
}

/// Rewrites every defeasible generalisation `P(x) ~> Q(x)` for `target`:
///   circumscription  all g: P(x) & -Ab_g(x) -> Q(x), with abpred Ab_g/1
///   default          default g: P(x) : Q(x) / Q(x)
///   autoepistemic    ael g: P(x) & -B(-Q(x)) -> Q(x)
///   cwa, cwa-dc      dropped; closed-world reasoning has no object-level reading for them
/// Everything else in the KB is kept as is.
inline KnowledgeBase translate(const KnowledgeBase& kb, SemanticsId target) {
  KnowledgeBase out = kb;
  out.generalisations.clear();
  const auto ab = abnormality_names(kb);
  std::size_t next_ab = 0;
  for (const auto& g : kb.generalisations) {
    if (g.mode == GeneralisationMode::universal) {
      out.generalisations.push_back(g);
      continue;
    }
    const std::string x = g.variable();
    switch (target) {
      case SemanticsId::cwa:
      case SemanticsId::cwa_dc:
        break;
      case SemanticsId::circumscription: {
        const std::string& name = ab[next_ab].second;
        out.predicates.push_back({name, 1, true});
        Generalisation u = g;
        u.mode = GeneralisationMode::universal;
        u.antecedent = Formula::conjunction(g.antecedent, Formula::negation(Formula::atom(name, {Term::variable(x)}, true)));
        out.generalisations.push_back(std::move(u));
        break;
      }
      case SemanticsId::default_logic:
        out.defaults.push_back({g.id, g.antecedent, g.consequent, g.consequent});
        break;
      case SemanticsId::autoepistemic:
        out.ael_formulas.push_back(
            {g.id, Formula::implication(
                       Formula::conjunction(g.antecedent, Formula::negation(Formula::belief(Formula::negation(g.consequent)))),
                       g.consequent)});
        break;
    }
    ++next_ab;
  }
  return out;
}

}  // namespace nmr
