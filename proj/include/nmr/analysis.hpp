#pragma once

// Exceptions to defeasible generalisations, their completion into
// universal generalisations, discrepancy classification, and the
// four-axis comparison across semantics.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nmr/autoepistemic.hpp"
#include "nmr/circumscription.hpp"
#include "nmr/classical.hpp"
#include "nmr/cwa.hpp"
#include "nmr/default_logic.hpp"
#include "nmr/error.hpp"
#include "nmr/ground.hpp"
#include "nmr/kb.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

struct ExceptionEvidence {
  std::string constant;
  std::string evidence;
};

struct ExceptionSet {
  std::string generalisation_id;
  SemanticsId semantics = SemanticsId::circumscription;
  std::vector<std::string> members;      // sorted
  std::vector<ExceptionEvidence> trace;  // one entry per member, same order
  std::vector<std::string> credulous;    // exceptional in some preferred structures only, sorted
  std::vector<std::string> warnings;
};

namespace detail {

inline const Generalisation& defeasible_generalisation(const KnowledgeBase& kb, std::string_view gen_id) {
  const auto* g = kb.find_generalisation(gen_id);
  if (!g) throw AnalysisError("unknown generalisation '" + std::string(gen_id) + "'");
  if (g->mode != GeneralisationMode::defeasible)
    throw AnalysisError("generalisation '" + std::string(gen_id) + "' is universal; exceptions need a defeasible one");
  return *g;
}

inline void require_exception_semantics(SemanticsId s) {
  if (s == SemanticsId::cwa || s == SemanticsId::cwa_dc)
    throw AnalysisError("closed-world reasoning has no notion of exception");
}

inline Formula instance(const Formula& schema, const std::string& var, const std::string& constant) {
  return substitute(schema, {{var, Term::constant(constant)}});
}

inline std::size_t ground_default_index(const DefaultTheory& t, const std::string& rule, const std::string& constant) {
  for (std::size_t i = 0; i < t.defaults.size(); ++i)
    if (t.defaults[i].rule_id == rule && t.defaults[i].binding == std::vector<std::string>{constant}) return i;
  throw AnalysisError("no ground instance of rule '" + rule + "' for " + constant);
}

inline void finish(ExceptionSet& s) {
  std::vector<std::size_t> order(s.members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.members[a] < s.members[b]; });
  ExceptionSet sorted = s;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.members[i] = s.members[order[i]];
    sorted.trace[i] = s.trace[order[i]];
  }
  std::sort(sorted.credulous.begin(), sorted.credulous.end());
  s = std::move(sorted);
}

inline ExceptionSet circumscription_exceptions(const KnowledgeBase& kb, const Generalisation& g,
                                               const CircumscriptionEngine& engine) {
  ExceptionSet out{g.id, SemanticsId::circumscription, {}, {}, {}, {}};
  if (engine.models().minimal.empty()) {
    out.warnings.push_back("circumscription: theory has no models; no exceptions reported");
    return out;
  }
  const std::string ab = abnormality_name(kb, g.id);
  const std::string x = g.variable();
  for (const auto& c : kb.constants) {
    Formula ab_c = Formula::atom(ab, {Term::constant(c)}, true);
    if (!engine.entails(instance(g.antecedent, x, c))) continue;
    if (engine.entails(ab_c)) {
      out.members.push_back(c);
      out.trace.push_back({c, to_string(ab_c) + " holds in every minimal model"});
    } else if (engine.possible(ab_c)) {
      out.credulous.push_back(c);
    }
  }
  finish(out);
  return out;
}

inline ExceptionSet default_exceptions(const KnowledgeBase& kb, const Generalisation& g, const DefaultEngine& engine,
                                       const std::vector<std::size_t>& only = {}) {
  ExceptionSet out{g.id, SemanticsId::default_logic, {}, {}, {}, {}};
  const auto& exts = engine.extensions();
  if (exts.empty()) {
    out.warnings.push_back("default: no extension; no exceptions reported");
    return out;
  }
  for (const auto& c : kb.constants) {
    const auto& d = engine.theory().defaults[ground_default_index(engine.theory(), g.id, c)];
    std::size_t blocked = 0, considered = 0;
    for (std::size_t e = 0; e < exts.size(); ++e) {
      if (!only.empty() && std::find(only.begin(), only.end(), e) == only.end()) continue;
      ++considered;
      if (engine.in_extension(exts[e], d.prerequisite) && engine.in_extension(exts[e], Formula::negation(d.justification)))
        ++blocked;
    }
    if (considered > 0 && blocked == considered) {
      out.members.push_back(c);
      out.trace.push_back({c, "justification " + to_string(d.justification) + " of " + d.name() +
                                  " is blocked in every extension"});
    } else if (blocked > 0) {
      out.credulous.push_back(c);
    }
  }
  finish(out);
  return out;
}

inline ExceptionSet autoepistemic_exceptions(const KnowledgeBase& kb, const Generalisation& g, const AutoepistemicEngine& engine,
                                             const std::vector<std::size_t>& only = {}) {
  ExceptionSet out{g.id, SemanticsId::autoepistemic, {}, {}, {}, {}};
  const auto& exps = engine.expansions();
  if (exps.empty()) {
    out.warnings.push_back("autoepistemic: no stable expansion; no exceptions reported");
    return out;
  }
  const std::string x = g.variable();
  for (const auto& c : kb.constants) {
    Formula ante = instance(g.antecedent, x, c);
    Formula doubt = Formula::belief(Formula::negation(instance(g.consequent, x, c)));
    std::size_t hits = 0, considered = 0;
    for (std::size_t e = 0; e < exps.size(); ++e) {
      if (!only.empty() && std::find(only.begin(), only.end(), e) == only.end()) continue;
      ++considered;
      if (engine.holds(exps[e], ante) && engine.holds(exps[e], doubt)) ++hits;
    }
    if (considered > 0 && hits == considered) {
      out.members.push_back(c);
      out.trace.push_back({c, to_string(doubt) + " holds in every stable expansion"});
    } else if (hits > 0) {
      out.credulous.push_back(c);
    }
  }
  finish(out);
  return out;
}

}  // namespace detail

/// Individuals excluded from a defeasible generalisation under `semantics`.
/// Membership is skeptical: the antecedent holds and the exclusion is
/// forced in every preferred structure.
inline ExceptionSet exceptions(const KnowledgeBase& kb, std::string_view gen_id, SemanticsId semantics) {
  const auto& g = detail::defeasible_generalisation(kb, gen_id);
  detail::require_exception_semantics(semantics);
  switch (semantics) {
    case SemanticsId::circumscription:
      return detail::circumscription_exceptions(kb, g, CircumscriptionEngine(kb));
    case SemanticsId::default_logic:
      return detail::default_exceptions(kb, g, DefaultEngine(kb));
    default:
      return detail::autoepistemic_exceptions(kb, g, AutoepistemicEngine(kb));
  }
}

struct CompletionCertificate {
  bool passed = false;
  bool classical_reference = false;  // reference side used plain classical entailment
  std::size_t queries_checked = 0;
  std::vector<std::string> mismatches;
};

struct CompletionResult {
  Generalisation completed;
  ExceptionSet exceptions;
  CompletionCertificate certificate;
};

/// `P(x) & x != e1 & ... & x != ek -> Q(x)` for the given exceptions.
inline Generalisation completed_generalisation(const Generalisation& g, const std::vector<std::string>& exceptions) {
  Generalisation out = g;
  out.mode = GeneralisationMode::universal;
  const std::string x = g.variable();
  for (const auto& e : exceptions)
    out.antecedent = Formula::conjunction(out.antecedent, Formula::negation(Formula::equal(Term::variable(x), Term::constant(e))));
  return out;
}

inline KnowledgeBase replace_generalisation(const KnowledgeBase& kb, const Generalisation& replacement) {
  KnowledgeBase out = kb;
  for (auto& g : out.generalisations)
    if (g.id == replacement.id) g = replacement;
  return out;
}

namespace detail {

/// Entailment under `semantics` (skeptical), usable on any KB.
class SemanticOracle {
 public:
  SemanticOracle(const KnowledgeBase& kb, SemanticsId s) : semantics_(s) {
    switch (s) {
      case SemanticsId::cwa: cwa_.emplace(kb); break;
      case SemanticsId::cwa_dc: cwa_.emplace(kb, true); break;
      case SemanticsId::circumscription: circ_.emplace(kb); break;
      case SemanticsId::default_logic: def_.emplace(kb); break;
      case SemanticsId::autoepistemic: ael_.emplace(kb); break;
    }
  }
  bool entails(const Formula& q) const {
    switch (semantics_) {
      case SemanticsId::cwa:
      case SemanticsId::cwa_dc: return cwa_->entails(q);
      case SemanticsId::circumscription: return circ_->entails(q);
      case SemanticsId::default_logic: return def_->entails(q, Mode::skeptical);
      case SemanticsId::autoepistemic: return ael_->entails(q, Mode::skeptical);
    }
    return false;
  }

 private:
  SemanticsId semantics_;
  std::optional<CwaEngine> cwa_;
  std::optional<CircumscriptionEngine> circ_;
  std::optional<DefaultEngine> def_;
  std::optional<AutoepistemicEngine> ael_;
};

inline bool has_nonmonotonic_content(const KnowledgeBase& kb) {
  return kb.has_defeasible() || !kb.defaults.empty() || !kb.ael_formulas.empty() ||
         std::any_of(kb.predicates.begin(), kb.predicates.end(), [](const auto& p) { return p.abnormal; });
}

inline std::vector<std::string> constants_of(const std::vector<std::size_t>& indices, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (auto i : indices) out.push_back(names[i]);
  return out;
}

}  // namespace detail

/// Turns a defeasible generalisation into the equivalent universal one by
/// excluding its exceptions, and certifies the equivalence on every ground
/// literal of the original vocabulary. Throws RefusalError when the
/// preferred structure is not unique.
inline CompletionResult complete_generalisation(const KnowledgeBase& kb, std::string_view gen_id, SemanticsId semantics) {
  const auto& g = detail::defeasible_generalisation(kb, gen_id);
  detail::require_exception_semantics(semantics);
  CompletionResult out;
  const std::string x = g.variable();

  switch (semantics) {
    case SemanticsId::circumscription: {
      CircumscriptionEngine engine(kb);
      const std::string ab = abnormality_name(kb, g.id);
      std::set<std::vector<std::string>> restricted;
      for (const auto& ext : engine.models().minimal_extensions()) {
        std::vector<std::string> names;
        for (const auto& a : ext)
          if (a.predicate == ab) names.push_back(a.args[0].name);
        std::sort(names.begin(), names.end());
        restricted.insert(names);
      }
      if (restricted.size() != 1)
        throw RefusalError("circumscription: " + std::to_string(restricted.size()) + " minimal extensions of " + ab,
                           {restricted.begin(), restricted.end()});
      out.exceptions = detail::circumscription_exceptions(kb, g, engine);
      break;
    }
    case SemanticsId::default_logic: {
      DefaultEngine engine(kb);
      if (engine.extensions().size() != 1) {
        std::vector<std::vector<std::string>> alts;
        for (std::size_t e = 0; e < engine.extensions().size(); ++e)
          alts.push_back(detail::default_exceptions(kb, g, engine, {e}).members);
        std::sort(alts.begin(), alts.end());
        throw RefusalError("default: " + std::to_string(engine.extensions().size()) + " extensions", std::move(alts));
      }
      out.exceptions = detail::default_exceptions(kb, g, engine);
      break;
    }
    default: {
      AutoepistemicEngine engine(kb);
      if (engine.expansions().size() != 1) {
        std::vector<std::vector<std::string>> alts;
        for (std::size_t e = 0; e < engine.expansions().size(); ++e)
          alts.push_back(detail::autoepistemic_exceptions(kb, g, engine, {e}).members);
        std::sort(alts.begin(), alts.end());
        throw RefusalError("autoepistemic: " + std::to_string(engine.expansions().size()) + " stable expansions",
                           std::move(alts));
      }
      out.exceptions = detail::autoepistemic_exceptions(kb, g, engine);
      break;
    }
  }

  out.completed = completed_generalisation(g, out.exceptions.members);
  if (!kb.flags.unique_names && !out.exceptions.members.empty())
    out.exceptions.warnings.push_back("completion: without unique-names the x != e conditions are not decided");

  // Certificate: every ground literal over the original vocabulary.
  const KnowledgeBase replaced = replace_generalisation(kb, out.completed);
  detail::SemanticOracle original(kb, semantics);
  std::optional<Solver> classical;
  std::optional<detail::SemanticOracle> reference;
  if (!detail::has_nonmonotonic_content(replaced)) {
    classical.emplace(ground(replaced));
    out.certificate.classical_reference = true;
  } else {
    reference.emplace(replaced, semantics);
  }
  for (const auto& atom : herbrand_base(kb)) {
    for (const Formula& q : {Formula::atom(atom), Formula::negation(Formula::atom(atom))}) {
      const bool lhs = original.entails(q);
      const bool rhs = classical ? classical->entails(q) : reference->entails(q);
      ++out.certificate.queries_checked;
      if (lhs != rhs)
        out.certificate.mismatches.push_back(to_string(q) + ": " + std::string(lhs ? "yes" : "no") + " under " +
                                             std::string(to_string(semantics)) + ", " + (rhs ? "yes" : "no") +
                                             " after completion");
    }
  }
  out.certificate.passed = out.certificate.mismatches.empty();
  return out;
}

enum class Discrepancy { counter_example, error, exception, no_conflict };

inline std::string_view to_string(Discrepancy d) {
  switch (d) {
    case Discrepancy::counter_example: return "counter-example";
    case Discrepancy::error: return "error";
    case Discrepancy::exception: return "exception";
    case Discrepancy::no_conflict: return "no-conflict";
  }
  return {};
}

struct DiscrepancyVerdict {
  Discrepancy kind = Discrepancy::no_conflict;
  std::string advisory;
};

/// How a generalisation relates to a conflicting instance, given which of
/// the two the modeller trusts. The generalisation is instantiated on the
/// constants the instance mentions. When neither side is trusted the
/// instance is taken to be the faulty one.
inline DiscrepancyVerdict classify_discrepancy(const Generalisation& gen, const Formula& instance_fact, bool gen_trusted,
                                               bool fact_trusted, bool unique_names = false) {
  if (!is_ground(instance_fact) || !is_objective(instance_fact))
    throw QueryError("instance '" + to_string(instance_fact) + "' must be a ground objective formula");
  std::vector<std::string> constants;
  auto visit_terms = [&](auto&& self, const Formula& f) -> void {
    auto add = [&](const Term& t) {
      if (t.is_constant() && std::find(constants.begin(), constants.end(), t.name) == constants.end()) constants.push_back(t.name);
    };
    if (f.is(Formula::Kind::atom))
      for (const auto& t : f.as_atom().args) add(t);
    if (f.is(Formula::Kind::equal)) {
      add(f.lhs());
      add(f.rhs());
    }
    for (const auto& c : f.children()) self(self, c);
  };
  visit_terms(visit_terms, instance_fact);

  std::vector<Formula> formulas{instance_fact};
  for (const auto& c : constants) formulas.push_back(detail::instance(gen.as_implication(), gen.variable(), c));
  std::vector<Atom> vocabulary;
  for (const auto& f : formulas) collect_atoms(f, vocabulary);
  std::sort(vocabulary.begin(), vocabulary.end());
  Solver solver(vocabulary, unique_names);
  for (const auto& f : formulas) solver.add(f);

  DiscrepancyVerdict v;
  if (solver.satisfiable()) return v;
  if (gen_trusted && fact_trusted) {
    v.kind = Discrepancy::exception;
    v.advisory = "both are held true: demote generalisation " + gen.id + " to defeasible mode";
  } else if (fact_trusted) {
    v.kind = Discrepancy::counter_example;
    v.advisory = "the instance falsifies generalisation " + gen.id;
  } else {
    v.kind = Discrepancy::error;
    v.advisory = "the instance conflicts with generalisation " + gen.id + " and should be revised";
  }
  return v;
}

// Comparison report.

struct AxisClassification {
  SemanticsId system;
  std::array<std::string_view, 4> cells;
};

inline constexpr std::array<std::string_view, 4> kAxisNames = {"syntactic-vs-semantic", "epistemic-vs-ontological",
                                                               "explicit-vs-implicit", "logical-vs-meta-logical"};

/// How each formalism represents defeasibility, along four axes. "/" marks
/// an axis that does not apply. The domain-closure variant shares the CWA row.
inline constexpr std::array<AxisClassification, 4> kComparisonAxes = {{
    {SemanticsId::cwa, {"syntactic", "epistemic", "/", "/"}},
    {SemanticsId::circumscription, {"semantic", "ontological", "explicit", "logical"}},
    {SemanticsId::default_logic, {"syntactic", "epistemic", "implicit", "meta-logical"}},
    {SemanticsId::autoepistemic, {"syntactic", "epistemic", "implicit", "logical"}},
}};

enum class Verdict { yes, no, not_applicable };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::not_applicable: return "n/a";
  }
  return {};
}

struct MatrixRow {
  std::string query;
  std::array<Verdict, std::size(kAllSemantics)> cells{};  // indexed like kAllSemantics
};

struct ComparisonReport {
  std::array<AxisClassification, 4> axes = kComparisonAxes;
  std::vector<MatrixRow> matrix;
  std::vector<ExceptionSet> exceptions;
  std::vector<std::string> warnings;
};

/// Predicates a closed-world reading cannot speak for: those concluded by
/// defeasible generalisations, default rules or autoepistemic formulas.
inline std::set<std::string> defeasible_predicates(const KnowledgeBase& kb) {
  std::set<std::string> out;
  auto add = [&](const Formula& f) {
    for (const auto& p : predicates_of(f)) out.insert(p);
  };
  for (const auto& g : kb.generalisations)
    if (g.mode == GeneralisationMode::defeasible) add(g.consequent);
  for (const auto& d : kb.defaults) add(d.conclusion);
  for (const auto& a : kb.ael_formulas) add(a.formula.is(Formula::Kind::implication) ? a.formula.right() : a.formula);
  return out;
}

inline ComparisonReport compare(const KnowledgeBase& kb, const std::vector<Formula>& queries) {
  ComparisonReport report;
  auto warn = [&](const std::string& w) {
    if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) report.warnings.push_back(w);
  };

  std::optional<CwaEngine> cwa, cwad;
  std::optional<CircumscriptionEngine> circ;
  std::optional<DefaultEngine> def;
  std::optional<AutoepistemicEngine> ael;
  auto build = [&](SemanticsId s, auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      warn(std::string(to_string(s)) + ": " + e.what());
    }
  };
  build(SemanticsId::cwa, [&] { cwa.emplace(kb); });
  build(SemanticsId::cwa_dc, [&] { cwad.emplace(kb, true); });
  build(SemanticsId::circumscription, [&] { circ.emplace(kb); });
  build(SemanticsId::default_logic, [&] { def.emplace(kb); });
  build(SemanticsId::autoepistemic, [&] { ael.emplace(kb); });
  if (cwa) for (const auto& w : cwa->warnings()) warn(w);
  if (cwad) for (const auto& w : cwad->warnings()) warn(w);
  if (circ) for (const auto& w : circ->warnings()) warn(w);
  if (def) for (const auto& w : def->warnings()) warn(w);
  if (ael) for (const auto& w : ael->warnings()) warn(w);

  const auto closed_world_blind = defeasible_predicates(kb);
  for (const auto& q : queries) {
    MatrixRow row;
    row.query = to_string(q);
    const bool objective = is_objective(q);
    const auto preds = predicates_of(q);
    const bool touches_defeasible =
        std::any_of(preds.begin(), preds.end(), [&](const auto& p) { return closed_world_blind.count(p) > 0; });
    for (std::size_t k = 0; k < std::size(kAllSemantics); ++k) {
      const SemanticsId s = kAllSemantics[k];
      Verdict v = Verdict::not_applicable;
      try {
        switch (s) {
          case SemanticsId::cwa:
          case SemanticsId::cwa_dc: {
            const auto& engine = s == SemanticsId::cwa ? cwa : cwad;
            if (engine && objective && !touches_defeasible) v = engine->entails(q) ? Verdict::yes : Verdict::no;
            break;
          }
          case SemanticsId::circumscription:
            if (circ && objective) v = circ->entails(q) ? Verdict::yes : Verdict::no;
            break;
          case SemanticsId::default_logic:
            if (def && objective) v = def->entails(q, Mode::skeptical) ? Verdict::yes : Verdict::no;
            break;
          case SemanticsId::autoepistemic:
            if (ael) v = ael->entails(q, Mode::skeptical) ? Verdict::yes : Verdict::no;
            break;
        }
      } catch (const Error& e) {
        warn(std::string(to_string(s)) + ": " + e.what());
      }
      row.cells[k] = v;
    }
    report.matrix.push_back(std::move(row));
  }
  if (!closed_world_blind.empty() && !queries.empty())
    warn("cwa: queries over defeasible content are marked n/a");

  for (const auto& g : kb.generalisations) {
    if (g.mode != GeneralisationMode::defeasible) continue;
    try {
      if (circ) report.exceptions.push_back(detail::circumscription_exceptions(kb, g, *circ));
      if (def) report.exceptions.push_back(detail::default_exceptions(kb, g, *def));
      if (ael) report.exceptions.push_back(detail::autoepistemic_exceptions(kb, g, *ael));
    } catch (const Error& e) {
      warn(std::string("exceptions: ") + e.what());
    }
  }
  for (const auto& e : report.exceptions)
    for (const auto& w : e.warnings) warn(w);
  return report;
}

}  // namespace nmr
