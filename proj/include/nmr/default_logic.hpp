#pragma once

// Extensions of a finite ground default theory (F, D).
//
// An extension is represented by its generating defaults S ⊆ D: the
// extension is the deductive closure of the kernel F ∪ {conclusion(d) : d ∈ S},
// and S is generating iff it equals App(S) = {d : kernel ⊨ prerequisite(d),
// kernel ⊭ ¬justification(d)}.
//
// The search decides defaults one at a time. With IN decided in and U still
// open, every completion's kernel lies between F ∪ concl(IN) and
// F ∪ concl(IN ∪ U), and entailment is monotone in the kernel, which is
// enough to cut branches that cannot reach a fixpoint.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nmr/classical.hpp"
#include "nmr/ground.hpp"
#include "nmr/kb.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

struct DefaultTheory {
  GroundTheory facts;
  std::vector<GroundDefault> defaults;
};

struct ExtensionWitness {
  std::vector<std::size_t> generating;  // indices into DefaultTheory::defaults, ascending
  std::vector<Formula> kernel;          // F followed by the generating conclusions
  bool grounded = false;                // reachable by iterated application from F
  bool consistent = true;
};

inline DefaultTheory default_theory(const KnowledgeBase& kb) {
  GroundTheory g = ground(translate(kb, SemanticsId::default_logic));
  DefaultTheory t{std::move(g), {}};
  t.defaults = std::move(t.facts.defaults);
  t.facts.defaults.clear();
  t.facts.belief_formulas.clear();
  return t;
}

namespace detail {

inline constexpr std::size_t kMaxGroundDefaults = 62;

class DefaultSearch {
 public:
  using Mask = std::uint64_t;

  explicit DefaultSearch(const DefaultTheory& theory) : theory_(theory), solver_(theory.facts) {
    if (theory.defaults.size() > kMaxGroundDefaults)
      throw Error("default theory has " + std::to_string(theory.defaults.size()) + " ground defaults; at most " +
                  std::to_string(kMaxGroundDefaults) + " are supported");
  }

  std::vector<Formula> conclusions(Mask m) const {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < theory_.defaults.size(); ++i)
      if (m >> i & 1) out.push_back(theory_.defaults[i].conclusion);
    return out;
  }

  bool prerequisite_holds(Mask m, std::size_t d) { return cached(m, 2 * d); }
  bool justification_blocked(Mask m, std::size_t d) { return cached(m, 2 * d + 1); }

  Mask applicable(Mask m) {
    Mask out = 0;
    for (std::size_t d = 0; d < theory_.defaults.size(); ++d)
      if (prerequisite_holds(m, d) && !justification_blocked(m, d)) out |= Mask{1} << d;
    return out;
  }

  std::vector<Mask> fixpoints() {
    std::vector<Mask> out;
    explore(0, 0, 0, out);
    return out;
  }

  bool kernel_consistent(Mask m) const {
    auto c = conclusions(m);
    return solver_.satisfiable(c);
  }

 private:
  bool cached(Mask m, std::size_t query) {
    auto key = std::make_pair(m, query);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const auto& d = theory_.defaults[query / 2];
    Formula q = query % 2 == 0 ? d.prerequisite : Formula::negation(d.justification);
    auto c = conclusions(m);
    bool r = solver_.entails(c, q);
    cache_.emplace(key, r);
    return r;
  }

  void explore(std::size_t next, Mask in, Mask out_set, std::vector<Mask>& found) {
    const std::size_t n = theory_.defaults.size();
    const Mask open = ((Mask{1} << n) - 1) & ~((Mask{1} << next) - 1);
    const Mask upper = in | open;
    for (std::size_t d = 0; d < next; ++d) {
      const Mask bit = Mask{1} << d;
      if (in & bit) {
        if (!prerequisite_holds(upper, d) || justification_blocked(in, d)) return;
      } else if (out_set & bit) {
        if (prerequisite_holds(in, d) && !justification_blocked(upper, d)) return;
      }
    }
    if (next == n) {
      if (applicable(in) == in) found.push_back(in);
      return;
    }
    const Mask bit = Mask{1} << next;
    explore(next + 1, in | bit, out_set, found);
    explore(next + 1, in, out_set | bit, found);
  }

  const DefaultTheory& theory_;
  Solver solver_;
  std::map<std::pair<Mask, std::size_t>, bool> cache_;
};

}  // namespace detail

/// Indices of the defaults applicable with respect to the given kernel extras.
inline std::vector<std::size_t> applicable_defaults(const DefaultTheory& theory, const std::vector<std::size_t>& generating) {
  Solver solver(theory.facts);
  std::vector<Formula> extra;
  for (auto i : generating) extra.push_back(theory.defaults[i].conclusion);
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < theory.defaults.size(); ++d)
    if (solver.entails(extra, theory.defaults[d].prerequisite) &&
        !solver.entails(extra, Formula::negation(theory.defaults[d].justification)))
      out.push_back(d);
  return out;
}

/// Whether the generating defaults can be applied one after another
/// starting from F, each prerequisite entailed by what came before.
inline bool is_grounded(const DefaultTheory& theory, const std::vector<std::size_t>& generating) {
  Solver solver(theory.facts);
  std::vector<Formula> derived;
  std::vector<bool> used(generating.size(), false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t k = 0; k < generating.size(); ++k) {
      if (used[k] || !solver.entails(derived, theory.defaults[generating[k]].prerequisite)) continue;
      used[k] = true;
      derived.push_back(theory.defaults[generating[k]].conclusion);
      progress = true;
    }
  }
  return std::all_of(used.begin(), used.end(), [](bool u) { return u; });
}

inline std::vector<ExtensionWitness> extensions(const DefaultTheory& theory) {
  detail::DefaultSearch search(theory);
  std::vector<ExtensionWitness> out;
  for (auto mask : search.fixpoints()) {
    ExtensionWitness w;
    for (std::size_t i = 0; i < theory.defaults.size(); ++i)
      if (mask >> i & 1) w.generating.push_back(i);
    w.kernel = theory.facts.facts;
    for (auto i : w.generating) w.kernel.push_back(theory.defaults[i].conclusion);
    w.grounded = is_grounded(theory, w.generating);
    w.consistent = search.kernel_consistent(mask);
    out.push_back(std::move(w));
  }
  // Distinct generating sets with classically equivalent kernels are one extension.
  Solver solver(theory.facts);
  auto extras = [&](const ExtensionWitness& w) {
    std::vector<Formula> e;
    for (auto i : w.generating) e.push_back(theory.defaults[i].conclusion);
    return e;
  };
  std::vector<ExtensionWitness> merged;
  for (auto& w : out) {
    bool duplicate = std::any_of(merged.begin(), merged.end(), [&](const ExtensionWitness& m) {
      auto a = extras(w), b = extras(m);
      return solver.entails(a, Formula::conjunction(b)) && solver.entails(b, Formula::conjunction(a));
    });
    if (!duplicate) merged.push_back(std::move(w));
  }
  std::sort(merged.begin(), merged.end(),
            [](const ExtensionWitness& a, const ExtensionWitness& b) { return a.generating < b.generating; });
  return merged;
}

class DefaultEngine {
 public:
  explicit DefaultEngine(const KnowledgeBase& kb)
      : kb_(translate(kb, SemanticsId::default_logic)), theory_(default_theory(kb)), solver_(theory_.facts) {
    for (const auto& a : kb_.ael_formulas) warnings_.push_back("default: autoepistemic formula " + a.id + " ignored");
    extensions_ = nmr::extensions(theory_);
    if (extensions_.empty()) warnings_.push_back("default: no extension; skeptical answers are vacuously yes");
    if (extensions_.size() > 1)
      warnings_.push_back("default: " + std::to_string(extensions_.size()) + " extensions");
    for (std::size_t i = 0; i < extensions_.size(); ++i)
      if (!extensions_[i].grounded)
        warnings_.push_back("default: extension " + std::to_string(i + 1) + " is not grounded");
  }

  bool in_extension(const ExtensionWitness& w, const Formula& query) const {
    Formula q = close_query(kb_, query, kb_.flags.domain_closure);
    require_classical_query(q);
    std::vector<Formula> extra;
    for (auto i : w.generating) extra.push_back(theory_.defaults[i].conclusion);
    return solver_.entails(extra, q);
  }

  /// Skeptical: in every extension (vacuously true with none). Credulous: in some.
  /// With `grounded_only`, extensions failing the groundedness check are skipped.
  bool entails(const Formula& query, Mode mode, bool grounded_only = false) const {
    for (const auto& w : extensions_) {
      if (grounded_only && !w.grounded) continue;
      const bool in = in_extension(w, query);
      if (mode == Mode::skeptical && !in) return false;
      if (mode == Mode::credulous && in) return true;
    }
    return mode == Mode::skeptical;
  }

  const KnowledgeBase& translated() const { return kb_; }
  const DefaultTheory& theory() const { return theory_; }
  const std::vector<ExtensionWitness>& extensions() const { return extensions_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  KnowledgeBase kb_;
  DefaultTheory theory_;
  Solver solver_;
  std::vector<ExtensionWitness> extensions_;
  std::vector<std::string> warnings_;
};

inline bool default_entails(const DefaultTheory& theory, const Formula& query, Mode mode) {
  require_classical_query(query);
  Solver solver(theory.facts);
  for (const auto& w : extensions(theory)) {
    std::vector<Formula> extra;
    for (auto i : w.generating) extra.push_back(theory.defaults[i].conclusion);
    const bool in = solver.entails(extra, query);
    if (mode == Mode::skeptical && !in) return false;
    if (mode == Mode::credulous && in) return true;
  }
  return mode == Mode::skeptical;
}

inline bool default_entails(const KnowledgeBase& kb, const Formula& query, Mode mode) {
  return DefaultEngine(kb).entails(query, mode);
}

}  // namespace nmr
