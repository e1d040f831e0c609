#pragma once

// Classical propositional reasoning over ground theories: satisfiability,
// entailment by refutation, and model enumeration. Formulas are Tseitin
// encoded; search is DPLL with unit propagation, branching on vocabulary
// atoms in their sorted order, so model streams are lexicographic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/ground.hpp"

namespace nmr {

/// Total truth assignment over a fixed, sorted atom vocabulary.
class Interpretation {
 public:
  Interpretation(std::shared_ptr<const std::vector<Atom>> vocabulary, std::vector<bool> values)
      : vocabulary_(std::move(vocabulary)), values_(std::move(values)) {}

  const std::vector<Atom>& vocabulary() const { return *vocabulary_; }
  const std::vector<bool>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool value(std::size_t i) const { return values_[i]; }

  /// Index of `atom` in the vocabulary, or size() when absent.
  std::size_t index_of(const Atom& atom) const {
    auto it = std::lower_bound(vocabulary_->begin(), vocabulary_->end(), atom);
    if (it == vocabulary_->end() || !(*it == atom)) return size();
    return static_cast<std::size_t>(it - vocabulary_->begin());
  }
  bool value(const Atom& atom) const {
    const auto i = index_of(atom);
    if (i == size()) throw Error("atom " + to_string(atom) + " is outside the interpretation's vocabulary");
    return values_[i];
  }

  std::vector<Atom> true_atoms() const {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (values_[i]) out.push_back((*vocabulary_)[i]);
    return out;
  }

  bool same_vocabulary(const Interpretation& other) const {
    return vocabulary_ == other.vocabulary_ || *vocabulary_ == *other.vocabulary_;
  }

  /// Sorted literal list, e.g. `Bird(tweety) -Flies(chilly)`.
  std::string to_literals() const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ' ';
      const Atom& a = (*vocabulary_)[i];
      if (a.predicate == "=" && !values_[i]) {
        out += a.args[0].name + " != " + a.args[1].name;
        continue;
      }
      if (!values_[i]) out += '-';
      out += to_string(a);
    }
    return out;
  }

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.values_ == b.values_ && a.same_vocabulary(b);
  }

 private:
  std::shared_ptr<const std::vector<Atom>> vocabulary_;
  std::vector<bool> values_;
};

/// Truth value of an objective ground formula.
inline bool evaluate(const Formula& f, const Interpretation& i, bool unique_names) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::truth: return true;
    case K::falsity: return false;
    case K::atom: return i.value(f.as_atom());
    case K::equal:
      if (!f.lhs().is_constant() || !f.rhs().is_constant()) throw QueryError("cannot evaluate non-ground " + to_string(f));
      if (f.lhs().name == f.rhs().name) return true;
      if (unique_names) return false;
      return i.value(equality_atom(f.lhs().name, f.rhs().name));
    case K::negation: return !evaluate(f.operand(), i, unique_names);
    case K::conjunction: return evaluate(f.left(), i, unique_names) && evaluate(f.right(), i, unique_names);
    case K::disjunction: return evaluate(f.left(), i, unique_names) || evaluate(f.right(), i, unique_names);
    case K::implication: return !evaluate(f.left(), i, unique_names) || evaluate(f.right(), i, unique_names);
    case K::belief: throw QueryError("belief operator in classical formula " + to_string(f));
  }
  return false;
}

inline void require_classical_query(const Formula& query) {
  if (!is_objective(query)) throw QueryError("query '" + to_string(query) + "' uses the belief operator");
  if (auto fv = free_variables(query); !fv.empty())
    throw QueryError("query '" + to_string(query) + "' is not ground (free variable '" + *fv.begin() + "')");
}

namespace detail {

struct Cnf {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
  std::map<Atom, int> extra;  // atoms outside the vocabulary, unconstrained
};

// Literal encoding: variable v > 0 is atom v-1 of the vocabulary for
// v <= vocabulary size; the next variable is the constant `true`.
class Encoder {
 public:
  Encoder(const std::vector<Atom>* vocabulary, bool unique_names, Cnf* cnf)
      : vocabulary_(vocabulary), unique_names_(unique_names), cnf_(cnf) {}

  int truth() const { return static_cast<int>(vocabulary_->size()) + 1; }

  void assert_formula(const Formula& f) {
    using K = Formula::Kind;
    if (f.is(K::conjunction)) {
      assert_formula(f.left());
      assert_formula(f.right());
      return;
    }
    if (f.is(K::truth)) return;
    if (f.is(K::disjunction) || f.is(K::implication) || (f.is(K::negation) && f.operand().is(K::conjunction))) {
      std::vector<int> clause;
      disjuncts(f, false, clause);
      cnf_->clauses.push_back(std::move(clause));
      return;
    }
    cnf_->clauses.push_back({literal(f)});
  }

  int literal(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::truth: return truth();
      case K::falsity: return -truth();
      case K::atom: return atom_variable(f.as_atom());
      case K::equal:
        if (!f.lhs().is_constant() || !f.rhs().is_constant()) throw QueryError("non-ground equality " + to_string(f));
        if (f.lhs().name == f.rhs().name) return truth();
        if (unique_names_) return -truth();
        return atom_variable(equality_atom(f.lhs().name, f.rhs().name));
      case K::negation: return -literal(f.operand());
      case K::belief: throw QueryError("belief operator in classical formula " + to_string(f));
      case K::conjunction: {
        const int a = literal(f.left()), b = literal(f.right()), g = fresh();
        cnf_->clauses.push_back({-g, a});
        cnf_->clauses.push_back({-g, b});
        cnf_->clauses.push_back({g, -a, -b});
        return g;
      }
      case K::disjunction:
      case K::implication: {
        const int a = f.is(K::implication) ? -literal(f.left()) : literal(f.left());
        const int b = literal(f.right()), g = fresh();
        cnf_->clauses.push_back({-g, a, b});
        cnf_->clauses.push_back({g, -a});
        cnf_->clauses.push_back({g, -b});
        return g;
      }
    }
    return truth();
  }

 private:
  // Flattens a disjunctive formula (possibly negated) into clause literals.
  void disjuncts(const Formula& f, bool negated, std::vector<int>& out) {
    using K = Formula::Kind;
    if (!negated && f.is(K::disjunction)) {
      disjuncts(f.left(), false, out);
      disjuncts(f.right(), false, out);
    } else if (!negated && f.is(K::implication)) {
      disjuncts(f.left(), true, out);
      disjuncts(f.right(), false, out);
    } else if (negated && f.is(K::conjunction)) {
      disjuncts(f.left(), true, out);
      disjuncts(f.right(), true, out);
    } else if (f.is(K::negation)) {
      disjuncts(f.operand(), !negated, out);
    } else {
      out.push_back(negated ? -literal(f) : literal(f));
    }
  }

  int fresh() { return ++cnf_->variables; }

  int atom_variable(const Atom& a) {
    auto it = std::lower_bound(vocabulary_->begin(), vocabulary_->end(), a);
    if (it != vocabulary_->end() && *it == a) return static_cast<int>(it - vocabulary_->begin()) + 1;
    auto [pos, inserted] = cnf_->extra.try_emplace(a, 0);
    if (inserted) pos->second = fresh();
    return pos->second;
  }

  const std::vector<Atom>* vocabulary_;
  bool unique_names_;
  Cnf* cnf_;
};

class Search {
 public:
  explicit Search(const Cnf& cnf) : cnf_(cnf) {}

  using Assignment = std::vector<std::int8_t>;  // 0 unknown, 1 true, -1 false

  Assignment initial() const { return Assignment(static_cast<std::size_t>(cnf_.variables) + 1, 0); }

  bool satisfiable(Assignment a) const { return dpll(a, 1); }

  /// Calls `emit` with the values of variables 1..projected for every
  /// projected model, in lexicographic order (false before true).
  template <class Emit>
  void enumerate(Assignment a, int projected, Emit&& emit) const {
    if (!propagate(a)) return;
    int v = 1;
    while (v <= projected && a[static_cast<std::size_t>(v)] != 0) ++v;
    if (v > projected) {
      Assignment rest = a;
      if (!dpll(rest, projected + 1)) return;
      std::vector<bool> values(static_cast<std::size_t>(projected));
      for (int i = 1; i <= projected; ++i) values[static_cast<std::size_t>(i - 1)] = a[static_cast<std::size_t>(i)] > 0;
      emit(std::move(values));
      return;
    }
    for (std::int8_t val : {std::int8_t{-1}, std::int8_t{1}}) {
      Assignment next = a;
      next[static_cast<std::size_t>(v)] = val;
      enumerate(std::move(next), projected, emit);
    }
  }

 private:
  static std::int8_t value(const Assignment& a, int lit) {
    const std::int8_t v = a[static_cast<std::size_t>(lit > 0 ? lit : -lit)];
    return lit > 0 ? v : static_cast<std::int8_t>(-v);
  }

  bool propagate(Assignment& a) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : cnf_.clauses) {
        int unassigned = 0, last = 0;
        bool satisfied = false;
        for (int lit : clause) {
          const auto v = value(a, lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = lit;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          a[static_cast<std::size_t>(last > 0 ? last : -last)] = last > 0 ? 1 : -1;
          changed = true;
        }
      }
    }
    return true;
  }

  bool dpll(Assignment& a, int from) const {
    if (!propagate(a)) return false;
    int v = from;
    while (v <= cnf_.variables && a[static_cast<std::size_t>(v)] != 0) ++v;
    if (v > cnf_.variables) return true;
    for (std::int8_t val : {std::int8_t{-1}, std::int8_t{1}}) {
      Assignment next = a;
      next[static_cast<std::size_t>(v)] = val;
      if (dpll(next, from)) return true;
    }
    return false;
  }

  const Cnf& cnf_;
};

}  // namespace detail

/// Reusable solver over a base set of objective formulas. Queries add
/// extra formulas to a copy of the base encoding; the base is never mutated.
class Solver {
 public:
  Solver(std::vector<Atom> vocabulary, bool unique_names)
      : vocabulary_(std::make_shared<const std::vector<Atom>>(std::move(vocabulary))), unique_names_(unique_names) {
    base_.variables = static_cast<int>(vocabulary_->size()) + 1;
    base_.clauses.push_back({base_.variables});
  }

  explicit Solver(const GroundTheory& theory) : Solver(theory.vocabulary, theory.unique_names) {
    for (const auto& f : theory.facts) add(f);
  }

  void add(const Formula& f) {
    detail::Encoder enc(vocabulary_.get(), unique_names_, &base_);
    enc.assert_formula(f);
    base_formulas_.push_back(f);
  }

  const std::vector<Atom>& vocabulary() const { return *vocabulary_; }
  std::shared_ptr<const std::vector<Atom>> shared_vocabulary() const { return vocabulary_; }
  bool unique_names() const { return unique_names_; }
  const std::vector<Formula>& formulas() const { return base_formulas_; }

  bool satisfiable(std::span<const Formula> extra = {}) const {
    detail::Cnf cnf = base_;
    detail::Encoder enc(vocabulary_.get(), unique_names_, &cnf);
    for (const auto& f : extra) enc.assert_formula(f);
    detail::Search search(cnf);
    return search.satisfiable(search.initial());
  }

  /// base ∪ extra ⊨ query, decided as unsatisfiability of base ∪ extra ∪ {¬query}.
  bool entails(std::span<const Formula> extra, const Formula& query) const {
    std::vector<Formula> all(extra.begin(), extra.end());
    all.push_back(Formula::negation(query));
    return !satisfiable(all);
  }
  bool entails(const Formula& query) const { return entails(std::span<const Formula>{}, query); }

  std::vector<Interpretation> models(std::span<const Formula> extra = {}) const {
    detail::Cnf cnf = base_;
    detail::Encoder enc(vocabulary_.get(), unique_names_, &cnf);
    for (const auto& f : extra) enc.assert_formula(f);
    detail::Search search(cnf);
    std::vector<Interpretation> out;
    search.enumerate(search.initial(), static_cast<int>(vocabulary_->size()),
                     [&](std::vector<bool> values) { out.emplace_back(vocabulary_, std::move(values)); });
    return out;
  }

 private:
  std::shared_ptr<const std::vector<Atom>> vocabulary_;
  bool unique_names_;
  detail::Cnf base_;
  std::vector<Formula> base_formulas_;
};

inline void require_objective(const GroundTheory& theory) {
  if (!theory.is_objective()) throw Error("theory contains belief formulas; use the autoepistemic engine");
}

inline std::vector<Interpretation> models(const GroundTheory& theory) {
  require_objective(theory);
  return Solver(theory).models();
}

inline bool consistent(const GroundTheory& theory) {
  require_objective(theory);
  return Solver(theory).satisfiable();
}

inline bool entails(const GroundTheory& theory, const Formula& query) {
  require_classical_query(query);
  require_objective(theory);
  return Solver(theory).entails(query);
}

}  // namespace nmr
