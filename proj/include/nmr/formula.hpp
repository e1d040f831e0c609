#pragma once

// Terms, atoms and the formula tree shared by every reasoning engine.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nmr/error.hpp"

namespace nmr {

struct Term {
  enum class Kind { constant, variable };

  Kind kind = Kind::constant;
  std::string name;

  static Term constant(std::string name) { return Term{Kind::constant, std::move(name)}; }
  static Term variable(std::string name) { return Term{Kind::variable, std::move(name)}; }

  bool is_constant() const { return kind == Kind::constant; }
  bool is_variable() const { return kind == Kind::variable; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Predicate applied to terms. `abnormal` mirrors the predicate's declaration.
struct Atom {
  std::string predicate;
  std::vector<Term> args;
  bool abnormal = false;

  std::size_t arity() const { return args.size(); }
  bool is_ground() const {
    for (const auto& t : args)
      if (t.is_variable()) return false;
    return true;
  }

  // Ordering is by predicate, then arguments; the marker is derived data.
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    if (auto c = a.args <=> b.args; c != 0) return c;
    return a.abnormal <=> b.abnormal;
  }
  friend bool operator==(const Atom&, const Atom&) = default;
};

inline std::string to_string(const Atom& atom);

/// Immutable formula tree with shared structure. Copies are cheap.
class Formula {
 public:
  enum class Kind { truth, falsity, atom, equal, negation, conjunction, disjunction, implication, belief };

  Formula() : Formula(top()) {}

  static Formula top() { return Formula(make(Kind::truth)); }
  static Formula bottom() { return Formula(make(Kind::falsity)); }
  static Formula atom(Atom a) {
    auto n = make(Kind::atom);
    n->atom = std::move(a);
    return Formula(std::move(n));
  }
  static Formula atom(std::string predicate, std::vector<Term> args, bool abnormal = false) {
    return atom(Atom{std::move(predicate), std::move(args), abnormal});
  }
  static Formula equal(Term lhs, Term rhs) {
    auto n = make(Kind::equal);
    n->terms = {std::move(lhs), std::move(rhs)};
    return Formula(std::move(n));
  }
  static Formula negation(Formula f) { return unary(Kind::negation, std::move(f)); }
  static Formula belief(Formula f) { return unary(Kind::belief, std::move(f)); }
  static Formula conjunction(Formula l, Formula r) { return binary(Kind::conjunction, std::move(l), std::move(r)); }
  static Formula disjunction(Formula l, Formula r) { return binary(Kind::disjunction, std::move(l), std::move(r)); }
  static Formula implication(Formula l, Formula r) { return binary(Kind::implication, std::move(l), std::move(r)); }

  /// Left-nested conjunction; empty input gives `true`.
  static Formula conjunction(const std::vector<Formula>& parts) {
    if (parts.empty()) return top();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conjunction(acc, parts[i]);
    return acc;
  }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_binary() const {
    return is(Kind::conjunction) || is(Kind::disjunction) || is(Kind::implication);
  }

  const Atom& as_atom() const { return node_->atom; }
  const Term& lhs() const { return node_->terms[0]; }
  const Term& rhs() const { return node_->terms[1]; }
  /// Operand of a negation or belief node.
  const Formula& operand() const { return node_->children[0]; }
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }
  const std::vector<Formula>& children() const { return node_->children; }

  /// Identity of the underlying node; equal identities imply equal formulas.
  const void* identity() const { return node_.get(); }

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) { return compare(a, b); }
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }

 private:
  struct Node {
    Kind kind;
    Atom atom;
    std::vector<Term> terms;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }
  static Formula unary(Kind k, Formula f) {
    auto n = make(k);
    n->children.push_back(std::move(f));
    return Formula(std::move(n));
  }
  static Formula binary(Kind k, Formula l, Formula r) {
    auto n = make(k);
    n->children.push_back(std::move(l));
    n->children.push_back(std::move(r));
    return Formula(std::move(n));
  }

  static std::strong_ordering compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = static_cast<int>(a.kind()) <=> static_cast<int>(b.kind()); c != 0) return c;
    switch (a.kind()) {
      case Kind::truth:
      case Kind::falsity:
        return std::strong_ordering::equal;
      case Kind::atom:
        return a.as_atom() <=> b.as_atom();
      case Kind::equal:
        return a.node_->terms <=> b.node_->terms;
      default:
        break;
    }
    const auto& ca = a.children();
    const auto& cb = b.children();
    for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i)
      if (auto c = compare(ca[i], cb[i]); c != 0) return c;
    return ca.size() <=> cb.size();
  }

  std::shared_ptr<const Node> node_;
};

using Substitution = std::map<std::string, Term>;

inline std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  auto visit = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Formula::Kind::atom:
        for (const auto& t : g.as_atom().args)
          if (t.is_variable()) out.insert(t.name);
        break;
      case Formula::Kind::equal:
        if (g.lhs().is_variable()) out.insert(g.lhs().name);
        if (g.rhs().is_variable()) out.insert(g.rhs().name);
        break;
      default:
        for (const auto& c : g.children()) self(self, c);
    }
  };
  visit(visit, f);
  return out;
}

inline bool is_ground(const Formula& f) { return free_variables(f).empty(); }

/// True iff the formula has no belief node.
inline bool is_objective(const Formula& f) {
  if (f.is(Formula::Kind::belief)) return false;
  for (const auto& c : f.children())
    if (!is_objective(c)) return false;
  return true;
}

/// Maximum nesting of belief nodes.
inline std::size_t belief_depth(const Formula& f) {
  std::size_t inner = 0;
  for (const auto& c : f.children()) inner = std::max(inner, belief_depth(c));
  return f.is(Formula::Kind::belief) ? inner + 1 : inner;
}

inline Formula substitute(const Formula& f, const Substitution& s) {
  auto apply = [&](const Term& t) {
    if (t.is_variable())
      if (auto it = s.find(t.name); it != s.end()) return it->second;
    return t;
  };
  switch (f.kind()) {
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      return f;
    case Formula::Kind::atom: {
      Atom a = f.as_atom();
      for (auto& t : a.args) t = apply(t);
      return Formula::atom(std::move(a));
    }
    case Formula::Kind::equal:
      return Formula::equal(apply(f.lhs()), apply(f.rhs()));
    case Formula::Kind::negation:
      return Formula::negation(substitute(f.operand(), s));
    case Formula::Kind::belief:
      return Formula::belief(substitute(f.operand(), s));
    case Formula::Kind::conjunction:
      return Formula::conjunction(substitute(f.left(), s), substitute(f.right(), s));
    case Formula::Kind::disjunction:
      return Formula::disjunction(substitute(f.left(), s), substitute(f.right(), s));
    case Formula::Kind::implication:
      return Formula::implication(substitute(f.left(), s), substitute(f.right(), s));
  }
  return f;
}

/// Every atom occurring in `f`, in first-occurrence order, without duplicates.
inline void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  if (f.is(Formula::Kind::atom)) {
    for (const auto& a : out)
      if (a == f.as_atom()) return;
    out.push_back(f.as_atom());
    return;
  }
  for (const auto& c : f.children()) collect_atoms(c, out);
}

inline std::set<std::string> predicates_of(const Formula& f) {
  std::vector<Atom> atoms;
  collect_atoms(f, atoms);
  std::set<std::string> out;
  for (const auto& a : atoms) out.insert(a.predicate);
  return out;
}

// Printing. Binary children of a different connective are parenthesised,
// as is any binary operand of an implication; same-connective chains
// flatten on the left only, so printing is injective on trees.

inline std::string to_string(const Atom& atom) {
  if (atom.predicate == "=" && atom.args.size() == 2) return atom.args[0].name + " = " + atom.args[1].name;
  std::string out = atom.predicate;
  if (atom.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ", ";
    out += atom.args[i].name;
  }
  out += ')';
  return out;
}

inline std::string to_string(const Formula& f);

namespace detail {

inline const char* connective(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::conjunction: return " & ";
    case Formula::Kind::disjunction: return " | ";
    default: return " -> ";
  }
}

inline std::string wrap(const Formula& f) {
  return f.is_binary() ? "(" + to_string(f) + ")" : to_string(f);
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::truth: return "true";
    case K::falsity: return "false";
    case K::atom: return to_string(f.as_atom());
    case K::equal: return f.lhs().name + " = " + f.rhs().name;
    case K::negation:
      if (f.operand().is(K::equal)) return f.operand().lhs().name + " != " + f.operand().rhs().name;
      return "-" + detail::wrap(f.operand());
    case K::belief: return "B(" + to_string(f.operand()) + ")";
    case K::conjunction:
    case K::disjunction: {
      std::string l = f.left().kind() == f.kind() ? to_string(f.left()) : detail::wrap(f.left());
      return l + detail::connective(f.kind()) + detail::wrap(f.right());
    }
    case K::implication:
      return detail::wrap(f.left()) + " -> " + detail::wrap(f.right());
  }
  return {};
}

}  // namespace nmr
