#pragma once

// Parser for the line-oriented KB language and for standalone queries.
//
//   const a, b.            pred P/1, Q/1.     abpred Ab/1.
//   fact P(a).             fact -Q(b).        fact a != b.
//   all g1: P(x) -> Q(x).  def g2 [vague]: P(x) ~> Q(x).
//   default d1: P(x) : Q(x) / Q(x).
//   ael a1: P(x) & -B(-Q(x)) -> Q(x).
//   flag unique-names.     flag domain-closure.
//
// `%` starts a comment. Inside formulas an argument that is not a declared
// constant is a variable; `B` and `true`/`false` are reserved.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/kb.hpp"

namespace nmr {

namespace detail {

struct Token {
  enum class Kind { ident, punct, end };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (word_char(c)) {
      std::size_t j = i;
      while (j < src.size() && word_char(src[j])) ++j;
      out.push_back({Token::Kind::ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    for (std::string_view two : {"->", "~>", "!="}) {
      if (src.substr(i, 2) == two) {
        out.push_back({Token::Kind::punct, std::string(two), l, cl});
        advance(2);
        goto next;
      }
    }
    if (std::string_view(".,/:()[]&|-=").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::punct, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw ParseError(ParseError::Kind::syntax, std::string("unexpected character '") + c + "'", l, cl);
  next:;
  }
  out.push_back({Token::Kind::end, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, KnowledgeBase& kb) : tokens_(tokenize(src)), kb_(kb) {}

  void parse_program() {
    while (!at_end()) statement();
    try {
      validate(kb_);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.detail(), peek().line, peek().column);
    }
  }

  Formula parse_query() {
    Formula f = implication();
    if (!at_end()) fail("unexpected '" + peek().text + "' after query");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::punct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w) const { return peek().kind == Token::Kind::ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg, ParseError::Kind kind = ParseError::Kind::syntax) const {
    throw ParseError(kind, msg, peek().line, peek().column);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg, ParseError::Kind kind) const {
    throw ParseError(kind, msg, t.line, t.column);
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'" + (at_end() ? " at end of input" : " before '" + peek().text + "'"));
    ++pos_;
  }
  std::string identifier(const char* what) {
    if (peek().kind != Token::Kind::ident) fail(std::string("expected ") + what);
    return tokens_[pos_++].text;
  }

  void statement() {
    const Token start = peek();
    const std::string keyword = identifier("a statement keyword");
    try {
      if (keyword == "const") {
        do {
          const Token t = peek();
          std::string name = identifier("a constant name");
          if (is_reserved(name)) fail_at(t, "'" + name + "' is reserved", ParseError::Kind::invalid);
          if (kb_.has_constant(name)) fail_at(t, "constant '" + name + "' declared twice", ParseError::Kind::invalid);
          if (kb_.find_predicate(name)) fail_at(t, "'" + name + "' is already a predicate", ParseError::Kind::invalid);
          kb_.constants.push_back(std::move(name));
        } while (accept(","));
      } else if (keyword == "pred" || keyword == "abpred") {
        do signature(keyword == "abpred");
        while (accept(","));
      } else if (keyword == "fact") {
        Formula f = implication();
        check_fact(kb_, f);
        kb_.facts.push_back(std::move(f));
      } else if (keyword == "all" || keyword == "def") {
        generalisation(keyword == "all" ? GeneralisationMode::universal : GeneralisationMode::defeasible);
      } else if (keyword == "default") {
        DefaultRule d;
        d.id = statement_id();
        expect(":");
        d.prerequisite = implication();
        expect(":");
        d.justification = implication();
        expect("/");
        d.conclusion = implication();
        check_default(kb_, d);
        kb_.defaults.push_back(std::move(d));
      } else if (keyword == "ael") {
        AelFormula a;
        a.id = statement_id();
        expect(":");
        a.formula = implication();
        check_ael(kb_, a);
        kb_.ael_formulas.push_back(std::move(a));
      } else if (keyword == "flag") {
        std::string name = identifier("a flag name");
        while (is_punct("-") && peek(1).kind == Token::Kind::ident) {
          ++pos_;
          name += "-" + identifier("a flag name");
        }
        if (name == "unique-names")
          kb_.flags.unique_names = true;
        else if (name == "domain-closure")
          kb_.flags.domain_closure = true;
        else
          fail_at(start, "unknown flag '" + name + "'", ParseError::Kind::invalid);
      } else {
        fail_at(start, "unknown statement '" + keyword + "'", ParseError::Kind::syntax);
      }
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.kind(), e.detail(), start.line, start.column);
    }
    expect(".");
  }

  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    ++pos_;
    return true;
  }

  static bool is_reserved(std::string_view name) { return name == "B" || name == "true" || name == "false"; }

  std::string statement_id() {
    const Token t = peek();
    std::string id = identifier("a statement id");
    if (kb_.has_statement_id(id)) fail_at(t, "statement id '" + id + "' used twice", ParseError::Kind::invalid);
    return id;
  }

  void signature(bool abnormal) {
    const Token t = peek();
    std::string name = identifier("a predicate name");
    if (is_reserved(name)) fail_at(t, "'" + name + "' is reserved", ParseError::Kind::invalid);
    if (kb_.find_predicate(name)) fail_at(t, "predicate '" + name + "' declared twice", ParseError::Kind::invalid);
    if (kb_.has_constant(name)) fail_at(t, "'" + name + "' is already a constant", ParseError::Kind::invalid);
    expect("/");
    const Token a = peek();
    std::string digits = identifier("an arity");
    if (digits.find_first_not_of("0123456789") != std::string::npos) fail_at(a, "arity must be a number", ParseError::Kind::syntax);
    kb_.predicates.push_back({std::move(name), std::stoul(digits), abnormal});
  }

  void generalisation(GeneralisationMode mode) {
    Generalisation g;
    g.mode = mode;
    g.id = statement_id();
    auto tag = [&] {
      if (!accept("[")) return;
      const Token t = peek();
      auto parsed = source_tag_from(identifier("a source tag"));
      if (!parsed) fail_at(t, "unknown source tag '" + t.text + "'", ParseError::Kind::invalid);
      g.source = parsed;
      expect("]");
    };
    tag();
    expect(":");
    if (mode == GeneralisationMode::universal) {
      Formula f = implication();
      if (!f.is(Formula::Kind::implication)) fail("universal generalisation needs 'antecedent -> consequent'");
      g.antecedent = f.left();
      g.consequent = f.right();
    } else {
      g.antecedent = implication();
      expect("~>");
      g.consequent = implication();
    }
    if (!g.source) tag();
    check_generalisation(kb_, g);
    kb_.generalisations.push_back(std::move(g));
  }

  // implication := disjunction ['->' implication]
  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implication(lhs, implication());
    return lhs;
  }
  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::disjunction(f, conjunction());
    return f;
  }
  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::conjunction(f, unary());
    return f;
  }
  Formula unary() {
    if (accept("-")) return Formula::negation(unary());
    return primary();
  }

  Term term() {
    const Token t = peek();
    std::string name = identifier("a term");
    if (is_reserved(name)) fail_at(t, "'" + name + "' cannot be a term", ParseError::Kind::syntax);
    if (kb_.find_predicate(name)) fail_at(t, "predicate '" + name + "' used as a term", ParseError::Kind::syntax);
    return kb_.has_constant(name) ? Term::constant(std::move(name)) : Term::variable(std::move(name));
  }

  Formula primary() {
    if (accept("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    const Token t = peek();
    if (t.kind != Token::Kind::ident) fail("expected a formula" + (at_end() ? std::string{} : " before '" + t.text + "'"));
    if (t.text == "true" || t.text == "false") {
      ++pos_;
      return t.text == "true" ? Formula::top() : Formula::bottom();
    }
    if (t.text == "B" && is_punct("(", 1)) {
      pos_ += 2;
      Formula f = implication();
      expect(")");
      return Formula::belief(std::move(f));
    }
    if (is_punct("=", 1) || is_punct("!=", 1)) {
      Term lhs = term();
      const bool negated = is_punct("!=");
      ++pos_;
      Formula eq = Formula::equal(std::move(lhs), term());
      return negated ? Formula::negation(eq) : eq;
    }
    ++pos_;
    const auto* sig = kb_.find_predicate(t.text);
    if (!sig) fail_at(t, "undeclared predicate '" + t.text + "'", ParseError::Kind::undeclared_symbol);
    std::vector<Term> args;
    if (accept("(")) {
      do args.push_back(term());
      while (accept(","));
      expect(")");
    }
    if (args.size() != sig->arity)
      fail_at(t, "predicate '" + t.text + "' has arity " + std::to_string(sig->arity) + ", used with " + std::to_string(args.size()),
              ParseError::Kind::arity_mismatch);
    return Formula::atom(t.text, std::move(args), sig->abnormal);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  KnowledgeBase& kb_;
};

}  // namespace detail

inline KnowledgeBase parse_kb(std::string_view source) {
  KnowledgeBase kb;
  detail::Parser(source, kb).parse_program();
  return kb;
}

/// Parses a query against a KB's declarations. Undeclared argument names become variables.
inline Formula parse_formula(std::string_view text, const KnowledgeBase& kb) {
  KnowledgeBase scratch = kb;
  return detail::Parser(text, scratch).parse_query();
}

}  // namespace nmr
