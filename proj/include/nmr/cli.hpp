#pragma once

// Command-line front end. `run` is the whole program minus process setup,
// so tests can drive it in-process.
//
// Exit codes: 0 ok, 1 failed assertion or certificate, 2 input error,
// 3 refusal (non-unique preferred structure).

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nmr/analysis.hpp"
#include "nmr/parser.hpp"
#include "nmr/report.hpp"

namespace nmr::cli {

enum ExitCode { kOk = 0, kAssertFailed = 1, kInputError = 2, kRefused = 3 };

inline constexpr std::size_t kDefaultMaxAtoms = 24;

struct RunConfig {
  std::string command;
  std::string kb_path;
  std::optional<SemanticsId> semantics;
  std::vector<std::string> queries;
  std::string queries_file;
  Mode mode = Mode::skeptical;
  bool grounded = false;
  bool assert_all = false;
  bool json = false;
  bool verbose = false;
  std::string gen;
  std::string fact;
  bool gen_trusted = false;
  bool fact_trusted = false;
};

class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Strips a `%` comment and a trailing period; returns empty for blank lines.
inline std::string clean_query(std::string line) {
  if (auto p = line.find('%'); p != std::string::npos) line.erase(p);
  auto first = line.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  auto last = line.find_last_not_of(" \t\r\n");
  line = line.substr(first, last - first + 1);
  if (!line.empty() && line.back() == '.') line.pop_back();
  return line;
}

inline std::size_t max_atoms() {
  if (const char* v = std::getenv("NMR_MAX_ATOMS")) {
    try {
      return static_cast<std::size_t>(std::stoul(v));
    } catch (const std::exception&) {
      throw InputError(std::string("NMR_MAX_ATOMS: not a number: ") + v);
    }
  }
  return kDefaultMaxAtoms;
}

inline void check_size(const KnowledgeBase& kb, const std::vector<SemanticsId>& semantics) {
  const std::size_t cap = max_atoms();
  for (auto s : semantics) {
    const auto n = herbrand_base(translate(kb, s)).size();
    if (n > cap)
      throw InputError(std::to_string(n) + " ground atoms under " + std::string(to_string(s)) +
                       " exceed NMR_MAX_ATOMS=" + std::to_string(cap));
  }
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

/// Ground literals over `vocabulary` decided by the solver with `extra`.
inline std::vector<std::string> decided_literals(const Solver& solver, const std::vector<Formula>& extra) {
  std::vector<std::string> out;
  for (const auto& a : solver.vocabulary()) {
    const bool eq = a.predicate == kEqualityPredicate;
    if (solver.entails(extra, Formula::atom(a)))
      out.push_back(to_string(a));
    else if (solver.entails(extra, Formula::negation(Formula::atom(a))))
      out.push_back(eq ? a.args[0].name + " != " + a.args[1].name : "-" + to_string(a));
  }
  return out;
}

class Runner {
 public:
  Runner(RunConfig config, std::ostream& out, std::ostream& err) : c_(std::move(config)), out_(out), err_(err) {}

  int run() {
    kb_ = parse_kb(read_file(c_.kb_path));
    if (c_.command == "check") return check();
    if (c_.command == "compare") return compare_cmd();
    if (c_.command == "exceptions") return exceptions_cmd();
    if (c_.command == "complete") return complete_cmd();
    if (c_.command == "classify") return classify_cmd();
    if (c_.command == "extensions") return extensions_cmd();
    if (c_.command == "expansions") return expansions_cmd();
    return minimal_models_cmd();
  }

 private:
  SemanticsId required_semantics() const {
    if (!c_.semantics) throw InputError(c_.command + ": --semantics is required");
    return *c_.semantics;
  }

  const std::string& required_gen() const {
    if (c_.gen.empty()) throw InputError(c_.command + ": --gen is required");
    return c_.gen;
  }

  std::vector<std::string> query_texts() const {
    std::vector<std::string> out;
    for (const auto& q : c_.queries)
      if (auto s = clean_query(q); !s.empty()) out.push_back(s);
    if (!c_.queries_file.empty()) {
      std::istringstream in(read_file(c_.queries_file));
      for (std::string line; std::getline(in, line);)
        if (auto s = clean_query(line); !s.empty()) out.push_back(s);
    }
    return out;
  }

  /// Queries may mention the generated abnormality predicates.
  std::vector<Formula> parse_queries(const std::vector<std::string>& texts, SemanticsId s) const {
    const KnowledgeBase scope = translate(kb_, s);
    std::vector<Formula> out;
    for (const auto& t : texts) {
      try {
        out.push_back(parse_formula(t, scope));
      } catch (const ParseError& e) {
        throw InputError("query '" + t + "': " + e.detail());
      }
    }
    return out;
  }

  void warn(const std::vector<std::string>& warnings) const {
    for (const auto& w : warnings) err_ << "warning: " << w << "\n";
  }

  void emit(Json j) const {
    Json framed = {{"format-version", kFormatVersion}};
    for (auto& [k, v] : j.items()) framed[k] = v;
    out_ << framed.dump(2) << "\n";
  }

  int check() {
    const auto s = required_semantics();
    check_size(kb_, {s});
    const auto texts = query_texts();
    if (texts.empty()) throw InputError("check: no queries given");
    const auto queries = parse_queries(texts, s);

    std::vector<std::string> warnings;
    std::function<bool(const Formula&)> ask;
    std::optional<CwaEngine> cwa;
    std::optional<CircumscriptionEngine> circ;
    std::optional<DefaultEngine> def;
    std::optional<AutoepistemicEngine> ael;
    switch (s) {
      case SemanticsId::cwa:
      case SemanticsId::cwa_dc:
        cwa.emplace(kb_, s == SemanticsId::cwa_dc);
        warnings = cwa->warnings();
        ask = [&](const Formula& q) { return cwa->entails(q); };
        break;
      case SemanticsId::circumscription:
        circ.emplace(kb_);
        warnings = circ->warnings();
        ask = [&](const Formula& q) { return c_.mode == Mode::skeptical ? circ->entails(q) : circ->possible(q); };
        break;
      case SemanticsId::default_logic:
        def.emplace(kb_);
        warnings = def->warnings();
        ask = [&](const Formula& q) { return def->entails(q, c_.mode, c_.grounded); };
        break;
      case SemanticsId::autoepistemic:
        ael.emplace(kb_);
        warnings = ael->warnings();
        ask = [&](const Formula& q) { return ael->entails(q, c_.mode); };
        break;
    }
    if (c_.grounded && s != SemanticsId::default_logic) warnings.push_back("--grounded applies to default semantics only");

    bool all_yes = true;
    Json results = Json::array();
    for (std::size_t i = 0; i < queries.size(); ++i) {
      bool answer = false;
      try {
        answer = ask(queries[i]);
      } catch (const QueryError& e) {
        throw InputError("query '" + texts[i] + "': " + e.what());
      }
      all_yes = all_yes && answer;
      if (c_.json)
        results.push_back({{"query", to_string(queries[i])}, {"entailed", answer}});
      else if (c_.verbose)
        out_ << to_string(queries[i]) << ": " << (answer ? "yes" : "no") << "\n";
      else
        out_ << (answer ? "yes" : "no") << "\n";
    }
    if (c_.json)
      emit({{"semantics", to_string(s)}, {"mode", to_string(c_.mode)}, {"results", results}, {"warnings", warnings}});
    else
      warn(warnings);
    return c_.assert_all && !all_yes ? kAssertFailed : kOk;
  }

  int compare_cmd() {
    check_size(kb_, {std::begin(kAllSemantics), std::end(kAllSemantics)});
    const auto report = compare(kb_, parse_queries(query_texts(), SemanticsId::circumscription));
    if (c_.json)
      out_ << to_json(report).dump(2) << "\n";
    else
      out_ << to_text(report);
    bool all_yes = true;
    for (const auto& row : report.matrix)
      for (auto v : row.cells) all_yes = all_yes && v != Verdict::no;
    return c_.assert_all && !all_yes ? kAssertFailed : kOk;
  }

  int exceptions_cmd() {
    const auto s = required_semantics();
    check_size(kb_, {s});
    const auto e = exceptions(kb_, required_gen(), s);
    if (c_.json) {
      emit(to_json(e));
      return kOk;
    }
    for (std::size_t i = 0; i < e.members.size(); ++i) {
      out_ << e.members[i];
      if (c_.verbose) out_ << "  " << e.trace[i].evidence;
      out_ << "\n";
    }
    if (c_.verbose)
      for (const auto& m : e.credulous) out_ << "credulous: " << m << "\n";
    warn(e.warnings);
    return kOk;
  }

  int complete_cmd() {
    const auto s = required_semantics();
    check_size(kb_, {s});
    try {
      const auto r = complete_generalisation(kb_, required_gen(), s);
      if (c_.json) {
        emit({{"completed", to_source(r.completed)},
              {"exceptions", to_json(r.exceptions)},
              {"certificate",
               {{"passed", r.certificate.passed},
                {"reference", r.certificate.classical_reference ? "classical" : std::string(to_string(s))},
                {"queries-checked", r.certificate.queries_checked},
                {"mismatches", r.certificate.mismatches}}}});
      } else {
        out_ << to_source(r.completed) << "\n";
        if (c_.verbose)
          out_ << "certificate: " << (r.certificate.passed ? "passed" : "failed") << " on "
               << r.certificate.queries_checked << " ground literals ("
               << (r.certificate.classical_reference ? "classical" : std::string(to_string(s))) << " reference)\n";
        for (const auto& m : r.certificate.mismatches) err_ << "certificate mismatch: " << m << "\n";
        warn(r.exceptions.warnings);
      }
      return r.certificate.passed ? kOk : kAssertFailed;
    } catch (const RefusalError& e) {
      if (c_.json) {
        emit({{"refused", true}, {"reason", e.what()}, {"alternatives", e.alternatives()}});
      } else {
        err_ << "refused: " << e.what() << "\n";
        for (std::size_t i = 0; i < e.alternatives().size(); ++i)
          out_ << "alternative " << i + 1 << ": {" << join(e.alternatives()[i], ", ") << "}\n";
      }
      return kRefused;
    }
  }

  int classify_cmd() {
    const auto* g = kb_.find_generalisation(required_gen());
    if (!g) throw InputError("classify: unknown generalisation '" + c_.gen + "'");
    if (c_.fact.empty()) throw InputError("classify: --fact is required");
    Formula fact;
    try {
      fact = parse_formula(clean_query(c_.fact), kb_);
    } catch (const ParseError& e) {
      throw InputError("fact '" + c_.fact + "': " + e.detail());
    }
    const auto v = classify_discrepancy(*g, fact, c_.gen_trusted, c_.fact_trusted, kb_.flags.unique_names);
    if (c_.json) {
      emit({{"generalisation", g->id}, {"instance", to_string(fact)}, {"verdict", to_string(v.kind)}, {"advisory", v.advisory}});
    } else {
      out_ << to_string(v.kind) << "\n";
      if (c_.verbose && !v.advisory.empty()) out_ << v.advisory << "\n";
    }
    return kOk;
  }

  int extensions_cmd() {
    check_size(kb_, {SemanticsId::default_logic});
    DefaultEngine engine(kb_);
    Solver solver(engine.theory().facts);
    Json list = Json::array();
    std::size_t shown = 0;
    for (const auto& w : engine.extensions()) {
      if (c_.grounded && !w.grounded) continue;
      std::vector<std::string> names;
      std::vector<Formula> extra;
      for (auto i : w.generating) {
        names.push_back(engine.theory().defaults[i].name());
        extra.push_back(engine.theory().defaults[i].conclusion);
      }
      std::sort(names.begin(), names.end());
      const auto literals = decided_literals(solver, extra);
      ++shown;
      if (c_.json) {
        list.push_back({{"generating", names}, {"grounded", w.grounded}, {"consistent", w.consistent}, {"literals", literals}});
      } else {
        out_ << "extension " << shown << ": {" << join(names, ", ") << "}" << (w.grounded ? "" : " (not grounded)") << "\n";
        out_ << "  " << join(literals) << "\n";
      }
    }
    if (c_.json)
      emit({{"extensions", list}, {"warnings", engine.warnings()}});
    else
      warn(engine.warnings());
    return kOk;
  }

  int expansions_cmd() {
    check_size(kb_, {SemanticsId::autoepistemic});
    AutoepistemicEngine engine(kb_);
    Json list = Json::array();
    for (std::size_t e = 0; e < engine.expansions().size(); ++e) {
      const auto& w = engine.expansions()[e];
      std::vector<std::string> assignment;
      Json jassign = Json::object();
      for (std::size_t i = 0; i < engine.atoms().size(); ++i) {
        const std::string name = to_string(engine.atoms()[i].node());
        assignment.push_back(name + "=" + (w.assignment[i] ? "true" : "false"));
        jassign[name] = static_cast<bool>(w.assignment[i]);
      }
      std::vector<Formula> reduced(w.kernel.begin() + static_cast<std::ptrdiff_t>(engine.theory().facts.size()), w.kernel.end());
      const auto literals = decided_literals(engine.objective_solver(), reduced);
      if (c_.json) {
        list.push_back({{"assignment", jassign}, {"degenerate", w.degenerate}, {"literals", literals}});
      } else {
        out_ << "expansion " << e + 1 << ": " << join(assignment) << (w.degenerate ? " (degenerate)" : "") << "\n";
        out_ << "  " << join(literals) << "\n";
      }
    }
    if (c_.json)
      emit({{"expansions", list}, {"warnings", engine.warnings()}});
    else
      warn(engine.warnings());
    return kOk;
  }

  int minimal_models_cmd() {
    check_size(kb_, {SemanticsId::circumscription});
    CircumscriptionEngine engine(kb_);
    Json list = Json::array();
    std::size_t k = 0;
    for (const auto& m : engine.models().minimal_models()) {
      if (c_.json)
        list.push_back(m.to_literals());
      else
        out_ << "model " << ++k << ": " << m.to_literals() << "\n";
    }
    if (c_.verbose && !c_.json)
      out_ << engine.models().minimal.size() << " minimal of " << engine.models().all_models.size() << " models\n";
    if (c_.json)
      emit({{"minimal-models", list}, {"models", engine.models().all_models.size()}, {"warnings", engine.warnings()}});
    else
      warn(engine.warnings());
    return kOk;
  }

  RunConfig c_;
  std::ostream& out_;
  std::ostream& err_;
  KnowledgeBase kb_;
};

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-monotonic entailment over finite knowledge bases", "nmr"};
  app.require_subcommand(1, 1);

  RunConfig c;
  std::string semantics, mode = "skeptical", format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("kb", c.kb_path, "knowledge base file")->required();
    sub->add_flag("--verbose,-v", c.verbose, "more detail");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_queries = [&](CLI::App* sub) {
    sub->add_option("--query,-q", c.queries, "query formula (repeatable)");
    sub->add_option("--queries", c.queries_file, "file with one query per line");
    sub->add_flag("--assert", c.assert_all, "exit 1 unless every answer is yes");
  };
  std::vector<std::string> names;
  for (auto s : kAllSemantics) names.emplace_back(to_string(s));
  auto add_semantics = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--semantics,-s", semantics, "semantics")->check(CLI::IsMember(allowed));
  };
  const std::vector<std::string> with_exceptions{"circumscription", "default", "autoepistemic"};

  auto* check = app.add_subcommand("check", "answer queries under one semantics");
  add_common(check);
  add_queries(check);
  add_semantics(check, names);
  check->add_option("--mode", mode, "skeptical or credulous")->check(CLI::IsMember({"skeptical", "credulous"}));
  check->add_flag("--grounded", c.grounded, "default logic: keep grounded extensions only");

  auto* cmp = app.add_subcommand("compare", "entailment matrix across all semantics, with the axes table");
  add_common(cmp);
  add_queries(cmp);

  auto* exc = app.add_subcommand("exceptions", "exceptions to a defeasible generalisation");
  add_common(exc);
  add_semantics(exc, with_exceptions);
  exc->add_option("--gen,-g", c.gen, "generalisation id");

  auto* comp = app.add_subcommand("complete", "universal form of a defeasible generalisation");
  add_common(comp);
  add_semantics(comp, with_exceptions);
  comp->add_option("--gen,-g", c.gen, "generalisation id");

  auto* cls = app.add_subcommand("classify", "classify a conflict between a generalisation and an instance");
  add_common(cls);
  cls->add_option("--gen,-g", c.gen, "generalisation id");
  cls->add_option("--fact", c.fact, "ground instance formula");
  cls->add_flag("--gen-trusted", c.gen_trusted, "the generalisation is held true");
  cls->add_flag("--fact-trusted", c.fact_trusted, "the instance is held true");

  auto* ext = app.add_subcommand("extensions", "default-logic extensions");
  add_common(ext);
  ext->add_flag("--grounded", c.grounded, "grounded extensions only");

  auto* exp = app.add_subcommand("expansions", "autoepistemic stable expansions");
  add_common(exp);

  auto* mm = app.add_subcommand("minimal-models", "circumscription minimal models");
  add_common(mm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "nmr: " << e.what() << "\n";
    return kInputError;
  }

  c.command = app.get_subcommands().front()->get_name();
  if (!semantics.empty()) c.semantics = semantics_from(semantics);
  c.mode = mode == "credulous" ? Mode::credulous : Mode::skeptical;
  c.json = format == "json";

  try {
    return detail::Runner(c, out, err).run();
  } catch (const RefusalError& e) {
    err << "nmr: " << e.what() << "\n";
    return kRefused;
  } catch (const ParseError& e) {
    err << c.kb_path << ":" << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "nmr: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace nmr::cli
