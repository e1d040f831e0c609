// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nmr/cli.hpp"
#include "nmr/report.hpp"
#include "support.hpp"

using namespace nmr;
using nmr::testing::load;
using nmr::testing::q;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Outcome closed_world_birds() {
  Outcome o;
  const auto start = Clock::now();
  auto kb = load("cwa-birds.kb");
  o.require(cwa_entails(kb, q(kb, "-Flies(chilly)")), "-Flies(chilly) not entailed");
  kb.facts.push_back(q(kb, "Flies(chilly)"));
  o.require(!cwa_entails(kb, q(kb, "-Flies(chilly)")), "-Flies(chilly) still entailed after adding Flies(chilly)");
  const double t = seconds_since(start);
  o.require(t < 1.0, "took " + std::to_string(t) + " s");
  return o;
}

Outcome closed_world_inconsistency() {
  Outcome o;
  auto kb = load("cwa-inconsistent.kb");
  CwaEngine engine(kb);
  o.require(!engine.augmentation().consistent, "KB+ not flagged inconsistent");
  o.require(engine.entails(q(kb, "Swims(t)")), "fresh atom Swims(t) not entailed");
  return o;
}

Outcome circumscription_tweety() {
  Outcome o;
  auto kb = load("tweety-circ.kb");
  CircumscriptionEngine engine(kb);
  o.require(engine.entails(q(kb, "Flies(tweety)")), "Flies(tweety) not entailed");
  o.require(engine.entails(q(kb, "Ab(chilly)")), "Ab(chilly) not entailed");
  o.require(!engine.entails(q(kb, "Ab(tweety)")), "Ab(tweety) entailed");
  const std::vector<Atom> chilly{Atom{"Ab", {Term::constant("chilly")}, true}};
  o.require(!engine.models().minimal.empty(), "no minimal models");
  for (const auto& m : engine.models().minimal_models())
    o.require(ab_extension(m) == chilly, "minimal model with Ab-extension other than {Ab(chilly)}: " + m.to_literals());
  return o;
}

Outcome default_tweety() {
  Outcome o;
  auto kb = load("tweety-default.kb");
  DefaultEngine engine(kb);
  o.require(engine.extensions().size() == 1, std::to_string(engine.extensions().size()) + " extensions");
  o.require(engine.entails(q(kb, "Flies(tweety)"), Mode::skeptical), "skeptical Flies(tweety) is no");
  o.require(!engine.entails(q(kb, "Flies(chilly)"), Mode::credulous), "credulous Flies(chilly) is yes");
  return o;
}

Outcome autoepistemic_tweety() {
  Outcome o;
  auto kb = load("tweety-ael.kb");
  AutoepistemicEngine engine(kb);
  o.require(engine.expansions().size() == 1, std::to_string(engine.expansions().size()) + " expansions");
  if (engine.expansions().size() == 1) {
    const auto& w = engine.expansions()[0];
    for (std::size_t i = 0; i < engine.atoms().size(); ++i) {
      const auto body = to_string(engine.atoms()[i].body);
      if (body == "-Flies(chilly)") o.require(w.assignment[i], "B(-Flies(chilly)) assigned false");
      if (body == "-Flies(tweety)") o.require(!w.assignment[i], "B(-Flies(tweety)) assigned true");
    }
    o.require(engine.atoms().size() == 2, "expected two modal atoms");
  }
  o.require(engine.entails(q(kb, "Flies(tweety)"), Mode::skeptical), "skeptical Flies(tweety) is no");
  o.require(!engine.entails(q(kb, "Flies(chilly)"), Mode::skeptical), "skeptical Flies(chilly) is yes");
  return o;
}

Outcome prime_completion() {
  Outcome o;
  auto kb = load("primes.kb");
  auto r = complete_generalisation(kb, "g", SemanticsId::circumscription);
  o.require(r.exceptions.members == std::vector<std::string>{"2"}, "exceptions differ from {2}");
  o.require(to_source(r.completed) == "all g: (Prime(x) & x != 2) -> Odd(x)", "completed: " + to_source(r.completed));
  o.require(r.certificate.passed, "certificate failed");
  o.require(r.certificate.queries_checked == 2 * herbrand_base(kb).size(), "certificate not exhaustive");
  return o;
}

Outcome axes_table() {
  Outcome o;
  const char* argv[] = {"nmr", "compare", nullptr, "--format", "json"};
  const std::string path = nmr::testing::sample_path("tweety.kb");
  argv[2] = path.c_str();
  std::ostringstream out, err;
  o.require(cli::run(5, argv, out, err) == 0, "compare failed: " + err.str());
  auto j = nlohmann::json::parse(out.str());
  const std::vector<std::vector<std::string>> table = {
      {"cwa", "syntactic", "epistemic", "/", "/"},
      {"circumscription", "semantic", "ontological", "explicit", "logical"},
      {"default", "syntactic", "epistemic", "implicit", "meta-logical"},
      {"autoepistemic", "syntactic", "epistemic", "implicit", "logical"},
  };
  int cells = 0;
  o.require(j["axes"].size() == table.size(), "axes rows");
  for (std::size_t i = 0; i < table.size() && i < j["axes"].size(); ++i) {
    o.require(j["axes"][i]["system"] == table[i][0], "row " + std::to_string(i) + " system");
    for (std::size_t k = 0; k < 4; ++k) {
      const bool ok = j["axes"][i][std::string(kAxisNames[k])] == table[i][k + 1];
      o.require(ok, table[i][0] + "/" + std::string(kAxisNames[k]));
      cells += ok;
    }
  }
  o.require(cells == 16, std::to_string(cells) + " of 16 cells match");
  o.detail = o.pass ? "16/16 cells" : o.detail;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  constexpr std::uint32_t kKbs = 500;
  const auto start = Clock::now();
  std::size_t circ = 0, def = 0, ael = 0, cwa = 0;
  for (std::uint32_t seed = 0; seed < kKbs; ++seed) {
    auto kb = nmr::testing::RandomKb(10000 + seed).kb();
    const std::string tag = "seed " + std::to_string(10000 + seed);

    CircumscriptionEngine c(kb);
    const bool circ_ok = c.models().minimal_models() == nmr::testing::dominance_minimal_models(c.models().all_models);
    o.require(circ_ok, tag + ": circumscription");
    circ += circ_ok;

    DefaultEngine d(kb);
    const bool def_ok = nmr::testing::same_extensions(d.theory(), d.extensions(), nmr::testing::subset_oracle_extensions(d.theory()));
    o.require(def_ok, tag + ": default");
    def += def_ok;

    AutoepistemicEngine a(kb);
    auto got = nmr::testing::engine_expansions(a);
    auto want = nmr::testing::assignment_oracle_expansions(a.theory());
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    o.require(got == want, tag + ": autoepistemic");
    ael += got == want;

    auto aug = cwa_augment(kb);
    const bool cwa_ok = aug.assumed_negations == nmr::testing::cwa_oracle_negations(aug.base);
    o.require(cwa_ok, tag + ": cwa");
    cwa += cwa_ok;
  }
  const double t = seconds_since(start);
  o.require(t < 300.0, "took " + std::to_string(t) + " s");
  std::ostringstream summary;
  summary << kKbs << " KBs, agreement circumscription " << circ << ", default " << def << ", autoepistemic " << ael
          << ", cwa " << cwa << ", " << static_cast<int>(t) << " s";
  o.detail = o.pass ? summary.str() : summary.str() + "; " + o.detail;
  return o;
}

Outcome invariant_suites() {
  Outcome o;
  std::vector<KnowledgeBase> kbs;
  for (const char* name : {"tweety.kb", "tweety-circ.kb", "tweety-default.kb", "tweety-ael.kb", "primes.kb", "nixon.kb",
                           "cwa-birds.kb", "cwa-inconsistent.kb", "students.kb", "empty.kb"})
    kbs.push_back(load(name));
  for (std::uint32_t seed = 0; seed < 200; ++seed) kbs.push_back(nmr::testing::RandomKb(20000 + seed).kb());
  std::size_t violations = 0;
  auto count = [&](const std::string& suite, const std::vector<std::string>& v) {
    violations += v.size();
    if (!v.empty()) o.require(false, suite + ": " + v.front());
  };
  for (const auto& kb : kbs) {
    count("supraclassicality", nmr::testing::supraclassicality_violations(kb));
    count("cwa completeness", nmr::testing::cwa_completeness_violations(kb));
    count("stable-set laws", nmr::testing::stable_set_law_violations(kb));
    count("default fixpoint", nmr::testing::default_fixpoint_violations(DefaultEngine(kb)));
  }
  o.detail = std::to_string(kbs.size()) + " KBs, " + std::to_string(violations) + " violations" + (o.pass ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-world birds", closed_world_birds},
      {"closed-world inconsistency", closed_world_inconsistency},
      {"circumscription tweety", circumscription_tweety},
      {"default logic tweety", default_tweety},
      {"autoepistemic tweety", autoepistemic_tweety},
      {"prime completion", prime_completion},
      {"comparison axes", axes_table},
      {"oracle equivalence", oracle_equivalence},
      {"invariant suites", invariant_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "[" << i + 1 << "] " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
              << (o.detail.empty() ? "" : "  (" + o.detail + ")") << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
