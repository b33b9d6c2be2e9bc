#include <doctest.h>

#include <set>

#include "lfg/commands.hpp"
#include "lfg/engine.hpp"
#include "lfg/fragments.hpp"

using namespace lfg;

namespace {

std::string data(const std::string& name) { return std::string(LFG_DATA_DIR) + "/" + name; }

std::size_t count(const std::string& sentence, const Grammar& g) {
  try {
    return analyze(sentence, g).size();
  } catch (const UnknownToken&) {
    return 0;
  }
}

std::string pred_text(const LexEntry& e) {
  for (const auto& c : e.constraints)
    if (c.lhs.to_string() == "(^ PRED)") return c.to_string();
  return "";
}

}  // namespace

TEST_CASE("nominalize") {
  auto behandlung = nominalize({"behandeln", {"SUBJ", "OBJ"}, {"AGENT", "THEME"}});
  CHECK(behandlung.lemma == "Behandlung");
  CHECK(behandlung.arg_str == std::vector<std::string>{"AGENT", "THEME"});
  REQUIRE(behandlung.derived_from);
  CHECK(behandlung.derived_from->lemma == "behandeln");

  auto lachen = nominalize({"lachen", {"SUBJ"}, {"AGENT"}}, Nominalization::Infinitive);
  CHECK(lachen.lemma == "Lachen");
  CHECK(lachen.arg_str == std::vector<std::string>{"AGENT"});

  CHECK(nominalize({"darstellen", {"SUBJ", "OBJ"}, {"AGENT", "THEME"}}).lemma == "Darstellung");
  CHECK(nominalize({"belagern", {"SUBJ", "OBJ"}, {"AGENT", "THEME"}}).lemma == "Belagerung");
  CHECK(nominalize({"sammeln", {"SUBJ", "OBJ"}, {"AGENT", "THEME"}}).lemma == "Sammlung");
}

TEST_CASE("nominalize: unsupported valence") {
  CHECK_THROWS_WITH_AS(nominalize({"regnen", {}, {}}), "unsupported-valence(regnen, 0)", UnsupportedValence);
  CHECK_THROWS_WITH_AS(nominalize({"geben", {"SUBJ", "OBJ", "OBJ2"}, {"AGENT", "THEME", "GOAL"}}),
                       "unsupported-valence(geben, 3)", UnsupportedValence);
}

TEST_CASE("nominal_lex_entry") {
  auto e = nominal_lex_entry(nominalize({"darstellen", {"SUBJ", "OBJ"}, {"AGENT", "THEME"}}));
  CHECK(e.category == "N");
  CHECK(to_string(e.constraints) == "(^ PRED)='Darstellung' (^ ARG-STR ARG1)=AGENT (^ ARG-STR ARG2)=THEME");
}

TEST_CASE("property: deverbal nouns subcategorize for nothing") {
  const Grammar np = fragment_np();
  for (const auto& [verb, kind] : fragment_verb_bases()) {
    auto noun = nominalize(verb, kind);
    CAPTURE(verb.lemma);
    CHECK(noun.arg_str == verb.roles);
    const auto entry = nominal_lex_entry(noun);
    const auto pred = pred_text(entry);
    CHECK(pred == "(^ PRED)='" + noun.lemma + "'");
    CHECK(pred.find("SUBJ") == std::string::npos);
    CHECK(pred.find("OBJ") == std::string::npos);
    // the NP fragment carries exactly this entry
    const auto* shipped = np.entries(noun.lemma);
    REQUIRE(shipped);
    REQUIRE(shipped->size() == 1);
    CHECK(to_string(shipped->front().constraints) == to_string(entry.constraints));
  }
}

TEST_CASE("shipped grammar files match the built-in fragments") {
  const std::pair<const char*, Grammar> pairs[] = {
      {"flat.lfg", fragment_flat()}, {"raising.lfg", fragment_raising()}, {"np.lfg", fragment_np()}};
  for (const auto& [file, built_in] : pairs) {
    CAPTURE(file);
    CHECK(to_dsl(load_grammar_file(data(file))) == to_dsl(built_in));
  }
}

TEST_CASE("shipped suites: every item gets its expected count") {
  const std::pair<const char*, Grammar> pairs[] = {
      {"flat.suite", fragment_flat()}, {"raising.suite", fragment_raising()}, {"np.suite", fragment_np()}};
  std::size_t accepts = 0, rejects = 0;
  for (const auto& [file, g] : pairs) {
    for (const auto& item : load_suite_file(data(file))) {
      CAPTURE(item.sentence);
      CHECK(count(item.sentence, g) == (item.accept ? item.count : 0));
      (item.accept ? accepts : rejects)++;
    }
  }
  CHECK(accepts >= 25);
  CHECK(rejects >= 10);
}

TEST_CASE("flat and raising accept the same strings") {
  std::set<std::string> sentences;
  for (const auto* file : {"flat.suite", "raising.suite"})
    for (const auto& item : load_suite_file(data(file))) sentences.insert(item.sentence);
  const Grammar flat = fragment_flat();
  const Grammar raising = fragment_raising();
  for (const auto& s : sentences) {
    CAPTURE(s);
    CHECK((count(s, flat) > 0) == (count(s, raising) > 0));
  }
}

TEST_CASE("two genitives need a bivalent deverbal head") {
  const Grammar g = fragment_np();
  const std::vector<std::string> proper{"Karls", "Peters", "Roms", "Elisabeths"};
  for (const auto& pre : proper) {
    for (const auto& post : proper) {
      CAPTURE(pre);
      CAPTURE(post);
      CHECK(count(pre + " Vorfall " + post, g) == 0);
      CHECK(count(pre + " Vorfall des Vorfalls", g) == 0);
      CHECK(count(pre + " Lachen " + post, g) == 0);
      for (const auto* head : {"Behandlung", "Darstellung", "Belagerung"})
        CHECK(count(pre + " " + head + " " + post, g) == 1);
    }
  }
}

TEST_CASE("np fragment examples") {
  const Grammar g = fragment_np();
  auto a = analyze("Karls Behandlung Peters", g);
  REQUIRE(a.size() == 1);
  CHECK(canonical_form(a[0].fstruct) ==
        "[ ARG-STR [ ARG1 AGENT ARG2 THEME ] GEN1 [ CASE GEN PRED 'Karl' ] GEN2 [ CASE GEN PRED 'Peter' ] "
        "PRED 'Behandlung' ]");
  CHECK(count("Peters Behandlung Karls Elisabeths", g) == 0);
  CHECK(count("des Vorfalls Darstellung", g) == 0);
  CHECK(count("der Vorfall", g) == 1);
}
