#include <doctest.h>

#include <algorithm>
#include <random>

#include "lfg/fragments.hpp"
#include "lfg/grammar.hpp"

using namespace lfg;

namespace {

std::vector<std::string> strings(const std::vector<PathExpr>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) out.push_back(p.to_string());
  return out;
}

PathExpr parse_path(const std::string& text) {
  // Borrow the grammar loader to read a single annotation.
  auto g = load_grammar("gf SUBJ OBJ\nrule S -> X { " + text + "=! }\nlex x X { }\n");
  return g.rules[0].rhs[0].alternatives[0].annotation[0].lhs;
}

bool mentions(const ConstraintList& list, const std::string& text) {
  return std::any_of(list.begin(), list.end(), [&](const Constraint& c) { return c.to_string() == text; });
}

}  // namespace

TEST_CASE("load_grammar: header and rules") {
  auto g = load_grammar(R"(# comment
gf SUBJ OBJ
start S
depth 2
rule S -> NP { (^ SUBJ)=! } VP
lex der NP { (^ CASE)=NOM }
lex geht VP { (^ PRED)='gehen<SUBJ>' }
)");
  CHECK(g.functions == std::vector<std::string>{"SUBJ", "OBJ"});
  CHECK(g.start == "S");
  CHECK(g.depth == 2);
  REQUIRE(g.rules.size() == 1);
  CHECK(g.rules[0].lhs == "S");
  REQUIRE(g.rules[0].rhs.size() == 2);
  // unannotated element gets both head equations
  CHECK(to_string(g.rules[0].rhs[1].alternatives[0].annotation) == "^=! %^=%!");
  // annotated element without an F-equation... has one here, kept verbatim
  CHECK(to_string(g.rules[0].rhs[0].alternatives[0].annotation) == "(^ SUBJ)=!");
  REQUIRE(g.entries("geht"));
  CHECK(to_string(g.entries("geht")->front().constraints) == "(^ PRED)='gehen<SUBJ>'");
}

TEST_CASE("load_grammar: defaults when only the m-projection is annotated") {
  auto g = load_grammar("rule S -> X { (%^ DEP)=%! }\nlex x X { }\n");
  CHECK(to_string(g.rules[0].rhs[0].alternatives[0].annotation) == "^=! (%^ DEP)=%!");
}

TEST_CASE("load_grammar: every rule element carries an f-annotation in all fragments") {
  for (const auto& g : {fragment_flat(), fragment_raising(), fragment_np()}) {
    for (const auto& r : g.rules)
      for (const auto& slot : r.rhs)
        for (const auto& e : slot.alternatives) {
          CAPTURE(r.lhs);
          CHECK(std::any_of(e.annotation.begin(), e.annotation.end(), [](const Constraint& c) {
            std::function<bool(const Constraint&)> f = [&](const Constraint& k) {
              if (k.kind == ConstraintKind::Disjunction)
                return std::all_of(k.disjuncts.begin(), k.disjuncts.end(), [&](const ConstraintList& l) {
                  return std::any_of(l.begin(), l.end(), f);
                });
              return k.lhs.projection == Projection::F;
            };
            return f(c);
          }));
        }
  }
}

TEST_CASE("load_grammar: the genitive NP rule") {
  const Grammar g = fragment_np();
  REQUIRE(g.rules.size() == 1);
  const Rule& r = g.rules[0];
  CHECK(r.lhs == "NP");
  REQUIRE(r.rhs.size() == 3);

  const RuleSlot& pre = r.rhs[0];
  CHECK(pre.optional);
  REQUIRE(pre.alternatives.size() == 2);
  CHECK(pre.alternatives[0].category == "DET");
  CHECK(pre.alternatives[1].category == "NP");
  CHECK(mentions(pre.alternatives[1].annotation, "(^ GEN1)=!"));

  CHECK_FALSE(r.rhs[1].optional);
  CHECK(r.rhs[1].alternatives[0].category == "N");

  const RuleSlot& post = r.rhs[2];
  CHECK(post.optional);
  REQUIRE(post.alternatives.size() == 1);
  CHECK(post.alternatives[0].category == "NP");
  CHECK(mentions(post.alternatives[0].annotation, "(^ GEN2)=!"));

  // DET N, NP N, N, with and without the postnominal NP
  CHECK(r.expansions().size() == 6);
}

TEST_CASE("load_grammar: errors") {
  CHECK_THROWS_WITH_AS(load_grammar("rule S ->\n"), doctest::Contains("syntax(1,"), GrammarSyntaxError);
  try {
    load_grammar("gf SUBJ\n\nrule S -> NP { (^ SUBJ)= }\n");
    FAIL("expected a syntax error");
  } catch (const GrammarSyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_WITH_AS(load_grammar("rule S -> NP VP\nlex a NP { }\n"), "unknown-category(VP)", UnknownCategory);
  CHECK_THROWS_AS(load_grammar("rule S -> A { (^ XCOMP* COMP* GF)=! }\nlex a A { }\n"), BadPath);
  CHECK_THROWS_AS(load_grammar("rule S -> A { (%^ DEP GF)=%! }\nlex a A { }\n"), BadPath);
  CHECK_THROWS_AS(load_grammar("lex a A { (^ PRED)='a<FOO>' }\n"), GrammarSyntaxError);
  CHECK_THROWS_AS(load_grammar("lex a A { { (^ X)=y | } }\n"), GrammarSyntaxError);
  CHECK_THROWS_AS(load_grammar("frobnicate\n"), GrammarSyntaxError);
}

TEST_CASE("expand_disjunctions: wird has two disjuncts in textual order") {
  const Grammar g = fragment_flat();
  const auto* entries = g.entries("wird");
  REQUIRE(entries);
  REQUIRE(entries->size() == 1);
  auto dnf = expand_disjunctions(entries->front());
  REQUIRE(dnf.size() == 2);
  CHECK(mentions(dnf[0], "(^ TENSE)=FUT"));
  CHECK_FALSE(mentions(dnf[0], "(^ TENSE)=FUTPERF"));
  CHECK(mentions(dnf[1], "(^ TENSE)=FUTPERF"));
  CHECK(mentions(dnf[0], "(%^ DEP DEP VFORM)~=PERFP"));
  CHECK(mentions(dnf[1], "(%^ DEP DEP VFORM)=c PERFP"));
  for (const auto& list : dnf)
    for (const auto& c : list) CHECK(c.kind != ConstraintKind::Disjunction);
}

TEST_CASE("expand_disjunctions: plain and nested") {
  auto g = load_grammar(R"(
start X
lex plain X { (^ A)=a (^ B)=b }
lex nested X { { (^ A)=a { (^ B)=b | (^ C)=z } | (^ D)=d } }
)");
  CHECK(expand_disjunctions(g.entries("plain")->front()).size() == 1);
  auto dnf = expand_disjunctions(g.entries("nested")->front());
  REQUIRE(dnf.size() == 3);
  CHECK(to_string(dnf[0]) == "(^ A)=a (^ B)=b");
  CHECK(to_string(dnf[1]) == "(^ A)=a (^ C)=z");
  CHECK(to_string(dnf[2]) == "(^ D)=d");
}

TEST_CASE("property: DNF size is the product of disjunct counts along each chain") {
  std::mt19937 rng(5);
  auto roll = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  int atom = 0;
  // Builds random nested disjunction text and the expected DNF size.
  std::function<std::pair<std::string, std::size_t>(int)> list = [&](int depth) {
    std::string text;
    std::size_t size = 1;
    for (int i = 0, n = 1 + roll(3); i < n; ++i) {
      if (depth > 0 && roll(3) == 0) {
        std::string d = "{";
        std::size_t sum = 0;
        for (int k = 0, m = 2 + roll(2); k < m; ++k) {
          auto [inner, s] = list(depth - 1);
          d += (k ? " | " : " ") + inner;
          sum += s;
        }
        text += d + " } ";
        size *= sum;
      } else {
        text += "(^ F" + std::to_string(atom++) + ")=v ";
      }
    }
    return std::make_pair(text, size);
  };
  for (int i = 0; i < 200; ++i) {
    auto [text, expected] = list(3);
    auto g = load_grammar("start X\nlex w X { " + text + "}\n");
    CAPTURE(text);
    CHECK(expand_disjunctions(g.entries("w")->front()).size() == expected);
  }
}

TEST_CASE("instantiate_uncertainty") {
  const std::vector<std::string> gf{"SUBJ", "OBJ"};
  CHECK(strings(instantiate_uncertainty(parse_path("(^ XCOMP* GF)"), 1, gf)) ==
        std::vector<std::string>{"(^ SUBJ)", "(^ OBJ)", "(^ XCOMP SUBJ)", "(^ XCOMP OBJ)"});
  CHECK(strings(instantiate_uncertainty(parse_path("(%^ DEP*)"), 2, gf)) ==
        std::vector<std::string>{"%^", "(%^ DEP)", "(%^ DEP DEP)"});
  CHECK(strings(instantiate_uncertainty(parse_path("(^ SUBJ CASE)"), 3, gf)) ==
        std::vector<std::string>{"(^ SUBJ CASE)"});
}

TEST_CASE("property: instantiation count is (K+1) * |GF|^(GF variables)") {
  const std::vector<std::vector<std::string>> sets{{"SUBJ"}, {"SUBJ", "OBJ"}, {"SUBJ", "OBJ", "GEN1", "GEN2"}};
  const std::vector<std::string> paths{"(^ XCOMP* GF)", "(^ XCOMP*)", "(^ GF)", "(^ GF CASE)", "(^ XCOMP* OBJ CASE)",
                                       "(^ SUBJ)"};
  for (const auto& gf : sets)
    for (const auto& text : paths)
      for (int k = 0; k <= 4; ++k) {
        const auto p = parse_path(text);
        const std::size_t stars = p.has_star() ? static_cast<std::size_t>(k + 1) : 1;
        const std::size_t vars = p.has_function_variable() ? gf.size() : 1;
        const auto got = instantiate_uncertainty(p, k, gf);
        CAPTURE(text);
        CAPTURE(k);
        CHECK(got.size() == stars * vars);
        for (const auto& q : got) CHECK_FALSE(q.is_uncertain());
      }
}

TEST_CASE("instantiation counts for the object NP: flat 2, raising 6") {
  auto count = [](const Grammar& g) {
    // the NP of VP -> NP V'
    for (const auto& r : g.rules)
      if (r.lhs == "VP" && r.rhs.size() == 2 && r.rhs[1].alternatives[0].category == "V'")
        return instantiate_uncertainty(r.rhs[0].alternatives[0].annotation[0].lhs, g.depth, g.functions).size();
    return std::size_t{0};
  };
  CHECK(count(fragment_flat()) == 2);
  CHECK(count(fragment_raising()) == 6);
}

TEST_CASE("property: loading the printed grammar gives the same grammar") {
  for (const auto& g : {fragment_flat(), fragment_raising(), fragment_np()}) {
    const std::string dsl = to_dsl(g);
    const Grammar again = load_grammar(dsl);
    CHECK(to_dsl(again) == dsl);
    CHECK(again.functions == g.functions);
    CHECK(again.start == g.start);
    CHECK(again.depth == g.depth);
    REQUIRE(again.rules.size() == g.rules.size());
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
      REQUIRE(again.rules[i].rhs.size() == g.rules[i].rhs.size());
      for (std::size_t s = 0; s < g.rules[i].rhs.size(); ++s) {
        const auto& a = again.rules[i].rhs[s];
        const auto& b = g.rules[i].rhs[s];
        CHECK(a.optional == b.optional);
        REQUIRE(a.alternatives.size() == b.alternatives.size());
        for (std::size_t k = 0; k < a.alternatives.size(); ++k) {
          CHECK(a.alternatives[k].category == b.alternatives[k].category);
          CHECK(to_string(a.alternatives[k].annotation) == to_string(b.alternatives[k].annotation));
        }
      }
    }
    REQUIRE(again.lexicon.size() == g.lexicon.size());
    for (const auto& [form, entries] : g.lexicon) {
      const auto* other = again.entries(form);
      REQUIRE(other);
      REQUIRE(other->size() == entries.size());
      for (std::size_t i = 0; i < entries.size(); ++i) {
        CHECK((*other)[i].category == entries[i].category);
        CHECK(to_string((*other)[i].constraints) == to_string(entries[i].constraints));
      }
    }
  }
}

TEST_CASE("fragment lexical entries expand to at most 8 disjuncts") {
  for (const auto& g : {fragment_flat(), fragment_raising(), fragment_np()})
    for (const auto& [form, entries] : g.lexicon)
      for (const auto& e : entries) CHECK(expand_disjunctions(e).size() <= 8);
}
