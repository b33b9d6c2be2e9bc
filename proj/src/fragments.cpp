#include "lfg/fragments.hpp"

#include <cctype>

namespace lfg {

namespace {

constexpr std::string_view kFlat = R"(# Flat analysis of German auxiliaries. Auxiliaries add tense to a single
# f-structure; their selectional requirements are stated on the m-structure.
gf SUBJ OBJ
start S
depth 0

rule S -> NP { (^ XCOMP* GF)=! } VP { ^=! %^=%! (%! FIN)=c + }
rule VP -> AUX VP { ^=! (%^ DEP)=%! }
rule VP -> V NP { (^ XCOMP* GF)=! }
rule VP -> NP { (^ XCOMP* GF)=! } V
rule VP -> NP { (^ XCOMP* GF)=! } V'
rule V' -> V { ^=! (%^ DEP)=%! } AUX
rule V' -> V' { ^=! (%^ DEP)=%! } AUX
rule NP -> DET N NP? { (^ GEN2)=! (! CASE)=c GEN }

lex Der DET { (^ CASE)=NOM (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex der DET { (^ CASE)=NOM (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex Den DET { (^ CASE)=ACC (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex den DET { (^ CASE)=ACC (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex des DET { (^ CASE)=GEN (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }

lex Fahrer N { (^ PRED)='Fahrer' (^ GEND)=MASC (^ NUM)=SG (^ CASE)~=GEN }
lex Hebel N { (^ PRED)='Hebel' (^ GEND)=MASC (^ NUM)=SG (^ CASE)~=GEN }
lex Vorfall N { (^ PRED)='Vorfall' (^ GEND)=MASC (^ NUM)=SG (^ CASE)~=GEN }
lex Vorfalls N { (^ PRED)='Vorfall' (^ GEND)=MASC (^ NUM)=SG (^ CASE)=GEN }

lex wird AUX { (%^ AUX)=+ (%^ FIN)=+
  { (%^ DEP VFORM)=c BASE (%^ DEP DEP VFORM)~=PERFP (^ PASSIVE)~=+ (^ TENSE)=FUT
  | (%^ DEP VFORM)=c BASE (%^ DEP DEP VFORM)=c PERFP (^ PASSIVE)~=+ (^ TENSE)=FUTPERF } }
lex hat AUX { (%^ AUX)=+ (%^ FIN)=+ (%^ DEP VFORM)=c PERFP (^ PASSIVE)~=+ (^ TENSE)=PERF }
lex haben AUX { (%^ AUX)=+ (%^ FIN)=- (%^ VFORM)=BASE (%^ DEP VFORM)=c PERFP }

lex drehen V { (^ PRED)='drehen<SUBJ,OBJ>' (^ SUBJ CASE)=c NOM (^ OBJ CASE)=c ACC
  (%^ FIN)=- (%^ VFORM)=BASE }
lex gedreht V { (^ PRED)='drehen<SUBJ,OBJ>' (^ SUBJ CASE)=c NOM (^ OBJ CASE)=c ACC
  (%^ FIN)=- (%^ VFORM)=PERFP }
lex dreht V { (^ PRED)='drehen<SUBJ,OBJ>' (^ SUBJ CASE)=c NOM (^ OBJ CASE)=c ACC
  (^ TENSE)=PRES (%^ FIN)=+ }
)";

constexpr std::string_view kRaising = R"(# Raising analysis of the same auxiliaries, for comparison: every auxiliary
# takes an XCOMP and shares its SUBJ with it. No m-structure is used.
gf SUBJ OBJ
start S
depth 2

rule S -> NP { (^ XCOMP* GF)=! } VP { ^=! (! FIN)=c + }
rule VP -> AUX VP { (^ XCOMP)=! }
rule VP -> V NP { (^ XCOMP* GF)=! }
rule VP -> NP { (^ XCOMP* GF)=! } V
rule VP -> NP { (^ XCOMP* GF)=! } V'
rule V' -> V { (^ XCOMP)=! } AUX
rule V' -> V' { (^ XCOMP)=! } AUX
rule NP -> DET N NP? { (^ GEN2)=! (! CASE)=c GEN }

lex Der DET { (^ CASE)=NOM (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex der DET { (^ CASE)=NOM (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex Den DET { (^ CASE)=ACC (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex den DET { (^ CASE)=ACC (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex des DET { (^ CASE)=GEN (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }

lex Fahrer N { (^ PRED)='Fahrer' (^ GEND)=MASC (^ NUM)=SG (^ CASE)~=GEN }
lex Hebel N { (^ PRED)='Hebel' (^ GEND)=MASC (^ NUM)=SG (^ CASE)~=GEN }
lex Vorfall N { (^ PRED)='Vorfall' (^ GEND)=MASC (^ NUM)=SG (^ CASE)~=GEN }
lex Vorfalls N { (^ PRED)='Vorfall' (^ GEND)=MASC (^ NUM)=SG (^ CASE)=GEN }

lex wird AUX { (^ PRED)='wird<XCOMP>SUBJ' (^ SUBJ)=(^ XCOMP SUBJ) (^ TENSE)=PRES (^ FIN)=+
  (^ XCOMP VFORM)=c BASE }
lex hat AUX { (^ PRED)='haben<XCOMP>SUBJ' (^ SUBJ)=(^ XCOMP SUBJ) (^ TENSE)=PRES (^ FIN)=+
  (^ XCOMP VFORM)=c PERFP }
lex haben AUX { (^ PRED)='haben<XCOMP>SUBJ' (^ SUBJ)=(^ XCOMP SUBJ) (^ FIN)=- (^ VFORM)=BASE
  (^ XCOMP VFORM)=c PERFP }

lex drehen V { (^ PRED)='drehen<SUBJ,OBJ>' (^ SUBJ CASE)=c NOM (^ OBJ CASE)=c ACC
  (^ FIN)=- (^ VFORM)=BASE }
lex gedreht V { (^ PRED)='drehen<SUBJ,OBJ>' (^ SUBJ CASE)=c NOM (^ OBJ CASE)=c ACC
  (^ FIN)=- (^ VFORM)=PERFP }
lex dreht V { (^ PRED)='drehen<SUBJ,OBJ>' (^ SUBJ CASE)=c NOM (^ OBJ CASE)=c ACC
  (^ TENSE)=PRES (^ FIN)=+ }
)";

constexpr std::string_view kNpBase = R"(# German NPs with up to two genitives. GEN1 is the prenominal genitive
# (a determinerless proper noun), GEN2 the postnominal one. Both together
# need a head with a second argument.
gf SUBJ OBJ GEN1 GEN2
start NP
depth 0

rule NP -> ( DET
           | NP { (^ GEN1)=! (! CASE)=c GEN (%! PROPER)=c + (%^ PRENOM-GEN)=+ } )? N NP? {
    (^ GEN2)=! (! CASE)=c GEN
    { (%^ PRENOM-GEN)~=+ | (%^ PRENOM-GEN)=c + (^ ARG-STR ARG2)=c THEME } }

lex der DET { (^ CASE)=NOM (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex des DET { (^ CASE)=GEN (^ GEND)=MASC (^ NUM)=SG (^ SPEC)=DEF }
lex die DET { (^ CASE)~=GEN (^ GEND)=FEM (^ NUM)=SG (^ SPEC)=DEF }

lex Karls NP { (^ PRED)='Karl' (^ CASE)=GEN (%^ PROPER)=+ }
lex Peters NP { (^ PRED)='Peter' (^ CASE)=GEN (%^ PROPER)=+ }
lex Roms NP { (^ PRED)='Rom' (^ CASE)=GEN (%^ PROPER)=+ }
lex Elisabeths NP { (^ PRED)='Elisabeth' (^ CASE)=GEN (%^ PROPER)=+ }

lex Vorfall N { (^ PRED)='Vorfall' (^ GEND)=MASC (^ NUM)=SG (^ CASE)~=GEN }
lex Vorfalls N { (^ PRED)='Vorfall' (^ GEND)=MASC (^ NUM)=SG (^ CASE)=GEN }
)";

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string ung_noun(const std::string& verb) {
  std::string stem = verb;
  if (ends_with(stem, "eln")) {
    stem.erase(stem.size() - 3);
    stem += 'l';
  } else if (ends_with(stem, "ern")) {
    stem.pop_back();
  } else if (ends_with(stem, "en")) {
    stem.erase(stem.size() - 2);
  } else if (ends_with(stem, "n")) {
    stem.pop_back();
  }
  return capitalize(stem + "ung");
}

PathExpr up(std::initializer_list<const char*> steps) {
  PathExpr p{Projection::F, Anchor::Up, {}};
  for (const char* s : steps) p.steps.push_back({PathStep::Kind::Attribute, s});
  return p;
}

}  // namespace

NominalEntry nominalize(const VerbBase& verb, Nominalization kind) {
  if (verb.subcat.empty() || verb.subcat.size() > 2) throw UnsupportedValence(verb.lemma, verb.subcat.size());
  if (verb.roles.size() != verb.subcat.size())
    throw Error("nominalize: role list of " + verb.lemma + " does not match its subcategorization");
  NominalEntry noun;
  noun.lemma = kind == Nominalization::Ung ? ung_noun(verb.lemma) : capitalize(verb.lemma);
  noun.arg_str = verb.roles;
  noun.derived_from = verb;
  return noun;
}

LexEntry nominal_lex_entry(const NominalEntry& noun) {
  LexEntry e;
  e.form = noun.lemma;
  e.category = "N";
  e.constraints.push_back(Constraint::define(up({"PRED"}), SemanticForm{noun.lemma, {}, {}, 0}));
  static const char* const kArgs[] = {"ARG1", "ARG2"};
  for (std::size_t i = 0; i < noun.arg_str.size() && i < 2; ++i)
    e.constraints.push_back(Constraint::define(up({"ARG-STR", kArgs[i]}), Atom{noun.arg_str[i]}));
  return e;
}

const std::vector<std::pair<VerbBase, Nominalization>>& fragment_verb_bases() {
  static const std::vector<std::pair<VerbBase, Nominalization>> verbs{
      {{"behandeln", {"SUBJ", "OBJ"}, {"AGENT", "THEME"}}, Nominalization::Ung},
      {{"lachen", {"SUBJ"}, {"AGENT"}}, Nominalization::Infinitive},
      {{"belagern", {"SUBJ", "OBJ"}, {"AGENT", "THEME"}}, Nominalization::Ung},
      {{"darstellen", {"SUBJ", "OBJ"}, {"AGENT", "THEME"}}, Nominalization::Ung},
  };
  return verbs;
}

std::string_view flat_grammar_text() { return kFlat; }
std::string_view raising_grammar_text() { return kRaising; }
std::string_view np_base_grammar_text() { return kNpBase; }

Grammar fragment_flat() { return load_grammar(kFlat); }

Grammar fragment_raising() { return load_grammar(kRaising); }

Grammar fragment_np() {
  Grammar g = load_grammar(kNpBase);
  for (const auto& [verb, kind] : fragment_verb_bases()) g.add_entry(nominal_lex_entry(nominalize(verb, kind)));
  g.validate();
  return g;
}

}  // namespace lfg
