#ifndef LFG_FRAGMENTS_HPP
#define LFG_FRAGMENTS_HPP

// Built-in German grammar fragments and the nominalization lexical rule.
// The same grammars ship as flat.lfg, raising.lfg and np.lfg under data/.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lfg/grammar.hpp"

namespace lfg {

struct VerbBase {
  std::string lemma;
  std::vector<std::string> subcat;  // SUBJ or SUBJ OBJ
  std::vector<std::string> roles;   // aligned with subcat: AGENT, THEME
};

struct NominalEntry {
  std::string lemma;
  std::vector<std::string> arg_str;  // role of ARG1, ARG2
  std::optional<VerbBase> derived_from;
};

enum class Nominalization {
  Ung,         // behandeln -> Behandlung
  Infinitive,  // lachen -> Lachen
};

class UnsupportedValence : public Error {
 public:
  explicit UnsupportedValence(const std::string& lemma, std::size_t arity)
      : Error("unsupported-valence(" + lemma + ", " + std::to_string(arity) + ")") {}
};

/// Drops SUBJ and OBJ from the verb's frame and keeps its roles as the
/// noun's argument structure.
NominalEntry nominalize(const VerbBase& verb, Nominalization kind = Nominalization::Ung);

/// N entry: (^ PRED)='Lemma' plus (^ ARG-STR ARGn)=ROLE per argument.
LexEntry nominal_lex_entry(const NominalEntry& noun);

/// The deverbal nouns of the NP fragment with the verbs they come from.
const std::vector<std::pair<VerbBase, Nominalization>>& fragment_verb_bases();

std::string_view flat_grammar_text();
std::string_view raising_grammar_text();
std::string_view np_base_grammar_text();  // np.lfg without the deverbal nouns

Grammar fragment_flat();
Grammar fragment_raising();
Grammar fragment_np();

}  // namespace lfg

#endif  // LFG_FRAGMENTS_HPP
