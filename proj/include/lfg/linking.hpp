#ifndef LFG_LINKING_HPP
#define LFG_LINKING_HPP

// Genitive interpretation against a head noun's argument structure, and
// German -> English transfer of solved f-structures.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lfg/avm.hpp"

namespace lfg {

inline constexpr std::string_view kAgent = "AGENT";
inline constexpr std::string_view kTheme = "THEME";
inline constexpr std::string_view kPoss = "POSS";

struct LinkingReading {
  std::map<std::string, std::string> assignments;  // function -> role

  /// `GEN1=AGENT GEN2=THEME`; empty reading prints as `-`.
  std::string to_string() const;
  bool operator==(const LinkingReading&) const = default;
};

class BothGenitivesMonovalent : public Error {
 public:
  BothGenitivesMonovalent() : Error("both-genitives-monovalent") {}
};

class MissingTranslation : public Error {
 public:
  explicit MissingTranslation(const std::string& lemma) : Error("missing-translation(" + lemma + ")") {}
};

class UnlinkedRole : public Error {
 public:
  explicit UnlinkedRole(const std::string& function) : Error("unlinked-role(" + function + ")") {}
};

/// Readings for the GEN1/GEN2 functions at the root of a nominal f-structure.
std::vector<LinkingReading> link_genitives(const FeatureStructure& fs);
std::vector<LinkingReading> link_genitives(const FeatureStructure& store, NodeId node);

struct BlexEntry {
  std::string source;
  std::string target;
  std::vector<std::string> subcat;
  std::map<std::string, std::string> linking;  // role -> target function
  std::vector<std::string> keep;               // atomic features carried over
};

class BilingualLexicon {
 public:
  void add(BlexEntry entry);
  const BlexEntry* find(std::string_view source) const;
  const std::map<std::string, BlexEntry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, BlexEntry, std::less<>> entries_;
};

/// Lines `de -> en<F1,F2> linking: AGENT=SUBJ THEME=OBJ keep: NUM`; the
/// subcat, linking and keep parts are optional. `#` starts a comment.
BilingualLexicon load_blex(std::string_view text);
BilingualLexicon load_blex_file(const std::string& path);

/// Moves each function named in the reading to the target function its role
/// is linked to and translates every PRED. ARG-STR and atomic features not
/// listed under `keep:` are dropped. The target subcat keeps the functions
/// that end up filled.
FeatureStructure transfer(const FeatureStructure& fs, const LinkingReading& reading, const BilingualLexicon& blex);

/// Clause-level transfer: translated PRED, TENSE copied, arguments
/// translated recursively under the same function names.
FeatureStructure transfer_clause(const FeatureStructure& fs, const BilingualLexicon& blex);

}  // namespace lfg

#endif  // LFG_LINKING_HPP
