#ifndef LFG_ENGINE_HPP
#define LFG_ENGINE_HPP

// C-structure chart parsing and simultaneous solving of the f- and
// m-projection constraints licensed by a tree.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lfg/avm.hpp"
#include "lfg/grammar.hpp"

namespace lfg {

struct CTree {
  std::string category;
  std::vector<CTree> children;
  std::optional<std::string> word;  // leaves only
  std::optional<LexEntry> entry;    // leaves only
  ConstraintList annotation;        // from the licensing rule element; empty at the root

  bool is_leaf() const { return word.has_value(); }
  std::size_t leaf_count() const;
  std::size_t node_count() const;
  /// `(S (NP (DET Der) (N Fahrer)) (VP ...))`
  std::string bracketed() const;
  /// Category skeleton without words: `S(NP,VP(AUX,VP(NP,V'(V,AUX))))`.
  std::string shape() const;
};

class UnknownToken : public Error {
 public:
  explicit UnknownToken(const std::string& form) : Error("unknown-token(" + form + ")"), form_(form) {}
  const std::string& form() const { return form_; }

 private:
  std::string form_;
};

struct EngineOptions {
  std::optional<int> max_depth;  // overrides Grammar::depth
  std::size_t forest_cap = 64;
  bool diagnostics = false;
  // Lexeme form -> DNF disjunct index (0-based) to restrict the solver to.
  std::map<std::string, std::size_t> forced_disjuncts;
};

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string category;
};

struct ParseResult {
  std::vector<CTree> trees;
  bool truncated = false;
  std::optional<Span> best_partial;  // only filled when trees is empty

  std::string no_parse_message() const;
};

std::vector<std::string> tokenize(std::string_view sentence);

/// Throws UnknownToken for forms missing from the lexicon.
ParseResult parse_cstructure(const std::vector<std::string>& tokens, const Grammar& grammar,
                             std::size_t forest_cap = 64);

/// A constraining equation or inequation evaluated against a solution,
/// kept so the result can be re-verified. `node` indexes the pre-order
/// node list of the tree; `lexical` selects lexical anchoring (^ and ! both
/// denote the leaf itself).
struct CheckedConstraint {
  std::size_t node = 0;
  bool lexical = false;
  Constraint constraint;
};

struct Analysis {
  CTree ctree;
  FeatureStructure fstruct;
  FeatureStructure mstruct;
  // (lexeme, 0-based disjunct) for every lexeme with more than one disjunct.
  std::vector<std::pair<std::string, std::size_t>> trace;

  // Full solution graph with the phi and mu correspondences, pre-order.
  FeatureStructure store;
  std::vector<NodeId> phi;
  std::vector<NodeId> mu;
  std::vector<CheckedConstraint> checks;
};

struct SolveReport {
  std::vector<Analysis> analyses;
  std::vector<std::string> diagnostics;
  std::size_t candidates = 0;  // complete choice combinations reached
};

SolveReport solve_detailed(const CTree& tree, const Grammar& grammar, const EngineOptions& options = {});
std::vector<Analysis> solve(const CTree& tree, const Grammar& grammar, const EngineOptions& options = {});

struct Violation {
  enum class Kind { Incomplete, Incoherent };
  Kind kind;
  Path path;
  std::string function;

  std::string to_string() const;
};

std::optional<Violation> check_completeness_coherence(const FeatureStructure& fs);

struct AnalyzeResult {
  ParseResult parse;
  std::vector<Analysis> analyses;
  std::vector<std::string> diagnostics;
};

AnalyzeResult analyze_detailed(std::string_view sentence, const Grammar& grammar,
                               const EngineOptions& options = {});
std::vector<Analysis> analyze(std::string_view sentence, const Grammar& grammar,
                              const EngineOptions& options = {});

/// Pre-order list of the nodes of a tree, with parent indices (root: npos).
std::vector<std::pair<const CTree*, std::size_t>> preorder(const CTree& tree);

}  // namespace lfg

#endif  // LFG_ENGINE_HPP
