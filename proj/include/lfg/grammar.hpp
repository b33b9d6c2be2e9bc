#ifndef LFG_GRAMMAR_HPP
#define LFG_GRAMMAR_HPP

// Annotated phrase-structure rules, disjunctive lexical entries, and the
// line-oriented grammar DSL that describes them.

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lfg/avm.hpp"

namespace lfg {

enum class Projection { F, M };
enum class Anchor { Up, Down };

struct PathStep {
  enum class Kind { Attribute, Star, Function };
  Kind kind = Kind::Attribute;
  std::string name;  // empty for Function

  bool operator==(const PathStep&) const = default;
};

/// `(^ XCOMP* GF)`, `(%^ DEP VFORM)`, `!`, ...
struct PathExpr {
  Projection projection = Projection::F;
  Anchor anchor = Anchor::Up;
  std::vector<PathStep> steps;

  bool has_star() const;
  bool has_function_variable() const;
  bool is_uncertain() const { return has_star() || has_function_variable(); }
  // Attribute names; only meaningful when !is_uncertain().
  Path attributes() const;
  std::string to_string() const;

  bool operator==(const PathExpr&) const = default;
};

enum class ConstraintKind { Define, Constrain, Negate, Disjunction };

struct Constraint;
using ConstraintList = std::vector<Constraint>;

struct Constraint {
  using Rhs = std::variant<PathExpr, Atom, SemanticForm>;

  ConstraintKind kind = ConstraintKind::Define;
  PathExpr lhs;
  Rhs rhs;
  std::vector<ConstraintList> disjuncts;  // Disjunction only

  static Constraint define(PathExpr lhs, Rhs rhs);
  static Constraint constrain(PathExpr lhs, Rhs rhs);
  static Constraint negate(PathExpr lhs, Rhs rhs);
  static Constraint disjunction(std::vector<ConstraintList> branches);

  std::string to_string() const;
};

std::string to_string(const ConstraintList& constraints);

struct RuleElement {
  std::string category;
  ConstraintList annotation;
};

/// One position on a rule's right-hand side: a single element, or an
/// alternation `( DET {...} | NP {...} )`, possibly optional.
struct RuleSlot {
  std::vector<RuleElement> alternatives;
  bool optional = false;
};

struct Rule {
  std::string lhs;
  std::vector<RuleSlot> rhs;

  // Every way of choosing one alternative per slot, optional slots also
  // allowing absence (tried last). Empty expansions are dropped.
  std::vector<std::vector<const RuleElement*>> expansions() const;
};

struct LexEntry {
  std::string form;
  std::string category;
  ConstraintList constraints;
};

struct Grammar {
  std::vector<Rule> rules;
  std::map<std::string, std::vector<LexEntry>> lexicon;
  std::string start = "S";
  std::vector<std::string> functions{"SUBJ", "OBJ", "GEN1", "GEN2"};
  int depth = 3;

  std::set<std::string> lexical_categories() const;
  std::set<std::string> phrasal_categories() const;
  const std::vector<LexEntry>* entries(std::string_view form) const;
  void add_entry(LexEntry entry);
  // Throws UnknownCategory / Error on violated invariants.
  void validate() const;
};

class GrammarSyntaxError : public Error {
 public:
  GrammarSyntaxError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownCategory : public Error {
 public:
  explicit UnknownCategory(const std::string& name) : Error("unknown-category(" + name + ")") {}
};

class BadPath : public Error {
 public:
  explicit BadPath(const std::string& text) : Error("bad-path(" + text + ")") {}
};

Grammar load_grammar(std::string_view text);
Grammar load_grammar_file(const std::filesystem::path& path);

/// DSL text that load_grammar reads back to the same grammar.
std::string to_dsl(const Grammar& grammar);

std::vector<ConstraintList> expand_disjunctions(const ConstraintList& constraints);
std::vector<ConstraintList> expand_disjunctions(const LexEntry& entry);

/// A concrete path produced from an uncertain one. `fixed_prefix` counts the
/// leading steps (through the last star repetition) that must already exist
/// when the path is used in a defining equation; 0 if the star matched
/// nothing.
struct PathInstance {
  PathExpr path;
  std::size_t fixed_prefix = 0;
};

std::vector<PathInstance> instantiate_path(const PathExpr& path, int depth,
                                           const std::vector<std::string>& functions);

/// Star repeated 0..depth times, then each function variable replaced by each
/// member of `functions`. Depth-major, then declaration order.
std::vector<PathExpr> instantiate_uncertainty(const PathExpr& path, int depth,
                                              const std::vector<std::string>& functions);

}  // namespace lfg

#endif  // LFG_GRAMMAR_HPP
