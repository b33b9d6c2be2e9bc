#ifndef LFG_AVM_HPP
#define LFG_AVM_HPP

// Attribute-value matrices: the graph store behind f-structures and
// m-structures, plus unification and path access over it.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lfg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Path = std::vector<std::string>;

std::string path_to_string(const Path& path);

struct Atom {
  std::string symbol;

  bool operator==(const Atom&) const = default;
};

/// A predicate value such as 'drehen<SUBJ,OBJ>'. Non-thematic functions are
/// listed after the closing bracket ('wird<XCOMP>SUBJ').
///
/// Every lexical insertion gets its own instance id; two semantic forms are
/// equal only when they are the same instantiation.
struct SemanticForm {
  std::string lemma;
  std::vector<std::string> subcat;
  std::vector<std::string> nonthematic;
  std::uint64_t instance = 0;

  std::string render() const;
  bool same_signature(const SemanticForm& other) const {
    return lemma == other.lemma && subcat == other.subcat && nonthematic == other.nonthematic;
  }
  bool operator==(const SemanticForm& other) const {
    return instance == other.instance && same_signature(other);
  }
};

/// SUBJ OBJ OBJ2 OBL XCOMP COMP
bool is_governable(std::string_view function);
const std::vector<std::string>& governable_functions();

struct Clash {
  Path path;
  std::string left;
  std::string right;

  std::string to_string() const;
};

class NotAStructure : public Error {
 public:
  explicit NotAStructure(Path prefix);
  const Path& prefix() const { return prefix_; }

 private:
  Path prefix_;
};

class CyclicStructure : public Error {
 public:
  CyclicStructure() : Error("cyclic") {}
};

class AvmSyntaxError : public Error {
 public:
  AvmSyntaxError(std::size_t offset, const std::string& message);
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeKind : std::uint8_t { Unknown, Complex, Atomic, Semantic };

/// A rooted graph of attribute-value nodes with union-find forwarding.
///
/// Node-level operations mutate in place and are used while solving; the
/// free functions below treat a FeatureStructure as an immutable value.
/// A failed unify_nodes leaves the graph partially merged, so callers that
/// need to backtrack work on a copy.
class FeatureStructure {
 public:
  using Arcs = std::map<std::string, NodeId, std::less<>>;

  FeatureStructure();

  NodeId root() const { return deref(root_); }
  void set_root(NodeId node) { root_ = node; }

  NodeId add_unknown();
  NodeId add_complex();
  NodeId add_atom(std::string symbol);
  NodeId add_semantic(SemanticForm form);

  NodeId deref(NodeId node) const;
  NodeKind kind(NodeId node) const { return nodes_[deref(node)].kind; }
  const std::string& atom(NodeId node) const { return nodes_[deref(node)].atom; }
  const SemanticForm& semantic(NodeId node) const { return nodes_[deref(node)].semantic; }
  const Arcs& arcs(NodeId node) const { return nodes_[deref(node)].arcs; }

  // Non-creating lookup; nullopt when absent or when the node is not a structure.
  std::optional<NodeId> attr(NodeId node, std::string_view name) const;
  // Creating lookup; an Unknown node becomes Complex. nullopt on atoms and
  // semantic forms.
  std::optional<NodeId> ensure_attr(NodeId node, const std::string& name);

  bool unify_nodes(NodeId a, NodeId b, Clash* clash = nullptr);

  // Copies the graph reachable from `from` in `other` into this store.
  NodeId import(const FeatureStructure& other, NodeId from);
  // Compacted copy of the graph reachable from `node`, rooted there.
  FeatureStructure extract(NodeId node) const;

  bool is_cyclic(NodeId node) const;
  bool empty() const;
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    NodeKind kind = NodeKind::Unknown;
    NodeId forward = kNoNode;
    std::string atom;
    SemanticForm semantic;
    Arcs arcs;
  };

  NodeId push(Node node);
  bool unify_rec(NodeId a, NodeId b, Path& path, Clash* clash);

  std::vector<Node> nodes_;
  NodeId root_ = 0;
};

using Value = std::variant<Atom, SemanticForm, FeatureStructure>;

std::string value_to_string(const Value& value);

struct UnifyResult {
  std::optional<FeatureStructure> value;
  std::optional<Clash> clash;

  explicit operator bool() const { return value.has_value(); }
};

UnifyResult unify(const FeatureStructure& a, const FeatureStructure& b);

/// Throws NotAStructure if a strict prefix of `path` names an atom or a
/// semantic form. Never creates structure.
std::optional<Value> get_path(const FeatureStructure& fs, const Path& path);

UnifyResult put_path(const FeatureStructure& fs, const Path& path, const Value& value);

/// Deterministic text: attributes sorted, semantic forms without instance
/// ids, shared substructures tagged #n= at first use and #n afterwards.
std::string canonical_form(const FeatureStructure& fs);

/// True iff `general` carries no information missing from `specific`,
/// reentrancies included.
bool subsumes(const FeatureStructure& general, const FeatureStructure& specific);

/// Reads canonical_form text. Semantic forms get consecutive instance ids
/// starting at `first_instance`.
FeatureStructure parse_avm(std::string_view text, std::uint64_t first_instance = 1);

}  // namespace lfg

#endif  // LFG_AVM_HPP
