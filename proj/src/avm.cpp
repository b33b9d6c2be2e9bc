#include "lfg/avm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lfg {

std::string path_to_string(const Path& path) {
  if (path.empty()) return "root";
  std::string out;
  for (const auto& step : path) {
    if (!out.empty()) out += ' ';
    out += step;
  }
  return out;
}

std::string SemanticForm::render() const {
  std::string out = "'" + lemma;
  if (!subcat.empty() || !nonthematic.empty()) {
    out += '<';
    for (std::size_t i = 0; i < subcat.size(); ++i) {
      if (i) out += ',';
      out += subcat[i];
    }
    out += '>';
    for (std::size_t i = 0; i < nonthematic.size(); ++i) {
      if (i) out += ',';
      out += nonthematic[i];
    }
  }
  return out + "'";
}

const std::vector<std::string>& governable_functions() {
  static const std::vector<std::string> functions{"SUBJ", "OBJ", "OBJ2", "OBL", "XCOMP", "COMP"};
  return functions;
}

bool is_governable(std::string_view function) {
  const auto& fs = governable_functions();
  return std::find(fs.begin(), fs.end(), function) != fs.end();
}

std::string Clash::to_string() const {
  return "clash(" + path_to_string(path) + ", " + left + ", " + right + ")";
}

NotAStructure::NotAStructure(Path prefix)
    : Error("not-a-structure(" + path_to_string(prefix) + ")"), prefix_(std::move(prefix)) {}

AvmSyntaxError::AvmSyntaxError(std::size_t offset, const std::string& message)
    : Error("avm syntax error at offset " + std::to_string(offset) + ": " + message) {}

// ---------------------------------------------------------------------------
// FeatureStructure

FeatureStructure::FeatureStructure() {
  Node root;
  root.kind = NodeKind::Complex;
  nodes_.push_back(std::move(root));
}

NodeId FeatureStructure::push(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId FeatureStructure::add_unknown() { return push(Node{}); }

NodeId FeatureStructure::add_complex() {
  Node n;
  n.kind = NodeKind::Complex;
  return push(std::move(n));
}

NodeId FeatureStructure::add_atom(std::string symbol) {
  Node n;
  n.kind = NodeKind::Atomic;
  n.atom = std::move(symbol);
  return push(std::move(n));
}

NodeId FeatureStructure::add_semantic(SemanticForm form) {
  Node n;
  n.kind = NodeKind::Semantic;
  n.semantic = std::move(form);
  return push(std::move(n));
}

NodeId FeatureStructure::deref(NodeId node) const {
  while (nodes_[node].forward != kNoNode) node = nodes_[node].forward;
  return node;
}

std::optional<NodeId> FeatureStructure::attr(NodeId node, std::string_view name) const {
  const Node& n = nodes_[deref(node)];
  if (n.kind != NodeKind::Complex) return std::nullopt;
  auto it = n.arcs.find(name);
  if (it == n.arcs.end()) return std::nullopt;
  return deref(it->second);
}

std::optional<NodeId> FeatureStructure::ensure_attr(NodeId node, const std::string& name) {
  node = deref(node);
  if (nodes_[node].kind == NodeKind::Unknown) nodes_[node].kind = NodeKind::Complex;
  if (nodes_[node].kind != NodeKind::Complex) return std::nullopt;
  auto it = nodes_[node].arcs.find(name);
  if (it != nodes_[node].arcs.end()) return deref(it->second);
  NodeId fresh = add_unknown();
  nodes_[node].arcs.emplace(name, fresh);
  return fresh;
}

namespace {

std::string describe(const FeatureStructure& fs, NodeId n) {
  switch (fs.kind(n)) {
    case NodeKind::Atomic: return fs.atom(n);
    case NodeKind::Semantic: return fs.semantic(n).render();
    default: return "[...]";
  }
}

}  // namespace

bool FeatureStructure::unify_nodes(NodeId a, NodeId b, Clash* clash) {
  Path path;
  return unify_rec(a, b, path, clash);
}

bool FeatureStructure::unify_rec(NodeId a, NodeId b, Path& path, Clash* clash) {
  a = deref(a);
  b = deref(b);
  if (a == b) return true;
  const NodeKind ka = nodes_[a].kind;
  const NodeKind kb = nodes_[b].kind;

  auto fail = [&] {
    if (clash) *clash = Clash{path, describe(*this, a), describe(*this, b)};
    return false;
  };

  if (ka == NodeKind::Unknown) {
    nodes_[a].forward = b;
    return true;
  }
  if (kb == NodeKind::Unknown) {
    nodes_[b].forward = a;
    return true;
  }
  if (ka != kb) return fail();

  switch (ka) {
    case NodeKind::Atomic:
      if (nodes_[a].atom != nodes_[b].atom) return fail();
      nodes_[a].forward = b;
      return true;
    case NodeKind::Semantic:
      if (!(nodes_[a].semantic == nodes_[b].semantic)) return fail();
      nodes_[a].forward = b;
      return true;
    default:
      break;
  }

  // Forward first so that cycles through `a` resolve to `b`.
  Arcs moved = std::move(nodes_[a].arcs);
  nodes_[a].arcs.clear();
  nodes_[a].forward = b;
  for (const auto& [name, child] : moved) {
    auto it = nodes_[b].arcs.find(name);
    if (it == nodes_[b].arcs.end()) {
      nodes_[b].arcs.emplace(name, child);
      continue;
    }
    const NodeId other = it->second;
    path.push_back(name);
    if (!unify_rec(child, other, path, clash)) return false;
    path.pop_back();
  }
  return true;
}

NodeId FeatureStructure::import(const FeatureStructure& other, NodeId from) {
  std::unordered_map<NodeId, NodeId> mapping;
  std::vector<NodeId> pending;

  auto map_node = [&](NodeId src) {
    src = other.deref(src);
    auto it = mapping.find(src);
    if (it != mapping.end()) return it->second;
    Node copy;
    copy.kind = other.nodes_[src].kind;
    copy.atom = other.nodes_[src].atom;
    copy.semantic = other.nodes_[src].semantic;
    NodeId id = push(std::move(copy));
    mapping.emplace(src, id);
    pending.push_back(src);
    return id;
  };

  NodeId result = map_node(from);
  while (!pending.empty()) {
    NodeId src = pending.back();
    pending.pop_back();
    for (const auto& [name, child] : other.nodes_[src].arcs) {
      NodeId target = map_node(child);
      nodes_[mapping.at(src)].arcs.emplace(name, target);
    }
  }
  return result;
}

FeatureStructure FeatureStructure::extract(NodeId node) const {
  FeatureStructure out;
  out.nodes_.clear();
  out.root_ = out.import(*this, node);
  return out;
}

bool FeatureStructure::is_cyclic(NodeId node) const {
  std::unordered_set<NodeId> on_path;
  std::unordered_set<NodeId> finished;
  auto visit = [&](auto&& self, NodeId n) -> bool {
    n = deref(n);
    if (on_path.count(n)) return true;
    if (finished.count(n)) return false;
    on_path.insert(n);
    for (const auto& [name, child] : nodes_[n].arcs) {
      if (self(self, child)) return true;
    }
    on_path.erase(n);
    finished.insert(n);
    return false;
  };
  return visit(visit, node);
}

bool FeatureStructure::empty() const {
  const Node& n = nodes_[root()];
  return (n.kind == NodeKind::Complex || n.kind == NodeKind::Unknown) && n.arcs.empty();
}

// ---------------------------------------------------------------------------
// Value-level operations

std::string value_to_string(const Value& value) {
  if (const auto* a = std::get_if<Atom>(&value)) return a->symbol;
  if (const auto* s = std::get_if<SemanticForm>(&value)) return s->render();
  return canonical_form(std::get<FeatureStructure>(value));
}

UnifyResult unify(const FeatureStructure& a, const FeatureStructure& b) {
  FeatureStructure work = a;
  NodeId other = work.import(b, b.root());
  Clash clash;
  if (!work.unify_nodes(work.root(), other, &clash)) return {std::nullopt, clash};
  return {work.extract(work.root()), std::nullopt};
}

std::optional<Value> get_path(const FeatureStructure& fs, const Path& path) {
  if (path.empty()) throw Error("get_path: empty path");
  NodeId node = fs.root();
  Path prefix;
  for (const auto& step : path) {
    const NodeKind k = fs.kind(node);
    if (k == NodeKind::Atomic || k == NodeKind::Semantic) throw NotAStructure(prefix);
    auto next = fs.attr(node, step);
    if (!next) return std::nullopt;
    node = *next;
    prefix.push_back(step);
  }
  switch (fs.kind(node)) {
    case NodeKind::Atomic: return Value{Atom{fs.atom(node)}};
    case NodeKind::Semantic: return Value{fs.semantic(node)};
    default: return Value{fs.extract(node)};
  }
}

UnifyResult put_path(const FeatureStructure& fs, const Path& path, const Value& value) {
  if (path.empty()) throw Error("put_path: empty path");
  FeatureStructure work = fs;
  NodeId node = work.root();
  Path prefix;
  for (const auto& step : path) {
    auto next = work.ensure_attr(node, step);
    if (!next) return {std::nullopt, Clash{prefix, describe(work, node), "[...]"}};
    node = *next;
    prefix.push_back(step);
  }
  NodeId written = 0;
  if (const auto* a = std::get_if<Atom>(&value)) {
    written = work.add_atom(a->symbol);
  } else if (const auto* s = std::get_if<SemanticForm>(&value)) {
    written = work.add_semantic(*s);
  } else {
    const auto& sub = std::get<FeatureStructure>(value);
    written = work.import(sub, sub.root());
  }
  Clash clash;
  if (!work.unify_nodes(node, written, &clash)) {
    clash.path.insert(clash.path.begin(), path.begin(), path.end());
    return {std::nullopt, clash};
  }
  return {work.extract(work.root()), std::nullopt};
}

namespace {

bool is_shareable(NodeKind k) { return k != NodeKind::Atomic; }

class CanonicalWriter {
 public:
  explicit CanonicalWriter(const FeatureStructure& fs) : fs_(fs) {}

  std::string run() {
    count(fs_.root());
    write(fs_.root());
    return out_.str();
  }

 private:
  void count(NodeId node) {
    node = fs_.deref(node);
    if (on_stack_.count(node)) throw CyclicStructure();
    if (refs_[node]++ > 0) return;
    on_stack_.insert(node);
    for (const auto& [name, child] : fs_.arcs(node)) count(child);
    on_stack_.erase(node);
  }

  void write(NodeId node) {
    node = fs_.deref(node);
    const NodeKind k = fs_.kind(node);
    if (is_shareable(k) && refs_[node] > 1) {
      auto it = tags_.find(node);
      if (it != tags_.end()) {
        out_ << '#' << it->second;
        return;
      }
      const int tag = static_cast<int>(tags_.size()) + 1;
      tags_.emplace(node, tag);
      out_ << '#' << tag << '=';
    }
    switch (k) {
      case NodeKind::Atomic: out_ << fs_.atom(node); return;
      case NodeKind::Semantic: out_ << fs_.semantic(node).render(); return;
      default: break;
    }
    const auto& arcs = fs_.arcs(node);
    if (arcs.empty()) {
      out_ << "[]";
      return;
    }
    out_ << '[';
    for (const auto& [name, child] : arcs) {
      out_ << ' ' << name << ' ';
      write(child);
    }
    out_ << " ]";
  }

  const FeatureStructure& fs_;
  std::unordered_map<NodeId, int> refs_;
  std::unordered_set<NodeId> on_stack_;
  std::unordered_map<NodeId, int> tags_;
  std::ostringstream out_;
};

}  // namespace

std::string canonical_form(const FeatureStructure& fs) { return CanonicalWriter(fs).run(); }

bool subsumes(const FeatureStructure& general, const FeatureStructure& specific) {
  std::unordered_map<NodeId, NodeId> mapping;
  auto rec = [&](auto&& self, NodeId g, NodeId s) -> bool {
    g = general.deref(g);
    s = specific.deref(s);
    const NodeKind kg = general.kind(g);
    if (kg == NodeKind::Atomic) {
      return specific.kind(s) == NodeKind::Atomic && specific.atom(s) == general.atom(g);
    }
    auto [it, fresh] = mapping.emplace(g, s);
    if (!fresh) return it->second == s;
    const NodeKind ks = specific.kind(s);
    switch (kg) {
      case NodeKind::Unknown: return true;
      case NodeKind::Semantic: return ks == NodeKind::Semantic && specific.semantic(s) == general.semantic(g);
      default: break;
    }
    if (ks != NodeKind::Complex) return ks == NodeKind::Unknown && general.arcs(g).empty();
    for (const auto& [name, child] : general.arcs(g)) {
      auto target = specific.attr(s, name);
      if (!target || !self(self, child, *target)) return false;
    }
    return true;
  };
  return rec(rec, general.root(), specific.root());
}

// ---------------------------------------------------------------------------
// Reader for canonical text

namespace {

class AvmReader {
 public:
  AvmReader(std::string_view text, std::uint64_t first_instance)
      : text_(text), next_instance_(first_instance) {}

  FeatureStructure run() {
    fs_.set_root(value());
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return fs_.extract(fs_.root());
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw AvmSyntaxError(pos_, message); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool is_word_char(char c) const {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']' && c != '\'' &&
           c != '#';
  }

  std::string word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a symbol");
    return std::string(text_.substr(start, pos_ - start));
  }

  NodeId value() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '#') return tagged();
    if (c == '[') return structure();
    if (c == '\'') return fs_.add_semantic(semantic());
    return fs_.add_atom(word());
  }

  NodeId tagged() {
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected tag number");
    const int tag = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      if (tags_.count(tag)) fail("tag #" + std::to_string(tag) + " defined twice");
      // Reserve the tag before reading the body so that inner references
      // resolve; the placeholder is unified with the body afterwards.
      NodeId placeholder = fs_.add_unknown();
      tags_.emplace(tag, placeholder);
      NodeId body = value();
      fs_.unify_nodes(placeholder, body);
      return fs_.deref(placeholder);
    }
    auto it = tags_.find(tag);
    if (it == tags_.end()) fail("undefined tag #" + std::to_string(tag));
    return it->second;
  }

  NodeId structure() {
    ++pos_;
    NodeId node = fs_.add_complex();
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated structure");
      if (text_[pos_] == ']') {
        ++pos_;
        return node;
      }
      std::string name = word();
      if (fs_.attr(node, name)) fail("duplicate attribute " + name);
      NodeId child = value();
      NodeId slot = *fs_.ensure_attr(node, name);
      fs_.unify_nodes(slot, child);
    }
  }

  SemanticForm semantic() {
    ++pos_;
    const std::size_t end = text_.find('\'', pos_);
    if (end == std::string_view::npos) fail("unterminated semantic form");
    std::string body(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    SemanticForm form;
    form.instance = next_instance_++;
    const std::size_t open = body.find('<');
    if (open == std::string::npos) {
      form.lemma = body;
      return form;
    }
    const std::size_t close = body.find('>', open);
    if (close == std::string::npos) fail("missing '>' in semantic form");
    form.lemma = body.substr(0, open);
    auto split = [](const std::string& s) {
      std::vector<std::string> out;
      std::string cur;
      for (char c : s) {
        if (c == ',') {
          if (!cur.empty()) out.push_back(cur);
          cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
          cur += c;
        }
      }
      if (!cur.empty()) out.push_back(cur);
      return out;
    };
    form.subcat = split(body.substr(open + 1, close - open - 1));
    form.nonthematic = split(body.substr(close + 1));
    return form;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::uint64_t next_instance_;
  FeatureStructure fs_;
  std::map<int, NodeId> tags_;
};

}  // namespace

FeatureStructure parse_avm(std::string_view text, std::uint64_t first_instance) {
  return AvmReader(text, first_instance).run();
}

}  // namespace lfg
