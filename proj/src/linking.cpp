#include "lfg/linking.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lfg/grammar.hpp"

namespace lfg {

std::string LinkingReading::to_string() const {
  if (assignments.empty()) return "-";
  std::string out;
  for (const auto& [function, role] : assignments) {
    if (!out.empty()) out += ' ';
    out += function + '=' + role;
  }
  return out;
}

namespace {

std::optional<std::string> atom_at(const FeatureStructure& fs, NodeId node, std::initializer_list<std::string_view> path) {
  std::optional<NodeId> cur = node;
  for (std::string_view step : path) {
    cur = fs.attr(*cur, step);
    if (!cur) return std::nullopt;
  }
  if (fs.kind(*cur) != NodeKind::Atomic) return std::nullopt;
  return fs.atom(*cur);
}

LinkingReading reading(std::initializer_list<std::pair<const char*, std::string>> pairs) {
  LinkingReading r;
  for (const auto& [f, role] : pairs) r.assignments.emplace(f, role);
  return r;
}

}  // namespace

std::vector<LinkingReading> link_genitives(const FeatureStructure& store, NodeId node) {
  const bool gen1 = store.attr(node, "GEN1").has_value();
  const bool gen2 = store.attr(node, "GEN2").has_value();
  const auto arg1 = atom_at(store, node, {"ARG-STR", "ARG1"});
  const auto arg2 = atom_at(store, node, {"ARG-STR", "ARG2"});

  if (!gen1 && !gen2) return {LinkingReading{}};
  if (gen1 && gen2) {
    if (!arg1 || !arg2) throw BothGenitivesMonovalent();
    return {reading({{"GEN1", *arg1}, {"GEN2", *arg2}})};
  }
  const char* gen = gen1 ? "GEN1" : "GEN2";
  if (!arg1) return {reading({{gen, std::string(kPoss)}})};
  if (!arg2) return {reading({{gen, *arg1}})};
  // bivalent head
  if (gen1) return {reading({{gen, *arg1}}), reading({{gen, *arg2}})};
  return {reading({{gen, *arg2}})};
}

std::vector<LinkingReading> link_genitives(const FeatureStructure& fs) { return link_genitives(fs, fs.root()); }

void BilingualLexicon::add(BlexEntry entry) {
  std::string key = entry.source;
  entries_[key] = std::move(entry);
}

const BlexEntry* BilingualLexicon::find(std::string_view source) const {
  auto it = entries_.find(source);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

[[noreturn]] void blex_error(std::size_t line, const std::string& message) {
  throw GrammarSyntaxError(line, 1, message);
}

std::vector<std::string> split_ws(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  for (std::string word; in >> word;) out.push_back(word);
  return out;
}

}  // namespace

BilingualLexicon load_blex(std::string_view text) {
  BilingualLexicon blex;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto words = split_ws(line);
    if (words.empty()) continue;

    const auto arrow = line.find("->");
    if (arrow == std::string::npos) blex_error(lineno, "expected '->'");
    auto lhs = split_ws(std::string_view(line).substr(0, arrow));
    if (lhs.size() != 1) blex_error(lineno, "expected one source lemma");
    std::string rhs = line.substr(arrow + 2);

    BlexEntry e;
    e.source = lhs[0];
    // Glue `en <F,G>` into `en<F,G>` before splitting.
    if (auto lt = rhs.find('<'); lt != std::string::npos) {
      auto gt = rhs.find('>', lt);
      if (gt == std::string::npos) blex_error(lineno, "unterminated subcat list");
      std::string inside = rhs.substr(lt + 1, gt - lt - 1);
      std::replace(inside.begin(), inside.end(), ',', ' ');
      e.subcat = split_ws(inside);
      for (const auto& f : e.subcat)
        if (!is_governable(f)) blex_error(lineno, "not a governable function: " + f);
      rhs = rhs.substr(0, lt) + ' ' + rhs.substr(gt + 1);
    }
    auto rest = split_ws(rhs);
    if (rest.empty()) blex_error(lineno, "missing target lemma");
    e.target = rest[0];
    enum { None, Linking, Keep } section = None;
    for (std::size_t i = 1; i < rest.size(); ++i) {
      const auto& w = rest[i];
      if (w == "linking:") {
        section = Linking;
      } else if (w == "keep:") {
        section = Keep;
      } else if (section == Linking) {
        auto eq = w.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == w.size()) blex_error(lineno, "bad linking " + w);
        e.linking[w.substr(0, eq)] = w.substr(eq + 1);
      } else if (section == Keep) {
        e.keep.push_back(w);
      } else {
        blex_error(lineno, "unexpected " + w);
      }
    }
    blex.add(std::move(e));
  }
  return blex;
}

BilingualLexicon load_blex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open bilingual lexicon " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_blex(buffer.str());
}

namespace {

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

class Transfer {
 public:
  Transfer(const FeatureStructure& src, const BilingualLexicon& blex) : src_(src), blex_(blex) {}

  FeatureStructure nominal(const LinkingReading& r) {
    nominal(src_.root(), out_.root(), r);
    return std::move(out_);
  }

  FeatureStructure clause() {
    const NodeId from = src_.root();
    const BlexEntry& e = entry(from);
    for (const auto& [attr, child] : src_.arcs(from)) {
      if (attr == "PRED") continue;
      if (is_governable(attr)) {
        if (!contains(e.subcat, attr)) throw UnlinkedRole(attr);
        argument(child, add(out_.root(), attr));
      } else if (attr == "TENSE" || src_.kind(child) != NodeKind::Atomic) {
        copy_or_translate(child, add(out_.root(), attr), e);
      } else if (contains(e.keep, attr)) {
        out_.unify_nodes(add(out_.root(), attr), out_.add_atom(src_.atom(child)));
      }
    }
    set_pred(out_.root(), e, e.subcat);
    return std::move(out_);
  }

 private:
  const BlexEntry& entry(NodeId node) {
    auto pred = src_.attr(node, "PRED");
    if (!pred || src_.kind(*pred) != NodeKind::Semantic) throw Error("transfer: structure without PRED");
    const auto& lemma = src_.semantic(*pred).lemma;
    const BlexEntry* e = blex_.find(lemma);
    if (!e) throw MissingTranslation(lemma);
    return *e;
  }

  NodeId add(NodeId parent, const std::string& attr) {
    if (out_.attr(parent, attr)) throw UnlinkedRole(attr);
    return *out_.ensure_attr(parent, attr);
  }

  void set_pred(NodeId node, const BlexEntry& e, std::vector<std::string> subcat) {
    out_.unify_nodes(*out_.ensure_attr(node, "PRED"), out_.add_semantic(SemanticForm{e.target, std::move(subcat), {}, ++instance_}));
  }

  void nominal(NodeId from, NodeId to, const LinkingReading& r) {
    const BlexEntry& e = entry(from);
    std::vector<std::string> filled;
    for (const auto& [attr, child] : src_.arcs(from)) {
      if (attr == "PRED" || attr == "ARG-STR") continue;
      if (auto it = r.assignments.find(attr); it != r.assignments.end()) {
        std::string function;
        if (it->second == kPoss) {
          function = std::string(kPoss);
        } else {
          auto link = e.linking.find(it->second);
          if (link == e.linking.end()) throw UnlinkedRole(attr);
          function = link->second;
          if (is_governable(function) && !contains(e.subcat, function)) throw UnlinkedRole(attr);
        }
        argument(child, add(to, function));
        filled.push_back(function);
      } else if (attr == "GEN1" || attr == "GEN2") {
        throw UnlinkedRole(attr);
      } else if (src_.kind(child) != NodeKind::Atomic) {
        copy_or_translate(child, add(to, attr), e);
        if (is_governable(attr)) filled.push_back(attr);
      } else if (contains(e.keep, attr)) {
        out_.unify_nodes(add(to, attr), out_.add_atom(src_.atom(child)));
      }
    }
    std::vector<std::string> subcat;
    for (const auto& f : e.subcat)
      if (contains(filled, f)) subcat.push_back(f);
    set_pred(to, e, std::move(subcat));
  }

  // A nominal argument with its own genitives takes their first reading.
  void argument(NodeId from, NodeId to) {
    if (src_.kind(from) != NodeKind::Complex || !src_.attr(from, "PRED")) {
      copy_or_translate(from, to, BlexEntry{});
      return;
    }
    nominal(from, to, link_genitives(src_, from).front());
  }

  void copy_or_translate(NodeId from, NodeId to, const BlexEntry& owner) {
    switch (src_.kind(from)) {
      case NodeKind::Atomic:
        out_.unify_nodes(to, out_.add_atom(src_.atom(from)));
        return;
      case NodeKind::Semantic: {
        const BlexEntry* e = blex_.find(src_.semantic(from).lemma);
        if (!e) throw MissingTranslation(src_.semantic(from).lemma);
        out_.unify_nodes(to, out_.add_semantic(SemanticForm{e->target, e->subcat, {}, ++instance_}));
        return;
      }
      case NodeKind::Complex:
        if (src_.attr(from, "PRED")) {
          argument(from, to);
          return;
        }
        out_.unify_nodes(to, out_.add_complex());
        for (const auto& [attr, child] : src_.arcs(from)) {
          if (src_.kind(child) == NodeKind::Atomic && !contains(owner.keep, attr)) continue;
          copy_or_translate(child, add(to, attr), owner);
        }
        return;
      case NodeKind::Unknown:
        return;
    }
  }

  const FeatureStructure& src_;
  const BilingualLexicon& blex_;
  FeatureStructure out_;
  std::uint64_t instance_ = 0;
};

}  // namespace

FeatureStructure transfer(const FeatureStructure& fs, const LinkingReading& reading, const BilingualLexicon& blex) {
  return Transfer(fs, blex).nominal(reading);
}

FeatureStructure transfer_clause(const FeatureStructure& fs, const BilingualLexicon& blex) {
  return Transfer(fs, blex).clause();
}

}  // namespace lfg
