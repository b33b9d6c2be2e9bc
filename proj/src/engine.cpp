#include "lfg/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace lfg {

// ---------------------------------------------------------------------------
// CTree

std::size_t CTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

std::size_t CTree::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

std::string CTree::bracketed() const {
  if (is_leaf()) return "(" + category + " " + *word + ")";
  std::string out = "(" + category;
  for (const auto& c : children) out += " " + c.bracketed();
  return out + ")";
}

std::string CTree::shape() const {
  if (is_leaf() || children.empty()) return category;
  std::string out = category + "(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ",";
    out += children[i].shape();
  }
  return out + ")";
}

std::vector<std::pair<const CTree*, std::size_t>> preorder(const CTree& tree) {
  std::vector<std::pair<const CTree*, std::size_t>> out;
  auto walk = [&](auto&& self, const CTree& node, std::size_t parent) -> void {
    const std::size_t index = out.size();
    out.emplace_back(&node, parent);
    for (const auto& c : node.children) self(self, c, index);
  };
  walk(walk, tree, static_cast<std::size_t>(-1));
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::istringstream in{std::string(sentence)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

std::string ParseResult::no_parse_message() const {
  std::string out = "no-parse";
  if (best_partial) {
    out += " (best partial: " + best_partial->category + " over tokens " +
           std::to_string(best_partial->begin) + ".." + std::to_string(best_partial->end) + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chart parser

namespace {

class ChartParser {
 public:
  ChartParser(const std::vector<std::string>& tokens, const Grammar& grammar, std::size_t cap)
      : tokens_(tokens), grammar_(grammar), cap_(cap) {
    for (const auto& r : grammar.rules) expansions_.push_back(r.expansions());
  }

  ParseResult run() {
    ParseResult result;
    result.trees = trees(grammar_.start, 0, tokens_.size());
    result.truncated = truncated_;
    if (result.trees.empty()) result.best_partial = best_partial();
    return result;
  }

 private:
  using Key = std::tuple<std::string, std::size_t, std::size_t>;

  const std::vector<CTree>& trees(const std::string& cat, std::size_t i, std::size_t j) {
    static const std::vector<CTree> kNone;
    Key key{cat, i, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    // Unary cycles: a category already being built over the same span
    // contributes nothing further.
    if (in_progress_.count(key)) return kNone;
    in_progress_.insert(key);

    std::vector<CTree> found;
    if (j == i + 1) {
      if (const auto* entries = grammar_.entries(tokens_[i])) {
        for (const auto& e : *entries) {
          if (e.category != cat) continue;
          CTree leaf;
          leaf.category = cat;
          leaf.word = tokens_[i];
          leaf.entry = e;
          found.push_back(std::move(leaf));
        }
      }
    }
    for (std::size_t r = 0; r < grammar_.rules.size() && found.size() < cap_; ++r) {
      if (grammar_.rules[r].lhs != cat) continue;
      for (const auto& expansion : expansions_[r]) {
        if (expansion.size() > j - i) continue;
        std::vector<CTree> children;
        combine(cat, expansion, 0, i, j, children, found);
        if (found.size() >= cap_) break;
      }
    }
    if (found.size() > cap_) found.resize(cap_);
    if (found.size() == cap_) truncated_ = true;

    in_progress_.erase(key);
    return memo_.emplace(std::move(key), std::move(found)).first->second;
  }

  void combine(const std::string& cat, const std::vector<const RuleElement*>& expansion, std::size_t k,
               std::size_t pos, std::size_t j, std::vector<CTree>& children, std::vector<CTree>& out) {
    if (out.size() >= cap_) return;
    if (k == expansion.size()) {
      if (pos != j) return;
      CTree node;
      node.category = cat;
      node.children = children;
      out.push_back(std::move(node));
      return;
    }
    const std::size_t remaining = expansion.size() - k;
    for (std::size_t end = pos + 1; end + (remaining - 1) <= j; ++end) {
      const auto& sub = trees(expansion[k]->category, pos, end);
      for (const auto& t : sub) {
        CTree child = t;
        child.annotation = expansion[k]->annotation;
        children.push_back(std::move(child));
        combine(cat, expansion, k + 1, end, j, children, out);
        children.pop_back();
        if (out.size() >= cap_) return;
      }
    }
  }

  // Longest constituent of any category, leftmost first.
  std::optional<Span> best_partial() {
    std::set<std::string> categories;
    for (const auto& r : grammar_.rules) categories.insert(r.lhs);
    for (const auto& [form, entries] : grammar_.lexicon)
      for (const auto& e : entries) categories.insert(e.category);
    for (std::size_t len = tokens_.size(); len > 0; --len)
      for (std::size_t i = 0; i + len <= tokens_.size(); ++i)
        for (const auto& cat : categories)
          if (!trees(cat, i, i + len).empty()) return Span{i, i + len, cat};
    return std::nullopt;
  }

  const std::vector<std::string>& tokens_;
  const Grammar& grammar_;
  std::size_t cap_;
  std::vector<std::vector<std::vector<const RuleElement*>>> expansions_;
  std::map<Key, std::vector<CTree>> memo_;
  std::set<Key> in_progress_;
  bool truncated_ = false;
};

}  // namespace

ParseResult parse_cstructure(const std::vector<std::string>& tokens, const Grammar& grammar,
                             std::size_t forest_cap) {
  for (const auto& t : tokens)
    if (!grammar.entries(t)) throw UnknownToken(t);
  if (tokens.empty()) return ParseResult{};
  return ChartParser(tokens, grammar, forest_cap).run();
}

// ---------------------------------------------------------------------------
// Completeness and coherence

std::string Violation::to_string() const {
  return std::string(kind == Kind::Incomplete ? "incomplete(" : "incoherent(") + path_to_string(path) +
         ", " + function + ")";
}

std::optional<Violation> check_completeness_coherence(const FeatureStructure& fs) {
  std::set<NodeId> seen;
  std::optional<Violation> found;
  Path path;
  auto visit = [&](auto&& self, NodeId node) -> void {
    node = fs.deref(node);
    if (found || fs.kind(node) != NodeKind::Complex || !seen.insert(node).second) return;
    const auto pred = fs.attr(node, "PRED");
    if (pred && fs.kind(*pred) == NodeKind::Semantic) {
      const SemanticForm& form = fs.semantic(*pred);
      for (const auto& f : form.subcat) {
        auto arg = fs.attr(node, f);
        const bool has_pred = arg && fs.attr(*arg, "PRED").has_value();
        if (!has_pred) {
          found = Violation{Violation::Kind::Incomplete, path, f};
          return;
        }
      }
      for (const auto& f : form.nonthematic) {
        if (!fs.attr(node, f)) {
          found = Violation{Violation::Kind::Incomplete, path, f};
          return;
        }
      }
    }
    for (const auto& [name, child] : fs.arcs(node)) {
      if (!is_governable(name)) continue;
      bool governed = false;
      if (pred && fs.kind(*pred) == NodeKind::Semantic) {
        const SemanticForm& form = fs.semantic(*pred);
        governed = std::find(form.subcat.begin(), form.subcat.end(), name) != form.subcat.end() ||
                   std::find(form.nonthematic.begin(), form.nonthematic.end(), name) !=
                       form.nonthematic.end();
      }
      if (!governed) {
        found = Violation{Violation::Kind::Incoherent, path, name};
        return;
      }
    }
    for (const auto& [name, child] : fs.arcs(node)) {
      path.push_back(name);
      self(self, child);
      path.pop_back();
      if (found) return;
    }
  };
  visit(visit, fs.root());
  return found;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

struct ConcreteConstraint {
  ConstraintKind kind;
  PathExpr lhs;
  Constraint::Rhs rhs;
  std::size_t lhs_fixed = 0;
  std::size_t rhs_fixed = 0;

  bool deferred() const { return lhs_fixed > 0 || rhs_fixed > 0; }
  Constraint plain() const { return Constraint{kind, lhs, rhs, {}}; }
};

struct SiteOption {
  std::vector<ConcreteConstraint> constraints;
  std::size_t disjunct = 0;
};

struct Site {
  std::size_t node = 0;
  bool lexical = false;
  std::string label;
  bool traced = false;
  std::vector<SiteOption> options;
};

struct Pending {
  std::size_t node;
  bool lexical;
  ConcreteConstraint constraint;
};

struct State {
  FeatureStructure store;
  std::vector<NodeId> phi;
  std::vector<NodeId> mu;
  std::vector<Pending> deferred;
  std::vector<Pending> checks;
  std::vector<std::pair<std::string, std::size_t>> trace;
  std::vector<std::string> choices;  // for diagnostics
  std::uint64_t next_instance = 1;
};

std::vector<ConcreteConstraint> instantiate(const Constraint& c, int depth,
                                            const std::vector<std::string>& functions) {
  std::vector<ConcreteConstraint> out;
  const auto lhs = instantiate_path(c.lhs, depth, functions);
  const auto* rhs_path = std::get_if<PathExpr>(&c.rhs);
  for (const auto& l : lhs) {
    if (!rhs_path) {
      out.push_back({c.kind, l.path, c.rhs, l.fixed_prefix, 0});
      continue;
    }
    for (const auto& r : instantiate_path(*rhs_path, depth, functions))
      out.push_back({c.kind, l.path, r.path, l.fixed_prefix, r.fixed_prefix});
  }
  return out;
}

std::vector<SiteOption> site_options(const ConstraintList& constraints, int depth,
                                     const std::vector<std::string>& functions,
                                     std::optional<std::size_t> forced) {
  std::vector<SiteOption> out;
  const auto dnf = expand_disjunctions(constraints);
  for (std::size_t d = 0; d < dnf.size(); ++d) {
    if (forced && *forced != d) continue;
    std::vector<SiteOption> partial{SiteOption{{}, d}};
    for (const auto& c : dnf[d]) {
      const auto choices = instantiate(c, depth, functions);
      std::vector<SiteOption> next;
      for (const auto& p : partial) {
        for (const auto& choice : choices) {
          SiteOption q = p;
          q.constraints.push_back(choice);
          next.push_back(std::move(q));
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

class Solver {
 public:
  Solver(const CTree& tree, const Grammar& grammar, const EngineOptions& options)
      : tree_(tree), grammar_(grammar), options_(options), nodes_(preorder(tree)) {
    const int depth = options.max_depth.value_or(grammar.depth);
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      const CTree& node = *nodes_[n].first;
      if (n != 0 && !node.annotation.empty()) {
        Site s;
        s.node = n;
        s.label = node.category + " annotation";
        s.options = site_options(node.annotation, depth, grammar.functions, std::nullopt);
        sites_.push_back(std::move(s));
      }
      if (node.is_leaf() && node.entry) {
        Site s;
        s.node = n;
        s.lexical = true;
        s.label = *node.word;
        std::optional<std::size_t> forced;
        if (auto it = options.forced_disjuncts.find(*node.word); it != options.forced_disjuncts.end())
          forced = it->second;
        s.traced = expand_disjunctions(*node.entry).size() > 1;
        s.options = site_options(node.entry->constraints, depth, grammar.functions, forced);
        sites_.push_back(std::move(s));
      }
    }
  }

  SolveReport run() {
    State initial;
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      initial.phi.push_back(initial.store.add_unknown());
      initial.mu.push_back(initial.store.add_unknown());
    }
    search(initial, 0);
    return std::move(report_);
  }

 private:
  NodeId anchor(const State& st, std::size_t node, bool lexical, const PathExpr& p) const {
    std::size_t target = node;
    if (p.anchor == Anchor::Up && !lexical) target = nodes_[node].second;
    return p.projection == Projection::F ? st.phi[target] : st.mu[target];
  }

  // Walks `p`, creating attributes after the first `fixed` steps.
  std::optional<NodeId> walk(State& st, NodeId from, const PathExpr& p, std::size_t fixed, bool create) const {
    NodeId cur = from;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      const auto& name = p.steps[i].name;
      std::optional<NodeId> next =
          (create && i >= fixed) ? st.store.ensure_attr(cur, name) : st.store.attr(cur, name);
      if (!next) return std::nullopt;
      cur = *next;
    }
    return st.store.deref(cur);
  }

  bool apply_define(State& st, const Pending& item, std::string& why) const {
    const auto& c = item.constraint;
    auto lhs = walk(st, anchor(st, item.node, item.lexical, c.lhs), c.lhs, c.lhs_fixed, true);
    if (!lhs) {
      why = "path unavailable in " + c.plain().to_string();
      return false;
    }
    NodeId rhs = 0;
    if (const auto* p = std::get_if<PathExpr>(&c.rhs)) {
      auto r = walk(st, anchor(st, item.node, item.lexical, *p), *p, c.rhs_fixed, true);
      if (!r) {
        why = "path unavailable in " + c.plain().to_string();
        return false;
      }
      rhs = *r;
    } else if (const auto* a = std::get_if<Atom>(&c.rhs)) {
      rhs = st.store.add_atom(a->symbol);
    } else {
      SemanticForm form = std::get<SemanticForm>(c.rhs);
      form.instance = st.next_instance++;
      rhs = st.store.add_semantic(std::move(form));
    }
    Clash clash;
    if (!st.store.unify_nodes(*lhs, rhs, &clash)) {
      why = clash.to_string() + " in " + c.plain().to_string();
      return false;
    }
    return true;
  }

  bool holds(State& st, const Pending& item) const {
    const auto& c = item.constraint;
    auto lhs = walk(st, anchor(st, item.node, item.lexical, c.lhs), c.lhs, 0, false);
    bool equal = false;
    if (lhs) {
      const NodeKind k = st.store.kind(*lhs);
      if (const auto* a = std::get_if<Atom>(&c.rhs)) {
        equal = k == NodeKind::Atomic && st.store.atom(*lhs) == a->symbol;
      } else if (const auto* s = std::get_if<SemanticForm>(&c.rhs)) {
        equal = k == NodeKind::Semantic && st.store.semantic(*lhs).same_signature(*s);
      } else {
        const auto& p = std::get<PathExpr>(c.rhs);
        auto rhs = walk(st, anchor(st, item.node, item.lexical, p), p, 0, false);
        if (rhs) {
          equal = *rhs == *lhs || (k == NodeKind::Atomic && st.store.kind(*rhs) == NodeKind::Atomic &&
                                   st.store.atom(*rhs) == st.store.atom(*lhs));
        }
      }
    }
    return c.kind == ConstraintKind::Constrain ? equal : !equal;
  }

  void note(const State& st, const std::string& what) {
    if (!options_.diagnostics) return;
    std::string prefix = "candidate";
    for (const auto& c : st.choices) prefix += " " + c;
    report_.diagnostics.push_back(prefix + ": " + what);
  }

  void search(const State& st, std::size_t index) {
    if (index == sites_.size()) {
      finish(st);
      return;
    }
    const Site& site = sites_[index];
    for (std::size_t o = 0; o < site.options.size(); ++o) {
      const SiteOption& option = site.options[o];
      State next = st;
      if (site.traced) next.trace.emplace_back(site.label, option.disjunct);
      next.choices.push_back(site.label + "#" + std::to_string(o));
      bool ok = true;
      for (const auto& c : option.constraints) {
        Pending item{site.node, site.lexical, c};
        if (c.kind != ConstraintKind::Define) {
          next.checks.push_back(std::move(item));
          continue;
        }
        if (c.deferred()) {
          next.deferred.push_back(std::move(item));
          continue;
        }
        std::string why;
        if (!apply_define(next, item, why)) {
          note(next, why);
          ok = false;
          break;
        }
      }
      if (ok) search(next, index + 1);
    }
  }

  void finish(const State& done) {
    ++report_.candidates;
    State st = done;

    // Uncertain defining equations whose star prefix has to be supplied by
    // other equations; resolved to a fixed point.
    std::vector<bool> applied(st.deferred.size(), false);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < st.deferred.size(); ++i) {
        if (applied[i]) continue;
        const auto& item = st.deferred[i];
        const auto& c = item.constraint;
        auto prefix_ok = [&](const PathExpr& p, std::size_t fixed) {
          PathExpr head{p.projection, p.anchor, {p.steps.begin(), p.steps.begin() + static_cast<long>(fixed)}};
          return walk(st, anchor(st, item.node, item.lexical, p), head, 0, false).has_value();
        };
        const auto* rp = std::get_if<PathExpr>(&c.rhs);
        if (!prefix_ok(c.lhs, c.lhs_fixed) || (rp && !prefix_ok(*rp, c.rhs_fixed))) continue;
        std::string why;
        if (!apply_define(st, item, why)) {
          note(st, why);
          return;
        }
        applied[i] = progress = true;
      }
    }
    for (std::size_t i = 0; i < st.deferred.size(); ++i) {
      if (!applied[i]) {
        note(st, "uncertainty path not present: " + st.deferred[i].constraint.plain().to_string());
        return;
      }
    }

    for (const auto& check : st.checks) {
      if (!holds(st, check)) {
        note(st, "failed " + check.constraint.plain().to_string() + " at " + nodes_[check.node].first->category);
        return;
      }
    }

    const NodeId froot = st.store.deref(st.phi[0]);
    const NodeId mroot = st.store.deref(st.mu[0]);
    if (st.store.is_cyclic(froot) || st.store.is_cyclic(mroot)) {
      note(st, "cyclic structure");
      return;
    }
    Analysis a;
    a.fstruct = st.store.extract(froot);
    if (auto v = check_completeness_coherence(a.fstruct)) {
      note(st, v->to_string());
      return;
    }
    a.mstruct = st.store.extract(mroot);
    a.ctree = tree_;
    a.trace = st.trace;

    std::string key = canonical_form(a.fstruct) + "\n" + canonical_form(a.mstruct) + "\n" + tree_.bracketed();
    if (!seen_.insert(std::move(key)).second) return;

    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      a.phi.push_back(st.store.deref(st.phi[n]));
      a.mu.push_back(st.store.deref(st.mu[n]));
    }
    for (const auto& c : st.checks) a.checks.push_back({c.node, c.lexical, c.constraint.plain()});
    a.store = std::move(st.store);
    report_.analyses.push_back(std::move(a));
  }

  const CTree& tree_;
  const Grammar& grammar_;
  const EngineOptions& options_;
  std::vector<std::pair<const CTree*, std::size_t>> nodes_;
  std::vector<Site> sites_;
  std::set<std::string> seen_;
  SolveReport report_;
};

}  // namespace

SolveReport solve_detailed(const CTree& tree, const Grammar& grammar, const EngineOptions& options) {
  return Solver(tree, grammar, options).run();
}

std::vector<Analysis> solve(const CTree& tree, const Grammar& grammar, const EngineOptions& options) {
  return solve_detailed(tree, grammar, options).analyses;
}

AnalyzeResult analyze_detailed(std::string_view sentence, const Grammar& grammar, const EngineOptions& options) {
  AnalyzeResult result;
  result.parse = parse_cstructure(tokenize(sentence), grammar, options.forest_cap);
  for (const auto& tree : result.parse.trees) {
    auto report = solve_detailed(tree, grammar, options);
    for (auto& a : report.analyses) result.analyses.push_back(std::move(a));
    for (auto& d : report.diagnostics) result.diagnostics.push_back(std::move(d));
  }
  return result;
}

std::vector<Analysis> analyze(std::string_view sentence, const Grammar& grammar, const EngineOptions& options) {
  return analyze_detailed(sentence, grammar, options).analyses;
}

}  // namespace lfg
