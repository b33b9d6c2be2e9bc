#include "lfg/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace lfg {

// ---------------------------------------------------------------------------
// Paths and constraints

bool PathExpr::has_star() const {
  return std::any_of(steps.begin(), steps.end(),
                     [](const PathStep& s) { return s.kind == PathStep::Kind::Star; });
}

bool PathExpr::has_function_variable() const {
  return std::any_of(steps.begin(), steps.end(),
                     [](const PathStep& s) { return s.kind == PathStep::Kind::Function; });
}

Path PathExpr::attributes() const {
  Path out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.name);
  return out;
}

std::string PathExpr::to_string() const {
  std::string anchor_text = projection == Projection::M ? "%" : "";
  anchor_text += anchor == Anchor::Up ? "^" : "!";
  if (steps.empty()) return anchor_text;
  std::string out = "(" + anchor_text;
  for (const auto& s : steps) {
    out += ' ';
    switch (s.kind) {
      case PathStep::Kind::Attribute: out += s.name; break;
      case PathStep::Kind::Star: out += s.name + "*"; break;
      case PathStep::Kind::Function: out += "GF"; break;
    }
  }
  return out + ")";
}

Constraint Constraint::define(PathExpr lhs, Rhs rhs) {
  return Constraint{ConstraintKind::Define, std::move(lhs), std::move(rhs), {}};
}

Constraint Constraint::constrain(PathExpr lhs, Rhs rhs) {
  return Constraint{ConstraintKind::Constrain, std::move(lhs), std::move(rhs), {}};
}

Constraint Constraint::negate(PathExpr lhs, Rhs rhs) {
  return Constraint{ConstraintKind::Negate, std::move(lhs), std::move(rhs), {}};
}

Constraint Constraint::disjunction(std::vector<ConstraintList> branches) {
  Constraint c;
  c.kind = ConstraintKind::Disjunction;
  c.disjuncts = std::move(branches);
  return c;
}

namespace {

std::string rhs_to_string(const Constraint::Rhs& rhs) {
  if (const auto* p = std::get_if<PathExpr>(&rhs)) return p->to_string();
  if (const auto* a = std::get_if<Atom>(&rhs)) return a->symbol;
  return std::get<SemanticForm>(rhs).render();
}

}  // namespace

std::string Constraint::to_string() const {
  switch (kind) {
    case ConstraintKind::Define: return lhs.to_string() + "=" + rhs_to_string(rhs);
    case ConstraintKind::Constrain: return lhs.to_string() + "=c " + rhs_to_string(rhs);
    case ConstraintKind::Negate: return lhs.to_string() + "~=" + rhs_to_string(rhs);
    case ConstraintKind::Disjunction: break;
  }
  std::string out = "{";
  for (std::size_t i = 0; i < disjuncts.size(); ++i) {
    if (i) out += " |";
    for (const auto& c : disjuncts[i]) out += " " + c.to_string();
  }
  return out + " }";
}

std::string to_string(const ConstraintList& constraints) {
  std::string out;
  for (const auto& c : constraints) {
    if (!out.empty()) out += ' ';
    out += c.to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rules and grammars

std::vector<std::vector<const RuleElement*>> Rule::expansions() const {
  std::vector<std::vector<const RuleElement*>> out{{}};
  for (const auto& slot : rhs) {
    std::vector<std::vector<const RuleElement*>> next;
    for (const auto& prefix : out) {
      for (const auto& alt : slot.alternatives) {
        auto extended = prefix;
        extended.push_back(&alt);
        next.push_back(std::move(extended));
      }
      if (slot.optional) next.push_back(prefix);
    }
    out = std::move(next);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.empty(); }),
            out.end());
  return out;
}

std::set<std::string> Grammar::lexical_categories() const {
  std::set<std::string> out;
  for (const auto& [form, list] : lexicon)
    for (const auto& e : list) out.insert(e.category);
  return out;
}

std::set<std::string> Grammar::phrasal_categories() const {
  std::set<std::string> out;
  for (const auto& r : rules) out.insert(r.lhs);
  return out;
}

const std::vector<LexEntry>* Grammar::entries(std::string_view form) const {
  auto it = lexicon.find(std::string(form));
  return it == lexicon.end() ? nullptr : &it->second;
}

void Grammar::add_entry(LexEntry entry) {
  auto& list = lexicon[entry.form];
  list.push_back(std::move(entry));
}

void Grammar::validate() const {
  const auto lexical = lexical_categories();
  const auto phrasal = phrasal_categories();
  auto known = [&](const std::string& c) { return lexical.count(c) || phrasal.count(c); };
  for (const auto& r : rules)
    for (const auto& slot : r.rhs)
      for (const auto& e : slot.alternatives)
        if (!known(e.category)) throw UnknownCategory(e.category);
  if (!known(start)) throw UnknownCategory(start);
  if (depth < 0) throw Error("grammar: negative uncertainty depth");
  if (functions.empty()) throw Error("grammar: empty function set");
}

GrammarSyntaxError::GrammarSyntaxError(std::size_t line, std::size_t column,
                                       const std::string& message)
    : Error("syntax(" + std::to_string(line) + ", " + std::to_string(column) + ", " + message +
            ")"),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// DSL reader

namespace {

enum class Tok {
  Ident,
  Semantic,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Bar,
  Question,
  Arrow,
  Eq,
  EqC,
  Neq,
  Up,
  Down,
  MUp,
  MDown,
  Star,
  Newline,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '+' || c == '\'' || c == '.' || c >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (c == '\n') {
        if (depth == 0) out.push_back(make(Tok::Newline, "\\n"));
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      const std::size_t line = line_, col = col_;
      auto emit = [&](Tok k, std::size_t len) {
        out.push_back(Token{k, std::string(text_.substr(pos_, len)), line, col});
        for (std::size_t i = 0; i < len; ++i) advance();
      };
      auto next_is = [&](std::size_t off, char ch) {
        return pos_ + off < text_.size() && text_[pos_ + off] == ch;
      };
      switch (c) {
        case '(': ++depth; emit(Tok::LParen, 1); continue;
        case ')': --depth; emit(Tok::RParen, 1); continue;
        case '{': ++depth; emit(Tok::LBrace, 1); continue;
        case '}': --depth; emit(Tok::RBrace, 1); continue;
        case '|': emit(Tok::Bar, 1); continue;
        case '?': emit(Tok::Question, 1); continue;
        case '*': emit(Tok::Star, 1); continue;
        case '^': emit(Tok::Up, 1); continue;
        case '!': emit(Tok::Down, 1); continue;
        case '%':
          if (next_is(1, '^')) { emit(Tok::MUp, 2); continue; }
          if (next_is(1, '!')) { emit(Tok::MDown, 2); continue; }
          throw GrammarSyntaxError(line, col, "expected %^ or %!");
        case '~':
          if (next_is(1, '=')) { emit(Tok::Neq, 2); continue; }
          throw GrammarSyntaxError(line, col, "expected ~=");
        case '=':
          if (next_is(1, 'c') &&
              !(pos_ + 2 < text_.size() &&
                (std::isalnum(static_cast<unsigned char>(text_[pos_ + 2])) || text_[pos_ + 2] == '_'))) {
            emit(Tok::EqC, 2);
            continue;
          }
          emit(Tok::Eq, 1);
          continue;
        case '\'': {
          const std::size_t end = text_.find('\'', pos_ + 1);
          if (end == std::string_view::npos || text_.substr(pos_, end - pos_).find('\n') != std::string_view::npos)
            throw GrammarSyntaxError(line, col, "unterminated semantic form");
          emit(Tok::Semantic, end - pos_ + 1);
          continue;
        }
        default: break;
      }
      if (c == '-' && next_is(1, '>')) {
        emit(Tok::Arrow, 2);
        continue;
      }
      if (ident_char(static_cast<unsigned char>(c))) {
        std::size_t len = 0;
        while (pos_ + len < text_.size() && ident_char(static_cast<unsigned char>(text_[pos_ + len]))) {
          if (text_[pos_ + len] == '-' && pos_ + len + 1 < text_.size() && text_[pos_ + len + 1] == '>')
            break;
          ++len;
        }
        emit(Tok::Ident, len);
        continue;
      }
      throw GrammarSyntaxError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(make(Tok::Newline, "\\n"));
    out.push_back(make(Tok::End, ""));
    return out;
  }

 private:
  Token make(Tok k, std::string text) const { return Token{k, std::move(text), line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool mentions_f_projection(const ConstraintList& list) {
  for (const auto& c : list) {
    if (c.kind == ConstraintKind::Disjunction) {
      for (const auto& d : c.disjuncts)
        if (mentions_f_projection(d)) return true;
      continue;
    }
    if (c.lhs.projection == Projection::F) return true;
    if (const auto* p = std::get_if<PathExpr>(&c.rhs); p && p->projection == Projection::F) return true;
  }
  return false;
}

PathExpr anchor_path(Projection p, Anchor a) { return PathExpr{p, a, {}}; }

// Unannotated elements are heads on both projections; an element with only
// m-projection annotations is still an f-structure head.
void apply_defaults(RuleElement& element) {
  if (element.annotation.empty()) {
    element.annotation.push_back(Constraint::define(anchor_path(Projection::F, Anchor::Up),
                                                    anchor_path(Projection::F, Anchor::Down)));
    element.annotation.push_back(Constraint::define(anchor_path(Projection::M, Anchor::Up),
                                                    anchor_path(Projection::M, Anchor::Down)));
    return;
  }
  if (!mentions_f_projection(element.annotation)) {
    element.annotation.insert(element.annotation.begin(),
                              Constraint::define(anchor_path(Projection::F, Anchor::Up),
                                                 anchor_path(Projection::F, Anchor::Down)));
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Grammar run() {
    Grammar g;
    bool saw_gf = false;
    while (peek().kind != Tok::End) {
      if (accept(Tok::Newline)) continue;
      const Token& kw = expect(Tok::Ident, "expected a statement keyword");
      if (kw.text == "gf") {
        if (!saw_gf) g.functions.clear();
        saw_gf = true;
        while (peek().kind == Tok::Ident) g.functions.push_back(next().text);
        if (g.functions.empty()) error(kw, "gf needs at least one function");
      } else if (kw.text == "start") {
        g.start = expect(Tok::Ident, "expected start category").text;
      } else if (kw.text == "depth") {
        const Token& t = expect(Tok::Ident, "expected a depth");
        if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), ::isdigit))
          error(t, "depth must be a non-negative integer");
        g.depth = std::stoi(t.text);
      } else if (kw.text == "rule") {
        g.rules.push_back(rule());
      } else if (kw.text == "lex") {
        g.add_entry(lex());
      } else {
        error(kw, "unknown statement '" + kw.text + "'");
      }
      if (peek().kind != Tok::End) expect(Tok::Newline, "expected end of line");
    }
    return g;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void error(const Token& at, const std::string& message) const {
    throw GrammarSyntaxError(at.line, at.column, message);
  }
  const Token& expect(Tok k, const std::string& message) {
    if (peek().kind != k) error(peek(), message);
    return next();
  }

  Rule rule() {
    Rule r;
    r.lhs = expect(Tok::Ident, "expected rule category").text;
    expect(Tok::Arrow, "expected '->'");
    while (peek().kind == Tok::Ident || peek().kind == Tok::LParen) r.rhs.push_back(slot());
    if (r.rhs.empty()) error(peek(), "empty rule body");
    return r;
  }

  RuleSlot slot() {
    RuleSlot s;
    if (accept(Tok::LParen)) {
      s.alternatives.push_back(element(false));
      while (accept(Tok::Bar)) s.alternatives.push_back(element(false));
      expect(Tok::RParen, "expected ')' closing the alternation");
      s.optional = accept(Tok::Question);
      return s;
    }
    bool optional = false;
    s.alternatives.push_back(element(true, &optional));
    s.optional = optional;
    return s;
  }

  RuleElement element(bool allow_optional, bool* optional = nullptr) {
    RuleElement e;
    e.category = expect(Tok::Ident, "expected a category").text;
    if (allow_optional && accept(Tok::Question)) *optional = true;
    if (peek().kind == Tok::LBrace) e.annotation = block();
    apply_defaults(e);
    return e;
  }

  LexEntry lex() {
    LexEntry e;
    e.form = expect(Tok::Ident, "expected a word form").text;
    e.category = expect(Tok::Ident, "expected a category").text;
    if (peek().kind == Tok::LBrace) e.constraints = block();
    return e;
  }

  // `{ c ... }` as a plain constraint list.
  ConstraintList block() {
    expect(Tok::LBrace, "expected '{'");
    ConstraintList out = constraints_until({Tok::RBrace});
    expect(Tok::RBrace, "expected '}'");
    return out;
  }

  ConstraintList constraints_until(std::initializer_list<Tok> stops) {
    ConstraintList out;
    while (std::find(stops.begin(), stops.end(), peek().kind) == stops.end()) out.push_back(constraint());
    return out;
  }

  Constraint constraint() {
    if (accept(Tok::LBrace)) {
      std::vector<ConstraintList> branches;
      const Token& open = toks_[pos_ - 1];
      branches.push_back(constraints_until({Tok::Bar, Tok::RBrace}));
      while (accept(Tok::Bar)) branches.push_back(constraints_until({Tok::Bar, Tok::RBrace}));
      expect(Tok::RBrace, "expected '}' closing the disjunction");
      for (const auto& b : branches)
        if (b.empty()) error(open, "empty disjunct");
      return Constraint::disjunction(std::move(branches));
    }
    PathExpr lhs = path();
    const Token& op = next();
    Constraint::Rhs rhs = right_side();
    switch (op.kind) {
      case Tok::Eq: return Constraint::define(std::move(lhs), std::move(rhs));
      case Tok::EqC: return Constraint::constrain(std::move(lhs), std::move(rhs));
      case Tok::Neq: return Constraint::negate(std::move(lhs), std::move(rhs));
      default: error(op, "expected '=', '=c' or '~='");
    }
  }

  Constraint::Rhs right_side() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: return Atom{next().text};
      case Tok::Semantic: return semantic(next());
      case Tok::LParen:
      case Tok::Up:
      case Tok::Down:
      case Tok::MUp:
      case Tok::MDown: return path();
      default: error(t, "expected a value or a path");
    }
  }

  SemanticForm semantic(const Token& t) {
    const std::string body = t.text.substr(1, t.text.size() - 2);
    SemanticForm form;
    auto split = [&](const std::string& s) {
      std::vector<std::string> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        if (!is_governable(item)) error(t, "'" + item + "' is not a governable function");
        out.push_back(item);
      }
      return out;
    };
    const std::size_t open = body.find('<');
    if (open == std::string::npos) {
      form.lemma = body;
    } else {
      const std::size_t close = body.find('>', open);
      if (close == std::string::npos) error(t, "missing '>' in semantic form");
      form.lemma = body.substr(0, open);
      form.subcat = split(body.substr(open + 1, close - open - 1));
      form.nonthematic = split(body.substr(close + 1));
    }
    if (form.lemma.empty()) error(t, "semantic form without lemma");
    return form;
  }

  static std::optional<std::pair<Projection, Anchor>> anchor_of(Tok k) {
    switch (k) {
      case Tok::Up: return std::pair{Projection::F, Anchor::Up};
      case Tok::Down: return std::pair{Projection::F, Anchor::Down};
      case Tok::MUp: return std::pair{Projection::M, Anchor::Up};
      case Tok::MDown: return std::pair{Projection::M, Anchor::Down};
      default: return std::nullopt;
    }
  }

  PathExpr path() {
    if (auto a = anchor_of(peek().kind)) {
      next();
      return PathExpr{a->first, a->second, {}};
    }
    const Token& open = expect(Tok::LParen, "expected a path");
    std::string text = "(";
    auto a = anchor_of(peek().kind);
    if (!a) {
      // Collect the raw text for the error message.
      while (peek().kind != Tok::RParen && peek().kind != Tok::Newline && peek().kind != Tok::End)
        text += next().text + " ";
      throw BadPath(text + ")");
    }
    text += next().text;
    PathExpr p{a->first, a->second, {}};
    int stars = 0;
    while (peek().kind == Tok::Ident) {
      const Token& t = next();
      text += " " + t.text;
      PathStep step{PathStep::Kind::Attribute, t.text};
      if (t.text == "GF") step = PathStep{PathStep::Kind::Function, ""};
      if (accept(Tok::Star)) {
        text += "*";
        if (step.kind == PathStep::Kind::Function) throw BadPath(text + ")");
        step.kind = PathStep::Kind::Star;
        ++stars;
      }
      p.steps.push_back(std::move(step));
    }
    if (peek().kind != Tok::RParen) {
      text += " " + peek().text;
      throw BadPath(text + ")");
    }
    next();
    text += ")";
    if (stars > 1) throw BadPath(text);
    if (p.projection == Projection::M && p.has_function_variable()) throw BadPath(text);
    (void)open;
    return p;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Grammar load_grammar(std::string_view text) {
  Grammar g = Parser(Lexer(text).run()).run();
  g.validate();
  return g;
}

Grammar load_grammar_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open grammar file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_grammar(buffer.str());
}

std::string to_dsl(const Grammar& grammar) {
  std::ostringstream out;
  out << "gf";
  for (const auto& f : grammar.functions) out << ' ' << f;
  out << "\nstart " << grammar.start << "\ndepth " << grammar.depth << "\n";
  auto element = [&](const RuleElement& e) {
    std::string s = e.category;
    if (!e.annotation.empty()) s += " { " + to_string(e.annotation) + " }";
    return s;
  };
  for (const auto& r : grammar.rules) {
    out << "rule " << r.lhs << " ->";
    for (const auto& slot : r.rhs) {
      if (slot.alternatives.size() == 1 && !slot.optional) {
        out << ' ' << element(slot.alternatives.front());
        continue;
      }
      if (slot.alternatives.size() == 1) {
        const auto& e = slot.alternatives.front();
        out << ' ' << e.category << '?';
        if (!e.annotation.empty()) out << " { " << to_string(e.annotation) << " }";
        continue;
      }
      out << " (";
      for (std::size_t i = 0; i < slot.alternatives.size(); ++i) {
        if (i) out << " |";
        out << ' ' << element(slot.alternatives[i]);
      }
      out << " )" << (slot.optional ? "?" : "");
    }
    out << "\n";
  }
  for (const auto& [form, list] : grammar.lexicon) {
    for (const auto& e : list) {
      out << "lex " << e.form << ' ' << e.category;
      if (!e.constraints.empty()) out << " { " << to_string(e.constraints) << " }";
      out << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Disjunctions and uncertainty

std::vector<ConstraintList> expand_disjunctions(const ConstraintList& constraints) {
  std::vector<ConstraintList> out{{}};
  for (const auto& c : constraints) {
    if (c.kind != ConstraintKind::Disjunction) {
      for (auto& conj : out) conj.push_back(c);
      continue;
    }
    std::vector<ConstraintList> next;
    for (const auto& prefix : out) {
      for (const auto& branch : c.disjuncts) {
        for (const auto& tail : expand_disjunctions(branch)) {
          ConstraintList joined = prefix;
          joined.insert(joined.end(), tail.begin(), tail.end());
          next.push_back(std::move(joined));
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<ConstraintList> expand_disjunctions(const LexEntry& entry) {
  return expand_disjunctions(entry.constraints);
}

std::vector<PathInstance> instantiate_path(const PathExpr& path, int depth,
                                           const std::vector<std::string>& functions) {
  std::vector<PathInstance> by_depth;
  const auto star = std::find_if(path.steps.begin(), path.steps.end(),
                                 [](const PathStep& s) { return s.kind == PathStep::Kind::Star; });
  if (star == path.steps.end()) {
    by_depth.push_back({PathExpr{path.projection, path.anchor, path.steps}, 0});
  } else {
    const std::size_t star_index = static_cast<std::size_t>(star - path.steps.begin());
    for (int reps = 0; reps <= depth; ++reps) {
      PathExpr p{path.projection, path.anchor, {}};
      p.steps.insert(p.steps.end(), path.steps.begin(), star);
      for (int i = 0; i < reps; ++i) p.steps.push_back({PathStep::Kind::Attribute, star->name});
      p.steps.insert(p.steps.end(), star + 1, path.steps.end());
      by_depth.push_back({std::move(p), reps > 0 ? star_index + static_cast<std::size_t>(reps) : 0});
    }
  }

  std::vector<PathInstance> out;
  for (auto& inst : by_depth) {
    std::vector<PathInstance> partial{inst};
    for (std::size_t i = 0; i < inst.path.steps.size(); ++i) {
      if (inst.path.steps[i].kind != PathStep::Kind::Function) continue;
      std::vector<PathInstance> next;
      for (const auto& p : partial) {
        for (const auto& f : functions) {
          PathInstance q = p;
          q.path.steps[i] = PathStep{PathStep::Kind::Attribute, f};
          next.push_back(std::move(q));
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

std::vector<PathExpr> instantiate_uncertainty(const PathExpr& path, int depth,
                                              const std::vector<std::string>& functions) {
  std::vector<PathExpr> out;
  for (auto& inst : instantiate_path(path, depth, functions)) out.push_back(std::move(inst.path));
  return out;
}

}  // namespace lfg
