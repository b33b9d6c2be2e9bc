#include "lfg/commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lfg/grammar.hpp"

namespace lfg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

EngineOptions engine_options(std::optional<int> max_depth, bool diag = false) {
  EngineOptions o;
  o.max_depth = max_depth;
  o.diagnostics = diag;
  return o;
}

bool is_nominal(const FeatureStructure& fs) {
  auto pred = fs.attr(fs.root(), "PRED");
  return pred && fs.kind(*pred) == NodeKind::Semantic && fs.semantic(*pred).subcat.empty();
}

std::vector<std::string> reading_strings(const FeatureStructure& fs) {
  std::vector<std::string> out;
  if (!is_nominal(fs)) return out;
  try {
    for (const auto& r : link_genitives(fs)) out.push_back(r.to_string());
  } catch (const Error& e) {
    out.push_back(e.what());
  }
  return out;
}

}  // namespace

std::vector<SuiteItem> parse_suite(std::string_view text, const std::string& base_dir) {
  std::vector<SuiteItem> items;
  std::size_t lineno = 0;
  for (const auto& raw : split(text, '\n')) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) throw SuiteSyntaxError(lineno, "expected 2 or 3 tab-separated fields");
    SuiteItem item;
    item.line = lineno;
    item.sentence = trim(fields[0]);
    if (item.sentence.empty()) throw SuiteSyntaxError(lineno, "empty sentence");
    std::istringstream expect(fields[1]);
    std::string verdict;
    expect >> verdict;
    if (verdict == "ACCEPT") {
      item.accept = true;
      long n = 0;
      if (!(expect >> n) || n < 1) throw SuiteSyntaxError(lineno, "ACCEPT needs a count >= 1");
      item.count = static_cast<std::size_t>(n);
    } else if (verdict != "REJECT") {
      throw SuiteSyntaxError(lineno, "expected ACCEPT n or REJECT");
    }
    if (std::string extra; expect >> extra) throw SuiteSyntaxError(lineno, "trailing text after expectation");
    if (fields.size() == 3 && !trim(fields[2]).empty()) {
      if (!item.accept) throw SuiteSyntaxError(lineno, "golden file on a REJECT item");
      std::filesystem::path p = trim(fields[2]);
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      item.golden = p.string();
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<SuiteItem> load_suite_file(const std::string& path) {
  return parse_suite(read_file(path), std::filesystem::path(path).parent_path().string());
}

std::vector<std::pair<LinkingReading, FeatureStructure>> transfer_analysis(const Analysis& analysis,
                                                                          const BilingualLexicon& blex,
                                                                          std::vector<std::string>& errors) {
  std::vector<std::pair<LinkingReading, FeatureStructure>> out;
  if (!is_nominal(analysis.fstruct)) {
    try {
      out.emplace_back(LinkingReading{}, transfer_clause(analysis.fstruct, blex));
    } catch (const Error& e) {
      errors.push_back(std::string("-: ") + e.what());
    }
    return out;
  }
  std::vector<LinkingReading> readings;
  try {
    readings = link_genitives(analysis.fstruct);
  } catch (const Error& e) {
    errors.push_back(e.what());
    return out;
  }
  for (const auto& r : readings) {
    try {
      out.emplace_back(r, transfer(analysis.fstruct, r, blex));
    } catch (const Error& e) {
      errors.push_back(r.to_string() + ": " + e.what());
    }
  }
  return out;
}

Rendering render_sentence(std::string_view sentence, const Grammar& grammar, const BilingualLexicon* blex,
                          const EngineOptions& options) {
  Rendering r;
  auto analyses = analyze(sentence, grammar, options);
  r.analyses = analyses.size();
  for (const auto& a : analyses) {
    r.lines.push_back("c: " + a.ctree.bracketed());
    r.lines.push_back("f: " + canonical_form(a.fstruct));
    r.lines.push_back("m: " + canonical_form(a.mstruct));
  }
  if (blex) {
    for (const auto& a : analyses) {
      for (const auto& [reading, target] : transfer_analysis(a, *blex, r.errors)) {
        r.lines.push_back("t: " + canonical_form(target));
        ++r.transfers;
      }
    }
  }
  return r;
}

int cmd_parse(const ParseOptions& options, std::ostream& out, std::ostream& err) {
  bool show_c = false, show_f = false, show_m = false;
  for (const auto& part : split(options.show, ',')) {
    const auto p = trim(part);
    if (p == "c") show_c = true;
    else if (p == "f") show_f = true;
    else if (p == "m") show_m = true;
    else {
      err << "error: unknown projection '" << p << "' in --show (expected c, f, m)\n";
      return 2;
    }
  }
  try {
    const Grammar grammar = load_grammar_file(options.grammar);
    const auto result = analyze_detailed(options.sentence, grammar, engine_options(options.max_depth, options.diag));
    if (options.json) {
      auto arr = nlohmann::json::array();
      for (const auto& a : result.analyses) {
        arr.push_back({{"c", a.ctree.bracketed()},
                       {"f", canonical_form(a.fstruct)},
                       {"m", canonical_form(a.mstruct)},
                       {"readings", reading_strings(a.fstruct)}});
      }
      out << arr.dump(2) << '\n';
    } else {
      for (const auto& d : result.diagnostics) out << "diag: " << d << '\n';
      const std::size_t n = result.analyses.size();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& a = result.analyses[i];
        out << "analysis " << (i + 1) << '/' << n << '\n';
        if (show_c) out << "c: " << a.ctree.bracketed() << '\n';
        if (show_f) out << "f: " << canonical_form(a.fstruct) << '\n';
        if (show_m) out << "m: " << canonical_form(a.mstruct) << '\n';
      }
      if (n == 0) {
        if (result.parse.trees.empty()) out << result.parse.no_parse_message() << '\n';
        else out << "no-analysis (" << result.parse.trees.size() << " trees, all candidates failed)\n";
      }
    }
    return result.analyses.empty() ? 1 : 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_transfer(const TransferOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const Grammar grammar = load_grammar_file(options.grammar);
    const BilingualLexicon blex = load_blex_file(options.blex);
    const auto result = analyze_detailed(options.sentence, grammar, engine_options(options.max_depth));
    if (result.analyses.empty()) {
      out << (result.parse.trees.empty() ? result.parse.no_parse_message() : std::string("no-analysis")) << '\n';
      return 1;
    }
    std::size_t transferred = 0;
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < result.analyses.size(); ++i) {
      std::vector<std::string> errors;
      auto outputs = transfer_analysis(result.analyses[i], blex, errors);
      for (const auto& [reading, target] : outputs) {
        if (options.json) {
          arr.push_back({{"analysis", i + 1}, {"reading", reading.to_string()}, {"t", canonical_form(target)}});
        } else {
          out << "analysis " << (i + 1) << " reading " << reading.to_string() << '\n';
          out << "t: " << canonical_form(target) << '\n';
        }
      }
      for (const auto& e : errors) err << "analysis " << (i + 1) << " reading " << e << '\n';
      transferred += outputs.size();
    }
    if (options.json) out << arr.dump(2) << '\n';
    return transferred == 0 ? 1 : 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

namespace {

struct ItemOutcome {
  bool pass = false;
  std::size_t got = 0;
  std::string detail;
};

std::vector<std::string> golden_lines(const std::string& path) {
  std::vector<std::string> lines;
  for (auto& line : split(read_file(path), '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

ItemOutcome run_item(const SuiteItem& item, const Grammar& grammar, const BilingualLexicon* blex,
                     const EngineOptions& options) {
  ItemOutcome o;
  try {
    const Rendering r = render_sentence(item.sentence, grammar, blex, options);
    o.got = r.analyses;
    if (!item.accept) {
      o.pass = r.analyses == 0;
      if (!o.pass) o.detail = "expected no analysis";
      return o;
    }
    if (r.analyses != item.count) {
      o.detail = "expected " + std::to_string(item.count) + " analyses";
      return o;
    }
    if (item.golden) {
      const auto expected = golden_lines(*item.golden);
      std::string kinds;
      for (const auto& l : expected) {
        if (l.size() < 3 || l[1] != ':' || l[2] != ' ') throw Error("malformed golden line in " + *item.golden);
        if (kinds.find(l[0]) == std::string::npos) kinds += l[0];
      }
      std::vector<std::string> actual;
      for (const auto& l : r.lines)
        if (kinds.find(l[0]) != std::string::npos) actual.push_back(l);
      if (actual != expected) {
        o.detail = "golden mismatch (" + *item.golden + ")";
        for (std::size_t i = 0; i < std::max(actual.size(), expected.size()); ++i) {
          const std::string a = i < actual.size() ? actual[i] : "<none>";
          const std::string e = i < expected.size() ? expected[i] : "<none>";
          if (a != e) {
            o.detail += "\n      expected " + e + "\n      got      " + a;
            break;
          }
        }
        return o;
      }
    }
    o.pass = true;
  } catch (const Error& e) {
    o.detail = e.what();
  }
  return o;
}

}  // namespace

int cmd_test(const TestOptions& options, std::ostream& out, std::ostream& err) {
  Grammar grammar;
  std::optional<BilingualLexicon> blex;
  std::vector<SuiteItem> items;
  try {
    grammar = load_grammar_file(options.grammar);
    if (options.blex) blex = load_blex_file(*options.blex);
    items = load_suite_file(options.suite);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const EngineOptions engine = engine_options(options.max_depth);
  std::vector<ItemOutcome> outcomes(items.size());
  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(items.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();)
      outcomes[i] = run_item(items[i], grammar, blex ? &*blex : nullptr, engine);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t passed = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    const auto& o = outcomes[i];
    if (o.pass) ++passed;
    std::string expect = item.accept ? "ACCEPT " + std::to_string(item.count) : "REJECT";
    out << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(4) << item.line << "  " << std::left << std::setw(9)
        << expect << std::right << "  got " << o.got << "  " << item.sentence << '\n';
    if (!o.detail.empty() && !o.pass) out << "      " << o.detail << '\n';
  }
  out << passed << '/' << items.size() << " passed\n";
  return passed == items.size() ? 0 : 1;
}

}  // namespace lfg
