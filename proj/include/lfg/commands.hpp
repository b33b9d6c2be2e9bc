#ifndef LFG_COMMANDS_HPP
#define LFG_COMMANDS_HPP

// The parse / transfer / test commands behind the `lfg` executable. Each
// returns the process exit code: 0 success, 1 no analysis (or a failing
// suite), 2 usage, load or input errors.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lfg/avm.hpp"
#include "lfg/engine.hpp"
#include "lfg/linking.hpp"

namespace lfg {

struct SuiteItem {
  std::size_t line = 0;
  std::string sentence;
  bool accept = false;
  std::size_t count = 0;              // expected analyses for ACCEPT
  std::optional<std::string> golden;  // resolved path
};

class SuiteSyntaxError : public Error {
 public:
  SuiteSyntaxError(std::size_t line, const std::string& message)
      : Error("suite line " + std::to_string(line) + ": " + message) {}
};

/// `sentence<TAB>ACCEPT n|REJECT[<TAB>golden]`, `#` comments. Golden paths
/// are resolved against `base_dir`.
std::vector<SuiteItem> parse_suite(std::string_view text, const std::string& base_dir = {});
std::vector<SuiteItem> load_suite_file(const std::string& path);

/// Output lines of one sentence in the golden-file format: per analysis
/// `c: <tree>`, `f: <avm>`, `m: <avm>`, then `t: <avm>` per transferred
/// reading when a lexicon is given.
struct Rendering {
  std::vector<std::string> lines;
  std::vector<std::string> errors;  // transfer failures, per reading
  std::size_t analyses = 0;
  std::size_t transfers = 0;
};

/// Throws on unknown tokens and lexicon errors.
Rendering render_sentence(std::string_view sentence, const Grammar& grammar, const BilingualLexicon* blex,
                          const EngineOptions& options = {});

/// Transfers one analysis: clause-level when the root PRED subcategorizes,
/// otherwise once per genitive reading. Failures are appended to `errors`.
std::vector<std::pair<LinkingReading, FeatureStructure>> transfer_analysis(const Analysis& analysis,
                                                                          const BilingualLexicon& blex,
                                                                          std::vector<std::string>& errors);

struct ParseOptions {
  std::string grammar;
  std::string sentence;
  std::string show = "c,f,m";
  std::optional<int> max_depth;
  bool diag = false;
  bool json = false;
};

struct TransferOptions {
  std::string grammar;
  std::string blex;
  std::string sentence;
  std::optional<int> max_depth;
  bool json = false;
};

struct TestOptions {
  std::string grammar;
  std::optional<std::string> blex;
  std::string suite;
  std::optional<int> max_depth;
  unsigned jobs = 0;  // 0: hardware concurrency
};

int cmd_parse(const ParseOptions& options, std::ostream& out, std::ostream& err);
int cmd_transfer(const TransferOptions& options, std::ostream& out, std::ostream& err);
int cmd_test(const TestOptions& options, std::ostream& out, std::ostream& err);

}  // namespace lfg

#endif  // LFG_COMMANDS_HPP
