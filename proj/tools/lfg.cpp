#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lfg/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"LFG parser with f- and m-structure projections"};
  app.require_subcommand(1);

  lfg::ParseOptions parse;
  int parse_depth = -1;
  auto* p = app.add_subcommand("parse", "analyze a sentence and print its structures");
  p->add_option("-g,--grammar", parse.grammar, "grammar file")->required();
  p->add_option("-s,--sentence", parse.sentence, "whitespace-tokenized sentence")->required();
  p->add_option("--show", parse.show, "projections to print: c,f,m")->capture_default_str();
  p->add_option("--max-depth", parse_depth, "override the uncertainty depth bound");
  p->add_flag("--diag", parse.diag, "report why discarded candidates failed");
  p->add_flag("--json", parse.json, "machine-readable output");

  lfg::TransferOptions transfer;
  int transfer_depth = -1;
  auto* t = app.add_subcommand("transfer", "translate the f-structures of a sentence");
  t->add_option("-g,--grammar", transfer.grammar, "grammar file")->required();
  t->add_option("-x,--blex", transfer.blex, "bilingual lexicon")->required();
  t->add_option("-s,--sentence", transfer.sentence, "whitespace-tokenized sentence")->required();
  t->add_option("--max-depth", transfer_depth, "override the uncertainty depth bound");
  t->add_flag("--json", transfer.json, "machine-readable output");

  lfg::TestOptions test;
  std::string test_blex;
  int test_depth = -1;
  auto* s = app.add_subcommand("test", "run a testsuite");
  s->add_option("-g,--grammar", test.grammar, "grammar file")->required();
  s->add_option("-x,--blex", test_blex, "bilingual lexicon for t: golden lines");
  s->add_option("suite", test.suite, "suite file")->required();
  s->add_option("--max-depth", test_depth, "override the uncertainty depth bound");
  s->add_option("-j,--jobs", test.jobs, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto depth = [](int d) { return d >= 0 ? std::optional<int>(d) : std::nullopt; };
  if (*p) {
    parse.max_depth = depth(parse_depth);
    return lfg::cmd_parse(parse, std::cout, std::cerr);
  }
  if (*t) {
    transfer.max_depth = depth(transfer_depth);
    return lfg::cmd_transfer(transfer, std::cout, std::cerr);
  }
  if (!test_blex.empty()) test.blex = test_blex;
  test.max_depth = depth(test_depth);
  return lfg::cmd_test(test, std::cout, std::cerr);
}
