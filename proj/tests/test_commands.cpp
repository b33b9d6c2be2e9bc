#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lfg/commands.hpp"

using namespace lfg;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(LFG_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run parse(ParseOptions o) {
  std::ostringstream out, err;
  int code = cmd_parse(o, out, err);
  return {code, out.str(), err.str()};
}

Run transfer(TransferOptions o) {
  std::ostringstream out, err;
  int code = cmd_transfer(o, out, err);
  return {code, out.str(), err.str()};
}

Run test(TestOptions o) {
  std::ostringstream out, err;
  int code = cmd_test(o, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& content) {
  auto dir = fs::temp_directory_path() / "lfg-tests";
  fs::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << content;
  return p;
}

const std::string kEx1 = "Der Fahrer wird den Hebel gedreht haben";

}  // namespace

TEST_CASE("parse_suite") {
  auto items = parse_suite("# header\n\nDer Fahrer\tREJECT\nder Vorfall\tACCEPT 1\tgold/x.gold\n", "base");
  REQUIRE(items.size() == 2);
  CHECK(items[0].line == 3);
  CHECK_FALSE(items[0].accept);
  CHECK(items[1].accept);
  CHECK(items[1].count == 1);
  REQUIRE(items[1].golden);
  CHECK(fs::path(*items[1].golden) == fs::path("base") / "gold/x.gold");

  CHECK(parse_suite("").empty());
  CHECK_THROWS_WITH_AS(parse_suite("a\tREJECT\n\nb\tACCEPT 0\n"), doctest::Contains("suite line 3"), SuiteSyntaxError);
  CHECK_THROWS_AS(parse_suite("a\tACCEPT\n"), SuiteSyntaxError);
  CHECK_THROWS_AS(parse_suite("a\tMAYBE\n"), SuiteSyntaxError);
  CHECK_THROWS_AS(parse_suite("a\tREJECT\tx.gold\n"), SuiteSyntaxError);
  CHECK_THROWS_AS(parse_suite("just a sentence\n"), SuiteSyntaxError);
}

TEST_CASE("cmd_parse: structures and exit codes") {
  auto f = parse({data("flat.lfg"), kEx1, "f"});
  CHECK(f.code == 0);
  CHECK(f.out.find("TENSE FUTPERF") != std::string::npos);
  CHECK(f.out.find("m: ") == std::string::npos);

  auto m = parse({data("flat.lfg"), kEx1, "m"});
  CHECK(m.code == 0);
  CHECK(m.out.find("m: [ AUX + DEP [ AUX + DEP [ FIN - VFORM PERFP ] FIN - VFORM BASE ] FIN + ]") != std::string::npos);

  auto none = parse({data("flat.lfg"), "Fahrer der wird"});
  CHECK(none.code == 1);
  CHECK(none.out.find("no-parse") != std::string::npos);

  auto blocked = parse({data("flat.lfg"), kEx1 + " haben"});
  CHECK(blocked.code == 1);

  CHECK(parse({data("flat.lfg"), "Der Hund"}).code == 2);
  CHECK(parse({data("missing.lfg"), kEx1}).code == 2);
  auto bad = scratch("bad.lfg", "rule S -> \n");
  auto r = parse({bad.string(), kEx1});
  CHECK(r.code == 2);
  CHECK(r.err.find("syntax(1,") != std::string::npos);
}

TEST_CASE("cmd_parse: diagnostics and depth override") {
  ParseOptions o{data("flat.lfg"), kEx1 + " haben"};
  o.diag = true;
  auto r = parse(o);
  CHECK(r.code == 1);
  CHECK(r.out.find("diag: ") != std::string::npos);

  ParseOptions shallow{data("raising.lfg"), kEx1, "f"};
  shallow.max_depth = 0;
  CHECK(parse(shallow).code == 1);  // the object NP sits two XCOMPs down
  shallow.max_depth = 2;
  CHECK(parse(shallow).code == 0);
}

TEST_CASE("cmd_parse: json") {
  ParseOptions o{data("np.lfg"), "Roms Belagerung"};
  o.json = true;
  auto r = parse(o);
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["c"].get<std::string>().rfind("(NP", 0) == 0);
  CHECK(j[0]["f"].get<std::string>().find("PRED 'Belagerung'") != std::string::npos);
  CHECK(j[0]["m"].is_string());
  CHECK(j[0]["readings"] == nlohmann::json::array({"GEN1=AGENT", "GEN1=THEME"}));
}

TEST_CASE("cmd_transfer") {
  auto r = transfer({data("np.lfg"), data("de-en.blex"), "Karls Darstellung des Vorfalls"});
  CHECK(r.code == 0);
  CHECK(r.out.find("t: [ OBJ [ PRED 'accident' ] PRED 'report<SUBJ,OBJ>' SUBJ [ PRED 'Karl' ] ]\n") !=
        std::string::npos);

  auto two = transfer({data("np.lfg"), data("de-en.blex"), "Roms Belagerung"});
  CHECK(two.code == 0);
  std::size_t outputs = 0;
  for (std::size_t p = two.out.find("t: "); p != std::string::npos; p = two.out.find("t: ", p + 1)) ++outputs;
  CHECK(outputs == 2);

  auto partial = scratch("partial.blex", "Darstellung -> report<SUBJ,OBJ> linking: AGENT=SUBJ THEME=OBJ\nKarl -> Karl\n");
  auto missing = transfer({data("np.lfg"), partial.string(), "Karls Darstellung des Vorfalls"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("missing-translation(Vorfall)") != std::string::npos);

  auto clause = transfer({data("flat.lfg"), data("de-en.blex"), kEx1});
  CHECK(clause.code == 0);
  CHECK(clause.out.find("PRED 'turn<SUBJ,OBJ>'") != std::string::npos);
  CHECK(clause.out.find("TENSE FUTPERF") != std::string::npos);

  CHECK(transfer({data("np.lfg"), data("missing.blex"), "Karls Lachen"}).code == 2);
}

TEST_CASE("cmd_test: shipped suites pass") {
  for (const auto* name : {"flat", "raising", "np"}) {
    CAPTURE(name);
    auto r = test({data(std::string(name) + ".lfg"), data("de-en.blex"), data(std::string(name) + ".suite")});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("cmd_test: failures are reported") {
  auto suite = scratch("bad.suite", "Der Fahrer wird den Hebel gedreht haben haben\tACCEPT 1\n" + kEx1 + "\tACCEPT 1\n");
  auto r = test({data("flat.lfg"), std::nullopt, suite.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("1/2 passed") != std::string::npos);

  auto gold = scratch("wrong.gold", "f: [ TENSE FUT ]\n");
  auto mismatch = scratch("gold.suite", kEx1 + "\tACCEPT 1\twrong.gold\n");
  CHECK(test({data("flat.lfg"), std::nullopt, mismatch.string()}).code == 1);

  auto empty = scratch("empty.suite", "# nothing\n");
  auto e = test({data("flat.lfg"), std::nullopt, empty.string()});
  CHECK(e.code == 0);
  CHECK(e.out.find("0/0 passed") != std::string::npos);

  auto malformed = scratch("malformed.suite", "ok\tREJECT\nbroken line\n");
  auto m = test({data("flat.lfg"), std::nullopt, malformed.string()});
  CHECK(m.code == 2);
  CHECK(m.err.find("line 2") != std::string::npos);
}

TEST_CASE("property: output does not depend on the run or the thread count") {
  for (const auto& s : {kEx1, std::string("Der Fahrer wird den Hebel drehen")}) {
    ParseOptions o{data("flat.lfg"), s};
    CHECK(parse(o).out == parse(o).out);
  }
  TestOptions serial{data("np.lfg"), data("de-en.blex"), data("np.suite")};
  serial.jobs = 1;
  TestOptions parallel = serial;
  parallel.jobs = 8;
  CHECK(test(serial).out == test(parallel).out);
}
