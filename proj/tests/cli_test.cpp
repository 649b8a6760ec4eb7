#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bousfield/classalg/expr.hpp"
#include "bousfield/cli/config.hpp"
#include "bousfield/cli/run.hpp"
#include "bousfield/errors.hpp"
#include "json.hpp"

using namespace bousfield;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  auto r = run_cli(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

// A reported witness must kill one side and survive the other, judged by the
// class algebra directly.
void expect_witnesses_verify(const json& j, const std::string& left, const std::string& right) {
  setalg::PrimeUniverse u;
  auto l = classalg::parse_class(left, u), r = classalg::parse_class(right, u);
  for (const auto& w : j.at("witness")) {
    auto obj = classalg::parse_class(w.at("object").get<std::string>(), u);
    const auto& killed = w.at("kills") == "left" ? l : r;
    const auto& survived = w.at("survives") == "left" ? l : r;
    EXPECT_TRUE(classalg::tensor_is_zero(obj, killed)) << w;
    EXPECT_FALSE(classalg::tensor_is_zero(obj, survived)) << w;
  }
}

}  // namespace

TEST(Cli, IsZeroOfComplementaryProgressions) {
  auto j = run_json({"class", "iszero", "M(ap(2,2)) * I(ap(1,2))"});
  EXPECT_EQ(j["verdict"], "zero");
  EXPECT_EQ(j["command"], "class iszero");
  ASSERT_EQ(j["certificates"].size(), 1u);
  EXPECT_NE(j["certificates"][0].get<std::string>().find("infinite"), std::string::npos);
}

TEST(Cli, IncomparableCarriesTwoWitnesses) {
  auto j = run_json({"class", "cmp", "M(pow(2))", "M(pow(3))"});
  EXPECT_EQ(j["verdict"], "incomparable");
  ASSERT_EQ(j["witness"].size(), 2u);
  expect_witnesses_verify(j, "M(pow(2))", "M(pow(3))");
}

TEST(Cli, ComparableGivesOneWitness) {
  auto j = run_json({"class", "cmp", "I(N)", "kk"});
  EXPECT_EQ(j["verdict"], "less");
  ASSERT_EQ(j["witness"].size(), 1u);
  expect_witnesses_verify(j, "I(N)", "kk");
}

TEST(Cli, HeightOfUnitIsInfinite) {
  EXPECT_EQ(run_json({"class", "height", "sphere"})["verdict"], "infinite");
  auto j = run_json({"class", "height", "T(~pow(2); empty; pow(2)) (+) T(~pow(3); empty; pow(3))"});
  EXPECT_EQ(j["verdict"], 2);
}

TEST(Cli, JsonIsByteStable) {
  std::vector<std::string> args{"class", "antichain", "6", "--extend", "3", "--json"};
  auto a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = json::parse(a.out);
  EXPECT_EQ(j["verdict"].size(), 6u);
  EXPECT_EQ(j["witness"].size(), 2u * 15 + 2u * 3);
  EXPECT_TRUE(j["timing"].is_null());
}

TEST(Cli, TimingOnlyOnRequest) {
  auto r = run_cli({"set", "eval", "pow(2) | fin{2}", "--json", "--timing"});
  EXPECT_TRUE(json::parse(r.out)["timing"].contains("seconds"));
}

TEST(Cli, SetCommands) {
  EXPECT_EQ(run_json({"set", "eval", "(ap(2,2) \\ pow(2)) | pow(2)"})["verdict"], "ap(2,2)");
  EXPECT_EQ(run_json({"set", "cmp", "pow(2)", "pow(2) | fin{5}"})["verdict"], "commensurable");
  EXPECT_EQ(run_json({"set", "cmp", "Sq(2)", "Sq(3)"})["verdict"], "incomparable");
  EXPECT_EQ(run_json({"set", "enum", "pow(3)", "--bound", "100"})["verdict"], json({3, 9, 27, 81}));
  EXPECT_EQ(run_json({"set", "enum", "pow(2)", "--count", "2"})["verdict"], json({"2", "2^2"}));
}

TEST(Cli, ClassCommands) {
  EXPECT_EQ(run_json({"class", "tensor", "M(pow(2))", "I(pow(2))"})["verdict"], "I(pow(2))");
  EXPECT_EQ(run_json({"class", "tensor", "M(ap(2,2))", "I(ap(1,2))"})["verdict"], "zero");
  EXPECT_EQ(run_json({"class", "minimal-check", "I(N)"})["verdict"], "minimum");
  EXPECT_EQ(run_json({"class", "minimal-check", "kk"})["verdict"], "above-minimum");
  EXPECT_EQ(run_json({"class", "descending-chain", "3"})["verdict"], "strictly-descending");
  auto w = run_json({"class", "witness", "M(pow(2))", "M(pow(3))"});
  EXPECT_EQ(w["verdict"], "separated");
  expect_witnesses_verify(w, "M(pow(2))", "M(pow(3))");
  EXPECT_EQ(run_json({"class", "witness", "I(N)", "kk"})["verdict"], "not-separated");
  auto d = run_json({"class", "distinguish", "M(Sq(2)) (+) M(Sq(3))", "M(Sq(2))"});
  EXPECT_EQ(d["verdict"], "distinct");
  expect_witnesses_verify(d, "M(Sq(2)) (+) M(Sq(3))", "M(Sq(2))");
  auto jc = run_json({"class", "join-cmp", "M(pow(2))", "M(pow(2)) (+) M(pow(3))"});
  EXPECT_EQ(jc["verdict"], "true");
  auto iv = run_json({"class", "interval", "empty", "pow(2) | pow(3)", "2"});
  EXPECT_EQ(iv["verdict"].size(), 2u);
}

TEST(Cli, OracleCommands) {
  auto p = run_cli({"oracle", "poincare", "--m", "2", "--smax", "6"});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out.substr(0, p.out.find('\n')), "1,2,3,4,5,6,7");
  auto t = run_json({"oracle", "tor", "k", "k", "--m", "1", "--smax", "3"});
  EXPECT_EQ(t["verdict"].size(), 4u);
  EXPECT_EQ(t["verdict"][3], json({{"s", 3}, {"d", 6}, {"dim", 1}}));
  auto e = run_json({"oracle", "ext", "k", "M{1}", "--m", "1", "--smax", "0"});
  EXPECT_EQ(e["verdict"], json::parse(R"([{"s":0,"d":2,"dim":1}])"));
  EXPECT_EQ(run_cli({"oracle", "verify", "shapiro", "--m", "3", "--smax", "4"}).code, 0);
  EXPECT_EQ(run_cli({"oracle", "verify", "triangles", "--m", "2", "--n", "3"}).code, 0);
  EXPECT_EQ(run_cli({"oracle", "verify", "duality", "--m", "2", "--smax", "4"}).code, 0);
  EXPECT_EQ(run_cli({"oracle", "verify", "socle", "--m", "3", "--n", "2,3"}).code, 0);
  auto pr = run_json({"oracle", "verify", "predicate", "ap(2,2)", "ap(1,2)", "--m", "4", "--smax", "2"});
  EXPECT_EQ(pr["verdict"], "pass");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"set", "eval", "fin{1,2"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"class", "frobnicate"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"set", "eval", "pow(4)"}).code, cli::kPrecondition);
  EXPECT_EQ(run_cli({"class", "antichain", "30"}).code, cli::kPrecondition);  // 25 primes below 97
  EXPECT_EQ(run_cli({"class", "antichain", "30", "--pmax", "200"}).code, cli::kOk);
  EXPECT_EQ(run_cli({"oracle", "tor", "E(3)", "k", "--m", "1"}).code, cli::kPrecondition);
  EXPECT_EQ(run_cli({"oracle", "tor", "Q", "k"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"oracle", "verify", "triangles", "--n", "1"}).code, cli::kPrecondition);
  EXPECT_EQ(run_cli({"class", "cmp", "M(pow(2)) (+) kk", "kk"}).code, cli::kParseError);
}

TEST(Config, FileEnvironmentAndFlags) {
  auto path = std::filesystem::temp_directory_path() / "bousfield-cli-test.ini";
  {
    std::ofstream f(path);
    f << "[ring]\nexponents = 3, 2\nexponent_tail = 4\n[sets]\npmax = 50\n[oracle]\nsmax = 3\ndmax = 20\n";
  }
  cli::Config c;
  cli::load_config_file(c, path.string());
  EXPECT_EQ(c.exponent(1), 3u);
  EXPECT_EQ(c.exponent(2), 2u);
  EXPECT_EQ(c.exponent(7), 4u);
  EXPECT_EQ(c.p_max, 50u);
  EXPECT_EQ(c.window().d_min, -20);

  ::setenv("BOUSFIELD_SMAX", "5", 1);
  cli::apply_environment(c);
  ::unsetenv("BOUSFIELD_SMAX");
  EXPECT_EQ(c.s_max, 5);

  // Command-line flags win over the file.
  auto j = run_json({"oracle", "poincare", "--config", path.string(), "--smax", "2", "--m", "2"});
  EXPECT_EQ(j["inputs"]["ring"], "p=2;x1^3@2;x2^2@4");
  EXPECT_EQ(j["verdict"], json({1, 2, 3}));
  std::filesystem::remove(path);
}

TEST(Config, ModuleGrammar) {
  auto r = homoracle::RingConfig::truncated(3, {2, 3, 2});
  EXPECT_EQ(cli::parse_module("k", r).exponents, (std::vector<unsigned>{1, 1, 1}));
  EXPECT_EQ(cli::parse_module("L", r).exponents, (std::vector<unsigned>{2, 3, 2}));
  EXPECT_EQ(cli::parse_module("M{2}", r).exponents, (std::vector<unsigned>{1, 3, 1}));
  auto i = cli::parse_module("I{1,3}[1,-2]", r);
  EXPECT_EQ(i.hshift, 1);
  EXPECT_EQ(i.tshift, -2 - 2 - 8);
  EXPECT_EQ(cli::parse_module("E(2, 2, 1)", r).exponents, (std::vector<unsigned>{2, 2, 1}));
  EXPECT_THROW(cli::parse_module("M{4}", r), PreconditionError);
  EXPECT_THROW(cli::parse_module("E(2,2)", r), PreconditionError);
  EXPECT_THROW(cli::parse_module("X", r), ParseError);
}
