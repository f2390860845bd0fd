#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

const std::string kGame = R"({"R":3,"S":0,"T":5,"P":1})";
const std::string kQ = "[0.9,0.5,0.2,0.1]";

struct Invocation {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rgbr::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string stf2t_json() {
  json table = json::object();
  const char* p[4] = {"cc", "cd", "dc", "dd"};
  for (auto a : p)
    for (auto b : p) {
      // Opponent's own action first; defect-defect by us twice triggers punishment.
      const bool punished = a[1] == 'd' && b[1] == 'd';
      const double c = punished ? 0.1 : 0.9;
      table[std::string(a) + "," + b] = {c, 1 - c};
    }
  return json{{"k", 2}, {"actions", {"c", "d"}}, {"table", table}}.dump();
}

}  // namespace

TEST(Cli, PayoffExample) {
  const Invocation r = run({"payoff", "--p", "[1,1,1,1]", "--q", kQ, "--game", kGame});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["s_x"], 2.0);
  EXPECT_NEAR(r.j()["s_y"].get<double>(), 3.6667, 1e-4);
  EXPECT_EQ(r.j()["method"], "det");
}

TEST(Cli, PayoffBothMethods) {
  const Invocation r = run({"payoff", "--p", "[0.2,0.4,0.6,0.8]", "--q", kQ, "--game", kGame, "--method", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.j()["agree"].get<bool>());
  EXPECT_EQ(r.j()["stationary"]["s_x"], r.j()["s_x"]);
}

TEST(Cli, TwelveSignificantDigits) {
  const Invocation r = run({"payoff", "--p", "[1,1,1,1]", "--q", kQ, "--game", kGame});
  EXPECT_NE(r.out.find("3.66666666667"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("3.666666666666"), std::string::npos) << r.out;
}

TEST(Cli, PayoffRepeatRejected) {
  const Invocation r = run({"payoff", "--p", "[1,1,0,0]", "--q", kQ, "--game", kGame});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("RepeatStrategyForbidden"), std::string::npos) << r.err;
}

TEST(Cli, StrategyObjectAndFileReference) {
  const auto path = std::filesystem::temp_directory_path() / "rgbr_cli_q.json";
  std::ofstream(path) << R"({"p":[0.9,0.5,0.2,0.1],"p0":0.5})";
  const Invocation r = run({"payoff", "--p", "[1,1,1,1]", "--q", "@" + path.string(), "--game", kGame});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["s_x"], 2.0);
  std::filesystem::remove(path);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "rgbr_cli_out.json";
  const Invocation r = run({"payoff", "--p", "[1,1,1,1]", "--q", kQ, "--game", kGame, "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(json::parse(in)["s_x"], 2.0);
  std::filesystem::remove(path);
}

TEST(Cli, UnknownFlagRejected) {
  const Invocation r = run({"payoff", "--p", "[1,1,1,1]", "--q", kQ, "--game", kGame, "--bogus", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos);
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
}

TEST(Cli, MissingSubcommandOrArgument) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"payoff", "--p", "[1,1,1,1]"}).code, 1);
  EXPECT_EQ(run({"payoff", "--p", "[1,1", "--q", kQ, "--game", kGame}).code, 1);
  EXPECT_EQ(run({"payoff", "--p", "[1,1,1,1]", "--q", kQ, "--game", kGame, "--method", "lu"}).code, 1);
}

TEST(Cli, HelpExitsZero) {
  const Invocation r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("best-response"), std::string::npos);
}

TEST(Cli, BestResponse) {
  const Invocation r = run({"best-response", "--q", kQ, "--game", kGame});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.j();
  EXPECT_EQ(j["best"], json::parse("[[1.0,1.0,1.0,1.0]]"));
  EXPECT_EQ(j["value"], 2.0);
  EXPECT_EQ(j["classes"], json::parse(R"(["MisTort"])"));
  EXPECT_EQ(j["table"].size(), 11u);
  EXPECT_FALSE(j["table"].contains("12"));
}

TEST(Cli, ScatterCsv) {
  const Invocation r = run({"scatter", "--q", kQ, "--game", kGame, "--n", "50", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s_x,s_y");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 50);
}

TEST(Cli, StrictRequiresSeed) {
  EXPECT_EQ(run({"--strict", "scatter", "--q", kQ, "--game", kGame}).code, 1);
  EXPECT_EQ(run({"scatter", "--strict", "--q", kQ, "--game", kGame, "--n", "20"}).code, 1);
  EXPECT_EQ(run({"--strict", "scatter", "--q", kQ, "--game", kGame, "--n", "20", "--seed", "1"}).code, 0);
  EXPECT_EQ(run({"--strict", "payoff", "--p", "[1,1,1,1]", "--q", kQ, "--game", kGame}).code, 0);
}

TEST(Cli, MdpSolve) {
  const Invocation r = run({"mdp-solve", "--opponent", stf2t_json(), "--game", kGame, "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.j();
  EXPECT_TRUE(j["communicating"].get<bool>());
  EXPECT_EQ(j["policy"].size(), 16u);
  EXPECT_EQ(j["policy"]["dc,cd"], "d");
  EXPECT_EQ(j["policy"]["cd,dc"], "c");
  EXPECT_NEAR(j["gain"].get<double>(), 3.65, 1e-9);
}

TEST(Cli, MdpSolveMemoryMismatch) {
  const Invocation r = run({"mdp-solve", "--opponent", stf2t_json(), "--game", kGame, "--k", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("MemoryMismatch"), std::string::npos);
}

TEST(Cli, MdpSolveIncompleteTable) {
  json j = json::parse(stf2t_json());
  j["table"].erase("cc,cc");
  EXPECT_EQ(run({"mdp-solve", "--opponent", j.dump(), "--game", kGame}).code, 1);
}

TEST(Cli, Tournament) {
  const std::string pop = R"([{"p":[0.9,0.5,0.2,0.1],"count":9},{"p":[0.4,0.8,0.2,0.6],"count":1}])";
  const Invocation r = run({"tournament", "--pop", pop, "--game", kGame, "--evaluate", "[1,0.9,0,0.1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.j();
  EXPECT_EQ(j["best_pure"]["p"], json::parse("[1.0,0.0,1.0,0.0]"));
  EXPECT_NEAR(j["evaluated"]["value"].get<double>(), 2.02, 0.01);
  EXPECT_FALSE(j.contains("best_mixed"));
}

TEST(Cli, TournamentOptimize) {
  const std::string pop = R"([{"p":[0.9,0.5,0.2,0.1],"count":9},{"p":[0.4,0.8,0.2,0.6],"count":1}])";
  const Invocation r = run({"tournament", "--pop", pop, "--game", kGame, "--optimize", "--seed", "1", "--starts", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(r.j()["gap"].get<double>(), 0.05);
}

TEST(Cli, VerifyExitCodes) {
  const Invocation r = run({"verify", "--theorem", "d_negative", "--samples", "1000", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.j()["counterexample"].is_null());
  EXPECT_EQ(r.j()["samples"], 1000);
  EXPECT_EQ(run({"verify", "--theorem", "thm99", "--seed", "1"}).code, 1);
}

TEST(Cli, Simulate) {
  const Invocation r = run({"simulate", "--p", "[1,1,1,1]", "--q", kQ, "--game", kGame, "--rounds", "100000", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.j();
  EXPECT_LE(std::abs(j["mean_x"].get<double>() - 2.0), 4 * j["std_err"].get<double>());
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["rng"], "mt19937_64/u53");
}

TEST(Cli, SimulateKMemory) {
  const Invocation r = run({"simulate", "--p", "[0,0,0,0]", "--q", stf2t_json(), "--game", kGame, "--rounds", "10000", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(r.j()["mean_x"].get<double>(), 1.0);
}

TEST(Cli, OutputRoundTripsThroughInputSchema) {
  // best-response's winner feeds straight back into payoff.
  const Invocation br = run({"best-response", "--q", kQ, "--game", kGame});
  const std::string best = br.j()["best"][0].dump();
  const Invocation p = run({"payoff", "--p", best, "--q", kQ, "--game", kGame});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(p.j()["s_x"], br.j()["value"]);
}
