#include <gtest/gtest.h>

#include "cli_harness.hpp"

using namespace chainstab;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

const char* kChainConfig = R"yaml(surface:
  volume: 2
  components:
    - chain: [-3, -2]
    - chain: [-1]
beta:
  witness: {k: [0, 1, 0], eps: 1/8}
task:
  class: "(1;f*eta-1*C1.1;1/2)"
  s: 1/2
  s_values: [1/3, 1, 7/2]
  k: [0, 1, 0]
  eps: 1/8
  window: 6
  curves: {component: 1, first: 1, last: 2, degrees: [0, 1]}
  box: {rank: 1, ch1: 1, ch2: 1}
  s_range: "0..3"
)yaml";

}  // namespace

TEST(Golden, OutputsMatchStoredFiles) {
  for (const auto& g : harness::golden_cases()) {
    const auto o = harness::run({g.command, harness::config_path(g.config).string()}, true);
    EXPECT_EQ(o.code, g.expected_code) << g.command;
    EXPECT_EQ(o.out, harness::read_file(harness::golden_path(g, "out"))) << g.command;
    EXPECT_EQ(o.csv, harness::read_file(harness::golden_path(g, "csv"))) << g.command;
  }
}

TEST(Golden, RerunsAreByteIdentical) {
  for (const auto& g : harness::golden_cases()) {
    const auto a = harness::run({g.command, harness::config_path(g.config).string()}, true);
    const auto b = harness::run({g.command, harness::config_path(g.config).string()}, true);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.csv, b.csv);
    EXPECT_EQ(a.code, b.code);
  }
}

TEST(Golden, DocumentedRows) {
  const auto beta = harness::run({"beta-check", harness::config_path("a1_half").string()});
  EXPECT_EQ(beta.code, 1);
  EXPECT_NE(beta.out.find("violation: component 1, range 1..1, value -2/1"), std::string::npos);
  const auto fund = harness::run({"fundcycle", harness::config_path("d4").string()}, true);
  EXPECT_NE(fund.out.find("delta = 2,1,1,1"), std::string::npos);
  const auto walls = harness::run({"walls", harness::config_path("walls_v2").string()}, true);
  EXPECT_NE(walls.csv.find("s^2,1/1,w,(1;1/1*f*eta+0C;1/1),"), std::string::npos);
}

TEST(Csv, RoundTripIsLossless) {
  const std::string chain = write_temp("chainstab_cli_chain.yaml", kChainConfig);
  std::vector<std::pair<std::string, std::string>> runs;
  for (const auto& g : harness::golden_cases()) runs.push_back({g.command, harness::config_path(g.config).string()});
  for (const char* cmd : {"validate", "beta-check", "witness-beta", "vanishing", "charge", "constants", "claim", "q0",
                          "q", "kernel-check", "classify", "walls"})
    runs.push_back({cmd, chain});
  for (const auto& [cmd, path] : runs) {
    const auto o = harness::run({cmd, path}, true);
    ASSERT_NE(o.code, 2) << cmd << ": " << o.err;
    ASSERT_NE(o.code, 3) << cmd << ": " << o.err;
    const auto rows = harness::parse_csv(o.csv);
    ASSERT_FALSE(rows.empty()) << cmd;
    for (const auto& row : rows) EXPECT_EQ(row.size(), rows.front().size()) << cmd;
    EXPECT_EQ(harness::first_lossy_cell(rows), "") << cmd;
    // writing the parsed rows again reproduces the file
    cli::Report r;
    r.header = rows.front();
    r.rows.assign(rows.begin() + 1, rows.end());
    std::ostringstream again;
    cli::write_csv(r, again);
    EXPECT_EQ(again.str(), o.csv) << cmd;
  }
}

TEST(ExitCodes, ErrorClasses) {
  const std::string d4 = harness::config_path("d4").string();
  EXPECT_EQ(harness::run({"validate", d4}).code, 0);
  EXPECT_EQ(harness::run({"no-such-command", d4}).code, 2);
  EXPECT_EQ(harness::run({"validate"}).code, 2);
  EXPECT_EQ(harness::run({"validate", "/nonexistent/config.yaml"}).code, 3);
  EXPECT_EQ(harness::run({"walls", harness::config_path("walls_v2").string(), "--box", "1,2"}).code, 2);
  EXPECT_EQ(harness::run({"walls", harness::config_path("walls_v2").string(), "--box", "0,0,0"}).code, 2);
  EXPECT_EQ(harness::run({"walls", harness::config_path("walls_v2").string(), "--s-range", "x..1"}).code, 2);
  // the subchain window condition and the constants do not cover D4
  EXPECT_EQ(harness::run({"constants", d4}).code, 3);
  const std::string bad = write_temp("chainstab_cli_bad.yaml", "surface:\n  volume: 1\n  components:\n    - chain: [-3, -2, -3]\n");
  // validate reports the broken component as a violation; other commands refuse the file
  const auto o = harness::run({"validate", bad});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("curve 2"), std::string::npos);
  const auto refused = harness::run({"beta-check", bad});
  EXPECT_EQ(refused.code, 3);
  EXPECT_NE(refused.err.find("component 1"), std::string::npos);
  const std::string typo = write_temp("chainstab_cli_typo.yaml", "surface:\n  volume: 1/0\n  components:\n    - chain: [-1]\n");
  const auto t = harness::run({"validate", typo});
  EXPECT_EQ(t.code, 3);
  EXPECT_NE(t.err.find(":2:"), std::string::npos) << t.err;
}

TEST(ExitCodes, ViolationsAndPreconditions) {
  const std::string text = std::string(kChainConfig);
  // (-2)-(-2) chain with beta.C = 3/4 on both curves fails the window condition
  const std::string window = write_temp("chainstab_cli_window.yaml",
                                        "surface:\n  volume: 1\n  components:\n    - chain: [-2, -2]\n"
                                        "beta:\n  products: [3/4, 3/4]\n");
  EXPECT_EQ(harness::run({"beta-check", window}).code, 1);
  EXPECT_EQ(harness::run({"constants", window}).code, 1);
  const std::string chain = write_temp("chainstab_cli_chain.yaml", text);
  EXPECT_EQ(harness::run({"beta-check", chain}).code, 0);
  EXPECT_EQ(harness::run({"claim", chain}).code, 0);
  EXPECT_EQ(harness::run({"kernel-check", chain}).code, 0);
  const auto walls = harness::run({"walls", chain, "--strict-mode"});
  EXPECT_EQ(walls.code, 0);
  EXPECT_NE(walls.out.find("strict"), std::string::npos);
}
