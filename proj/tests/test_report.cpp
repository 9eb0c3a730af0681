#include <cstdlib>
#include <filesystem>

#include <gtest/gtest.h>
#include <json.hpp>

#include "air/report.hpp"
#include "support.hpp"

using namespace air;
using Json = nlohmann::json;

namespace {

std::string fixture(const std::string& file) { return (std::filesystem::path(AIR_TABLES_DIR) / file).string(); }

RunConfig json_config() {
  RunConfig cfg;
  cfg.format = OutputFormat::Json;
  return cfg;
}

CommandResult check_file(const std::string& file, RunConfig cfg = json_config()) {
  cfg.inputs = {fixture(file)};
  return cmd_check(cfg);
}

void expect_schema(const Json& j) {
  for (const char* key : {"name", "field", "dim", "air", "method", "witnesses", "witnesses_total",
                          "witnesses_truncated", "counterexample", "conditions", "condition_b", "expected_air",
                          "match", "notes", "options"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["name"].is_string());
  EXPECT_TRUE(j["dim"].is_number_unsigned());
  EXPECT_TRUE(j["air"].is_boolean() || j["air"] == "undecided");
  EXPECT_TRUE(j["witnesses"].is_array());
  for (const auto& w : j["witnesses"]) {
    EXPECT_TRUE(w["x"].is_string());
    EXPECT_TRUE(w["e"].is_string());
  }
  EXPECT_TRUE(j["counterexample"].is_null() || j["counterexample"].is_string());
  EXPECT_TRUE(j["conditions"].is_object());
  for (const auto& [id, v] : j["conditions"].items()) {
    EXPECT_TRUE(v == "pass" || v == "fail" || v == "undetermined") << id;
  }
  EXPECT_TRUE(j["match"].is_null() || j["match"].is_boolean());
}

}  // namespace

TEST(Check, A22ViaCriteria) {
  const auto r = check_file("a2_2.alg");
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  const auto j = Json::parse(r.output);
  expect_schema(j);
  EXPECT_EQ(j["air"], true);
  EXPECT_EQ(j["method"], "thm_codim1");
  EXPECT_EQ(j["match"], true);
}

TEST(Check, A21BruteForceOverF5) {
  RunConfig cfg = json_config();
  cfg.method = Method::BruteForce;
  cfg.field = FieldDesc::prime(5);
  const auto r = check_file("a2_1.alg", cfg);
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  const auto j = Json::parse(r.output);
  expect_schema(j);
  EXPECT_EQ(j["air"], false);
  EXPECT_EQ(j["counterexample"], "0");
  EXPECT_EQ(j["field"], "F5");
  EXPECT_TRUE(j["condition_b"].is_object());
}

TEST(Check, UndecidedOverRationals) {
  const auto r = check_text(serialize(matrix_algebra(2)), "m2.alg", json_config());
  EXPECT_EQ(r.exit_code, kExitUndecided);
  EXPECT_EQ(Json::parse(r.output)["air"], "undecided");
}

TEST(Check, ExpectationMismatchExitCode) {
  auto spec = airtest::table_row("A2_2");
  spec.expected_air = false;
  const auto r = check_text(serialize(spec), "flip.alg", json_config());
  EXPECT_EQ(r.exit_code, kExitMismatch);
  EXPECT_EQ(Json::parse(r.output)["match"], false);
}

TEST(Check, ErrorsAreLocated) {
  const auto r = check_text("algebra x over Q\nbasis a:n\nmul a a = b\n", "bad.alg", json_config());
  EXPECT_EQ(r.exit_code, kExitError);
  EXPECT_EQ(r.error.rfind("bad.alg:3:11:", 0), 0u) << r.error;
  RunConfig missing = json_config();
  missing.inputs = {"/nonexistent/file.alg"};
  EXPECT_EQ(cmd_check(missing).exit_code, kExitError);
}

TEST(Check, RejectedDecompositionIsAnError) {
  const auto r = check_text("algebra x over Q\nbasis e:n n:s\nmul e e = e\nmul e n = n\n", "dec.alg", json_config());
  EXPECT_EQ(r.exit_code, kExitError);
  EXPECT_NE(r.error.find("decomposition"), std::string::npos);
}

TEST(Check, BudgetExceededIsAnError) {
  RunConfig cfg = json_config();
  cfg.method = Method::BruteForce;
  cfg.field = FieldDesc::prime(5);
  cfg.options.budget = 10;
  EXPECT_EQ(check_file("a2_1.alg", cfg).exit_code, kExitError);
}

TEST(Check, TextAndJsonAgree) {
  for (const auto& entry : std::filesystem::directory_iterator(AIR_TABLES_DIR)) {
    for (Method m : {Method::Auto, Method::BruteForce}) {
      RunConfig cfg;
      cfg.inputs = {entry.path().string()};
      cfg.method = m;
      if (m == Method::BruteForce) cfg.field = FieldDesc::prime(5);
      const auto text = cmd_check(cfg);
      cfg.format = OutputFormat::Json;
      const auto json = cmd_check(cfg);
      ASSERT_EQ(text.exit_code, json.exit_code);
      const auto j = Json::parse(json.output);
      expect_schema(j);
      const std::string air = j["air"].is_boolean() ? (j["air"].get<bool>() ? "true" : "false") : "undecided";
      EXPECT_NE(text.output.find("air: " + air + "\n"), std::string::npos) << text.output;
      EXPECT_NE(text.output.find("method: " + j["method"].get<std::string>() + "\n"), std::string::npos);
      const std::string ce = j["counterexample"].is_null() ? "none" : j["counterexample"].get<std::string>();
      EXPECT_NE(text.output.find("counterexample: " + ce + "\n"), std::string::npos);
      for (const auto& w : j["witnesses"]) {
        EXPECT_NE(text.output.find(w["x"].get<std::string>() + " -> " + w["e"].get<std::string>()), std::string::npos);
      }
    }
  }
}

TEST(Check, WitnessesAreCapped) {
  RunConfig cfg = json_config();
  cfg.method = Method::BruteForce;
  const auto spec = example_unital_null(4, "F5");  // 3125 elements, all witnessed
  const auto r = check_text(serialize(spec), "u4.alg", cfg);
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  const auto j = Json::parse(r.output);
  EXPECT_EQ(j["witnesses"].size(), kWitnessCap);
  EXPECT_EQ(j["witnesses_total"], 3125u);
  EXPECT_EQ(j["witnesses_truncated"], true);
}

TEST(Tables, DefaultRunMatchesAllRows) {
  RunConfig cfg = json_config();
  const auto r = cmd_tables(cfg);
  EXPECT_EQ(r.exit_code, kExitOk);
  const auto j = Json::parse(r.output);
  EXPECT_EQ(j["matched"], 17u);
  EXPECT_EQ(j["total"], 17u);
  for (const auto& row : j["rows"]) {
    EXPECT_EQ(row["match"], true) << row.dump();
    const auto expected = row["expected"] == "+";
    EXPECT_EQ(row["criteria"]["air"], expected);
    EXPECT_EQ(row["bruteforce"]["F5"]["air"], expected);
    EXPECT_EQ(row["bruteforce"]["F7"]["air"], expected);
  }
}

TEST(Tables, ExtraAlphasAddRowsAndDegenerateOnesAreSkipped) {
  RunConfig cfg = json_config();
  cfg.alphas = {2, 3, 4};
  const auto r = cmd_tables(cfg);
  EXPECT_EQ(r.exit_code, kExitOk);
  const auto j = Json::parse(r.output);
  EXPECT_EQ(j["total"], 19u);
  // alpha = 4 is -1 in F5.
  EXPECT_TRUE(j["rows"][18]["bruteforce"]["F5"]["air"].is_null());
  EXPECT_EQ(j["rows"][18]["bruteforce"]["F7"]["air"], false);
}

TEST(Tables, DeterministicJson) {
  RunConfig cfg = json_config();
  EXPECT_EQ(cmd_tables(cfg).output, cmd_tables(cfg).output);
}

TEST(Tables, IntersectionReadingDivergesWithExit4) {
  RunConfig cfg;
  cfg.options.set_op = SetOp::Intersection;
  const auto r = cmd_tables(cfg);
  EXPECT_EQ(r.exit_code, kExitDivergence);
  EXPECT_NE(r.output.find("MISMATCH"), std::string::npos);
}

TEST(OracleCompare, AgreementAndEmptyRun) {
  RunConfig cfg = json_config();
  cfg.count = 40;
  cfg.primes = {5};
  const auto r = cmd_oracle_compare(cfg);
  EXPECT_EQ(r.exit_code, kExitOk) << r.output;
  const auto j = Json::parse(r.output);
  for (const auto& s : j["suites"]) {
    EXPECT_EQ(s["agree"], 40u);
    EXPECT_TRUE(s["disagreements"].empty());
  }
  cfg.count = 0;
  EXPECT_EQ(cmd_oracle_compare(cfg).exit_code, kExitOk);
}

TEST(Gen, Generators) {
  GenParams g;
  g.generator = "unital-null";
  g.n = 2;
  auto r = cmd_gen(g);
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto pa = parse_algebra(r.output);
  EXPECT_EQ(pa.algebra.dim(), 3u);
  EXPECT_TRUE(classify(pa.algebra, pa.decomposition).is_air.value_or(false));

  g.generator = "matrix";
  g.field = "F5";
  r = cmd_gen(g);
  ASSERT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(parse_algebra(r.output).algebra.field(), FieldDesc::prime(5));

  g = GenParams{};
  g.generator = "remark";
  g.name = "A2";
  r = cmd_gen(g);
  EXPECT_EQ(parse_spec(r.output), remark_algebra("A2"));

  g.generator = "nope";
  EXPECT_EQ(cmd_gen(g).exit_code, kExitError);
}

TEST(Budget, EnvironmentOverride) {
  ::setenv("AIR_BUDGET", "1234", 1);
  EXPECT_EQ(budget_from_env(), 1234u);
  ::setenv("AIR_BUDGET", "0", 1);
  EXPECT_THROW(budget_from_env(), std::invalid_argument);
  ::setenv("AIR_BUDGET", "12x", 1);
  EXPECT_THROW(budget_from_env(), std::invalid_argument);
  ::unsetenv("AIR_BUDGET");
  EXPECT_FALSE(budget_from_env().has_value());
}
