#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "checks.hpp"
#include "output.hpp"
#include "runner.hpp"
#include "scenario.hpp"
#include "schema.hpp"

namespace crossmetric::runner {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kSource = CROSSMETRIC_SOURCE_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("crossmetric_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_config(const fs::path& config, const fs::path& out, std::string* err_text = nullptr,
               std::size_t jobs = 1) {
  std::ostringstream o, e;
  RunOptions opts;
  opts.config = config;
  opts.out = out;
  opts.jobs = jobs;
  const int code = run(opts, o, e);
  if (err_text) *err_text = e.str();
  return code;
}

json minimal() {
  return json::parse(R"({"name": "t", "checks": ["kernel-audit"], "length": "word",
                         "group": {"family": "z^d", "rank": 1},
                         "base": {"kind": "finite_metric", "distance": [[0.0]]}})");
}

TEST(Schema, AcceptsMinimalConfig) { EXPECT_FALSE(validate(scenario_schema(), minimal())); }

TEST(Schema, RejectsUnknownKeys) {
  json doc = minimal();
  doc["group"]["colour"] = 1;
  const auto v = validate(scenario_schema(), doc);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->path, "group.colour");
}

TEST(Schema, RejectsWrongTypesAndEnums) {
  json doc = minimal();
  doc["seed"] = "seven";
  EXPECT_EQ(validate(scenario_schema(), doc)->path, "seed");
  doc = minimal();
  doc["checks"] = {"no-such-check"};
  EXPECT_EQ(validate(scenario_schema(), doc)->path, "checks[0]");
  doc = minimal();
  doc["parities"] = {0, 2};
  EXPECT_EQ(validate(scenario_schema(), doc)->path, "parities[1]");
  doc = minimal();
  doc.erase("base");
  EXPECT_TRUE(validate(scenario_schema(), doc));
}

TEST(Schema, OneOfLength) {
  json doc = minimal();
  doc["length"] = "taxicab";
  EXPECT_TRUE(validate(scenario_schema(), doc));
  doc["length"] = {{"tabulated", "x.json"}, {"extension", "strict"}};
  EXPECT_FALSE(validate(scenario_schema(), doc));
}

TEST(Scenario, SemanticErrorsNameTheKey) {
  json doc = minimal();
  doc["radii"] = {3, 2};
  try {
    build_scenario(doc, kSource);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "radii");
  }
  doc = minimal();
  doc["base"]["distance"] = {{0.0, 1.0}, {2.0, 0.0}};
  try {
    build_scenario(doc, kSource);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "base.distance");
  }
}

TEST(Scenario, TabulatedLengthLoads) {
  const Scenario sc = load_scenario(kSource / "tests/data/tabulated.toml");
  EXPECT_EQ(sc.geometry->length().parity(), 1);
  EXPECT_EQ(sc.geometry->length()(sc.group->element({2}))(0, 0), Complex(2.0));
}

TEST(Runner, ParityMismatchExitsTwo) {
  std::string err;
  EXPECT_EQ(run_config(kSource / "tests/data/parity_mismatch.toml", scratch("parity"), &err), 2);
  EXPECT_NE(err.find("parities"), std::string::npos);
}

TEST(Runner, UnknownKeyExitsTwo) {
  std::string err;
  EXPECT_EQ(run_config(kSource / "tests/data/unknown_key.toml", scratch("unknown"), &err), 2);
  EXPECT_NE(err.find("colour"), std::string::npos);
}

TEST(Runner, ResourceCapExitsThree) {
  EXPECT_EQ(run_config(kSource / "tests/data/resource_cap.toml", scratch("cap")), 3);
  std::ostringstream o, e;
  RunOptions opts;
  opts.config = kSource / "scenarios/heisenberg_word.toml";
  opts.out = scratch("cap2");
  opts.max_ball = 50;
  EXPECT_EQ(run(opts, o, e), 3);
}

TEST(Runner, HeisenbergScenarioIsReproducible) {
  const fs::path a = scratch("heis_a"), b = scratch("heis_b");
  ASSERT_EQ(run_config(kSource / "scenarios/heisenberg_word.toml", a), 0);
  ASSERT_EQ(run_config(kSource / "scenarios/heisenberg_word.toml", b, nullptr, 3), 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
  }
  EXPECT_GE(files, 5u);
  const json table = json::parse(slurp(a / "folner-convergence.json"));
  EXPECT_TRUE(table["strictly_decreasing"].get<bool>());
  for (const char* key : {"check", "reference", "lhs", "rhs", "radius", "pass", "slack", "cases"}) {
    EXPECT_TRUE(table.contains(key)) << key;
  }
  const std::string csv = slurp(a / "folner-convergence.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,rho_hat,r,group,length");
}

TEST(Runner, FailingCheckExitsOne) {
  // A tabulated length vanishing off the identity breaks the kernel audit.
  const fs::path dir = scratch("fail_cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "zero.json") << R"({"[0]": [0], "[1]": [0], "[-1]": [0]})";
  std::ofstream(dir / "fail.toml") << R"(name = "fail"
checks = ["kernel-audit"]
radii = [2]
length = { tabulated = "zero.json", extension = "strict" }
[group]
family = "z^d"
rank = 1
[base]
kind = "finite_metric"
distance = [[0.0]]
)";
  std::string err;
  EXPECT_EQ(run_config(dir / "fail.toml", scratch("fail_out"), &err), 1);
  EXPECT_NE(err.find("kernel-audit"), std::string::npos);
}

TEST(Checks, TableCoversEverySchemaCheck) {
  const auto& names = scenario_schema()["properties"]["checks"]["items"]["enum"];
  ASSERT_EQ(names.size(), check_table().size());
  for (const auto& n : names) EXPECT_NE(find_check(n.get<std::string>()), nullptr);
  std::ostringstream o;
  list_checks(o);
  EXPECT_NE(o.str().find("berezin-contraction\t"), std::string::npos);
}

TEST(Output, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Output, AtomicWriteLeavesNoTemporary) {
  const fs::path dir = scratch("atomic");
  fs::create_directories(dir);
  write_atomic(dir / "a.txt", "hello");
  EXPECT_EQ(slurp(dir / "a.txt"), "hello");
  EXPECT_FALSE(fs::exists(dir / "a.txt.tmp"));
}

}  // namespace
}  // namespace crossmetric::runner
