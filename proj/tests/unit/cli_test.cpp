#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polydisc/constructions.hpp"
#include "polydisc/diamgraph.hpp"
#include "polydisc/errors.hpp"
#include "polydisc_cli/app.hpp"
#include "polydisc_cli/config_file.hpp"
#include "polydisc_cli/render.hpp"

namespace fs = std::filesystem;
using namespace polydisc;
using namespace polydisc::cli;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "polydisc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("polydisc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

double field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return std::stod(line.substr(key.size() + 2));
  }
  ADD_FAILURE() << "missing " << key;
  return NAN;
}

int count_class(const boost::property_tree::ptree& node, const std::string& cls) {
  int c = 0;
  for (const auto& [name, child] : node) {
    if (name == "<xmlattr>") continue;
    if (auto a = child.get_optional<std::string>("<xmlattr>.class"); a && *a == cls) ++c;
    c += count_class(child, cls);
  }
  return c;
}

}  // namespace

TEST(ConfigFile, RoundTripIsExact) {
  ConfigFile cf;
  cf.points = {{0.1, 1.0 / 3.0}, {std::sqrt(2.0), -1e-300}, {123456.789, 5e-17}};
  cf.meta["tag"] = "x";
  const ConfigFile back = from_json_text(to_json_text(cf));
  ASSERT_EQ(back.n(), 3);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(back.points[i], cf.points[i]);
  EXPECT_EQ(back.meta["tag"], "x");
}

TEST(ConfigFile, Validation) {
  EXPECT_THROW(from_json_text("{"), InvalidInput);
  EXPECT_THROW(from_json_text(R"({"schema_version":2,"n":0,"points":[]})"), InvalidInput);
  EXPECT_THROW(from_json_text(R"({"schema_version":1,"n":2,"points":[[0,0]]})"), InvalidInput);
  EXPECT_THROW(from_json_text(R"({"schema_version":1,"n":1,"points":[[0,"a"]]})"), InvalidInput);
  EXPECT_THROW(from_json_text(R"({"schema_version":1,"n":1,"points":[[0,NaN]]})"), InvalidInput);
  EXPECT_THROW(from_json_text(R"({"schema_version":1,"n":1,"points":[[0,1e999]]})"), InvalidInput);
}

TEST(ConfigFile, SeventeenDigits) {
  const std::string s = dump_json(nlohmann::json{{"v", 0.1}});
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
}

TEST(Render, SvgIsWellFormedAndCountsMatch) {
  for (const PointConfig& z : {kite4(), hexagon6(), arc_polygon(3).P, triwave(16).z}) {
    const std::string svg = render_svg(z);
    std::istringstream in(svg);
    boost::property_tree::ptree tree;
    ASSERT_NO_THROW(boost::property_tree::read_xml(in, tree));
    EXPECT_EQ(tree.get<std::string>("svg.<xmlattr>.width"), "800");
    EXPECT_EQ(count_class(tree, "point"), static_cast<int>(z.size()));
    EXPECT_EQ(count_class(tree, "diameter"), static_cast<int>(extract(z).edges.size()));
    EXPECT_EQ(count_class(tree, "hull"), 1);
    EXPECT_EQ(count_class(tree, "guide"), 1);
  }
}

TEST(Render, CsvRoundTrip) {
  std::vector<TableRow> rows{{4, 5.6838503728697098, 1.148748315591853, std::nullopt},
                             {12, 30.073629268144305, 1.2901383629057253, 1.2901378824474363}};
  const auto back = parse_table_csv(table_csv(rows));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_FALSE(back[0].delta_bar_section4.has_value());
  EXPECT_EQ(back[1].delta_bar_section4.value(), rows[1].delta_bar_section4.value());
  EXPECT_EQ(back[1].log_delta, rows[1].log_delta);
}

TEST_F(CliTest, ConstructKiteThenEvaluate) {
  const CliRun c = invoke({"construct", "--family", "kite4", "--out", path("kite.json"), "--svg", path("kite.svg")});
  ASSERT_EQ(c.code, 0) << c.err;
  const ConfigFile cf = read_config(path("kite.json"));
  EXPECT_EQ(cf.n(), 4);
  const double stored = cf.meta["delta_bar"].get<double>();
  EXPECT_NEAR(stored, 1.148748, 1e-6);
  const CliRun e = invoke({"evaluate", path("kite.json")});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_NE(e.out.find("class: OddCycleWithPendants"), std::string::npos);
  EXPECT_LT(field(e.out, "kkt_residual"), 1e-8);
  EXPECT_NEAR(field(e.out, "delta_bar"), stored, 1e-12);
  EXPECT_TRUE(fs::exists(path("kite.svg")));
}

TEST_F(CliTest, ConstructRoundTripForEveryFamily) {
  const std::vector<std::vector<std::string>> cases{{"regular", "--n", "7"},   {"hexagon6"},
                                                     {"dodecagon12"},           {"arc", "--n", "18"},
                                                     {"sparse-arc", "--n", "24"}, {"triwave", "--n", "40"}};
  for (auto args : cases) {
    args.insert(args.begin(), {"construct", "--family"});
    args.insert(args.end(), {"--out", path("c.json")});
    const CliRun c = invoke(args);
    ASSERT_EQ(c.code, 0) << args[2] << ": " << c.err;
    const ConfigFile cf = read_config(path("c.json"));
    const CliRun e = invoke({"evaluate", path("c.json")});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_NEAR(field(e.out, "delta_bar"), cf.meta["delta_bar"].get<double>(), 1e-12) << args[2];
  }
}

TEST_F(CliTest, ConstructArcToStdout) {
  const CliRun c = invoke({"construct", "--family", "arc", "--n", "18"});
  ASSERT_EQ(c.code, 0);
  const ConfigFile cf = from_json_text(c.out);
  EXPECT_NEAR(cf.meta["delta_bar"].get<double>(), 1.283184, 1e-6);
}

TEST_F(CliTest, ConstructValidation) {
  const CliRun t = invoke({"construct", "--family", "triwave", "--n", "7"});
  EXPECT_EQ(t.code, 2);
  EXPECT_NE(t.err.find("n must be even >= 8"), std::string::npos);
  EXPECT_EQ(invoke({"construct", "--family", "nope"}).code, 2);
  EXPECT_EQ(invoke({"construct", "--family", "kite4", "--n", "5"}).code, 2);
  EXPECT_EQ(invoke({"construct", "--family", "arc", "--n", "10"}).code, 2);
  EXPECT_EQ(invoke({"construct", "--family", "triwave", "--n", "64", "--amplitude", "0.5"}).code, 4);
  EXPECT_EQ(invoke({"construct", "--family", "kite4", "--out", path("missing/dir/k.json")}).code, 3);
  EXPECT_EQ(invoke({"construct"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST_F(CliTest, EvaluateSquareIsDisconnected) {
  std::ofstream(path("sq.json")) << R"({"schema_version":1,"n":4,"points":[[1,0],[0,1],[-1,0],[0,-1]],"meta":{}})";
  const CliRun e = invoke({"evaluate", path("sq.json")});
  ASSERT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("class: Disconnected"), std::string::npos);
}

TEST_F(CliTest, EvaluateErrors) {
  std::ofstream(path("nan.json")) << R"({"schema_version":1,"n":3,"points":[[0,0],[1,NaN],[2,0]]})";
  EXPECT_EQ(invoke({"evaluate", path("nan.json")}).code, 2);
  EXPECT_EQ(invoke({"evaluate", path("absent.json")}).code, 3);
}

TEST_F(CliTest, OptimizeIsByteIdentical) {
  const std::vector<std::string> base{"optimize", "--n", "6", "--starts", "64", "--seed", "7", "--out"};
  auto a = base, b = base;
  a.push_back(path("a.json"));
  b.push_back(path("b.json"));
  ASSERT_EQ(invoke(a).code, 0);
  ASSERT_EQ(invoke(b).code, 0);
  const std::string ta = read_text(path("a.json")), tb = read_text(path("b.json"));
  EXPECT_EQ(ta, tb);
  EXPECT_NEAR(from_json_text(ta).meta["delta_bar"].get<double>(), 1.310854, 1e-5);
}

TEST_F(CliTest, OptimizeWithStarGraph) {
  const CliRun r = invoke({"optimize", "--n", "4", "--graph", "4;1-2,2-3,2-4", "--starts", "8", "--out", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const ConfigFile cf = read_config(path("s.json"));
  const bool below = cf.meta["delta_bar"].get<double>() < 16.0 * (7.0 - 4.0 * std::sqrt(3.0)) - 1e-9;
  EXPECT_TRUE(below || r.out.find("requested graph not achieved") != std::string::npos);
}

TEST_F(CliTest, OptimizeTraceAndThreadsEnv) {
  ::setenv("POLYDISC_THREADS", "2", 1);
  const CliRun r = invoke({"optimize", "--n", "5", "--starts", "4", "--out", path("o.json"), "--trace", path("t.csv")});
  ::setenv("POLYDISC_THREADS", "lots", 1);
  const CliRun bad = invoke({"optimize", "--n", "5", "--starts", "4", "--out", path("o2.json")});
  ::unsetenv("POLYDISC_THREADS");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_text(path("t.csv")).rfind("iteration,stage,mu,penalized,log_delta_bar,step\n", 0), 0u);
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(invoke({"optimize", "--n", "5", "--graph", "4;1-2"}).code, 2);
}

TEST_F(CliTest, TableCsv) {
  const CliRun r = invoke({"table", "--n", "12,18,24", "--families", "arc", "--out", path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_table_csv(read_text(path("t.csv")));
  ASSERT_EQ(rows.size(), 3u);
  const double expected[] = {1.290138, 1.283184, 1.281941};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(rows[i].delta_bar_section4.value(), expected[i], 1e-6);
    EXPECT_NEAR(rows[i].delta_bar, std::exp(rows[i].log_delta - rows[i].n * std::log(rows[i].n)), 1e-9);
  }
}

TEST_F(CliTest, TableOptimize) {
  const CliRun r = invoke({"table", "--n", "4,5", "--starts", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_table_csv(r.out);
  EXPECT_NEAR(rows[0].delta_bar, 1.148748, 1e-6);
  EXPECT_FALSE(rows[0].delta_bar_section4.has_value());
  EXPECT_EQ(invoke({"table", "--n", ""}).code, 2);
  EXPECT_EQ(invoke({"table"}).code, 2);
  EXPECT_EQ(invoke({"table", "--n", "7", "--families", "arc"}).code, 2);
}

TEST_F(CliTest, Asym) {
  const CliRun c = invoke({"asym", "Cstar"});
  ASSERT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("1.30445"), std::string::npos);
  EXPECT_NE(c.out.find("closed form"), std::string::npos);
  const CliRun v = invoke({"asym", "--converge", "1", "400"});
  ASSERT_EQ(v.code, 0);
  EXPECT_LT(field(v.out, "abs_difference"), 5e-3);
  const CliRun k = invoke({"asym", "--rk", "4", "-2"});
  ASSERT_EQ(k.code, 0);
  EXPECT_NEAR(field(k.out, "integral"), -2.0, 1e-12);
  EXPECT_EQ(invoke({"asym", "bogus"}).code, 2);
  EXPECT_EQ(invoke({"asym"}).code, 2);
  EXPECT_EQ(invoke({"asym", "--list"}).code, 0);
}

TEST_F(CliTest, KktCommand) {
  ASSERT_EQ(invoke({"construct", "--family", "kite4", "--out", path("k.json")}).code, 0);
  const CliRun k = invoke({"kkt", path("k.json")});
  ASSERT_EQ(k.code, 0);
  EXPECT_NE(k.out.find("passes: true"), std::string::npos);
}

TEST_F(CliTest, Sweep) {
  const CliRun s = invoke({"sweep", "--n", "5", "--starts", "4"});
  ASSERT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("5/cyc5"), std::string::npos);
  EXPECT_EQ(invoke({"sweep", "--n", "20"}).code, 2);
}
