#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "surprise/graph.hpp"
#include "util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out, err;
};

const std::string& cli_path() {
  static std::string p =
#ifdef SURPRISE_CLI_PATH
      SURPRISE_CLI_PATH;
#else
      std::string();
#endif
  return p;
}

const fs::path& work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("surprise_cli_test_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out_file = work_dir() / ("stdout" + std::to_string(counter));
  fs::path err_file = work_dir() / ("stderr" + std::to_string(counter));
  ++counter;
  std::string cmd = "\"" + cli_path() + "\" " + args + " > \"" +
                    out_file.string() + "\" 2> \"" + err_file.string() + "\"";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::string path_of(const char* name) { return (work_dir() / name).string(); }

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    spit(work_dir() / "tri.edges", "0 1\n0 2\n1 2\n");
    spit(work_dir() / "tri_whole.part", "0 0\n1 0\n2 0\n");
    spit(work_dir() / "tri_short.part", "0 0\n1 0\n");
    spit(work_dir() / "c5.edges", "0 1\n1 2\n2 3\n3 4\n0 4\n");
    spit(work_dir() / "c5_opt.part", "0 0\n1 0\n2 1\n3 1\n4 2\n");
    spit(work_dir() / "p5.edges", "0 1\n1 2\n2 3\n3 4\n");
    spit(work_dir() / "p3_metis.graph", "3 2\n2\n1 3\n2\n");
    spit(work_dir() / "p3_metis.part", "1 0\n2 0\n3 1\n");
    spit(work_dir() / "p3_one.edges", "1 2\n2 3\n");
    spit(work_dir() / "selfloop.edges", "1 1\n");
    spit(work_dir() / "p15.edges", surprise::serialize_edge_list(testutil::path_graph(15)));
    spit(work_dir() / "big.edges",
         surprise::serialize_edge_list(testutil::random_graph(2, 26, 0.5)));
    spit(work_dir() / "bench_list.txt",
         path_of("p5.edges") + "\n" + path_of("c5.edges") + "\n");
  }
};

}  // namespace

TEST_F(CliTest, BinaryIsConfigured) {
  ASSERT_FALSE(cli_path().empty()) << "SURPRISE_CLI_PATH not set";
  ASSERT_TRUE(fs::exists(cli_path()));
}

TEST_F(CliTest, EvalWholeTriangle) {
  auto r = run_cli("eval \"" + path_of("tri.edges") + "\" \"" +
                   path_of("tri_whole.part") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "surprise-exact/1");
  EXPECT_EQ(j["command"], "eval");
  EXPECT_EQ(j["graph"]["n"], 3);
  EXPECT_EQ(j["graph"]["m"], 3);
  EXPECT_EQ(j["graph"]["pairs"], 3);
  EXPECT_EQ(j["clustering"]["cluster_count"], 1);
  EXPECT_EQ(j["clustering"]["intra_edges"], 3);
  EXPECT_EQ(j["surprise"]["neg_log10"], "0");
  EXPECT_EQ(j["surprise"]["probability_sci"], "1.00000e+00");
}

TEST_F(CliTest, EvalCycleOptimum) {
  auto r = run_cli("eval \"" + path_of("c5.edges") + "\" \"" +
                   path_of("c5_opt.part") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  std::string nl = j["surprise"]["neg_log10"];
  EXPECT_EQ(nl.rfind("0.65321251377534", 0), 0u) << nl;
  EXPECT_EQ(j["surprise"]["probability_sci"], "2.22222e-01");
}

TEST_F(CliTest, DigitOptionsControlTheOutput) {
  auto r = run_cli("--digits 4 --sci-digits 3 eval \"" + path_of("c5.edges") +
                   "\" \"" + path_of("c5_opt.part") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["surprise"]["neg_log10"], "0.6532");
  EXPECT_EQ(j["surprise"]["probability_sci"], "2.22e-01");
}

TEST_F(CliTest, OptimizeFindsTheCycleOptimum) {
  std::string part_out = path_of("c5_best.part");
  auto r = run_cli("optimize \"" + path_of("c5.edges") + "\" --partition-out \"" +
                   part_out + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "optimize");
  EXPECT_EQ(j["config"]["variant"], "gap");
  EXPECT_EQ(j["status"], "optimal");
  std::string nl = j["best"]["surprise"]["neg_log10"];
  EXPECT_EQ(nl.rfind("0.65321251377534", 0), 0u) << nl;
  EXPECT_EQ(j["best"]["intra_edges"], 2);
  EXPECT_FALSE(j["per_k"].empty());
  long long acted = j["totals"]["solved"].get<long long>() +
                    j["totals"]["pruned_by_bound"].get<long long>() +
                    j["totals"]["pruned_infeasible"].get<long long>();
  EXPECT_EQ(acted, static_cast<long long>(j["per_k"].size()));

  // the emitted partition scores identically when fed back through eval
  auto again = run_cli("eval \"" + path_of("c5.edges") + "\" \"" + part_out + "\"");
  ASSERT_EQ(again.code, 0) << again.err;
  json j2 = json::parse(again.out);
  EXPECT_EQ(j2["surprise"]["neg_log10"], nl);
}

TEST_F(CliTest, OptimizeIsDeterministic) {
  std::string cmd = "optimize \"" + path_of("c5.edges") + "\" --variant exact";
  auto a = run_cli(cmd);
  auto b = run_cli(cmd);
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  json ja = json::parse(a.out), jb = json::parse(b.out);
  ja["totals"].erase("wall_time_s");
  jb["totals"].erase("wall_time_s");
  EXPECT_EQ(ja, jb);
}

TEST_F(CliTest, VariantsAgree) {
  std::string base = "optimize \"" + path_of("c5.edges") + "\"";
  auto exact = run_cli(base + " --variant exact");
  auto relaxed = run_cli(base + " --variant relaxed --psk --tf");
  auto gap = run_cli(base + " --variant gap --tf --emi");
  ASSERT_EQ(exact.code, 0);
  ASSERT_EQ(relaxed.code, 0);
  ASSERT_EQ(gap.code, 0);
  auto score = [](const std::string& out) {
    return json::parse(out)["best"]["surprise"]["neg_log10"].get<std::string>();
  };
  EXPECT_EQ(score(exact.out), score(relaxed.out));
  EXPECT_EQ(score(exact.out), score(gap.out));
}

TEST_F(CliTest, TreeCommandSolvesThePath) {
  auto r = run_cli("tree \"" + path_of("p5.edges") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "tree");
  EXPECT_EQ(j["removed_edges"], 1);
  std::string nl = j["best"]["surprise"]["neg_log10"];
  EXPECT_EQ(nl.rfind("0.924279286", 0), 0u) << nl;

  auto oracle = run_cli("oracle \"" + path_of("p5.edges") + "\"");
  ASSERT_EQ(oracle.code, 0);
  EXPECT_EQ(json::parse(oracle.out)["best"]["surprise"]["neg_log10"], nl);
}

TEST_F(CliTest, TreeCommandRejectsCycles) {
  auto r = run_cli("tree \"" + path_of("c5.edges") + "\"");
  EXPECT_EQ(r.code, 2);
  json err = json::parse(r.err);
  EXPECT_EQ(err["error"]["kind"], "validation");
}

TEST_F(CliTest, OracleCountsThePartitions) {
  auto r = run_cli("oracle \"" + path_of("c5.edges") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["partitions_enumerated"], 52);
  std::string nl = j["best"]["surprise"]["neg_log10"];
  EXPECT_EQ(nl.rfind("0.65321251377534", 0), 0u);
}

TEST_F(CliTest, OracleGuardsLargeInputs) {
  auto r = run_cli("oracle \"" + path_of("p15.edges") + "\"");
  EXPECT_EQ(r.code, 3);
  json err = json::parse(r.err);
  EXPECT_EQ(err["error"]["kind"], "guard");
}

TEST_F(CliTest, ExportLpWritesTheModel) {
  auto r = run_cli("export-lp \"" + path_of("tri.edges") + "\" -k 3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Minimize"), std::string::npos);
  EXPECT_NE(r.out.find(" edges: x_0_1 + x_0_2 + x_1_2 = 3"), std::string::npos);
  EXPECT_NE(r.out.find("Binary"), std::string::npos);

  auto relaxed = run_cli("export-lp \"" + path_of("tri.edges") +
                         "\" -k 2 --mode at-least --objective gap");
  ASSERT_EQ(relaxed.code, 0);
  EXPECT_NE(relaxed.out.find(">= 2"), std::string::npos);
}

TEST_F(CliTest, MetisFormatIsAccepted) {
  auto r = run_cli("--format metis eval \"" + path_of("p3_metis.graph") + "\" \"" +
                   path_of("p3_metis.part") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["graph"]["n"], 3);
  EXPECT_EQ(j["graph"]["m"], 2);
  EXPECT_EQ(j["surprise"]["neg_log10"], "0.176091259055681");
}

TEST_F(CliTest, OneBasedEdgeListsWork) {
  auto r = run_cli("--one-based eval \"" + path_of("p3_one.edges") + "\" \"" +
                   path_of("p3_metis.part") + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["surprise"]["neg_log10"], "0.176091259055681");
}

TEST_F(CliTest, MissingFileExitsTwo) {
  auto r = run_cli("eval \"" + path_of("nope.edges") + "\" \"" +
                   path_of("tri_whole.part") + "\"");
  EXPECT_EQ(r.code, 2);
  json err = json::parse(r.err);
  EXPECT_EQ(err["schema"], "surprise-exact/1");
  EXPECT_EQ(err["error"]["kind"], "validation");
}

TEST_F(CliTest, SelfLoopExitsTwoWithTheLine) {
  auto r = run_cli("eval \"" + path_of("selfloop.edges") + "\" \"" +
                   path_of("tri_whole.part") + "\"");
  EXPECT_EQ(r.code, 2);
  json err = json::parse(r.err);
  EXPECT_EQ(err["error"]["kind"], "parse");
  EXPECT_EQ(err["error"]["line"], 1);
}

TEST_F(CliTest, IncompletePartitionExitsTwo) {
  auto r = run_cli("eval \"" + path_of("tri.edges") + "\" \"" +
                   path_of("tri_short.part") + "\"");
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, UnknownOptionExitsTwo) {
  auto r = run_cli("eval --no-such-flag a b");
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, TimeLimitExitsThree) {
  auto r = run_cli("optimize \"" + path_of("big.edges") +
                   "\" --variant exact --time-limit 0.05");
  EXPECT_EQ(r.code, 3) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "bounded");
}

TEST_F(CliTest, BenchSweepsTheGrid) {
  std::string out_csv = path_of("bench.csv");
  std::string props_csv = path_of("props.csv");
  auto r = run_cli("bench \"" + path_of("bench_list.txt") + "\" --out \"" + out_csv +
                   "\" --properties-out \"" + props_csv + "\" --threads 4");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(out_csv));
  std::string line;
  ASSERT_TRUE(std::getline(csv, line));
  EXPECT_EQ(line,
            "graph,variant,psk,tf,emi,status,solved,pruned_by_bound,"
            "pruned_infeasible,nodes,neg_log10,wall_time_s");
  int rows = 0;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 40);  // two graphs, twenty configurations each

  std::string props = slurp(props_csv);
  EXPECT_NE(props.find("0.653212513775"), std::string::npos);
  EXPECT_NE(props.find("2.22222e-01"), std::string::npos);
  std::istringstream pcsv(props);
  int prop_rows = -1;  // skip header
  while (std::getline(pcsv, line))
    if (!line.empty()) ++prop_rows;
  EXPECT_EQ(prop_rows, 2);
}
