#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fca/cli.hpp"
#include "fca/context.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
namespace ft = fca::testing;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  std::ostringstream out, err;

  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() / (std::string("fca_cli_") + info->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  int run(std::vector<std::string> args) {
    out.str("");
    err.str("");
    return fca::cli::run(args, out, err);
  }
  std::string tmp(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_F(Cli, LatticeMatchesGolden) {
  ASSERT_EQ(run({"lattice", ft::fixture("toy.cxt"), tmp("lattice.json")}), 0) << err.str();
  EXPECT_EQ(out.str(), "concepts: 4\nedges: 4\n");
  EXPECT_EQ(slurp(tmp("lattice.json")), slurp(ft::golden("toy_lattice.json")));
  const auto manifest = json::parse(slurp(tmp("lattice.json.manifest.json")));
  EXPECT_EQ(manifest["command"], "lattice");
  EXPECT_EQ(manifest["concept_count"], 4);
  EXPECT_EQ(manifest["inputs"][0]["bytes"], fs::file_size(ft::fixture("toy.cxt")));
  EXPECT_TRUE(manifest["wall_time_ms"].contains("total"));
}

TEST_F(Cli, SmallFixtures) {
  // ∅'' = {g}, so the full 1x1 context has a single concept.
  ASSERT_EQ(run({"lattice", ft::fixture("full_1x1.cxt"), tmp("a.json")}), 0);
  EXPECT_EQ(out.str(), "concepts: 1\nedges: 0\n");
  ASSERT_EQ(run({"stability", ft::fixture("empty_2x2.cxt"), tmp("b.json")}), 0);
  EXPECT_EQ(out.str(), "concepts: 2\ncounting identity: sum of generator counts = 2^2\n");
  const auto doc = json::parse(slurp(tmp("b.json")));
  EXPECT_EQ(doc[0]["generator_count"], "1");
  EXPECT_EQ(doc[1]["generator_count"], "3");
  EXPECT_EQ(doc[1]["sigma"].get<double>(), 0.75);
}

TEST_F(Cli, StabilityMatchesGolden) {
  ASSERT_EQ(run({"stability", ft::fixture("toy.cxt"), tmp("stability.json")}), 0) << err.str();
  EXPECT_EQ(slurp(tmp("stability.json")), slurp(ft::golden("toy_stability.json")));
}

TEST_F(Cli, SelectTopStabilityMatchesGolden) {
  ASSERT_EQ(run({"select", ft::fixture("toy.cxt"), tmp("sel.dot"), tmp("sel.json"), "--top-stability", "2"}), 0)
      << err.str();
  EXPECT_EQ(slurp(tmp("sel.dot")), slurp(ft::golden("toy_top_stability_2.dot")));
  EXPECT_EQ(slurp(tmp("sel.json")), slurp(ft::golden("toy_top_stability_2.json")));
  const auto manifest = json::parse(slurp(tmp("sel.json.manifest.json")));
  EXPECT_EQ(manifest["selection_criterion"], "top_k_stability(k=2, exclude_extremes)");
}

TEST_F(Cli, SelectIceberg) {
  ASSERT_EQ(run({"select", ft::fixture("toy.cxt"), tmp("a.dot"), tmp("a.json"), "--iceberg", "0"}), 0);
  EXPECT_EQ(json::parse(slurp(tmp("a.json")))["concepts"].size(), 4u);
  ASSERT_EQ(run({"select", ft::fixture("toy.cxt"), tmp("b.dot"), tmp("b.json"), "--iceberg", "4"}), 0);
  EXPECT_EQ(json::parse(slurp(tmp("b.json")))["concepts"].size(), 0u);
  EXPECT_NE(err.str().find("warning"), std::string::npos);
}

TEST_F(Cli, SelectNeedsExactlyOneCriterion) {
  EXPECT_EQ(run({"select", ft::fixture("toy.cxt"), tmp("a.dot"), tmp("a.json")}), 2);
  EXPECT_EQ(run({"select", ft::fixture("toy.cxt"), tmp("a.dot"), tmp("a.json"), "--iceberg", "1",
                 "--top-extent", "2"}),
            2);
  EXPECT_EQ(run({"select", ft::fixture("toy.cxt"), tmp("a.dot"), tmp("a.json"), "--stability-gt", "2"}), 2);
  EXPECT_FALSE(fs::exists(tmp("a.json")));
}

TEST_F(Cli, BuildContextReproducesToyContext) {
  ASSERT_EQ(run({"build-context", ft::fixture("toy_usage.csv"), ft::fixture("toy_ingest.json"), tmp("ctx.cxt")}), 0)
      << err.str();
  EXPECT_EQ(slurp(tmp("ctx.cxt")), slurp(ft::fixture("toy.cxt")));
  const auto manifest = json::parse(slurp(tmp("ctx.cxt.manifest.json")));
  EXPECT_EQ(manifest["config"]["ingest"]["min_sessions"], 20);
  EXPECT_EQ(manifest["inputs"].size(), 2u);
}

TEST_F(Cli, BuildContextInternalWithMergeMap) {
  ASSERT_EQ(
      run({"build-context", ft::fixture("bank_internal.csv"), ft::fixture("bank_ingest.json"), tmp("bank.cxt")}), 0)
      << err.str();
  EXPECT_NE(err.str().find("bank_internal.csv:10: rejected row"), std::string::npos);
  const auto ctx = fca::read_cxt_file(tmp("bank.cxt"));
  EXPECT_EQ(ctx.num_objects(), 3u);
  EXPECT_EQ(ctx.num_attributes(), 3u);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"lattice", "/nonexistent.cxt", tmp("x.json")}), 2);
  EXPECT_EQ(run({"lattice", ft::fixture("corrupt.cxt"), tmp("x.json")}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"build-context", ft::fixture("toy_usage.csv"), ft::fixture("strict_ingest.json"), tmp("c.cxt")}), 3);
  EXPECT_EQ(run({"--max-concepts", "2", "lattice", ft::fixture("toy.cxt"), tmp("x.json")}), 4);
  EXPECT_FALSE(fs::exists(tmp("x.json")));
}

TEST_F(Cli, UnknownConfigKeyRejected) {
  std::ofstream(tmp("cfg.json")) << "{\"kind\": \"external\", \"min_session\": 3}";
  EXPECT_EQ(run({"build-context", ft::fixture("toy_usage.csv"), tmp("cfg.json"), tmp("c.cxt")}), 2);
  EXPECT_NE(err.str().find("min_session"), std::string::npos);
}

TEST_F(Cli, CompareToyContext) {
  ASSERT_EQ(run({"compare", ft::fixture("toy.cxt"), "2"}), 0) << err.str();
  EXPECT_EQ(out.str(),
            "top_k_extent(k=2): c3 c1\n"
            "top_k_stability(k=2): c0 c3\n"
            "jaccard: 0.333333333333\n"
            "common: c3\n"
            "only_top_extent: c1\n"
            "only_top_stability: c0\n");
  ASSERT_EQ(run({"compare", ft::fixture("toy.cxt"), "4"}), 0);
  EXPECT_NE(out.str().find("jaccard: 1\n"), std::string::npos);
  ASSERT_EQ(run({"compare", ft::fixture("toy.cxt"), "1"}), 0);
  EXPECT_NE(out.str().find("jaccard: 0\n"), std::string::npos);
  ASSERT_EQ(run({"compare", ft::fixture("toy.cxt"), "2", "--exclude-extremes"}), 0);
  EXPECT_NE(out.str().find("top_k_stability(k=2, exclude_extremes): c3 c1\n"), std::string::npos);
  EXPECT_NE(out.str().find("jaccard: 1\n"), std::string::npos);
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
  ASSERT_EQ(run({"--threads", "1", "lattice", ft::fixture("toy.cxt"), tmp("a.json")}), 0);
  ASSERT_EQ(run({"--threads", "4", "lattice", ft::fixture("toy.cxt"), tmp("b.json")}), 0);
  EXPECT_EQ(slurp(tmp("a.json")), slurp(tmp("b.json")));
}
