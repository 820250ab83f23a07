#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "lorlie/algebra_io.hpp"

using namespace lorlie;

namespace {

const std::filesystem::path kFixtures = LORLIE_FIXTURES;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

}  // namespace

TEST(Cli, Usage) {
  EXPECT_EQ(run({}).code, cli::usage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::usage);
  EXPECT_EQ(run({"ricci"}).code, cli::usage);
  EXPECT_EQ(run({"ricci", fixture("h3_euclidean.json"), "--method", "sideways"}).code, cli::usage);
  EXPECT_EQ(run({"extract", fixture("worked_extension.json")}).code, cli::usage);
  EXPECT_EQ(run({"--help"}).code, cli::ok);
}

TEST(Cli, ParseErrors) {
  for (const char* name : {"malformed.json", "bad_index.json", "bad_rational.json", "degenerate_metric.json"}) {
    const auto r = run({"classify", fixture(std::string("invalid/") + name)});
    EXPECT_EQ(r.code, cli::parse_error) << name;
    EXPECT_NE(r.err.find("error:"), std::string::npos);
  }
  EXPECT_EQ(run({"classify", fixture("no_such_file.json")}).code, cli::parse_error);
}

TEST(Cli, NotALieAlgebra) {
  const auto r = run({"classify", fixture("invalid/not_lie.json")});
  EXPECT_EQ(r.code, cli::not_a_lie_algebra);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, Classify) {
  const auto r = run({"classify", fixture("h3_euclidean.json")});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  const Json j = parse_json(r.out);
  EXPECT_TRUE(j["flags"]["nilpotent"].get<bool>());
  EXPECT_FALSE(j["flags"]["abelian"].get<bool>());
  EXPECT_EQ(j["witnesses"]["center_dim"].get<int>(), 1);
}

TEST(Cli, RicciBothRoutes) {
  const auto r = run({"ricci", fixture("affine_line.json")});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  const Json j = parse_json(r.out);
  EXPECT_EQ(j["einstein_lambda"], Json("-1"));
  EXPECT_EQ(run({"ricci", fixture("h3_float.json"), "--method", "direct"}).code, cli::ok);
  EXPECT_EQ(run({"ricci", fixture("sl2.json")}).code, cli::parse_error);
}

TEST(Cli, DextendMatchesFixture) {
  const auto r = run({"dextend", fixture("worked_params.json")});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  Json j = parse_json(r.out);
  EXPECT_TRUE(j["report"]["ricci_flat"].get<bool>());
  j.erase("report");
  EXPECT_EQ(j, load_json(fixture("worked_extension.json")));
}

TEST(Cli, Extract) {
  const auto r = run({"extract", fixture("worked_extension.json"), "--mode", "derived_degenerate"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  EXPECT_TRUE(parse_json(r.out)["report"]["round_trip"].get<bool>());
  EXPECT_EQ(run({"extract", fixture("h3_euclidean.json"), "--mode", "center_degenerate"}).code,
            cli::hypothesis_failed);
  EXPECT_EQ(run({"extract", fixture("h3_float.json"), "--mode", "center_degenerate"}).code, cli::hypothesis_failed);
}

TEST(Cli, SearchIsDeterministic) {
  const auto a = run({"search", "--seed", "7", "--samples", "4", "--dim", "3"});
  const auto b = run({"search", "--seed", "7", "--samples", "4", "--dim", "3", "--threads", "2"});
  ASSERT_EQ(a.code, cli::ok) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json j = parse_json(a.out);
  const auto stored = load_json(fixture("search_extension.json"));
  bool found = false;
  for (const auto& c : j["certificates"]) found = found || c["algebra"] == stored;
  EXPECT_TRUE(found);
}

TEST(Cli, SearchRequiresSeedInCi) {
  ::setenv("LORLIE_CI", "1", 1);
  EXPECT_EQ(run({"search", "--samples", "1"}).code, cli::usage);
  ::unsetenv("LORLIE_CI");
}

TEST(Cli, VerifyFixtures) {
  for (const char* name : {"h3_euclidean.json", "h3_float.json", "abelian_lorentzian.json", "affine_line.json",
                           "euclidean_motions.json", "flat_center.json", "sl2.json", "worked_extension.json",
                           "search_extension.json"}) {
    const auto r = run({"verify", fixture(name)});
    EXPECT_EQ(r.code, cli::ok) << name << "\n" << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL "), std::string::npos) << name;
  }
}

TEST(Cli, VerifyJson) {
  const auto r = run({"verify", fixture("worked_extension.json"), "--json"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  const Json j = parse_json(r.out);
  EXPECT_TRUE(j.is_object() || j.is_array());
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "lorlie_cli_test.json";
  std::filesystem::remove(path);
  const auto r = run({"classify", fixture("sl2.json"), "--out", path.string()});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_FALSE(load_json(path)["flags"]["solvable"].get<bool>());
  std::filesystem::remove(path);
}
