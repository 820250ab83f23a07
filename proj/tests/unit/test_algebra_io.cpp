#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "lorlie/algebra_io.hpp"

using namespace lorlie;
using Q = Rational;
using M = Matrix<Q>;
using V = Vector<Q>;

namespace {

const std::filesystem::path kFixtures = LORLIE_FIXTURES;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind load_error(const std::filesystem::path& p) {
  try {
    const auto f = algebra_from_json(load_json(p));
    if (const auto* q = std::get_if<AlgebraFile<Q>>(&f)) q->algebra();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << p << " loaded without error";
  return ErrorKind::cross_check_mismatch;
}

}  // namespace

TEST(AlgebraIo, HeisenbergFixture) {
  const auto any = algebra_from_json(load_json(kFixtures / "h3_euclidean.json"));
  const auto& f = std::get<AlgebraFile<Q>>(any);
  EXPECT_EQ(f.dim, 3u);
  ASSERT_TRUE(f.metric);
  EXPECT_EQ(*f.metric, M::identity(3));
  EXPECT_EQ(f.algebra(), corpus::heisenberg());
}

TEST(AlgebraIo, FloatFixture) {
  const auto any = algebra_from_json(load_json(kFixtures / "h3_float.json"));
  const auto& f = std::get<AlgebraFile<double>>(any);
  EXPECT_DOUBLE_EQ(f.algebra().constant(0, 1, 2), 1.0);
}

TEST(AlgebraIo, MetricOptional) {
  const auto any = algebra_from_json(load_json(kFixtures / "sl2.json"));
  const auto& f = std::get<AlgebraFile<Q>>(any);
  EXPECT_FALSE(f.metric);
  EXPECT_EQ(f.algebra().dim(), 3u);
  EXPECT_THROW(f.metric_algebra(), Error);
}

TEST(AlgebraIo, FixturesRoundTripByteForByte) {
  for (const char* name : {"h3_euclidean.json", "abelian_lorentzian.json", "affine_line.json", "euclidean_motions.json",
                           "flat_center.json", "sl2.json", "worked_extension.json", "search_extension.json"}) {
    const std::string text = slurp(kFixtures / name);
    const auto any = algebra_from_json(parse_json(text));
    const std::string again = std::visit([](const auto& f) { return emit(to_json(f)); }, any);
    EXPECT_EQ(again, text) << name;
  }
  for (const char* name : {"worked_params.json", "h3_base_params.json", "search_params.json"}) {
    const std::string text = slurp(kFixtures / name);
    const auto any = params_from_json(parse_json(text));
    EXPECT_EQ(std::visit([](const auto& p) { return emit(to_json(p)); }, any), text) << name;
  }
}

TEST(AlgebraIo, RandomRoundTrip) {
  for (const auto& e : corpus::random_corpus(71, 30, 5)) {
    const auto file = to_algebra_file(e.p);
    const auto back = std::get<AlgebraFile<Q>>(algebra_from_json(parse_json(emit(to_json(file)))));
    EXPECT_EQ(back.algebra(), e.p.algebra());
    EXPECT_EQ(*back.metric, e.p.metric().gram());
  }
}

TEST(AlgebraIo, ParamsRoundTrip) {
  corpus::Rng rng(72);
  for (int k = 0; k < 20; ++k) {
    const auto d = corpus::random_params(rng, k % 2 == 0, false);
    const auto back = std::get<DoubleExtensionParams<Q>>(params_from_json(parse_json(emit(to_json(d.params)))));
    EXPECT_EQ(back.K, d.params.K);
    EXPECT_EQ(back.D, d.params.D);
    EXPECT_EQ(back.mu, d.params.mu);
    EXPECT_EQ(back.b, d.params.b);
    EXPECT_EQ(back.g0.algebra(), d.params.g0.algebra());
  }
}

TEST(AlgebraIo, InvalidFiles) {
  const auto dir = kFixtures / "invalid";
  EXPECT_EQ(load_error(dir / "malformed.json"), ErrorKind::parse);
  EXPECT_EQ(load_error(dir / "bad_index.json"), ErrorKind::parse);
  EXPECT_EQ(load_error(dir / "bad_rational.json"), ErrorKind::parse);
  EXPECT_EQ(load_error(dir / "degenerate_metric.json"), ErrorKind::degenerate_metric);
  EXPECT_EQ(load_error(dir / "not_lie.json"), ErrorKind::not_a_lie_algebra);
}

TEST(AlgebraIo, SyntaxErrorHasPosition) {
  try {
    parse_json("{\n  \"dim\": 2,\n  oops\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("3:"), std::string::npos) << e.what();
  }
}

TEST(AlgebraIo, ScalarModes) {
  EXPECT_EQ(scalar_to_json(Q(-3, 4)), Json("-3/4"));
  EXPECT_EQ(scalar_to_json(Q(2)), Json("2"));
  EXPECT_EQ(scalar_to_json(0.5), Json(0.5));
  // Float numbers are rejected in exact mode.
  const Json j = {{"mode", "exact"}, {"dim", 1}, {"brackets", Json::array()}, {"metric", {{1.5}}}};
  EXPECT_THROW(algebra_from_json(j), Error);
}

TEST(AlgebraIo, DuplicateBracket) {
  const Json entry = {{"i", 1}, {"j", 2}, {"coeffs", {"0", "0"}}};
  const Json j = {{"mode", "exact"}, {"dim", 2}, {"brackets", {entry, entry}}};
  EXPECT_THROW(algebra_from_json(j), Error);
}

TEST(AlgebraIo, CertificateJson) {
  SearchConfig cfg;
  cfg.dim_g0 = 2;
  cfg.seed = 5;
  cfg.samples = 1;
  const auto r = generate(cfg);
  ASSERT_FALSE(r.certificates.empty());
  const Json j = to_json(r.certificates[0]);
  for (const char* key : {"index", "flagged", "params", "algebra", "checks"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["checks"]["jacobi"].get<bool>());
  const auto back = std::get<AlgebraFile<Q>>(algebra_from_json(j["algebra"]));
  EXPECT_EQ(back.algebra(), r.certificates[0].algebra.algebra());
}
