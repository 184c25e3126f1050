#include "doctest.h"
#include "quasikit/report.hpp"

using namespace quasikit;

namespace {

ExperimentConfig joukowski_config(int N) {
  return ExperimentConfig::from_json(Json{{"map", {{"kind", "joukowski"}, {"t", 0.5}}}, {"N", N}});
}

}  // namespace

TEST_CASE("config parsing, overrides and validation") {
  ExperimentConfig c = joukowski_config(16);
  c.set("N=24");
  c.set("tolerances.grunsky_symmetry=1e-10");
  c.set("schedule=deep");
  CHECK(c.N() == 24);
  CHECK(c.tolerance("grunsky_symmetry", 1.0) == 1e-10);
  CHECK(c.schedule().deltas.size() == 12);
  CHECK_NOTHROW(c.validate());
  CHECK_FALSE(c.q());
  c.set("q=[3, 0.5]");
  REQUIRE(c.q());
  CHECK(*c.q() == cplx(3.0, 0.5));

  ExperimentConfig bad = joukowski_config(1);
  CHECK_THROWS_AS(bad.validate(), Error);
  ExperimentConfig neg = joukowski_config(8);
  neg.set("tolerances.jump=-1");
  CHECK_THROWS_AS(neg.validate(), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(Json{{"N", 4}}).validate(), Error);
  CHECK_THROWS_AS(map_from_json(Json{{"kind", "nonsense"}}), Error);
}

TEST_CASE("maps from JSON") {
  UnivalentMap m = map_from_json(Json{{"kind", "moebius"},
                                      {"m", {{"a", 1.0}, {"b", 0.0}, {"c", 0.2}, {"d", 1.0}}},
                                      {"base", {{"kind", "taylor"}, {"coeffs", {1.0, 0.3}}}}});
  cplx z(0.3, 0.1), f = z + 0.3 * z * z;
  CHECK(std::abs(m.eval(z) - f / (0.2 * f + 1.0)) < 1e-14);
  UnivalentMap cat = map_from_json(Json{{"kind", "catalog"}, {"name", "cubic"}});
  CHECK(cat.side() == Side::Interior);
}

TEST_CASE("classify on the identity") {
  RunReport r = run("classify", ExperimentConfig::from_json(Json{{"map", {{"kind", "identity"}}}, {"N", 16}}));
  CHECK(r.result.at("verdict") == "quasicircle");
  CHECK(r.result.at("norm_N").get<double>() < 1e-12);
  CHECK(r.passed());
  CHECK(r.tables.count("classify_trace.csv") == 1);
}

TEST_CASE("grunsky on the Joukowski map and determinism") {
  RunReport a = run("grunsky", joukowski_config(32)), b = run("grunsky", joukowski_config(32));
  CHECK(std::abs(a.result.at("norm").get<double>() - 0.5) < 1e-8);
  CHECK(a.passed());
  CHECK(a.result.dump() == b.result.dump());
  Json d = diff_reports(a.to_json(), b.to_json());
  CHECK(d.at("fields").empty());
}

TEST_CASE("report diffs") {
  ExperimentConfig lo = ExperimentConfig::from_json(Json{{"map", {{"kind", "catalog"}, {"name", "cubic"}}}, {"N", 8}});
  ExperimentConfig hi = lo;
  hi.set("N=16");
  Json a = run("grunsky", lo).to_json(), b = run("grunsky", hi).to_json();
  Json d = diff_reports(a, b);
  CHECK_FALSE(d.at("fields").empty());
  CHECK(d.at("norm_monotone_in_N").get<bool>());
  CHECK_FALSE(d.at("config_only").get<bool>());

  ExperimentConfig tol = lo;
  tol.set("tolerances.grunsky_symmetry=1e-6");
  Json c = diff_reports(a, run("grunsky", tol).to_json());
  CHECK(c.at("config_only").get<bool>());

  Json other = run("grunsky", joukowski_config(8)).to_json();
  CHECK_THROWS_AS(diff_reports(a, other), Error);
  Json cls = run("classify", lo).to_json();
  CHECK_THROWS_AS(diff_reports(a, cls), Error);
}

TEST_CASE("failing residuals set the suite exit code") {
  ExperimentConfig c = ExperimentConfig::from_json(Json{{"map", {{"kind", "catalog"}, {"name", "cubic"}}}, {"N", 8}});
  c.set("tolerances.grunsky_symmetry=1e-300");
  RunReport r = run("grunsky", c);
  CHECK_FALSE(r.passed());
  CHECK(r.exit_code() == 10 + static_cast<int>(Suite::FaberGrunsky));
  CHECK(r.to_json().at("pass") == false);
  CHECK_THROWS_AS(run("nonsense", c), Error);
}
