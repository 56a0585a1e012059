#include <doctest.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "wcop/space.hpp"

using namespace wcop;

TEST_CASE("parse and label") {
  CHECK(SpaceSpec::parse("hardy") == SpaceSpec::hardy());
  CHECK(SpaceSpec::parse("bergman:0") == SpaceSpec::bergman(0.0));
  CHECK(SpaceSpec::parse("bergman:2.5").alpha() == 2.5);
  CHECK(SpaceSpec::hardy().label() == "hardy");
  CHECK(SpaceSpec::bergman(1.0).label() == "bergman:1");
  CHECK(SpaceSpec::hardy().gamma() == 1.0);
  CHECK(SpaceSpec::bergman(0.0).gamma() == 2.0);
  CHECK_THROWS_AS(SpaceSpec::parse("dirichlet"), InvalidInput);
  CHECK_THROWS_AS(SpaceSpec::parse("bergman:x"), InvalidInput);
  CHECK_THROWS_AS(SpaceSpec::parse("bergman:1x"), InvalidInput);
  CHECK_THROWS_AS(SpaceSpec::bergman(-1.0), InvalidInput);
}

TEST_CASE("basis norms match Gamma-function oracle") {
  for (double alpha : {0.0, 1.0, 2.5, -0.5}) {
    const BasisNorms b(SpaceSpec::bergman(alpha), 300);
    for (int n = 0; n <= 300; n += 7) {
      CAPTURE(alpha);
      CAPTURE(n);
      CHECK(b.norm_sq(n) == doctest::Approx(oracle::norm_sq(alpha, n)).epsilon(1e-12));
      CHECK(b.norm(n) * b.norm(n) == doctest::Approx(b.norm_sq(n)).epsilon(1e-14));
    }
  }
  const BasisNorms h(SpaceSpec::hardy(), 10);
  for (int n = 0; n <= 10; ++n) CHECK(h.norm(n) == 1.0);
  CHECK(basis_norm_sq(SpaceSpec::bergman(0.0), 3) == doctest::Approx(0.25));
  CHECK_THROWS_AS(basis_norm_sq(SpaceSpec::hardy(), -1), InvalidInput);
}

TEST_CASE("property: kernel consistency") {
  // ||K_w||^2 from the series equals the closed form (1 - |w|^2)^(-gamma).
  for (const SpaceSpec& sp : {SpaceSpec::hardy(), SpaceSpec::bergman(0.0), SpaceSpec::bergman(1.0), SpaceSpec::bergman(2.5)}) {
    for (double r : {0.0, 0.3, 0.6, 0.8}) {
      for (double th : {0.0, 1.0, 2.0, 4.0}) {
        const cplx w = std::polar(r, th);
        const PowerSeries k = taylor(kernel_expr(sp, w), 200);
        const double closed = std::pow(1.0 - r * r, -sp.gamma());
        CAPTURE(sp.label());
        CAPTURE(r);
        CHECK(series_norm(k, sp) * series_norm(k, sp) == doctest::Approx(closed).epsilon(1e-10));
        CHECK(kernel_norm_sq(sp, w) == doctest::Approx(closed).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("property: reproducing property") {
  const AnalyticExpr f = AnalyticExpr::product({AnalyticExpr::exp(AnalyticExpr::z()), AnalyticExpr::poly({1.0, -2.0, 0.5})});
  const PowerSeries fs = taylor(f, 200);
  for (const SpaceSpec& sp : {SpaceSpec::hardy(), SpaceSpec::bergman(0.0), SpaceSpec::bergman(2.5)}) {
    for (cplx w : {cplx{0.0}, cplx{0.5, 0.2}, cplx{-0.7, 0.1}}) {
      const cplx ip = series_inner(fs, taylor(kernel_expr(sp, w), 200), sp);
      CHECK(std::abs(ip - f.evaluate(w)) <= 1e-10);
    }
  }
}

TEST_CASE("kernel domain") {
  CHECK_THROWS_AS(kernel_expr(SpaceSpec::hardy(), 1.0), InvalidInput);
  CHECK_THROWS_AS(kernel_norm_sq(SpaceSpec::hardy(), {0.8, 0.8}), InvalidInput);
}

TEST_CASE("inner product is conjugate symmetric") {
  const PowerSeries f(std::vector<cplx>{1.0, {0.0, 1.0}, 2.0});
  const PowerSeries g(std::vector<cplx>{{0.5, 0.5}, 1.0, -1.0});
  const SpaceSpec sp = SpaceSpec::bergman(1.0);
  CHECK(std::abs(series_inner(f, g, sp) - std::conj(series_inner(g, f, sp))) < 1e-15);
  CHECK(std::abs(series_inner(f, f, sp) - series_norm(f, sp) * series_norm(f, sp)) < 1e-14);
}

TEST_CASE("space json") {
  for (const SpaceSpec& sp : {SpaceSpec::hardy(), SpaceSpec::bergman(0.0), SpaceSpec::bergman(2.5)})
    CHECK(space_from_json(nlohmann::json(sp)) == sp);
  CHECK(nlohmann::json(SpaceSpec::hardy()) == nlohmann::json::parse(R"({"kind":"hardy"})"));
  CHECK_THROWS_AS(space_from_json(nlohmann::json::parse(R"({"kind":"bergman"})")), InvalidInput);
  CHECK_THROWS_AS(space_from_json(nlohmann::json::parse(R"({"kind":"fock"})")), InvalidInput);
  CHECK_THROWS_AS(space_from_json(nlohmann::json(3)), InvalidInput);
}
