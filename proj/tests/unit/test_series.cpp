#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "wcop/series.hpp"

using namespace wcop;

namespace {

double max_dev(const PowerSeries& s, const std::vector<cplx>& ref, int upto) {
  double d = 0.0;
  for (int n = 0; n <= upto; ++n) d = std::max(d, std::abs(s[n] - ref[n]));
  return d;
}

cplx eval_poly(const std::vector<cplx>& p, cplx z) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

TEST_CASE("basic series arithmetic") {
  PowerSeries f(std::vector<cplx>{1.0, 2.0, 0.0, 0.0});
  PowerSeries g(std::vector<cplx>{0.0, 1.0, 1.0, 0.0});
  CHECK(f.effective_degree() == 1);
  CHECK(PowerSeries(3).effective_degree() == -1);
  const PowerSeries p = cauchy_product(f, g);
  CHECK(p.order() == 3);
  CHECK(p[1] == cplx(1.0));
  CHECK(p[2] == cplx(3.0));
  CHECK(p[3] == cplx(2.0));
  CHECK((f + g)[1] == cplx(3.0));
  CHECK((f - g)[2] == cplx(-1.0));
  CHECK((cplx(2.0) * f)[1] == cplx(4.0));
  CHECK(std::abs(f.evaluate(0.5) - 2.0) < 1e-15);
  CHECK(cauchy_product(f, g, 1).order() == 1);
}

TEST_CASE("Cauchy product matches naive convolution") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_poly(rng, 30), b = oracle::random_poly(rng, 30);
    const auto ref = oracle::convolve(a, b, 30);
    const PowerSeries p = cauchy_product(PowerSeries(a), PowerSeries(b));
    CHECK(max_dev(p, ref, 30) <= 1e-12);
  }
}

TEST_CASE("multiply_by_moebius matches sampled product") {
  const MoebiusMap m{1.0, 0.5, -0.5, 2.0};
  std::mt19937 rng(2);
  const auto a = oracle::random_poly(rng, 10);
  std::vector<cplx> c(64, 0.0);
  std::copy(a.begin(), a.end(), c.begin());
  multiply_by_moebius(c, m);
  const auto ref = oracle::dft_coeffs([&](cplx z) { return eval_poly(a, z) * m(z); }, 63);
  double d = 0.0;
  for (int n = 0; n < 64; ++n) d = std::max(d, std::abs(c[n] - ref[n]));
  CHECK(d <= 1e-10);
}

TEST_CASE("taylor coefficients of closed forms match DFT oracle") {
  const MoebiusMap phi{1.0, 0.0, -1.0, 2.0};
  const AnalyticExpr zz = AnalyticExpr::z();
  struct Case {
    const char* name;
    AnalyticExpr e;
    oracle::Fn f;
  };
  const Case cases[] = {
      {"rational", AnalyticExpr::rational({2.0}, {2.0, -1.0}), [](cplx z) { return 2.0 / (2.0 - z); }},
      {"exp", AnalyticExpr::exp(zz), [](cplx z) { return std::exp(z); }},
      {"power", AnalyticExpr::power(AnalyticExpr::poly({1.0, 0.5}), -2.5),
       [](cplx z) { return std::pow(1.0 + 0.5 * z, -2.5); }},
      {"power complex base", AnalyticExpr::power(AnalyticExpr::poly({{1.0, 1.0}, 0.3}), 0.7),
       [](cplx z) { return std::pow(cplx(1.0, 1.0) + 0.3 * z, 0.7); }},
      {"sum", AnalyticExpr::sum({zz, AnalyticExpr::constant(3.0)}), [](cplx z) { return z + 3.0; }},
      {"product", AnalyticExpr::product({AnalyticExpr::exp(zz), AnalyticExpr::poly({2.0, 1.0})}),
       [](cplx z) { return std::exp(z) * (2.0 + z); }},
      {"scale", AnalyticExpr::scale({0.0, 2.0}, AnalyticExpr::exp(zz)),
       [](cplx z) { return cplx(0.0, 2.0) * std::exp(z); }},
      {"precompose", AnalyticExpr::precompose(AnalyticExpr::exp(zz), phi),
       [&](cplx z) { return std::exp(phi(z)); }},
      {"precompose power", AnalyticExpr::precompose(AnalyticExpr::power(AnalyticExpr::poly({3.0, 1.0}), -1.5), phi),
       [&](cplx z) { return std::pow(3.0 + phi(z), -1.5); }},
      {"nested exp", AnalyticExpr::exp(AnalyticExpr::moebius(phi)), [&](cplx z) { return std::exp(phi(z)); }},
      {"moebius", AnalyticExpr::moebius(phi), [&](cplx z) { return phi(z); }},
  };
  for (const Case& k : cases) {
    CAPTURE(k.name);
    const PowerSeries s = taylor(k.e, 40);
    CHECK(max_dev(s, oracle::dft_coeffs(k.f, 40, 0.9), 40) <= 1e-9);
    CHECK(std::abs(k.e.evaluate({0.3, -0.2}) - k.f({0.3, -0.2})) <= 1e-12);
  }
}

TEST_CASE("exp of z/(2-z) starts 1, 1/2, 3/8") {
  const PowerSeries s = taylor(AnalyticExpr::exp(AnalyticExpr::moebius({1.0, 0.0, -1.0, 2.0})), 2);
  CHECK(std::abs(s[0] - 1.0) < 1e-15);
  CHECK(std::abs(s[1] - 0.5) < 1e-15);
  CHECK(std::abs(s[2] - 0.375) < 1e-15);
}

TEST_CASE("functional equation of exp") {
  const AnalyticExpr f = AnalyticExpr::exp(AnalyticExpr::rational({0.0, 1.0}, {2.0, -1.0}));
  const AnalyticExpr g = AnalyticExpr::exp(AnalyticExpr::rational({1.0, 2.0}, {3.0, 1.0}));
  const AnalyticExpr sum_arg = AnalyticExpr::exp(
      AnalyticExpr::sum({AnalyticExpr::rational({0.0, 1.0}, {2.0, -1.0}), AnalyticExpr::rational({1.0, 2.0}, {3.0, 1.0})}));
  const PowerSeries lhs = taylor(sum_arg, 60);
  const PowerSeries rhs = cauchy_product(taylor(f, 60), taylor(g, 60));
  double d = 0.0;
  for (int n = 0; n <= 60; ++n) d = std::max(d, std::abs(lhs[n] - rhs[n]));
  CHECK(d <= 1e-13);
}

TEST_CASE("power laws") {
  const AnalyticExpr base = AnalyticExpr::poly({2.0, {0.5, 0.5}});
  const PowerSeries a = taylor(AnalyticExpr::power(base, 1.3), 50);
  const PowerSeries b = taylor(AnalyticExpr::power(base, 0.7), 50);
  const PowerSeries ab = cauchy_product(a, b);
  const PowerSeries sq = taylor(AnalyticExpr::product({base, base}), 50);
  double d = 0.0;
  for (int n = 0; n <= 50; ++n) d = std::max(d, std::abs(ab[n] - sq[n]));
  CHECK(d <= 1e-12);
}

TEST_CASE("eliminate_moebius removes all precompositions") {
  const MoebiusMap phi{1.0, 1.0, -1.0, 3.0};
  const AnalyticExpr e = AnalyticExpr::precompose(
      AnalyticExpr::product({AnalyticExpr::exp(AnalyticExpr::z()), AnalyticExpr::precompose(AnalyticExpr::z(), phi)}),
      phi);
  CHECK(e.contains_precompose());
  const AnalyticExpr r = eliminate_moebius(e);
  CHECK_FALSE(r.contains_precompose());
  const cplx z{0.2, 0.4};
  CHECK(std::abs(r.evaluate(z) - e.evaluate(z)) <= 1e-13);
}

TEST_CASE("moebius_powers match repeated products") {
  const MoebiusMap phi{1.0, 0.0, -1.0, 2.0};
  const auto pw = moebius_powers(phi, 5, 30);
  REQUIRE(pw.size() == 6);
  CHECK(std::abs(pw[0][0] - 1.0) < 1e-15);
  for (int k = 0; k <= 5; ++k) {
    const auto ref = oracle::dft_coeffs([&](cplx z) { return std::pow(phi(z), k); }, 30, 0.9);
    CHECK(max_dev(pw[k], ref, 30) <= 1e-9);
  }
}

TEST_CASE("construction constraints") {
  CHECK_THROWS_AS(AnalyticExpr::rational({1.0}, {0.0, 1.0}), ConstraintViolation);
  CHECK_THROWS_AS(AnalyticExpr::power(AnalyticExpr::z(), 0.5), ConstraintViolation);
  CHECK_THROWS_AS(AnalyticExpr::power(AnalyticExpr::poly({-1.0, 0.5}), 0.5), ConstraintViolation);
  CHECK_THROWS_AS(AnalyticExpr::precompose(AnalyticExpr::z(), MoebiusMap(0.0, 1.0, 1.0, 0.0)), ConstraintViolation);
  CHECK_THROWS_AS(taylor(AnalyticExpr::z(), -1), InvalidInput);
  CHECK_THROWS_AS(tail_ratio(PowerSeries(8)), InvalidInput);
}

TEST_CASE("tail_ratio") {
  SUBCASE("geometric decay") {
    const TailDiagnostics t = tail_ratio(taylor(AnalyticExpr::rational({1.0}, {1.0, -0.5}), 64));
    CHECK(t.ratio == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_FALSE(t.slow_decay);
    CHECK(t.tail_bound < 1e-18);
  }
  SUBCASE("entire function decays fast") {
    const TailDiagnostics t = tail_ratio(taylor(AnalyticExpr::exp(AnalyticExpr::z()), 64));
    CHECK(t.ratio < 0.2);
    CHECK_FALSE(t.slow_decay);
  }
  SUBCASE("singular inner function decays slowly") {
    // e^{-(1+z)/(1-z)}
    const AnalyticExpr e = AnalyticExpr::exp(AnalyticExpr::rational({-1.0, -1.0}, {1.0, -1.0}));
    const TailDiagnostics t = tail_ratio(taylor(e, 128));
    CHECK(t.slow_decay);
    CHECK(t.ratio > kSlowDecayRatio);
  }
}

TEST_CASE("json round trip of expressions") {
  const MoebiusMap phi{1.0, 0.0, -1.0, 2.0};
  const AnalyticExpr e = AnalyticExpr::sum(
      {AnalyticExpr::scale({0.5, 1.0}, AnalyticExpr::exp(AnalyticExpr::z())),
       AnalyticExpr::product({AnalyticExpr::poly({1.0, 2.0}), AnalyticExpr::rational({1.0}, {3.0, 1.0})}),
       AnalyticExpr::power(AnalyticExpr::poly({2.0, 1.0}), -1.5), AnalyticExpr::precompose(AnalyticExpr::z(), phi)});
  const nlohmann::json j = e;
  const AnalyticExpr back = expr_from_json(j);
  CHECK(nlohmann::json(back) == j);
  CHECK(std::abs(back.evaluate(0.3) - e.evaluate(0.3)) < 1e-15);

  CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"kind":"bessel"})")), InvalidInput);
  CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"kind":"poly"})")), InvalidInput);
  CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse("[1,2]")), InvalidInput);
  CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"kind":"power","base":{"kind":"poly","coeffs":[1]},"exponent":"x"})")),
                  InvalidInput);
}

TEST_CASE("series csv") {
  const std::string csv = series_to_csv(PowerSeries(std::vector<cplx>{1.0, {0.0, -2.0}}));
  CHECK(csv.rfind("index,re,im\n", 0) == 0);
  CHECK(csv.find("1,0,-2") != std::string::npos);
}
