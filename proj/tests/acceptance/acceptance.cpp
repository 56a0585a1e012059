// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "wcop/probes.hpp"
#include "wcop/scenarios.hpp"
#include "wcop/spectra.hpp"

using namespace wcop;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<SpaceSpec> kSpaces = {SpaceSpec::hardy(), SpaceSpec::bergman(0.0), SpaceSpec::bergman(1.0)};
const MoebiusMap kPhi{1.0, 0.0, -1.0, 2.0};    // z/(2-z)
const MoebiusMap kSigma{1.0, 1.0, 0.0, 2.0};   // (z+1)/2
const MoebiusMap kTau{2.0, 2.0, 1.0, 3.0};     // (2z+2)/(z+3)
AnalyticExpr psi() { return AnalyticExpr::rational({2.0}, {2.0, -1.0}); }
AnalyticExpr eta() { return AnalyticExpr::rational({2.0}, {3.0, 1.0}); }

Outcome c1() {
  Outcome o;
  const std::pair<const char*, MoebiusMap> maps[] = {
      {"z/(2-z)", kPhi}, {"z/(4-3z)", {0.25, 0.0, -0.75, 1.0}}, {"(z+1)/(3-z)", {1.0, 1.0, -1.0, 3.0}}};
  double worst = 0.0, slowest = 0.0;
  for (const auto& sp : kSpaces) {
    for (const auto& [name, phi] : maps) {
      const auto t0 = std::chrono::steady_clock::now();
      const int n = 24, m = name[0] == '(' ? 320 : 160;
      const double gam = sp.gamma();
      const OperatorWord w({Letter::plain(OperatorSpec::toeplitz(AnalyticExpr::power(
                                AnalyticExpr::poly({std::conj(phi.d()), -std::conj(phi.b())}), -gam))),
                            Letter::plain(OperatorSpec::composition(krein_adjoint(phi))),
                            Letter::star(OperatorSpec::toeplitz(AnalyticExpr::power(AnalyticExpr::poly({phi.d(), phi.c()}), gam)))});
      const TruncatedBlock adj = adjoint_block(build_block(OperatorSpec::composition(phi), sp, n, m));
      const double r = spectral_norm(leading(adj.entries, n, n) - word_block(w, sp, n, m, {false}).entries);
      worst = std::max(worst, r);
      slowest = std::max(slowest, seconds_since(t0));
      o.require(r <= 1e-6, std::string(name) + " on " + sp.label() + " residual " + g(r));
    }
  }
  o.require(slowest <= 5.0, "slowest case " + g(slowest) + "s");
  o.detail = "max residual " + g(worst) + ", slowest " + g(slowest) + "s" + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome c2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const SpaceSpec h = SpaceSpec::hardy();
  const OperatorSpec a = OperatorSpec::weighted(psi(), kPhi);
  const OperatorSpec et = OperatorSpec::weighted(eta(), kTau);
  const OperatorWord word({Letter::plain(et), Letter::plain(a)});
  const double resid =
      spectral_norm(word_block(word, h, 24, 320).entries - materialize(OperatorSpec::composition(kSigma), h, 24, 24));
  o.require(resid <= 1e-6, "factorization residual " + g(resid));
  double prev = 0.0;
  double last = 0.0;
  for (int n : {8, 16, 32}) {
    const double v = operator_norm_estimate(build_block(et, h, n, 160));
    o.require(v >= prev, "norm decreased at N=" + std::to_string(n));
    prev = last = v;
  }
  o.require(last >= 0.90 && last <= 1.0 + 1e-8, "norm at N=32 is " + g(last));
  const double secs = seconds_since(t0);
  o.require(secs <= 10.0, "runtime " + g(secs) + "s");
  o.detail = "residual " + g(resid) + ", ||T_eta C_tau|| at N=32 " + g(last) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome c3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const SpaceSpec h = SpaceSpec::hardy();
  const std::pair<const char*, AnalyticExpr> weights[] = {
      {"T_psi C_phi", psi()},
      {"W_(2+z)psi,phi", AnalyticExpr::poly({2.0, 1.0}) * psi()},
      {"W_e^z psi,phi", AnalyticExpr::exp(AnalyticExpr::z()) * psi()}};
  double worst = 1e300;
  for (const auto& [name, w] : weights) {
    const double e = hyponormality_probe(OperatorSpec::weighted(w, kPhi), h, 16, 160).min_eig;
    worst = std::min(worst, e);
    o.require(e >= -1e-6, std::string(name) + " min_eig " + g(e));
  }
  const double secs = seconds_since(t0);
  o.require(secs <= 20.0, "runtime " + g(secs) + "s");
  o.detail = "smallest min_eig " + g(worst) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome c4() {
  Outcome o;
  const OperatorSpec a = OperatorSpec::weighted(AnalyticExpr::exp(AnalyticExpr::z()) * psi(), kPhi);
  const SpaceSpec h = SpaceSpec::hardy();
  const double delta = oracle_threshold("quasinormal_defect.W_e^z psi,phi", "hardy").bound;
  const double q24 = quasinormality_defect(a, h, 24, 320);
  o.require(delta > 0.0, "oracle floor not positive");
  o.require(q24 >= delta, "defect at N=24 " + g(q24) + " < " + g(delta));
  std::vector<double> qs;
  for (int n : {12, 16, 20}) {
    qs.push_back(quasinormality_defect(a, h, n, 320));
    o.require(qs.back() >= delta, "defect at N=" + std::to_string(n) + " below floor");
  }
  const auto [lo, hi] = std::minmax_element(qs.begin(), qs.end());
  o.require(*hi <= 1.1 * *lo, "spread across N exceeds 10%");
  o.detail = "defect " + g(q24) + " >= " + g(delta) + ", N=12/16/20 spread " + g((*hi - *lo) / *lo * 100) + "%" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome c5() {
  Outcome o;
  double worst = 0.0;
  const cplx lambdas[] = {{0.0, 1.0}, 0.5, std::polar(1.0, std::numbers::pi * std::numbers::sqrt2)};
  for (const auto& sp : kSpaces) {
    for (cplx lam : lambdas) {
      const DefectReport r = probe_all(OperatorSpec::composition(MoebiusMap::rotation(lam)), sp, 24, 160);
      worst = std::max({worst, r.norm_selfcomm, std::abs(r.min_eig_selfcomm), r.quasinormal_defect});
    }
    const double q = quasinormality_defect(OperatorSpec::composition(kPhi), sp, 24, 320);
    const double floor = oracle_threshold("quasinormal_defect.C_z/(2-z)", sp.label()).bound;
    o.require(q > floor, "C_z/(2-z) on " + sp.label() + " defect " + g(q) + " <= " + g(floor));
  }
  o.require(worst <= 1e-12, "rotation defect " + g(worst));
  o.detail = "max rotation defect " + g(worst) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome c6() {
  Outcome o;
  const MoebiusMap phi{2.0, 1.0, 1.0, 2.0};
  double worst = 0.0;
  for (const auto& sp : {SpaceSpec::hardy(), SpaceSpec::bergman(0.0)}) {
    const AnalyticExpr w = AnalyticExpr::scale(std::pow(0.75, sp.gamma() / 2.0),
                                               AnalyticExpr::power(AnalyticExpr::poly({1.0, 0.5}), -sp.gamma()));
    const double d = unitary_defect(OperatorSpec::weighted(w, phi), sp, 24, 200);
    worst = std::max(worst, d);
    o.require(d <= 1e-6, sp.label() + " unitary defect " + g(d));
  }
  o.detail = "max unitary defect " + g(worst) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome c7() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  const std::vector<cplx> zetas = {1.0, {0.0, 1.0}, std::polar(1.0, std::numbers::pi / 3.0)};
  const std::vector<cplx> ts = {1.0, 2.0, {1.0, 0.5}, {0.3, 2.0}};
  for (const ResidualRow& r : residual_sweep(zetas, ts, default_beta_grid(), 400)) worst = std::max(worst, r.residual);
  o.require(worst <= 1e-9, "eigen residual " + g(worst));
  const auto seq =
      spectral_radius_estimate(OperatorSpec::composition(parabolic_from(1.0, 1.0)), SpaceSpec::hardy(), 48, 24);
  const double tol = oracle_threshold("gelfand.parabolic_t1.N48.k24", "hardy").bound;
  o.require(std::abs(seq.back() - 1.0) <= tol, "Gelfand k=24 value " + g(seq.back()));
  o.require(seq.back() < seq.front(), "Gelfand sequence not trending down");
  const double secs = seconds_since(t0);
  o.require(secs <= 30.0, "runtime " + g(secs) + "s");
  o.detail = "max residual " + g(worst) + ", ||A^24||^(1/24) " + g(seq.back()) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome c8() {
  Outcome o;
  const OperatorSpec a = OperatorSpec::composition(kSigma);
  std::string vals;
  for (const auto& sp : {SpaceSpec::hardy(), SpaceSpec::bergman(0.0)}) {
    const double ceiling = oracle_threshold("min_eig.C_(z+1)/2.N16", sp.label()).bound;
    const HyponormalityEvidence h = hyponormality_probe(a, sp, 16, 320);
    o.require(ceiling < 0.0 && h.min_eig <= ceiling, sp.label() + " min_eig " + g(h.min_eig));
    o.require(h.non_hyponormal_certificate, sp.label() + " no certificate");
    vals += (vals.empty() ? "" : ", ") + sp.label() + " " + g(h.min_eig);
    double min_chi = 0.0;
    for (const auto& k : kernel_condition_probe(a, sp, default_w_grid())) min_chi = std::min(min_chi, k.chi);
    o.require(min_chi < -1e-8, sp.label() + " no kernel witness");
  }
  o.detail = "min_eig " + vals + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome c9() {
  Outcome o;
  for (const auto& [label, t] : {std::pair<const char*, cplx>{"1", 1.0}, {"1+i", {1.0, 1.0}}}) {
    const MoebiusMap phi = parabolic_from(1.0, t);
    double prev = 1e300, last = 0.0;
    for (int n = 1; n <= 20; ++n) {
      const ImageCircle ic = image_circle(iterate(phi, n));
      const double sup = std::abs(ic.center - 1.0) + ic.radius;
      o.require(sup < prev, std::string("t=") + label + " not decreasing at n=" + std::to_string(n));
      prev = last = sup;
    }
    const double bound = oracle_threshold("iteration_sup.parabolic.n20", std::string("t=") + label).bound;
    o.require(last < bound, std::string("t=") + label + " sup at n=20 is " + g(last));
    if (o.detail.empty()) o.detail = "sup at n=20 " + g(last) + " < " + g(bound);
  }
  return o;
}

Outcome c10() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int passed = 0, gated = 0;
  for (const auto& s : list_scenarios()) {
    const ScenarioReport r = run_scenario(s.id);
    if (s.exploratory) {
      o.require(r.verdict() == "REPORT" && !r.checks.empty(), s.id + " emitted no report");
      continue;
    }
    ++gated;
    if (r.passed()) ++passed;
    else o.require(false, s.id + " FAIL");
  }
  const double secs = seconds_since(t0);
  o.require(gated == 10, "expected 10 gating scenarios");
  o.require(secs <= 180.0, "suite took " + g(secs) + "s");
  o.detail = std::to_string(passed) + "/" + std::to_string(gated) + " scenarios PASS in " + g(secs) + "s, S11 reported" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1  Cowen adjoint factorization", c1},       {"2  Sadraoui factorization and norm", c2},
      {"3  hyponormality PSD evidence", c3},         {"4  non-quasinormality of the exp weight", c4},
      {"5  quasinormal rotations", c5},              {"6  unitary automorphic weight", c6},
      {"7  parabolic eigenpairs and Gelfand sequence", c7}, {"8  Zorboska certificate", c8},
      {"9  uniform iteration convergence", c9},      {"10 scenario suite", c10},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(std::size(criteria)) - failures, std::size(criteria));
  return failures;
}
