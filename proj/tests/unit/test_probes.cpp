#include <doctest.h>

#include <numbers>

#include <nlohmann/json.hpp>

#include "wcop/probes.hpp"

using namespace wcop;

namespace {

const MoebiusMap kPhi{1.0, 0.0, -1.0, 2.0};
const MoebiusMap kSigma{1.0, 1.0, 0.0, 2.0};
const SpaceSpec kSpaces[] = {SpaceSpec::hardy(), SpaceSpec::bergman(0.0), SpaceSpec::bergman(1.0)};

AnalyticExpr psi() { return AnalyticExpr::rational({2.0}, {2.0, -1.0}); }

/// C_rho A C_rho^{-1} for |rho| = 1, again a weighted composition operator.
OperatorSpec rotate(const OperatorSpec& a, cplx rho) {
  const MoebiusMap r = MoebiusMap::rotation(rho);
  const MoebiusMap sym = compose(MoebiusMap::rotation(std::conj(rho)), compose(a.symbol_or_identity(), r));
  return OperatorSpec::weighted(eliminate_moebius(AnalyticExpr::precompose(a.weight(), r)), sym);
}

}  // namespace

TEST_CASE("rotations are normal, quasinormal and unitary on the circle") {
  for (const SpaceSpec& sp : kSpaces) {
    for (cplx lam : {cplx{0.0, 1.0}, cplx{0.5}, std::polar(1.0, std::numbers::pi * std::numbers::sqrt2)}) {
      const DefectReport r = probe_all(OperatorSpec::composition(MoebiusMap::rotation(lam)), sp, 20, 160);
      CHECK(r.norm_selfcomm <= 1e-12);
      CHECK(std::abs(r.min_eig_selfcomm) <= 1e-12);
      CHECK(r.quasinormal_defect <= 1e-12);
      CHECK_FALSE(r.non_hyponormal_certificate);
      if (std::abs(std::abs(lam) - 1.0) < 1e-15) CHECK(r.unitary_defect <= 1e-12);
      else CHECK(r.unitary_defect == doctest::Approx(1.0 - std::pow(0.25, 20)));
    }
  }
}

TEST_CASE("shift is hyponormal") {
  for (const SpaceSpec& sp : kSpaces) {
    const HyponormalityEvidence h = hyponormality_probe(OperatorSpec::toeplitz(AnalyticExpr::z()), sp, 16, 64);
    CHECK(h.min_eig >= -1e-12);
    CHECK_FALSE(h.non_hyponormal_certificate);
  }
}

TEST_CASE("composition with phi(0) != 0 is certified non-hyponormal") {
  for (const SpaceSpec& sp : kSpaces) {
    const HyponormalityEvidence h = hyponormality_probe(OperatorSpec::composition(kSigma), sp, 16, 320);
    CHECK(h.min_eig < -0.4);
    CHECK(h.non_hyponormal_certificate);
  }
}

TEST_CASE("property: scale covariance") {
  const OperatorSpec a = OperatorSpec::weighted(psi(), kPhi);
  const cplx c{1.5, -2.0};
  const double c2 = std::norm(c), c3 = std::pow(std::abs(c), 3);
  for (const SpaceSpec& sp : kSpaces) {
    const DefectReport r1 = probe_all(a, sp, 12, 160);
    const DefectReport rc = probe_all(a.scaled(c), sp, 12, 160);
    CHECK(rc.min_eig_selfcomm == doctest::Approx(c2 * r1.min_eig_selfcomm).epsilon(1e-9));
    CHECK(rc.norm_selfcomm == doctest::Approx(c2 * r1.norm_selfcomm).epsilon(1e-9));
    CHECK(rc.quasinormal_defect == doctest::Approx(c3 * r1.quasinormal_defect).epsilon(1e-9));
    // Only positive multiples commute with taking adjoints.
    CHECK(selfadjoint_defect(a.scaled(2.5), sp, 12) == doctest::Approx(2.5 * r1.selfadjoint_defect).epsilon(1e-12));
  }
}

TEST_CASE("property: rotation conjugation invariance") {
  const OperatorSpec a = OperatorSpec::weighted(AnalyticExpr::exp(AnalyticExpr::z()), kPhi);
  const cplx rho = std::polar(1.0, 0.9);
  const OperatorSpec b = rotate(a, rho);
  for (const SpaceSpec& sp : kSpaces) {
    const DefectReport ra = probe_all(a, sp, 12, 160), rb = probe_all(b, sp, 12, 160);
    CHECK(rb.min_eig_selfcomm == doctest::Approx(ra.min_eig_selfcomm).epsilon(1e-9));
    CHECK(rb.norm_selfcomm == doctest::Approx(ra.norm_selfcomm).epsilon(1e-9));
    CHECK(rb.quasinormal_defect == doctest::Approx(ra.quasinormal_defect).epsilon(1e-9));
  }
}

TEST_CASE("property: negative evidence is monotone in N") {
  // Compressions interlace, so the smallest eigenvalue can only decrease.
  for (const SpaceSpec& sp : kSpaces) {
    double prev = 1e300;
    for (int n : {4, 8, 12, 16}) {
      const double e = hyponormality_probe(OperatorSpec::composition(kSigma), sp, n, 320).min_eig;
      CHECK(e <= prev + 1e-10);
      prev = e;
    }
  }
}

TEST_CASE("property: self-commutator is Hermitian and Gram blocks obey the PSD law") {
  const OperatorSpec a = OperatorSpec::weighted(psi(), kPhi);
  for (const SpaceSpec& sp : kSpaces) {
    const SelfCommutator sc = self_commutator(a, sp, 12, 160);
    CHECK((sc.matrix - sc.matrix.adjoint()).norm() <= 1e-14);
    const GramBlocks g = gram_blocks(a, sp, 12, 160);
    CHECK((sc.matrix - (g.g1 - g.g2)).norm() <= 1e-12);
  }
}

TEST_CASE("weighted operator from the factorization example is hyponormal on Hardy") {
  const OperatorSpec a = OperatorSpec::weighted(psi(), kPhi);
  const HyponormalityEvidence h = hyponormality_probe(a, SpaceSpec::hardy(), 16, 160);
  CHECK(h.min_eig >= -1e-6);
  CHECK_FALSE(h.non_hyponormal_certificate);
  const auto k = kernel_condition_probe(a, SpaceSpec::hardy(), default_w_grid());
  REQUIRE(k.size() == 128);
  for (const KernelCondition& kc : k) {
    CHECK(kc.chi >= -1e-8);
    CHECK_FALSE(kc.certificate);
  }
}

TEST_CASE("kernel probe finds a witness for C_(z+1)/2") {
  for (const SpaceSpec& sp : kSpaces) {
    const auto k = kernel_condition_probe(OperatorSpec::composition(kSigma), sp, default_w_grid());
    bool any = false;
    for (const KernelCondition& kc : k) any = any || kc.certificate;
    CHECK(any);
  }
  CHECK_THROWS_AS(kernel_condition_probe(OperatorSpec::composition(kSigma), SpaceSpec::hardy(), {1.0}), InvalidInput);
}

TEST_CASE("unitary automorphic weight") {
  const MoebiusMap phi{2.0, 1.0, 1.0, 2.0};
  for (const SpaceSpec& sp : kSpaces) {
    const AnalyticExpr w = AnalyticExpr::scale(std::pow(0.75, sp.gamma() / 2.0),
                                               AnalyticExpr::power(AnalyticExpr::poly({1.0, 0.5}), -sp.gamma()));
    CHECK(unitary_defect(OperatorSpec::weighted(w, phi), sp, 16, 200) <= 1e-6);
    CHECK(unitary_defect(OperatorSpec::composition(phi), sp, 16, 200) > 0.1);
  }
}

TEST_CASE("selfadjoint defect") {
  CHECK(selfadjoint_defect(OperatorSpec::composition(MoebiusMap::rotation(0.5)), SpaceSpec::hardy(), 10) == 0.0);
  CHECK(selfadjoint_defect(OperatorSpec::composition(MoebiusMap::rotation({0.0, 1.0})), SpaceSpec::hardy(), 10) ==
        doctest::Approx(2.0));
}

TEST_CASE("Douglas witness for a unitary") {
  const OperatorSpec a = OperatorSpec::composition(MoebiusMap::rotation(std::polar(1.0, 0.3)));
  const OperatorWord c({Letter::star(a), Letter::star(a)});
  const DouglasWitness w = douglas_witness(c, a, SpaceSpec::hardy(), 12, 48);
  CHECK(w.residual <= 1e-14);
  CHECK(w.norm_c == doctest::Approx(1.0));
}

TEST_CASE("order policy") {
  const OperatorSpec a = OperatorSpec::composition(kPhi);
  CHECK_THROWS_AS(quasinormality_defect(a, SpaceSpec::hardy(), 20, 30), ConstraintViolation);
  CHECK_THROWS_AS(normality_defect(a, SpaceSpec::hardy(), 20, 30), ConstraintViolation);
}

TEST_CASE("defect report json round trip") {
  const DefectReport r = probe_all(OperatorSpec::composition(kSigma), SpaceSpec::bergman(0.0), 8, 160);
  const nlohmann::json j = r;
  for (const char* key : {"min_eig_selfcomm", "norm_selfcomm", "quasinormal_defect", "selfadjoint_defect",
                          "unitary_defect", "N", "M", "tail_bound", "flags", "warnings"})
    CHECK(j.contains(key));
  CHECK(j.at("flags").at("non_hyponormal_certificate") == true);
  const DefectReport back = defect_report_from_json(j);
  CHECK(back.min_eig_selfcomm == r.min_eig_selfcomm);
  CHECK(back.order == 8);
  CHECK(back.internal_order == 160);
  CHECK(nlohmann::json(back) == j);
  CHECK_THROWS_AS(defect_report_from_json(nlohmann::json::parse(R"({"N":1})")), InvalidInput);
}
