#include "wcop/probes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

namespace wcop {

SelfCommutator self_commutator(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order) {
  GramBlocks g = gram_blocks(op, space, order, internal_order);
  return {hermitian_part(g.g1 - g.g2), g.tail_bound, std::move(g.warnings)};
}

HyponormalityEvidence hyponormality_probe(const OperatorSpec& op, const SpaceSpec& space, int order,
                                          int internal_order, double tol) {
  SelfCommutator sc = self_commutator(op, space, order, internal_order);
  HyponormalityEvidence out;
  out.min_eig = hermitian_eigenvalues(sc.matrix).front();
  out.tail_bound = sc.tail_bound;
  out.non_hyponormal_certificate = out.min_eig < -(sc.tail_bound + tol);
  out.warnings = std::move(sc.warnings);
  return out;
}

double quasinormality_defect(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order) {
  if (internal_order < 2 * order) throw ConstraintViolation("quasinormality_defect: need M >= 2N");
  const int m = std::max(internal_order, 2 * order + 16);
  const CMatrix a = materialize(op, space, m, m);
  const CMatrix gram = a.adjoint() * a;
  // Only the leading N+1 rows/columns of the commutator are needed.
  const CMatrix left = a.topRows(order + 1) * gram.leftCols(order + 1);
  const CMatrix right = gram.topRows(order + 1) * a.leftCols(order + 1);
  return spectral_norm(left - right);
}

double normality_defect(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order) {
  return spectral_norm(self_commutator(op, space, order, internal_order).matrix);
}

double selfadjoint_defect(const OperatorSpec& op, const SpaceSpec& space, int order) {
  const CMatrix a = materialize(op, space, order, order);
  return spectral_norm(a - a.adjoint());
}

double unitary_defect(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order) {
  const GramBlocks g = gram_blocks(op, space, order, internal_order);
  const CMatrix id = CMatrix::Identity(order + 1, order + 1);
  return std::max(spectral_norm(g.g1 - id), spectral_norm(g.g2 - id));
}

DouglasWitness douglas_witness(const OperatorWord& c, const OperatorSpec& a, const SpaceSpec& space, int order,
                               int internal_order) {
  DouglasWitness out;
  const WordOptions no_compare{false};
  out.norm_c = operator_norm_estimate(word_block(c, space, order, internal_order, no_compare));

  std::vector<Letter> letters = c.letters;
  letters.push_back(Letter::plain(a));
  const TruncatedBlock ca = word_block(OperatorWord(std::move(letters)), space, order, internal_order, no_compare);
  const CMatrix a_star = materialize(a, space, order, order).adjoint();
  out.residual = spectral_norm(ca.entries - a_star);
  return out;
}

std::vector<cplx> default_w_grid() {
  const double radii[] = {0.1, 0.25, 0.4, 0.55, 0.7, 0.8, 0.9, 0.95};
  std::vector<cplx> out;
  for (double r : radii)
    for (int k = 0; k < 16; ++k) out.push_back(std::polar(r, 2.0 * std::numbers::pi * k / 16.0));
  return out;
}

std::vector<KernelCondition> kernel_condition_probe(const OperatorSpec& op, const SpaceSpec& space,
                                                    const std::vector<cplx>& w_grid, double tol) {
  constexpr int kStartOrder = 128;
  constexpr int kMaxOrder = 4096;
  std::vector<KernelCondition> out;
  out.reserve(w_grid.size());
  for (cplx w : w_grid) {
    AnalyticExpr kernel = kernel_expr(space, w);
    if (op.symbol()) kernel = AnalyticExpr::precompose(std::move(kernel), *op.symbol());
    const AnalyticExpr image = op.weight() * kernel;

    KernelCondition kc{w};
    double norm_sq = 0.0;
    for (int m = kStartOrder;; m *= 2) {
      const PowerSeries s = taylor(image, m);
      const double n = series_norm(s, space);
      const TailDiagnostics t = tail_ratio(s);
      norm_sq = n * n;
      kc.tail_bound = t.tail_bound * t.tail_bound;
      kc.series_order = m;
      if (kc.tail_bound <= 1e-15 * norm_sq || m >= kMaxOrder) break;
    }
    const cplx psi_w = op.weight().evaluate(w);
    const cplx phi_w = op.symbol() ? (*op.symbol())(w) : w;
    kc.chi = norm_sq - std::norm(psi_w) * kernel_norm_sq(space, phi_w);
    kc.certificate = kc.chi + kc.tail_bound < -tol;
    out.push_back(kc);
  }
  return out;
}

DefectReport probe_all(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order) {
  DefectReport r;
  r.order = order;
  r.internal_order = internal_order;
  const GramBlocks g = gram_blocks(op, space, order, internal_order);
  const CMatrix h = hermitian_part(g.g1 - g.g2);
  r.min_eig_selfcomm = hermitian_eigenvalues(h).front();
  r.norm_selfcomm = spectral_norm(h);
  const CMatrix id = CMatrix::Identity(order + 1, order + 1);
  r.unitary_defect = std::max(spectral_norm(g.g1 - id), spectral_norm(g.g2 - id));
  r.quasinormal_defect = quasinormality_defect(op, space, order, internal_order);
  r.selfadjoint_defect = selfadjoint_defect(op, space, order);
  r.tail_bound = g.tail_bound;
  r.non_hyponormal_certificate = r.min_eig_selfcomm < -(g.tail_bound + 1e-9);
  r.slow_decay = g.slow_decay;
  r.warnings = g.warnings;
  return r;
}

void to_json(nlohmann::json& j, const DefectReport& r) {
  j = {{"min_eig_selfcomm", r.min_eig_selfcomm},
       {"norm_selfcomm", r.norm_selfcomm},
       {"quasinormal_defect", r.quasinormal_defect},
       {"selfadjoint_defect", r.selfadjoint_defect},
       {"unitary_defect", r.unitary_defect},
       {"N", r.order},
       {"M", r.internal_order},
       {"tail_bound", r.tail_bound},
       {"flags",
        {{"non_hyponormal_certificate", r.non_hyponormal_certificate}, {"slow_decay", r.slow_decay}}},
       {"warnings", r.warnings}};
}

DefectReport defect_report_from_json(const nlohmann::json& j) {
  try {
    DefectReport r;
    r.min_eig_selfcomm = j.at("min_eig_selfcomm").get<double>();
    r.norm_selfcomm = j.at("norm_selfcomm").get<double>();
    r.quasinormal_defect = j.at("quasinormal_defect").get<double>();
    r.selfadjoint_defect = j.at("selfadjoint_defect").get<double>();
    r.unitary_defect = j.at("unitary_defect").get<double>();
    r.order = j.at("N").get<int>();
    r.internal_order = j.at("M").get<int>();
    r.tail_bound = j.at("tail_bound").get<double>();
    r.non_hyponormal_certificate = j.at("flags").at("non_hyponormal_certificate").get<bool>();
    r.slow_decay = j.at("flags").at("slow_decay").get<bool>();
    r.warnings = j.value("warnings", std::vector<std::string>{});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed defect report JSON: ") + e.what());
  }
}

}  // namespace wcop
