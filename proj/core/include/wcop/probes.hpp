#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wcop/opmat.hpp"

namespace wcop {

// Truncation can certify that an operator is NOT hyponormal (a compression of
// a positive operator is positive), never that it is. Nonnegative results are
// reported as evidence only.

struct SelfCommutator {
  CMatrix matrix;  // Hermitian, P_N (A*A - AA*) P_N
  double tail_bound = 0.0;
  std::vector<std::string> warnings;
};

SelfCommutator self_commutator(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order);

struct HyponormalityEvidence {
  double min_eig = 0.0;
  double tail_bound = 0.0;
  /// min_eig < -(tail_bound + tol): the operator is certainly not hyponormal.
  bool non_hyponormal_certificate = false;
  std::vector<std::string> warnings;
};

HyponormalityEvidence hyponormality_probe(const OperatorSpec& op, const SpaceSpec& space, int order,
                                          int internal_order, double tol = 1e-9);

/// ||P_N (A(A*A) - (A*A)A) P_N||, with A held at internal order max(M, 2N + 16).
double quasinormality_defect(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order);

/// ||P_N (A*A - AA*) P_N||.
double normality_defect(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order);

/// ||P_N A P_N - (P_N A P_N)*||; exact, no internal order needed.
double selfadjoint_defect(const OperatorSpec& op, const SpaceSpec& space, int order);

/// max(||P_N A*A P_N - I||, ||P_N AA* P_N - I||).
double unitary_defect(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order);

struct DouglasWitness {
  double norm_c = 0.0;    // ||P_N C P_N||
  double residual = 0.0;  // ||P_N (C A - A*) P_N||
};

/// Evidence for A* = C A with ||C|| <= 1.
DouglasWitness douglas_witness(const OperatorWord& c, const OperatorSpec& a, const SpaceSpec& space, int order,
                               int internal_order);

struct KernelCondition {
  cplx w;
  double chi = 0.0;         // ||A K_w||^2 - ||A* K_w||^2
  double tail_bound = 0.0;  // neglected series mass in ||A K_w||^2
  int series_order = 0;
  /// chi + tail_bound < -tol.
  bool certificate = false;
};

/// 8 radii {0.1, ..., 0.95} x 16 angles.
std::vector<cplx> default_w_grid();

std::vector<KernelCondition> kernel_condition_probe(const OperatorSpec& op, const SpaceSpec& space,
                                                    const std::vector<cplx>& w_grid, double tol = 1e-8);

struct DefectReport {
  double min_eig_selfcomm = 0.0;
  double norm_selfcomm = 0.0;
  double quasinormal_defect = 0.0;
  double selfadjoint_defect = 0.0;
  double unitary_defect = 0.0;
  int order = 0;
  int internal_order = 0;
  double tail_bound = 0.0;
  bool non_hyponormal_certificate = false;
  bool slow_decay = false;
  std::vector<std::string> warnings;
};

DefectReport probe_all(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order);

void to_json(nlohmann::json& j, const DefectReport& r);
DefectReport defect_report_from_json(const nlohmann::json& j);

}  // namespace wcop
