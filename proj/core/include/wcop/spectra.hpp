#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wcop/opmat.hpp"

namespace wcop {

// Eigenvalues of finite sections of non-normal operators are diagnostics
// only; they are spectrally unstable under truncation.

/// Eigenvalues of the leading square block, sorted by modulus descending.
std::vector<cplx> truncation_eigenvalues(const TruncatedBlock& b);

struct SpiralCurve {
  cplx t;
  std::vector<double> beta;
  std::vector<cplx> samples;  // e^{-beta t}
  bool includes_zero = true;  // 0 is the limit point of the curve
};

/// samples >= 2 points with beta evenly spaced on [0, beta_max]. Requires Re t > 0.
SpiralCurve spiral_curve(cplx t, double beta_max, int samples);

struct EigenPair {
  double beta = 0.0;
  cplx eigenvalue;
  AnalyticExpr eigenfunction;  // exp(-beta (1 + conj(zeta) z) / (1 - conj(zeta) z))
};

/// Eigenpair of C_phi with phi = parabolic_from(zeta, t). Requires |zeta| = 1, Re t > 0, beta >= 0.
EigenPair parabolic_eigenpair(cplx zeta, cplx t, double beta);

/// max_n |c_n(f o phi) - lambda c_n(f)| / max_n |c_n(f)| over n <= order.
double eigen_residual(cplx zeta, cplx t, double beta, int order);

/// {0} U 2^{-2..4}.
std::vector<double> default_beta_grid();

struct ResidualRow {
  cplx zeta;
  cplx t;
  double beta = 0.0;
  double residual = 0.0;
};

/// Residuals over the product grid, in (zeta, t, beta) lexicographic order.
std::vector<ResidualRow> residual_sweep(const std::vector<cplx>& zetas, const std::vector<cplx>& ts,
                                        const std::vector<double>& betas, int order);

enum class RotationSpectrumKind { FiniteCyclic, UnitCircle, GeometricToZero };

struct RotationSpectrum {
  RotationSpectrumKind kind;
  cplx lambda;
  /// Cyclic group for roots of unity; leading powers lambda^n otherwise.
  std::vector<cplx> points;
  bool includes_zero = false;
};

std::string_view to_string(RotationSpectrumKind k);

/// Closure of {lambda^n : n >= 0}. Requires |lambda| <= 1. Roots of unity are
/// detected up to order max_cyclic.
RotationSpectrum rotation_spectrum(cplx lambda, int max_cyclic = 1024, double tol = 1e-12);

/// ||P_N A^k P_N||^{1/k} for k = 1..k_max, with A^k formed exactly as one operator.
std::vector<double> spectral_radius_estimate(const OperatorSpec& op, const SpaceSpec& space, int order,
                                             int k_max = 24);

/// Largest |<v_i, v_j>| over pairs of unit eigenvectors of the compression
/// with distinct eigenvalues. Zero for normal diagonal blocks.
double max_eigenvector_cosine(const TruncatedBlock& b, double distinct_tol = 1e-8);

/// CSV with header "re,im".
std::string points_to_csv(const std::vector<cplx>& pts);
std::string residuals_to_csv(const std::vector<ResidualRow>& rows);

void to_json(nlohmann::json& j, const SpiralCurve& s);
void to_json(nlohmann::json& j, const RotationSpectrum& r);
void to_json(nlohmann::json& j, const ResidualRow& r);

}  // namespace wcop
