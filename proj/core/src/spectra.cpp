#include "wcop/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "wcop/json_io.hpp"

namespace wcop {

namespace {

void check_parabolic_params(cplx zeta, cplx t) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw InvalidInput("zeta must lie on the unit circle");
  if (!(t.real() > 0.0)) throw InvalidInput("translation number needs Re t > 0");
}

std::string fmt12(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x + 0.0;  // no "-0"
  return os.str();
}

}  // namespace

std::vector<cplx> truncation_eigenvalues(const TruncatedBlock& b) {
  const int n = std::min(b.row_order, b.col_order);
  return general_eigenvalues(leading(b.entries, n, n));
}

SpiralCurve spiral_curve(cplx t, double beta_max, int samples) {
  if (!(t.real() > 0.0)) throw InvalidInput("spiral_curve: Re t must be positive");
  if (samples < 2) throw InvalidInput("spiral_curve: need at least 2 samples");
  if (!(beta_max > 0.0) || !std::isfinite(beta_max)) throw InvalidInput("spiral_curve: beta_max must be positive");
  SpiralCurve s{t, {}, {}, true};
  s.beta.reserve(samples);
  s.samples.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double beta = beta_max * i / (samples - 1);
    s.beta.push_back(beta);
    s.samples.push_back(std::exp(-beta * t));
  }
  return s;
}

EigenPair parabolic_eigenpair(cplx zeta, cplx t, double beta) {
  check_parabolic_params(zeta, t);
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("eigenpair: beta must be finite and >= 0");
  const cplx zc = std::conj(zeta);
  const AnalyticExpr tau = AnalyticExpr::rational({1.0, zc}, {1.0, -zc});
  return {beta, std::exp(-beta * t), AnalyticExpr::exp(AnalyticExpr::scale(-beta, tau))};
}

double eigen_residual(cplx zeta, cplx t, double beta, int order) {
  if (order < 0) throw InvalidInput("eigen_residual: negative order");
  const EigenPair ep = parabolic_eigenpair(zeta, t, beta);
  const PowerSeries f = taylor(ep.eigenfunction, order);
  const PowerSeries fphi = taylor(AnalyticExpr::precompose(ep.eigenfunction, parabolic_from(zeta, t)), order);
  double num = 0.0, den = 0.0;
  for (int n = 0; n <= order; ++n) {
    num = std::max(num, std::abs(fphi[n] - ep.eigenvalue * f[n]));
    den = std::max(den, std::abs(f[n]));
  }
  return den > 0.0 ? num / den : num;
}

std::vector<double> default_beta_grid() { return {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}; }

std::vector<ResidualRow> residual_sweep(const std::vector<cplx>& zetas, const std::vector<cplx>& ts,
                                        const std::vector<double>& betas, int order) {
  std::vector<ResidualRow> rows;
  rows.reserve(zetas.size() * ts.size() * betas.size());
  for (cplx zeta : zetas)
    for (cplx t : ts)
      for (double beta : betas) rows.push_back({zeta, t, beta, eigen_residual(zeta, t, beta, order)});
  return rows;
}

std::string_view to_string(RotationSpectrumKind k) {
  switch (k) {
    case RotationSpectrumKind::FiniteCyclic: return "finite_cyclic";
    case RotationSpectrumKind::UnitCircle: return "unit_circle";
    case RotationSpectrumKind::GeometricToZero: return "geometric_to_zero";
  }
  return "unknown";
}

RotationSpectrum rotation_spectrum(cplx lambda, int max_cyclic, double tol) {
  const double r = std::abs(lambda);
  if (!std::isfinite(r) || r > 1.0 + tol) throw InvalidInput("rotation_spectrum: need |lambda| <= 1");
  RotationSpectrum out{RotationSpectrumKind::GeometricToZero, lambda, {}, false};

  if (r < 1.0 - tol) {
    out.includes_zero = true;
    cplx p = 1.0;
    for (int n = 0; n < 64 && std::abs(p) > 1e-300; ++n) {
      out.points.push_back(p);
      p *= lambda;
    }
    return out;
  }

  const double turns = std::arg(lambda) / (2.0 * std::numbers::pi);
  for (int q = 1; q <= max_cyclic; ++q) {
    const double x = turns * q;
    if (std::abs(x - std::round(x)) <= tol * q) {
      out.kind = RotationSpectrumKind::FiniteCyclic;
      const long p = std::lround(x);
      for (int n = 0; n < q; ++n) {
        // Exact angles keep the cyclic group free of accumulated drift.
        cplx w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((p * n) % q) / q);
        if (std::abs(w.real()) < 1e-15) w.real(0.0);
        if (std::abs(w.imag()) < 1e-15) w.imag(0.0);
        out.points.push_back(w);
      }
      return out;
    }
  }
  out.kind = RotationSpectrumKind::UnitCircle;
  cplx p = 1.0;
  for (int n = 0; n < 64; ++n) {
    out.points.push_back(p);
    p *= lambda / std::abs(lambda);
  }
  return out;
}

std::vector<double> spectral_radius_estimate(const OperatorSpec& op, const SpaceSpec& space, int order,
                                             int k_max) {
  if (order < 0) throw InvalidInput("spectral_radius_estimate: negative order");
  if (k_max < 1) throw InvalidInput("spectral_radius_estimate: k_max must be >= 1");
  std::vector<double> out;
  out.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    const double nk = spectral_norm(materialize(operator_power(op, k), space, order, order));
    out.push_back(std::pow(nk, 1.0 / k));
  }
  return out;
}

double max_eigenvector_cosine(const TruncatedBlock& b, double distinct_tol) {
  const int n = std::min(b.row_order, b.col_order);
  Eigen::ComplexEigenSolver<CMatrix> es(leading(b.entries, n, n));
  if (es.info() != Eigen::Success) throw ConstraintViolation("eigensolver failed to converge");
  const CVector vals = es.eigenvalues();
  CMatrix vecs = es.eigenvectors();
  for (Eigen::Index j = 0; j < vecs.cols(); ++j) vecs.col(j).normalize();
  double best = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    for (Eigen::Index j = i + 1; j < vals.size(); ++j)
      if (std::abs(vals[i] - vals[j]) > distinct_tol)
        best = std::max(best, std::abs(vecs.col(i).dot(vecs.col(j))));
  return best;
}

std::string points_to_csv(const std::vector<cplx>& pts) {
  std::string out = "re,im\n";
  for (cplx p : pts) out += fmt12(p.real()) + "," + fmt12(p.imag()) + "\n";
  return out;
}

std::string residuals_to_csv(const std::vector<ResidualRow>& rows) {
  std::string out = "zeta_re,zeta_im,t_re,t_im,beta,residual\n";
  for (const ResidualRow& r : rows) {
    out += fmt12(r.zeta.real()) + "," + fmt12(r.zeta.imag()) + "," + fmt12(r.t.real()) + "," +
           fmt12(r.t.imag()) + "," + fmt12(r.beta) + "," + fmt12(r.residual) + "\n";
  }
  return out;
}

void to_json(nlohmann::json& j, const SpiralCurve& s) {
  nlohmann::json pts = nlohmann::json::array();
  for (cplx p : s.samples) pts.push_back(complex_to_json(p));
  j = {{"t", complex_to_json(s.t)}, {"beta", s.beta}, {"samples", pts}, {"includes_zero", s.includes_zero}};
}

void to_json(nlohmann::json& j, const RotationSpectrum& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (cplx p : r.points) pts.push_back(complex_to_json(p));
  j = {{"kind", std::string(to_string(r.kind))},
       {"lambda", complex_to_json(r.lambda)},
       {"points", pts},
       {"includes_zero", r.includes_zero}};
}

void to_json(nlohmann::json& j, const ResidualRow& r) {
  j = {{"zeta", complex_to_json(r.zeta)}, {"t", complex_to_json(r.t)}, {"beta", r.beta}, {"residual", r.residual}};
}

}  // namespace wcop
