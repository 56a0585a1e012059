#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wcop/series.hpp"
#include "wcop/types.hpp"

namespace wcop {

enum class SpaceKind { Hardy, Bergman };

/// H^2 (gamma = 1) or the weighted Bergman space A^2_alpha (gamma = alpha + 2),
/// with reproducing kernel K_w(z) = (1 - conj(w) z)^(-gamma).
class SpaceSpec {
 public:
  static SpaceSpec hardy() { return SpaceSpec(SpaceKind::Hardy, 0.0); }
  static SpaceSpec bergman(double alpha);
  /// "hardy" or "bergman:<alpha>".
  static SpaceSpec parse(const std::string& text);

  SpaceKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double gamma() const { return kind_ == SpaceKind::Hardy ? 1.0 : alpha_ + 2.0; }
  std::string label() const;

  bool operator==(const SpaceSpec&) const = default;

 private:
  SpaceSpec(SpaceKind k, double alpha) : kind_(k), alpha_(alpha) {}
  SpaceKind kind_;
  double alpha_;
};

/// ||z^n||^2, by the multiplicative recurrence (no Gamma functions).
double basis_norm_sq(const SpaceSpec& space, int n);

/// Table b_0 .. b_order of basis norms ||z^n||, fixed at construction.
class BasisNorms {
 public:
  BasisNorms(const SpaceSpec& space, int order);
  double norm(int n) const { return norm_[static_cast<std::size_t>(n)]; }
  double norm_sq(int n) const { return norm_sq_[static_cast<std::size_t>(n)]; }
  int order() const { return static_cast<int>(norm_.size()) - 1; }

 private:
  std::vector<double> norm_sq_;
  std::vector<double> norm_;
};

AnalyticExpr kernel_expr(const SpaceSpec& space, cplx w);
double kernel_norm_sq(const SpaceSpec& space, cplx w);

/// sqrt(sum |c_n|^2 b_n^2) over the available coefficients.
double series_norm(const PowerSeries& s, const SpaceSpec& space);
/// <f, g> = sum f_n conj(g_n) b_n^2 over the common order.
cplx series_inner(const PowerSeries& f, const PowerSeries& g, const SpaceSpec& space);

void to_json(nlohmann::json& j, const SpaceSpec& s);
SpaceSpec space_from_json(const nlohmann::json& j);

}  // namespace wcop
