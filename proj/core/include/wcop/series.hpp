#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wcop/mobius.hpp"
#include "wcop/types.hpp"

namespace wcop {

/// Taylor polynomial c_0 .. c_M of an analytic germ at 0.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(int order) : coeffs_(static_cast<std::size_t>(order) + 1) {}
  explicit PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {}

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  cplx operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  cplx& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  /// Index of the last nonzero coefficient, -1 for the zero series.
  int effective_degree() const;
  /// Horner evaluation of the truncation.
  cplx evaluate(cplx z) const;

  friend PowerSeries operator+(const PowerSeries& f, const PowerSeries& g);
  friend PowerSeries operator-(const PowerSeries& f, const PowerSeries& g);
  friend PowerSeries operator*(cplx k, const PowerSeries& f);

 private:
  std::vector<cplx> coeffs_;
};

/// Cauchy product truncated to min(f.order(), g.order()).
PowerSeries cauchy_product(const PowerSeries& f, const PowerSeries& g);
/// Cauchy product truncated to the given order.
PowerSeries cauchy_product(const PowerSeries& f, const PowerSeries& g, int order);

/// In place: coeffs <- coeffs * (a z + b) / (c z + d), O(M). Requires d != 0.
void multiply_by_moebius(std::span<cplx> coeffs, const MoebiusMap& m);

// ---------------------------------------------------------------------------
// Closed-form analytic expressions

class AnalyticExpr;

namespace expr {

struct Poly {
  std::vector<cplx> coeffs;
};
struct Rational {
  std::vector<cplx> num;
  std::vector<cplx> den;  // den(0) != 0
};
struct Power {
  std::shared_ptr<const AnalyticExpr> base;  // base(0) != 0, principal branch
  double exponent;
};
struct Exp {
  std::shared_ptr<const AnalyticExpr> arg;
};
struct Sum {
  std::vector<AnalyticExpr> terms;
};
struct Product {
  std::vector<AnalyticExpr> factors;
};
struct Scale {
  cplx factor;
  std::shared_ptr<const AnalyticExpr> inner;
};
struct PrecomposeMoebius {
  std::shared_ptr<const AnalyticExpr> inner;
  MoebiusMap map;
};

using Node = std::variant<Poly, Rational, Power, Exp, Sum, Product, Scale, PrecomposeMoebius>;

}  // namespace expr

/// Immutable expression tree for weights, kernels and eigenfunctions. Node
/// constraints (nonvanishing denominators, admissible Power bases) are checked
/// at construction from the constant term.
class AnalyticExpr {
 public:
  static AnalyticExpr constant(cplx c);
  static AnalyticExpr z();
  static AnalyticExpr poly(std::vector<cplx> coeffs);
  static AnalyticExpr rational(std::vector<cplx> num, std::vector<cplx> den);
  static AnalyticExpr power(AnalyticExpr base, double exponent);
  static AnalyticExpr exp(AnalyticExpr arg);
  static AnalyticExpr sum(std::vector<AnalyticExpr> terms);
  static AnalyticExpr product(std::vector<AnalyticExpr> factors);
  static AnalyticExpr scale(cplx factor, AnalyticExpr inner);
  static AnalyticExpr precompose(AnalyticExpr inner, MoebiusMap map);
  /// The Moebius map itself, as a rational expression.
  static AnalyticExpr moebius(const MoebiusMap& m);

  const expr::Node& node() const { return *node_; }

  /// Pointwise value; Power uses the principal branch at the point.
  cplx evaluate(cplx z) const;
  bool contains_precompose() const;

 private:
  explicit AnalyticExpr(expr::Node n) : node_(std::make_shared<const expr::Node>(std::move(n))) {}
  std::shared_ptr<const expr::Node> node_;
};

AnalyticExpr operator*(const AnalyticExpr& f, const AnalyticExpr& g);
AnalyticExpr operator+(const AnalyticExpr& f, const AnalyticExpr& g);

/// Rewrites every PrecomposeMoebius down to its leaves; the result has none.
AnalyticExpr eliminate_moebius(const AnalyticExpr& e);

/// Exact Taylor coefficients c_0 .. c_M.
PowerSeries taylor(const AnalyticExpr& e, int order);

/// Series of m^0 .. m^N, each to order M.
std::vector<PowerSeries> moebius_powers(const MoebiusMap& m, int count, int order);

struct TailDiagnostics {
  double ratio = 0.0;       // empirical geometric decay ratio
  double tail_bound = 0.0;  // estimated l2 mass beyond the last coefficient
  bool slow_decay = false;  // ratio above kSlowDecayRatio
};

inline constexpr double kSlowDecayRatio = 0.95;

/// Requires order >= 16.
TailDiagnostics tail_ratio(const PowerSeries& s);

void to_json(nlohmann::json& j, const AnalyticExpr& e);
AnalyticExpr expr_from_json(const nlohmann::json& j);

/// CSV with header "index,re,im".
std::string series_to_csv(const PowerSeries& s);

}  // namespace wcop
