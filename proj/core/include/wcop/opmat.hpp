#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wcop/linalg.hpp"
#include "wcop/mobius.hpp"
#include "wcop/series.hpp"
#include "wcop/space.hpp"

namespace wcop {

/// W_{psi,phi} f = psi * (f o phi). An empty symbol means the identity map,
/// which makes the operator the analytic Toeplitz operator T_psi.
class OperatorSpec {
 public:
  OperatorSpec(AnalyticExpr weight, std::optional<MoebiusMap> symbol);

  static OperatorSpec composition(const MoebiusMap& symbol);
  static OperatorSpec toeplitz(AnalyticExpr weight);
  static OperatorSpec weighted(AnalyticExpr weight, const MoebiusMap& symbol);

  const AnalyticExpr& weight() const { return weight_; }
  const std::optional<MoebiusMap>& symbol() const { return symbol_; }
  /// The symbol, or the identity map.
  MoebiusMap symbol_or_identity() const;

  /// c * A.
  OperatorSpec scaled(cplx c) const;

 private:
  // Products of valid operators are valid; re-checking an iterated symbol
  // would only measure rounding in its coefficients.
  struct Unchecked {};
  OperatorSpec(AnalyticExpr weight, std::optional<MoebiusMap> symbol, Unchecked)
      : weight_(std::move(weight)), symbol_(std::move(symbol)) {}
  friend OperatorSpec operator_product(const OperatorSpec& a, const OperatorSpec& b);
  friend OperatorSpec operator_power(const OperatorSpec& op, int k);

  AnalyticExpr weight_;
  std::optional<MoebiusMap> symbol_;
};

/// A^k as a single weighted composition operator:
/// weight psi * (psi o phi) * ... * (psi o phi_{k-1}), symbol phi_k.
OperatorSpec operator_power(const OperatorSpec& op, int k);

/// Product A B of weighted composition operators, itself one: psi_A * (psi_B o phi_A), phi_B o phi_A.
OperatorSpec operator_product(const OperatorSpec& a, const OperatorSpec& b);

struct Letter {
  OperatorSpec op;
  bool adjoint = false;

  static Letter plain(OperatorSpec op) { return {std::move(op), false}; }
  static Letter star(OperatorSpec op) { return {std::move(op), true}; }
};

/// Ordered product of letters, applied right to left like any operator product.
struct OperatorWord {
  std::vector<Letter> letters;

  explicit OperatorWord(std::vector<Letter> l);
};

/// Compression of an operator to span{e_0..e_M} x span{e_0..e_N} in the
/// orthonormal basis e_n = z^n / ||z^n||.
struct TruncatedBlock {
  CMatrix entries;
  SpaceSpec space = SpaceSpec::hardy();
  int row_order = 0;
  int col_order = 0;
  bool tail_flag = false;
  double max_tail_ratio = 0.0;
  /// Estimated neglected mass (columns beyond the row order, or the word's
  /// internal-order discrepancy).
  double tail_estimate = 0.0;
};

/// Dense (rows+1) x (cols+1) matrix of <A e_j, e_i> = c_i(psi phi^j) b_i / b_j.
CMatrix materialize(const OperatorSpec& op, const SpaceSpec& space, int row_order, int col_order);

/// Tall (M+1) x (N+1) block of A, with per-column tail diagnostics. Requires M >= N.
TruncatedBlock build_block(const OperatorSpec& op, const SpaceSpec& space, int col_order, int row_order);

TruncatedBlock adjoint_block(const TruncatedBlock& b);

struct WordOptions {
  /// Recompute at internal order M/2 and report the discrepancy.
  bool compare_half_order = true;
};

/// (N+1) x (N+1) compression of the word with every letter held at internal
/// order M. Requires M >= 2N.
TruncatedBlock word_block(const OperatorWord& word, const SpaceSpec& space, int order, int internal_order,
                          WordOptions opts = {});

struct GramBlocks {
  CMatrix g1;  // P_N A*A P_N
  CMatrix g2;  // P_N A A* P_N
  double tail_bound = 0.0;
  bool slow_decay = false;
  std::vector<std::string> warnings;
};

/// Requires M >= 2N.
GramBlocks gram_blocks(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order);

/// Largest singular value of the leading square block.
double operator_norm_estimate(const TruncatedBlock& b);

/// max(8N, 160), doubled when a symbol has its Denjoy-Wolff point on the circle.
int default_internal_order(const OperatorSpec& op, int order);
int default_internal_order(const OperatorWord& word, int order);

void to_json(nlohmann::json& j, const OperatorSpec& op);
OperatorSpec operator_from_json(const nlohmann::json& j);

/// JSON header (orders, space, diagnostics) for an exported block.
nlohmann::json block_header(const TruncatedBlock& b);
/// Dense CSV, columns re0,im0,re1,im1,...
std::string block_to_csv(const TruncatedBlock& b);

}  // namespace wcop
