#include "wcop/opmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wcop {

namespace {

constexpr int kBoundednessGrid = 512;
constexpr double kBoundednessRadius = 0.999;
constexpr double kBoundednessCap = 1e12;
// Coefficient growth beyond this ratio puts a singularity inside |z| < 0.95,
// which the circle grid can miss.
constexpr int kGrowthOrder = 64;
constexpr double kGrowthRatio = 1.05;

bool is_constant_one(const AnalyticExpr& e) {
  const auto* p = std::get_if<expr::Poly>(&e.node());
  return p != nullptr && p->coeffs.size() == 1 && p->coeffs.front() == cplx{1.0};
}

}  // namespace

OperatorSpec::OperatorSpec(AnalyticExpr weight, std::optional<MoebiusMap> symbol)
    : weight_(std::move(weight)), symbol_(std::move(symbol)) {
  if (symbol_ && !is_self_map(*symbol_)) throw ConstraintViolation("operator symbol is not a self-map of the disk");
  for (int k = 0; k < kBoundednessGrid; ++k) {
    const cplx z = std::polar(kBoundednessRadius, 2.0 * std::numbers::pi * k / kBoundednessGrid);
    const cplx v = weight_.evaluate(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > kBoundednessCap)
      throw ConstraintViolation("operator weight is not bounded on the disk (checked at radius 0.999)");
  }
  if (tail_ratio(taylor(weight_, kGrowthOrder)).ratio > kGrowthRatio)
    throw ConstraintViolation("operator weight has a singularity inside the disk");
}

OperatorSpec OperatorSpec::composition(const MoebiusMap& symbol) {
  return {AnalyticExpr::constant(1.0), symbol};
}

OperatorSpec OperatorSpec::toeplitz(AnalyticExpr weight) { return {std::move(weight), std::nullopt}; }

OperatorSpec OperatorSpec::weighted(AnalyticExpr weight, const MoebiusMap& symbol) {
  return {std::move(weight), symbol};
}

MoebiusMap OperatorSpec::symbol_or_identity() const { return symbol_.value_or(MoebiusMap::identity()); }

OperatorSpec OperatorSpec::scaled(cplx c) const { return {AnalyticExpr::scale(c, weight_), symbol_}; }

OperatorSpec operator_product(const OperatorSpec& a, const OperatorSpec& b) {
  if (!a.symbol()) return {a.weight() * b.weight(), b.symbol(), OperatorSpec::Unchecked{}};
  const MoebiusMap phi_a = *a.symbol();
  AnalyticExpr w = is_constant_one(b.weight()) ? a.weight()
                                              : a.weight() * AnalyticExpr::precompose(b.weight(), phi_a);
  return {std::move(w), compose(b.symbol_or_identity(), phi_a), OperatorSpec::Unchecked{}};
}

OperatorSpec operator_power(const OperatorSpec& op, int k) {
  if (k < 1) throw InvalidInput("operator_power: exponent must be >= 1");
  const MoebiusMap phi = op.symbol_or_identity();
  if (is_constant_one(op.weight())) {
    if (!op.symbol()) return op;
    return {op.weight(), iterate(phi, k), OperatorSpec::Unchecked{}};
  }
  std::vector<AnalyticExpr> factors{op.weight()};
  for (int i = 1; i < k; ++i) {
    if (op.symbol())
      factors.push_back(AnalyticExpr::precompose(op.weight(), iterate(phi, i)));
    else
      factors.push_back(op.weight());
  }
  std::optional<MoebiusMap> sym;
  if (op.symbol()) sym = iterate(phi, k);
  return {AnalyticExpr::product(std::move(factors)), sym, OperatorSpec::Unchecked{}};
}

OperatorWord::OperatorWord(std::vector<Letter> l) : letters(std::move(l)) {
  if (letters.empty()) throw InvalidInput("operator word must be nonempty");
}

CMatrix materialize(const OperatorSpec& op, const SpaceSpec& space, int row_order, int col_order) {
  if (row_order < 0 || col_order < 0) throw InvalidInput("materialize: negative order");
  const BasisNorms b(space, std::max(row_order, col_order));
  const PowerSeries w = taylor(op.weight(), row_order);
  CMatrix out = CMatrix::Zero(row_order + 1, col_order + 1);
  if (!op.symbol()) {
    for (int j = 0; j <= col_order; ++j)
      for (int i = j; i <= row_order; ++i) out(i, j) = w[i - j] * (b.norm(i) / b.norm(j));
    return out;
  }
  std::vector<cplx> cur(w.coeffs().begin(), w.coeffs().end());
  for (int j = 0; j <= col_order; ++j) {
    for (int i = 0; i <= row_order; ++i) out(i, j) = cur[static_cast<std::size_t>(i)] * (b.norm(i) / b.norm(j));
    if (j < col_order) multiply_by_moebius(cur, *op.symbol());
  }
  return out;
}

namespace {

// Tail diagnostics of the columns of a tall block (each column is a coefficient sequence).
struct ColumnTails {
  std::vector<double> bounds;
  double max_ratio = 0.0;
  bool slow = false;
  bool available = false;
};

ColumnTails column_tails(const CMatrix& m) {
  ColumnTails out;
  if (m.rows() < 17) return out;
  out.available = true;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    std::vector<cplx> col(m.col(j).data(), m.col(j).data() + m.rows());
    const TailDiagnostics t = tail_ratio(PowerSeries(std::move(col)));
    out.bounds.push_back(t.tail_bound);
    out.max_ratio = std::max(out.max_ratio, t.ratio);
    out.slow = out.slow || t.slow_decay;
  }
  return out;
}

double sum_sq(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

bool symbol_touches_boundary(const OperatorSpec& op) {
  return op.symbol() && !is_identity(*op.symbol()) && touches_boundary(*op.symbol());
}

}  // namespace

TruncatedBlock build_block(const OperatorSpec& op, const SpaceSpec& space, int col_order, int row_order) {
  if (row_order < col_order) throw ConstraintViolation("build_block: need M >= N");
  TruncatedBlock out;
  out.entries = materialize(op, space, row_order, col_order);
  out.space = space;
  out.row_order = row_order;
  out.col_order = col_order;
  const ColumnTails tails = column_tails(out.entries);
  out.max_tail_ratio = tails.max_ratio;
  out.tail_estimate = std::sqrt(sum_sq(tails.bounds));
  out.tail_flag = tails.slow || symbol_touches_boundary(op);
  return out;
}

TruncatedBlock adjoint_block(const TruncatedBlock& b) {
  TruncatedBlock out = b;
  out.entries = b.entries.adjoint();
  out.row_order = b.col_order;
  out.col_order = b.row_order;
  return out;
}

namespace {

CMatrix word_product(const OperatorWord& word, const SpaceSpec& space, int order, int internal_order,
                     bool* slow) {
  // Right to left: start with the (M+1) x (N+1) tall block of the last letter.
  auto letter_block = [&](const Letter& l, int cols) {
    if (!l.adjoint) return materialize(l.op, space, internal_order, cols);
    CMatrix wide = materialize(l.op, space, cols, internal_order);
    return CMatrix(wide.adjoint());
  };
  const auto& letters = word.letters;
  CMatrix acc = letter_block(letters.back(), order);
  if (slow != nullptr && !letters.back().adjoint) *slow = *slow || column_tails(acc).slow;
  for (std::size_t i = letters.size() - 1; i-- > 0;) {
    const CMatrix blk = letter_block(letters[i], internal_order);
    if (slow != nullptr && !letters[i].adjoint) *slow = *slow || column_tails(blk.leftCols(order + 1)).slow;
    acc = blk * acc;
  }
  return acc.topRows(order + 1);
}

}  // namespace

TruncatedBlock word_block(const OperatorWord& word, const SpaceSpec& space, int order, int internal_order,
                          WordOptions opts) {
  if (order < 0) throw InvalidInput("word_block: negative order");
  if (internal_order < 2 * order) throw ConstraintViolation("word_block: internal order must satisfy M >= 2N");
  bool slow = false;
  TruncatedBlock out;
  out.entries = word_product(word, space, order, internal_order, &slow);
  out.space = space;
  out.row_order = order;
  out.col_order = order;
  for (const auto& l : word.letters) out.tail_flag = out.tail_flag || symbol_touches_boundary(l.op);
  out.tail_flag = out.tail_flag || slow;
  if (opts.compare_half_order && internal_order / 2 >= order) {
    const CMatrix coarse = word_product(word, space, order, internal_order / 2, nullptr);
    out.tail_estimate = spectral_norm(out.entries - coarse);
  }
  return out;
}

GramBlocks gram_blocks(const OperatorSpec& op, const SpaceSpec& space, int order, int internal_order) {
  if (order < 0) throw InvalidInput("gram_blocks: negative order");
  if (internal_order < 2 * order) throw ConstraintViolation("gram_blocks: internal order must satisfy M >= 2N");
  const CMatrix tall = materialize(op, space, internal_order, order);
  const CMatrix wide = materialize(op, space, order, internal_order);

  GramBlocks out;
  out.g1 = hermitian_part(tall.adjoint() * tall);
  out.g2 = hermitian_part(wide * wide.adjoint());

  // |error(G1)_pq| <= t_p t_q with t the column tails; same for rows of G2.
  const ColumnTails cols = column_tails(tall);
  const ColumnTails rows = column_tails(wide.transpose());
  const double scale = out.g1.cwiseAbs().maxCoeff() + out.g2.cwiseAbs().maxCoeff();
  const double rounding = 4.0 * (internal_order + 1) * std::numeric_limits<double>::epsilon() * scale;
  out.tail_bound = sum_sq(cols.bounds) + sum_sq(rows.bounds) + rounding;
  out.slow_decay = cols.slow || rows.slow;
  if (out.slow_decay) {
    std::ostringstream os;
    os << "slow coefficient decay (ratio " << std::max(cols.max_ratio, rows.max_ratio) << ") at internal order "
       << internal_order << "; raise M";
    out.warnings.push_back(os.str());
  }
  if (!cols.available) out.warnings.push_back("internal order below 16: tail diagnostics unavailable");
  return out;
}

double operator_norm_estimate(const TruncatedBlock& b) {
  const int n = std::min(b.row_order, b.col_order);
  return spectral_norm(leading(b.entries, n, n));
}

int default_internal_order(const OperatorSpec& op, int order) {
  const int base = std::max(8 * order, 160);
  return symbol_touches_boundary(op) ? 2 * base : base;
}

int default_internal_order(const OperatorWord& word, int order) {
  int out = std::max(8 * order, 160);
  for (const auto& l : word.letters) out = std::max(out, default_internal_order(l.op, order));
  return out;
}

void to_json(nlohmann::json& j, const OperatorSpec& op) {
  j = {{"weight", op.weight()}};
  if (op.symbol())
    j["symbol"] = *op.symbol();
  else
    j["symbol"] = nullptr;
}

OperatorSpec operator_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("operator JSON must be an object {\"weight\":..., \"symbol\":...}");
  AnalyticExpr weight = j.contains("weight") ? expr_from_json(j.at("weight")) : AnalyticExpr::constant(1.0);
  std::optional<MoebiusMap> symbol;
  if (j.contains("symbol") && !j.at("symbol").is_null()) {
    const auto& s = j.at("symbol");
    if (!(s.is_string() && s.get<std::string>() == "identity")) symbol = moebius_from_json(s);
  }
  return {std::move(weight), symbol};
}

nlohmann::json block_header(const TruncatedBlock& b) {
  return {{"rows", b.entries.rows()},
          {"cols", b.entries.cols()},
          {"N", b.col_order},
          {"M", b.row_order},
          {"space", b.space},
          {"tail_flag", b.tail_flag},
          {"max_tail_ratio", b.max_tail_ratio},
          {"tail_estimate", b.tail_estimate}};
}

std::string block_to_csv(const TruncatedBlock& b) {
  std::ostringstream os;
  os.precision(12);
  for (Eigen::Index j = 0; j < b.entries.cols(); ++j) os << (j ? "," : "") << "re" << j << ",im" << j;
  os << '\n';
  for (Eigen::Index i = 0; i < b.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.entries.cols(); ++j)
      os << (j ? "," : "") << b.entries(i, j).real() + 0.0 << ',' << b.entries(i, j).imag() + 0.0;
    os << '\n';
  }
  return os.str();
}

}  // namespace wcop
