#include "wcop/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wcop/json_io.hpp"

namespace wcop {

// ---------------------------------------------------------------------------
// PowerSeries

int PowerSeries::effective_degree() const {
  for (int n = order(); n >= 0; --n)
    if ((*this)[n] != cplx{}) return n;
  return -1;
}

cplx PowerSeries::evaluate(cplx z) const {
  cplx acc{};
  for (int n = order(); n >= 0; --n) acc = acc * z + (*this)[n];
  return acc;
}

PowerSeries operator+(const PowerSeries& f, const PowerSeries& g) {
  const int order = std::min(f.order(), g.order());
  PowerSeries out(order);
  for (int n = 0; n <= order; ++n) out[n] = f[n] + g[n];
  return out;
}

PowerSeries operator-(const PowerSeries& f, const PowerSeries& g) {
  const int order = std::min(f.order(), g.order());
  PowerSeries out(order);
  for (int n = 0; n <= order; ++n) out[n] = f[n] - g[n];
  return out;
}

PowerSeries operator*(cplx k, const PowerSeries& f) {
  PowerSeries out = f;
  for (auto& c : out.coeffs()) c *= k;
  return out;
}

PowerSeries cauchy_product(const PowerSeries& f, const PowerSeries& g, int order) {
  PowerSeries out(order);
  const int df = std::min(f.effective_degree(), order);
  const int dg = std::min(g.effective_degree(), order);
  for (int i = 0; i <= df; ++i) {
    const cplx fi = f[i];
    if (fi == cplx{}) continue;
    const int jmax = std::min(dg, order - i);
    for (int j = 0; j <= jmax; ++j) out[i + j] += fi * g[j];
  }
  return out;
}

PowerSeries cauchy_product(const PowerSeries& f, const PowerSeries& g) {
  return cauchy_product(f, g, std::min(f.order(), g.order()));
}

void multiply_by_moebius(std::span<cplx> coeffs, const MoebiusMap& m) {
  if (m.d() == cplx{}) throw ConstraintViolation("series of a Moebius map with a pole at 0");
  // multiply by (a z + b), highest index first
  for (std::size_t n = coeffs.size(); n-- > 0;) {
    coeffs[n] = m.b() * coeffs[n] + (n > 0 ? m.a() * coeffs[n - 1] : cplx{});
  }
  // divide by (c z + d)
  const cplx inv_d = 1.0 / m.d();
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (n > 0) coeffs[n] -= m.c() * coeffs[n - 1];
    coeffs[n] *= inv_d;
  }
}

// ---------------------------------------------------------------------------
// Polynomial helpers

namespace {

using Coeffs = std::vector<cplx>;

Coeffs poly_mul(const Coeffs& p, const Coeffs& q) {
  if (p.empty() || q.empty()) return {};
  Coeffs out(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

void poly_axpy(Coeffs& acc, cplx k, const Coeffs& p) {
  if (acc.size() < p.size()) acc.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += k * p[i];
}

cplx poly_eval(const Coeffs& p, cplx z) {
  cplx acc{};
  for (std::size_t n = p.size(); n-- > 0;) acc = acc * z + p[n];
  return acc;
}

int poly_degree(const Coeffs& p) {
  for (std::size_t n = p.size(); n-- > 0;)
    if (p[n] != cplx{}) return static_cast<int>(n);
  return -1;
}

// Homogenized precomposition: returns sum_k p_k (a z + b)^k (c z + d)^(K - k).
Coeffs homogenized_precompose(const Coeffs& p, const MoebiusMap& m, int big_k) {
  const Coeffs lin_num{m.b(), m.a()};
  const Coeffs lin_den{m.d(), m.c()};
  std::vector<Coeffs> num_pow{{cplx{1.0}}}, den_pow{{cplx{1.0}}};
  for (int k = 1; k <= big_k; ++k) {
    num_pow.push_back(poly_mul(num_pow.back(), lin_num));
    den_pow.push_back(poly_mul(den_pow.back(), lin_den));
  }
  Coeffs out{cplx{}};
  for (int k = 0; k <= std::min(big_k, poly_degree(p)); ++k) {
    if (p[static_cast<std::size_t>(k)] == cplx{}) continue;
    poly_axpy(out, p[static_cast<std::size_t>(k)],
              poly_mul(num_pow[static_cast<std::size_t>(k)], den_pow[static_cast<std::size_t>(big_k - k)]));
  }
  return out;
}

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e9; }

cplx int_pow(cplx base, long long n) {
  if (n < 0) return 1.0 / int_pow(base, -n);
  cplx out{1.0};
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

cplx principal_pow(cplx base, double exponent) {
  if (is_integer(exponent)) return int_pow(base, static_cast<long long>(exponent));
  return std::pow(base, exponent);
}

void check_power_base(cplx b0, double exponent) {
  if (b0 == cplx{}) throw ConstraintViolation("Power: base vanishes at 0");
  if (!is_integer(exponent) && b0.imag() == 0.0 && b0.real() < 0.0)
    throw ConstraintViolation("Power: base(0) on the negative real axis violates the principal branch");
}

std::shared_ptr<const AnalyticExpr> share(AnalyticExpr e) {
  return std::make_shared<const AnalyticExpr>(std::move(e));
}

}  // namespace

// ---------------------------------------------------------------------------
// AnalyticExpr construction

AnalyticExpr AnalyticExpr::constant(cplx c) { return poly({c}); }
AnalyticExpr AnalyticExpr::z() { return poly({0.0, 1.0}); }

AnalyticExpr AnalyticExpr::poly(std::vector<cplx> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return AnalyticExpr(expr::Poly{std::move(coeffs)});
}

AnalyticExpr AnalyticExpr::rational(std::vector<cplx> num, std::vector<cplx> den) {
  if (den.empty() || den.front() == cplx{}) throw ConstraintViolation("Rational: denominator vanishes at 0");
  if (num.empty()) num.push_back(0.0);
  return AnalyticExpr(expr::Rational{std::move(num), std::move(den)});
}

AnalyticExpr AnalyticExpr::power(AnalyticExpr base, double exponent) {
  if (!std::isfinite(exponent)) throw InvalidInput("Power: exponent must be finite");
  check_power_base(base.evaluate(0.0), exponent);
  return AnalyticExpr(expr::Power{share(std::move(base)), exponent});
}

AnalyticExpr AnalyticExpr::exp(AnalyticExpr arg) { return AnalyticExpr(expr::Exp{share(std::move(arg))}); }

AnalyticExpr AnalyticExpr::sum(std::vector<AnalyticExpr> terms) {
  if (terms.empty()) return constant(0.0);
  return AnalyticExpr(expr::Sum{std::move(terms)});
}

AnalyticExpr AnalyticExpr::product(std::vector<AnalyticExpr> factors) {
  if (factors.empty()) return constant(1.0);
  return AnalyticExpr(expr::Product{std::move(factors)});
}

AnalyticExpr AnalyticExpr::scale(cplx factor, AnalyticExpr inner) {
  return AnalyticExpr(expr::Scale{factor, share(std::move(inner))});
}

AnalyticExpr AnalyticExpr::precompose(AnalyticExpr inner, MoebiusMap map) {
  if (map.d() == cplx{}) throw ConstraintViolation("PrecomposeMoebius: map has a pole at 0");
  AnalyticExpr out(expr::PrecomposeMoebius{share(std::move(inner)), map});
  // eager check: every node constraint must survive the rewrite at z = 0
  (void)eliminate_moebius(out);
  return out;
}

AnalyticExpr AnalyticExpr::moebius(const MoebiusMap& m) { return rational({m.b(), m.a()}, {m.d(), m.c()}); }

AnalyticExpr operator*(const AnalyticExpr& f, const AnalyticExpr& g) { return AnalyticExpr::product({f, g}); }
AnalyticExpr operator+(const AnalyticExpr& f, const AnalyticExpr& g) { return AnalyticExpr::sum({f, g}); }

cplx AnalyticExpr::evaluate(cplx z) const {
  return std::visit(
      [z](const auto& n) -> cplx {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Poly>) {
          return poly_eval(n.coeffs, z);
        } else if constexpr (std::is_same_v<T, expr::Rational>) {
          return poly_eval(n.num, z) / poly_eval(n.den, z);
        } else if constexpr (std::is_same_v<T, expr::Power>) {
          return principal_pow(n.base->evaluate(z), n.exponent);
        } else if constexpr (std::is_same_v<T, expr::Exp>) {
          return std::exp(n.arg->evaluate(z));
        } else if constexpr (std::is_same_v<T, expr::Sum>) {
          cplx acc{};
          for (const auto& t : n.terms) acc += t.evaluate(z);
          return acc;
        } else if constexpr (std::is_same_v<T, expr::Product>) {
          cplx acc{1.0};
          for (const auto& f : n.factors) acc *= f.evaluate(z);
          return acc;
        } else if constexpr (std::is_same_v<T, expr::Scale>) {
          return n.factor * n.inner->evaluate(z);
        } else {
          return n.inner->evaluate(n.map(z));
        }
      },
      *node_);
}

bool AnalyticExpr::contains_precompose() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::PrecomposeMoebius>) {
          return true;
        } else if constexpr (std::is_same_v<T, expr::Power>) {
          return n.base->contains_precompose();
        } else if constexpr (std::is_same_v<T, expr::Exp>) {
          return n.arg->contains_precompose();
        } else if constexpr (std::is_same_v<T, expr::Scale>) {
          return n.inner->contains_precompose();
        } else if constexpr (std::is_same_v<T, expr::Sum>) {
          return std::any_of(n.terms.begin(), n.terms.end(), [](const auto& t) { return t.contains_precompose(); });
        } else if constexpr (std::is_same_v<T, expr::Product>) {
          return std::any_of(n.factors.begin(), n.factors.end(),
                             [](const auto& t) { return t.contains_precompose(); });
        } else {
          return false;
        }
      },
      *node_);
}

// ---------------------------------------------------------------------------
// Moebius elimination

namespace {

AnalyticExpr push_map(const AnalyticExpr& e, const MoebiusMap& m);

AnalyticExpr eliminate(const AnalyticExpr& e) {
  return std::visit(
      [&e](const auto& n) -> AnalyticExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Poly> || std::is_same_v<T, expr::Rational>) {
          return e;
        } else if constexpr (std::is_same_v<T, expr::Power>) {
          return AnalyticExpr::power(eliminate(*n.base), n.exponent);
        } else if constexpr (std::is_same_v<T, expr::Exp>) {
          return AnalyticExpr::exp(eliminate(*n.arg));
        } else if constexpr (std::is_same_v<T, expr::Sum>) {
          std::vector<AnalyticExpr> terms;
          for (const auto& t : n.terms) terms.push_back(eliminate(t));
          return AnalyticExpr::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, expr::Product>) {
          std::vector<AnalyticExpr> factors;
          for (const auto& f : n.factors) factors.push_back(eliminate(f));
          return AnalyticExpr::product(std::move(factors));
        } else if constexpr (std::is_same_v<T, expr::Scale>) {
          return AnalyticExpr::scale(n.factor, eliminate(*n.inner));
        } else {
          return push_map(*n.inner, n.map);
        }
      },
      e.node());
}

// e o m, with the result Moebius-free.
AnalyticExpr push_map(const AnalyticExpr& e, const MoebiusMap& m) {
  return std::visit(
      [&m](const auto& n) -> AnalyticExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Poly>) {
          const int big_k = std::max(poly_degree(n.coeffs), 0);
          Coeffs one{cplx{1.0}};
          return AnalyticExpr::rational(homogenized_precompose(n.coeffs, m, big_k),
                                        homogenized_precompose(one, m, big_k));
        } else if constexpr (std::is_same_v<T, expr::Rational>) {
          const int big_k = std::max({poly_degree(n.num), poly_degree(n.den), 0});
          return AnalyticExpr::rational(homogenized_precompose(n.num, m, big_k),
                                        homogenized_precompose(n.den, m, big_k));
        } else if constexpr (std::is_same_v<T, expr::Power>) {
          return AnalyticExpr::power(push_map(*n.base, m), n.exponent);
        } else if constexpr (std::is_same_v<T, expr::Exp>) {
          return AnalyticExpr::exp(push_map(*n.arg, m));
        } else if constexpr (std::is_same_v<T, expr::Sum>) {
          std::vector<AnalyticExpr> terms;
          for (const auto& t : n.terms) terms.push_back(push_map(t, m));
          return AnalyticExpr::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, expr::Product>) {
          std::vector<AnalyticExpr> factors;
          for (const auto& f : n.factors) factors.push_back(push_map(f, m));
          return AnalyticExpr::product(std::move(factors));
        } else if constexpr (std::is_same_v<T, expr::Scale>) {
          return AnalyticExpr::scale(n.factor, push_map(*n.inner, m));
        } else {
          return push_map(*n.inner, compose(n.map, m));
        }
      },
      e.node());
}

}  // namespace

AnalyticExpr eliminate_moebius(const AnalyticExpr& e) { return eliminate(e); }

// ---------------------------------------------------------------------------
// Taylor coefficients

namespace {

PowerSeries rational_series(const Coeffs& num, const Coeffs& den, int order) {
  PowerSeries out(order);
  const int dd = poly_degree(den);
  const cplx inv0 = 1.0 / den.front();
  for (int n = 0; n <= order; ++n) {
    cplx acc = static_cast<std::size_t>(n) < num.size() ? num[static_cast<std::size_t>(n)] : cplx{};
    for (int k = 1; k <= std::min(n, dd); ++k) acc -= den[static_cast<std::size_t>(k)] * out[n - k];
    out[n] = acc * inv0;
  }
  return out;
}

// Q = B^g from Q' B = g B' Q:  q_m = 1/(m b_0) sum_{j=1}^{m} (g j - (m - j)) b_j q_{m-j}
PowerSeries power_series(const PowerSeries& base, double exponent, int order) {
  const cplx b0 = base[0];
  check_power_base(b0, exponent);
  PowerSeries out(order);
  out[0] = principal_pow(b0, exponent);
  const int db = base.effective_degree();
  const cplx inv_b0 = 1.0 / b0;
  for (int m = 1; m <= order; ++m) {
    cplx acc{};
    for (int j = 1; j <= std::min(m, db); ++j)
      acc += (exponent * j - static_cast<double>(m - j)) * base[j] * out[m - j];
    out[m] = acc * inv_b0 / static_cast<double>(m);
  }
  return out;
}

// E = exp(S): e_n = (1/n) sum_{k=1}^{n} k s_k e_{n-k}
PowerSeries exp_series(const PowerSeries& arg, int order) {
  PowerSeries out(order);
  out[0] = std::exp(arg[0]);
  const int ds = arg.effective_degree();
  for (int n = 1; n <= order; ++n) {
    cplx acc{};
    for (int k = 1; k <= std::min(n, ds); ++k) acc += static_cast<double>(k) * arg[k] * out[n - k];
    out[n] = acc / static_cast<double>(n);
  }
  return out;
}

PowerSeries taylor_free(const AnalyticExpr& e, int order) {
  return std::visit(
      [order](const auto& n) -> PowerSeries {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Poly>) {
          PowerSeries out(order);
          for (int k = 0; k <= std::min(order, static_cast<int>(n.coeffs.size()) - 1); ++k)
            out[k] = n.coeffs[static_cast<std::size_t>(k)];
          return out;
        } else if constexpr (std::is_same_v<T, expr::Rational>) {
          return rational_series(n.num, n.den, order);
        } else if constexpr (std::is_same_v<T, expr::Power>) {
          // (N/D)^k with integer k stays rational: N^k / D^k, O(M deg) instead of O(M^2)
          const auto* rat = std::get_if<expr::Rational>(&n.base->node());
          if (rat != nullptr && is_integer(n.exponent) && std::abs(n.exponent) <= 64) {
            const long long k = static_cast<long long>(n.exponent);
            Coeffs top{cplx{1.0}}, bottom{cplx{1.0}};
            for (long long i = 0; i < std::abs(k); ++i) {
              top = poly_mul(top, k > 0 ? rat->num : rat->den);
              bottom = poly_mul(bottom, k > 0 ? rat->den : rat->num);
            }
            check_power_base(poly_eval(rat->num, 0.0) / rat->den.front(), n.exponent);
            return rational_series(top, bottom, order);
          }
          return power_series(taylor_free(*n.base, order), n.exponent, order);
        } else if constexpr (std::is_same_v<T, expr::Exp>) {
          return exp_series(taylor_free(*n.arg, order), order);
        } else if constexpr (std::is_same_v<T, expr::Sum>) {
          PowerSeries out(order);
          for (const auto& t : n.terms) out = out + taylor_free(t, order);
          return out;
        } else if constexpr (std::is_same_v<T, expr::Product>) {
          PowerSeries out = taylor_free(n.factors.front(), order);
          for (std::size_t i = 1; i < n.factors.size(); ++i)
            out = cauchy_product(out, taylor_free(n.factors[i], order), order);
          return out;
        } else if constexpr (std::is_same_v<T, expr::Scale>) {
          return n.factor * taylor_free(*n.inner, order);
        } else {
          throw std::logic_error("taylor: PrecomposeMoebius must be eliminated first");
        }
      },
      e.node());
}

}  // namespace

PowerSeries taylor(const AnalyticExpr& e, int order) {
  if (order < 0) throw InvalidInput("taylor: negative order");
  if (e.contains_precompose()) return taylor_free(eliminate_moebius(e), order);
  return taylor_free(e, order);
}

std::vector<PowerSeries> moebius_powers(const MoebiusMap& m, int count, int order) {
  if (m.d() == cplx{}) throw ConstraintViolation("moebius_powers: pole at 0");
  std::vector<PowerSeries> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  PowerSeries cur(order);
  cur[0] = 1.0;
  for (int j = 0; j <= count; ++j) {
    out.push_back(cur);
    multiply_by_moebius(cur.coeffs(), m);
  }
  return out;
}

TailDiagnostics tail_ratio(const PowerSeries& s) {
  const int order = s.order();
  if (order < 16) throw InvalidInput("tail_ratio: need order >= 16");
  const int half = (order + 1) / 2;
  double front = 0.0, back = 0.0;
  for (int n = 0; n < half; ++n) front += std::norm(s[n]);
  for (int n = half; n <= order; ++n) back += std::norm(s[n]);
  front = std::sqrt(front);
  back = std::sqrt(back);

  TailDiagnostics out;
  if (back == 0.0) return out;
  if (front == 0.0) {
    out.ratio = 1.0;
    out.tail_bound = back;
    out.slow_decay = true;
    return out;
  }
  // The back block is the front block shifted by `half` (plus one term for odd lengths).
  const int span = order + 1 - half;
  out.ratio = std::pow(back / front, 1.0 / half);
  out.tail_bound = out.ratio < 1.0 ? back * std::pow(out.ratio, span) : back;
  out.slow_decay = out.ratio > kSlowDecayRatio;
  return out;
}

// ---------------------------------------------------------------------------
// JSON / CSV

namespace {

nlohmann::json coeffs_to_json(const Coeffs& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : c) arr.push_back(complex_to_json(z));
  return arr;
}

Coeffs coeffs_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("expected a coefficient array");
  Coeffs out;
  for (const auto& item : j) out.push_back(complex_from_json(item));
  return out;
}

const nlohmann::json& child(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("expression JSON missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

void to_json(nlohmann::json& j, const AnalyticExpr& e) {
  std::visit(
      [&j](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Poly>) {
          j = {{"kind", "poly"}, {"coeffs", coeffs_to_json(n.coeffs)}};
        } else if constexpr (std::is_same_v<T, expr::Rational>) {
          j = {{"kind", "rational"}, {"num", coeffs_to_json(n.num)}, {"den", coeffs_to_json(n.den)}};
        } else if constexpr (std::is_same_v<T, expr::Power>) {
          j = {{"kind", "power"}, {"base", *n.base}, {"exponent", n.exponent}};
        } else if constexpr (std::is_same_v<T, expr::Exp>) {
          j = {{"kind", "exp"}, {"arg", *n.arg}};
        } else if constexpr (std::is_same_v<T, expr::Sum>) {
          j = {{"kind", "sum"}, {"terms", n.terms}};
        } else if constexpr (std::is_same_v<T, expr::Product>) {
          j = {{"kind", "product"}, {"factors", n.factors}};
        } else if constexpr (std::is_same_v<T, expr::Scale>) {
          j = {{"kind", "scale"}, {"factor", complex_to_json(n.factor)}, {"expr", *n.inner}};
        } else {
          j = {{"kind", "precompose"}, {"expr", *n.inner}, {"map", n.map}};
        }
      },
      e.node());
}

AnalyticExpr expr_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InvalidInput("expression JSON must be an object with a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  auto list = [&](const char* key) {
    const auto& arr = child(j, key);
    if (!arr.is_array()) throw InvalidInput(std::string("expression JSON: '") + key + "' must be an array");
    std::vector<AnalyticExpr> out;
    for (const auto& item : arr) out.push_back(expr_from_json(item));
    return out;
  };
  if (kind == "poly") return AnalyticExpr::poly(coeffs_from_json(child(j, "coeffs")));
  if (kind == "rational")
    return AnalyticExpr::rational(coeffs_from_json(child(j, "num")), coeffs_from_json(child(j, "den")));
  if (kind == "power") {
    const auto& ex = child(j, "exponent");
    if (!ex.is_number()) throw InvalidInput("power exponent must be a real number");
    return AnalyticExpr::power(expr_from_json(child(j, "base")), ex.get<double>());
  }
  if (kind == "exp") return AnalyticExpr::exp(expr_from_json(child(j, "arg")));
  if (kind == "sum") return AnalyticExpr::sum(list("terms"));
  if (kind == "product") return AnalyticExpr::product(list("factors"));
  if (kind == "scale")
    return AnalyticExpr::scale(complex_from_json(child(j, "factor")), expr_from_json(child(j, "expr")));
  if (kind == "precompose")
    return AnalyticExpr::precompose(expr_from_json(child(j, "expr")), moebius_from_json(child(j, "map")));
  throw InvalidInput("unknown expression kind '" + kind + "'");
}

std::string series_to_csv(const PowerSeries& s) {
  std::ostringstream os;
  os.precision(12);
  os << "index,re,im\n";
  for (int n = 0; n <= s.order(); ++n) os << n << ',' << s[n].real() << ',' << s[n].imag() << '\n';
  return os.str();
}

}  // namespace wcop
