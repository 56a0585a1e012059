#include "wcop/space.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wcop {

SpaceSpec SpaceSpec::bergman(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw InvalidInput("Bergman space needs alpha > -1");
  return SpaceSpec(SpaceKind::Bergman, alpha);
}

SpaceSpec SpaceSpec::parse(const std::string& text) {
  if (text == "hardy") return hardy();
  const std::string prefix = "bergman:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string rest = text.substr(prefix.size());
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) throw InvalidInput("bad Bergman parameter in '" + text + "'");
    return bergman(alpha);
  }
  throw InvalidInput("space must be 'hardy' or 'bergman:<alpha>', got '" + text + "'");
}

std::string SpaceSpec::label() const {
  if (kind_ == SpaceKind::Hardy) return "hardy";
  std::ostringstream os;
  os << "bergman:" << alpha_;
  return os.str();
}

double basis_norm_sq(const SpaceSpec& space, int n) {
  if (n < 0) throw InvalidInput("basis_norm_sq: negative index");
  if (space.kind() == SpaceKind::Hardy) return 1.0;
  double v = 1.0;
  for (int k = 0; k < n; ++k) v *= (k + 1.0) / (k + space.alpha() + 2.0);
  return v;
}

BasisNorms::BasisNorms(const SpaceSpec& space, int order)
    : norm_sq_(static_cast<std::size_t>(order) + 1, 1.0), norm_(static_cast<std::size_t>(order) + 1, 1.0) {
  if (space.kind() == SpaceKind::Bergman) {
    for (std::size_t k = 0; k + 1 < norm_sq_.size(); ++k) {
      norm_sq_[k + 1] = norm_sq_[k] * (static_cast<double>(k) + 1.0) / (static_cast<double>(k) + space.alpha() + 2.0);
      norm_[k + 1] = std::sqrt(norm_sq_[k + 1]);
    }
  }
}

AnalyticExpr kernel_expr(const SpaceSpec& space, cplx w) {
  if (std::abs(w) >= 1.0) throw InvalidInput("kernel_expr: |w| must be < 1");
  return AnalyticExpr::power(AnalyticExpr::poly({1.0, -std::conj(w)}), -space.gamma());
}

double kernel_norm_sq(const SpaceSpec& space, cplx w) {
  if (std::abs(w) >= 1.0) throw InvalidInput("kernel_norm_sq: |w| must be < 1");
  return std::pow(1.0 - std::norm(w), -space.gamma());
}

double series_norm(const PowerSeries& s, const SpaceSpec& space) {
  const BasisNorms b(space, s.order());
  double acc = 0.0;
  for (int n = 0; n <= s.order(); ++n) acc += std::norm(s[n]) * b.norm_sq(n);
  return std::sqrt(acc);
}

cplx series_inner(const PowerSeries& f, const PowerSeries& g, const SpaceSpec& space) {
  const int order = std::min(f.order(), g.order());
  const BasisNorms b(space, order);
  cplx acc{};
  for (int n = 0; n <= order; ++n) acc += f[n] * std::conj(g[n]) * b.norm_sq(n);
  return acc;
}

void to_json(nlohmann::json& j, const SpaceSpec& s) {
  if (s.kind() == SpaceKind::Hardy)
    j = {{"kind", "hardy"}};
  else
    j = {{"kind", "bergman"}, {"alpha", s.alpha()}};
}

SpaceSpec space_from_json(const nlohmann::json& j) {
  if (j.is_string()) return SpaceSpec::parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InvalidInput("space JSON must be {\"kind\":\"hardy\"} or {\"kind\":\"bergman\",\"alpha\":x}");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "hardy") return SpaceSpec::hardy();
  if (kind == "bergman") {
    if (!j.contains("alpha") || !j.at("alpha").is_number()) throw InvalidInput("Bergman space JSON needs numeric alpha");
    return SpaceSpec::bergman(j.at("alpha").get<double>());
  }
  throw InvalidInput("unknown space kind '" + kind + "'");
}

}  // namespace wcop
