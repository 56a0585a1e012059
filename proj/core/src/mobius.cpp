#include "wcop/mobius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "wcop/json_io.hpp"

namespace wcop {

namespace {

double coeff_norm(cplx a, cplx b, cplx c, cplx d) {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

// Threshold below which a coefficient of a unit-normalized map counts as zero.
constexpr double kCoeffZero = 1e-13;

}  // namespace

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {
  const double s = coeff_norm(a, b, c, d);
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("Moebius map: coefficients must be finite and not all zero");
  if (std::abs(a * d - b * c) <= 1e-14 * s * s) throw InvalidInput("Moebius map: degenerate (ad - bc = 0)");
}

MoebiusMap MoebiusMap::normalized() const {
  const double s = coeff_norm(a_, b_, c_, d_);
  return {a_ / s, b_ / s, c_ / s, d_ / s};
}

MoebiusMap MoebiusMap::scaled(cplx k) const { return {k * a_, k * b_, k * c_, k * d_}; }

ExtComplex MoebiusMap::apply(ExtComplex z) const {
  if (z.infinite) {
    if (c_ == cplx{}) return ExtComplex::infinity();
    return ExtComplex::finite(a_ / c_);
  }
  const cplx den = c_ * z.value + d_;
  if (den == cplx{}) return ExtComplex::infinity();
  return ExtComplex::finite((a_ * z.value + b_) / den);
}

cplx MoebiusMap::operator()(cplx z) const {
  const cplx den = c_ * z + d_;
  if (den == cplx{}) throw ConstraintViolation("Moebius map evaluated at its pole");
  return (a_ * z + b_) / den;
}

double projective_distance(const MoebiusMap& m1, const MoebiusMap& m2) {
  const MoebiusMap u = m1.normalized();
  const MoebiusMap v = m2.normalized();
  const std::array<cplx, 4> x{u.a(), u.b(), u.c(), u.d()};
  const std::array<cplx, 4> y{v.a(), v.b(), v.c(), v.d()};
  cplx inner{};
  for (std::size_t i = 0; i < 4; ++i) inner += std::conj(y[i]) * x[i];
  const cplx phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cplx{1.0};
  double dist = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dist += std::norm(x[i] - phase * y[i]);
  return std::sqrt(dist);
}

bool projectively_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol) {
  return projective_distance(m1, m2) <= tol;
}

bool is_identity(const MoebiusMap& m, double tol) {
  return projective_distance(m, MoebiusMap::identity()) <= tol;
}

ExtComplex apply(const MoebiusMap& m, ExtComplex z) { return m.apply(z); }

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  return {m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
          m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()};
}

MoebiusMap inverse(const MoebiusMap& m) { return {m.d(), -m.b(), -m.c(), m.a()}; }

MoebiusMap iterate(const MoebiusMap& m, int n) {
  if (n < 0) throw InvalidInput("iterate: negative count");
  MoebiusMap out = MoebiusMap::identity();
  const MoebiusMap step = m.normalized();
  for (int i = 0; i < n; ++i) out = compose(step, out).normalized();
  return out;
}

cplx derivative_at(const MoebiusMap& m, cplx z) {
  const cplx den = m.c() * z + m.d();
  if (den == cplx{}) throw InvalidInput("derivative_at: pole of the map");
  return m.det() / (den * den);
}

ImageCircle image_circle(const MoebiusMap& m) {
  const MoebiusMap u = m.normalized();
  const double gap = std::norm(u.d()) - std::norm(u.c());
  ImageCircle out;
  if (std::abs(gap) <= 1e-14) {
    out.is_line = true;
    return out;
  }
  out.center = (u.b() * std::conj(u.d()) - u.a() * std::conj(u.c())) / gap;
  out.radius = std::abs(u.det()) / std::abs(gap);
  return out;
}

bool is_self_map(const MoebiusMap& m, double tol) {
  const MoebiusMap u = m.normalized();
  if (std::abs(u.d()) <= std::abs(u.c())) return false;  // pole in the closed disk
  const ImageCircle ic = image_circle(u);
  if (ic.is_line) return false;
  return std::abs(ic.center) + ic.radius <= 1.0 + tol;
}

bool is_automorphism(const MoebiusMap& m, double tol) {
  if (!is_self_map(m, tol)) return false;
  const ImageCircle ic = image_circle(m);
  return std::abs(ic.center) <= tol && std::abs(ic.radius - 1.0) <= tol;
}

FixedPointData fixed_points(const MoebiusMap& m, double tol) {
  if (is_identity(m)) throw InvalidInput("fixed_points: identity map fixes every point");
  const MoebiusMap u = m.normalized();
  const cplx a = u.a(), b = u.b(), c = u.c(), d = u.d();
  auto finite_point = [&](cplx z, int mult) {
    return FixedPoint{ExtComplex::finite(z), mult, derivative_at(u, z)};
  };
  FixedPointData out;
  if (std::abs(c) <= kCoeffZero) {
    // affine: (a z + b) / d
    if (std::abs(d - a) <= kCoeffZero) {
      out.points.push_back({ExtComplex::infinity(), 2, std::nullopt});
    } else {
      out.points.push_back(FixedPoint{ExtComplex::finite(b / (d - a)), 1, a / d});
      out.points.push_back({ExtComplex::infinity(), 1, std::nullopt});
    }
    return out;
  }
  // c z^2 + (d - a) z - b = 0
  const cplx lin = d - a;
  const cplx disc = lin * lin + 4.0 * b * c;
  if (std::abs(disc) <= tol) {
    out.points.push_back(finite_point(-lin / (2.0 * c), 2));
    return out;
  }
  const cplx root = std::sqrt(disc);
  const cplx plus = lin + root, minus = lin - root;
  const cplx q = -0.5 * (std::abs(plus) >= std::abs(minus) ? plus : minus);
  out.points.push_back(finite_point(q / c, 1));
  out.points.push_back(finite_point(-b / q, 1));
  return out;
}

namespace {

bool in_closed_disk(const FixedPoint& p, double tol) {
  return p.point.is_finite() && std::abs(p.point.value) <= 1.0 + tol;
}

bool on_circle(const FixedPoint& p, double tol) {
  return p.point.is_finite() && std::abs(std::abs(p.point.value) - 1.0) <= tol;
}

bool has_interior_fixed_point(const FixedPointData& fp, double tol) {
  return std::any_of(fp.points.begin(), fp.points.end(), [&](const FixedPoint& p) {
    return p.point.is_finite() && std::abs(p.point.value) < 1.0 - tol;
  });
}

}  // namespace

DWPoint denjoy_wolff(const MoebiusMap& m, double tol) {
  if (is_identity(m)) throw InvalidInput("denjoy_wolff: identity map has no Denjoy-Wolff point");
  const FixedPointData fp = fixed_points(m, tol);
  if (is_automorphism(m, tol) && has_interior_fixed_point(fp, tol))
    throw InvalidInput("denjoy_wolff: elliptic automorphism has no Denjoy-Wolff point");

  const FixedPoint* best = nullptr;
  for (const auto& p : fp.points) {
    if (!in_closed_disk(p, tol)) continue;
    if (best == nullptr || std::abs(*p.derivative) < std::abs(*best->derivative)) best = &p;
  }
  if (best == nullptr) throw ConstraintViolation("denjoy_wolff: no fixed point in the closed disk (not a self-map?)");

  DWPoint out{best->point.value, *best->derivative, on_circle(*best, tol)};
  if (out.on_boundary) {
    out.location /= std::abs(out.location);
    out.derivative = cplx{out.derivative.real(), 0.0};
  }
  return out;
}

std::string_view to_string(MapClass c) {
  switch (c) {
    case MapClass::Identity: return "Identity";
    case MapClass::EllipticAutomorphism: return "EllipticAutomorphism";
    case MapClass::HyperbolicAutomorphism: return "HyperbolicAutomorphism";
    case MapClass::ParabolicAutomorphism: return "ParabolicAutomorphism";
    case MapClass::ParabolicNonAutomorphism: return "ParabolicNonAutomorphism";
    case MapClass::HyperbolicTypeNonAutomorphism: return "HyperbolicTypeNonAutomorphism";
    case MapClass::InteriorDWNoBoundaryFixedPoint: return "InteriorDWNoBoundaryFixedPoint";
    case MapClass::InteriorDWWithBoundaryFixedPoint: return "InteriorDWWithBoundaryFixedPoint";
  }
  return "?";
}

MapClass map_class_from_string(std::string_view s) {
  for (MapClass c : {MapClass::Identity, MapClass::EllipticAutomorphism, MapClass::HyperbolicAutomorphism,
                     MapClass::ParabolicAutomorphism, MapClass::ParabolicNonAutomorphism,
                     MapClass::HyperbolicTypeNonAutomorphism, MapClass::InteriorDWNoBoundaryFixedPoint,
                     MapClass::InteriorDWWithBoundaryFixedPoint}) {
    if (to_string(c) == s) return c;
  }
  throw InvalidInput("unknown map class: " + std::string(s));
}

Classification classify(const MoebiusMap& m, double tol) {
  if (!is_self_map(m, tol)) throw InvalidInput("classify: not a self-map of the unit disk");
  if (is_identity(m)) return {MapClass::Identity, false};

  bool borderline = false;
  auto near = [&](double x, double target) {
    const double gap = std::abs(x - target);
    if (gap > 0.0 && gap <= tol) borderline = true;
    return gap <= tol;
  };

  const FixedPointData fp = fixed_points(m, tol);
  const ImageCircle ic = image_circle(m);
  const bool automorphism = near(std::abs(ic.center), 0.0) && near(ic.radius, 1.0);

  if (automorphism) {
    if (has_interior_fixed_point(fp, tol)) return {MapClass::EllipticAutomorphism, borderline};
    for (const auto& p : fp.points) {
      if (p.multiplicity == 2 || (p.derivative && near(std::abs(*p.derivative), 1.0)))
        return {MapClass::ParabolicAutomorphism, borderline};
    }
    return {MapClass::HyperbolicAutomorphism, borderline};
  }

  const DWPoint dw = denjoy_wolff(m, tol);
  if (dw.on_boundary) {
    const bool parabolic = near(dw.derivative.real(), 1.0) || fp.points.front().multiplicity == 2;
    return {parabolic ? MapClass::ParabolicNonAutomorphism : MapClass::HyperbolicTypeNonAutomorphism, borderline};
  }
  for (const auto& p : fp.points) {
    if (on_circle(p, tol)) return {MapClass::InteriorDWWithBoundaryFixedPoint, borderline};
  }
  return {MapClass::InteriorDWNoBoundaryFixedPoint, borderline};
}

bool touches_boundary(const MoebiusMap& m, double tol) {
  switch (classify(m, tol).kind) {
    case MapClass::HyperbolicAutomorphism:
    case MapClass::ParabolicAutomorphism:
    case MapClass::ParabolicNonAutomorphism:
    case MapClass::HyperbolicTypeNonAutomorphism:
      return true;
    default:
      return false;
  }
}

cplx translation_number(const MoebiusMap& m, cplx zeta, double tol) {
  if (std::abs(std::abs(zeta) - 1.0) > tol) throw InvalidInput("translation_number: |zeta| must be 1");
  const ExtComplex image = m.apply(ExtComplex::finite(zeta));
  if (image.infinite || std::abs(image.value - zeta) > tol)
    throw ConstraintViolation("translation_number: zeta is not a fixed point");
  if (std::abs(derivative_at(m, zeta) - 1.0) > tol)
    throw ConstraintViolation("translation_number: map is not parabolic at zeta");
  const cplx w = m(0.0) * std::conj(zeta);
  return (1.0 + w) / (1.0 - w) - 1.0;
}

MoebiusMap parabolic_from(cplx zeta, cplx t) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw InvalidInput("parabolic_from: |zeta| must be 1");
  if (t == cplx{}) throw InvalidInput("parabolic_from: t = 0 gives the identity");
  if (t.real() < 0.0) throw InvalidInput("parabolic_from: Re t < 0 is not a self-map");
  return {2.0 - t, t * zeta, -t * std::conj(zeta), 2.0 + t};
}

MoebiusMap krein_adjoint(const MoebiusMap& m) {
  return {std::conj(m.a()), -std::conj(m.c()), -std::conj(m.b()), std::conj(m.d())};
}

void to_json(nlohmann::json& j, const MoebiusMap& m) {
  j = nlohmann::json{{"a", complex_to_json(m.a())},
                     {"b", complex_to_json(m.b())},
                     {"c", complex_to_json(m.c())},
                     {"d", complex_to_json(m.d())}};
}

MoebiusMap moebius_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("Moebius map JSON must be an object with keys a, b, c, d");
  auto field = [&](const char* key) {
    if (!j.contains(key)) throw InvalidInput(std::string("Moebius map JSON missing key '") + key + "'");
    return complex_from_json(j.at(key));
  };
  return {field("a"), field("b"), field("c"), field("d")};
}

}  // namespace wcop
