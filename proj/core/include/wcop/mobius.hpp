#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wcop/types.hpp"

namespace wcop {

/// z -> (a z + b) / (c z + d), ad - bc != 0. Stored unnormalized; equality is
/// projective (see projective_distance).
class MoebiusMap {
 public:
  MoebiusMap(cplx a, cplx b, cplx c, cplx d);

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static MoebiusMap rotation(cplx lambda) { return {lambda, 0.0, 0.0, 1.0}; }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx det() const { return a_ * d_ - b_ * c_; }

  /// Same map with coefficients scaled to unit Euclidean norm.
  MoebiusMap normalized() const;
  MoebiusMap scaled(cplx k) const;

  ExtComplex apply(ExtComplex z) const;
  cplx operator()(cplx z) const;

 private:
  cplx a_, b_, c_, d_;
};

/// Phase-invariant distance between unit-normalized coefficient vectors.
double projective_distance(const MoebiusMap& m1, const MoebiusMap& m2);
bool projectively_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol = 1e-12);
bool is_identity(const MoebiusMap& m, double tol = kDefaultTol);

ExtComplex apply(const MoebiusMap& m, ExtComplex z);
/// m1 o m2.
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
MoebiusMap inverse(const MoebiusMap& m);
/// n-fold iterate, n >= 0.
MoebiusMap iterate(const MoebiusMap& m, int n);

cplx derivative_at(const MoebiusMap& m, cplx z);

struct ImageCircle {
  bool is_line = false;  // |c| == |d|: the unit circle goes to a line
  cplx center{};
  double radius = 0.0;
};

/// Image of the unit circle. For |d| > |c| the image of D is the interior.
ImageCircle image_circle(const MoebiusMap& m);

bool is_self_map(const MoebiusMap& m, double tol = kDefaultTol);
bool is_automorphism(const MoebiusMap& m, double tol = kDefaultTol);

struct FixedPoint {
  ExtComplex point;
  int multiplicity = 1;
  std::optional<cplx> derivative;  // empty at infinity
};

struct FixedPointData {
  std::vector<FixedPoint> points;  // multiplicities sum to 2
};

FixedPointData fixed_points(const MoebiusMap& m, double tol = kDefaultTol);

struct DWPoint {
  cplx location;
  cplx derivative;
  bool on_boundary = false;
};

DWPoint denjoy_wolff(const MoebiusMap& m, double tol = kDefaultTol);

enum class MapClass {
  Identity,
  EllipticAutomorphism,
  HyperbolicAutomorphism,
  ParabolicAutomorphism,
  ParabolicNonAutomorphism,
  HyperbolicTypeNonAutomorphism,
  InteriorDWNoBoundaryFixedPoint,
  InteriorDWWithBoundaryFixedPoint,
};

std::string_view to_string(MapClass c);
MapClass map_class_from_string(std::string_view s);

struct Classification {
  MapClass kind;
  /// A dichotomy (|zeta| = 1, phi'(zeta) = 1, automorphism) was decided within tol.
  bool borderline = false;
};

Classification classify(const MoebiusMap& m, double tol = kDefaultTol);

/// Denjoy-Wolff point on the boundary (parabolic or hyperbolic type).
bool touches_boundary(const MoebiusMap& m, double tol = kDefaultTol);

/// Translation number of a parabolic map with boundary fixed point zeta.
cplx translation_number(const MoebiusMap& m, cplx zeta, double tol = 1e-8);

/// Parabolic self-map fixing zeta with translation number t (Re t >= 0, t != 0).
MoebiusMap parabolic_from(cplx zeta, cplx t);

/// Krein adjoint (conj(a) z - conj(c)) / (-conj(b) z + conj(d)).
MoebiusMap krein_adjoint(const MoebiusMap& m);

void to_json(nlohmann::json& j, const MoebiusMap& m);
MoebiusMap moebius_from_json(const nlohmann::json& j);

}  // namespace wcop
