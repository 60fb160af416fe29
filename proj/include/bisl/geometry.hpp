#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace bisl {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  double norm2() const { return x * x + y * y; }
  double norm() const;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

enum class CurveKind { circle, ellipse, kite, trig_polynomial };

// A closed analytic curve, parametrized counterclockwise over [0, 2pi).
// `center` and the positive `similarity` factor place a base shape in the
// plane: x(t) = similarity * base(t) + center.
class ParamCurve {
public:
  static ParamCurve circle(double r, Vec2 center = {});
  static ParamCurve ellipse(double a, double b, Vec2 center = {});
  static ParamCurve kite(double scale = 1.0, Vec2 center = {});
  // Radial curve r(t) = base + sum_k (c[k] cos((k+1)t) + s[k] sin((k+1)t)).
  // Positivity of r is checked at sampling time, not here.
  static ParamCurve trig_star(double base, std::vector<double> cos_coef,
                              std::vector<double> sin_coef, Vec2 center = {});

  Vec2 point(double t) const;
  Vec2 d1(double t) const;
  Vec2 d2(double t) const;
  double speed(double t) const;
  Vec2 inward_normal(double t) const;
  double curvature(double t) const;

  ParamCurve translated(Vec2 d) const;
  ParamCurve scaled_about_origin(double rho) const;

  CurveKind kind() const { return kind_; }
  Vec2 center() const { return center_; }
  double similarity() const { return similarity_; }

private:
  ParamCurve() = default;
  Vec2 base_point(double t) const;
  Vec2 base_d1(double t) const;
  Vec2 base_d2(double t) const;

  CurveKind kind_ = CurveKind::circle;
  double p0_ = 1.0; // circle r | ellipse a | kite scale | star base radius
  double p1_ = 0.0; // ellipse b
  std::vector<double> cos_coef_, sin_coef_;
  Vec2 center_{};
  double similarity_ = 1.0;
};

// Nodes t_i = 2pi i / N with derivatives, inward normals and curvatures.
struct CurveSample {
  ParamCurve curve;
  std::size_t n = 0;
  std::vector<double> t;
  std::vector<Vec2> x;
  std::vector<Vec2> dx;
  std::vector<double> speed;
  std::vector<Vec2> normal;
  std::vector<double> curvature;

  static CurveSample of(const ParamCurve& curve, std::size_t n);
};

// Winding number of the curve around p, from a dense polygonal sample.
// Throws GeometryError if p lies on the curve within tolerance.
int winding_number(const ParamCurve& curve, Vec2 p, std::size_t n = 2048);

// Signed area and centroid of the region enclosed by a CCW curve.
double enclosed_area(const ParamCurve& curve, std::size_t n = 2048);
Vec2 enclosed_centroid(const ParamCurve& curve, std::size_t n = 2048);

// A disjoint union of Jordan curves. Construction verifies pairwise
// disjointness and classifies each curve as part of the exterior boundary
// (not enclosed by any other curve) or as a hole. Immutable.
class MultiCurve {
public:
  explicit MultiCurve(std::vector<ParamCurve> curves);

  const std::vector<ParamCurve>& curves() const { return curves_; }
  const std::vector<bool>& exterior_flags() const { return exterior_; }
  std::size_t size() const { return curves_.size(); }

  MultiCurve exterior_only() const;
  std::size_t first_exterior_index() const;

  MultiCurve translated(Vec2 d) const;
  MultiCurve scaled_about_origin(double rho) const;
  // Translates so the centroid of the first exterior curve's region is 0.
  MultiCurve normalized() const;

  bool origin_interior() const;
  // (R-, R+): R+ = radius of the smallest origin-centered circle enclosing
  // everything, R- = largest origin-centered circle inside the closed
  // region. Requires the origin to be interior.
  std::pair<double, double> bounding_radii() const;

private:
  std::vector<ParamCurve> curves_;
  std::vector<bool> exterior_;
};

MultiCurve classify_exterior(const MultiCurve& multi);
std::pair<double, double> bounding_radii(const MultiCurve& multi);
MultiCurve scale_about_origin(const MultiCurve& multi, double rho);

// Grammar: `circle:r=<f>[,cx=<f>,cy=<f>]`, `ellipse:a=<f>,b=<f>[,cx,cy]`,
// `kite:[scale=<f>]`, composites joined with `+`. Case-insensitive.
MultiCurve parse_curve_spec(std::string_view spec);

// All curves sampled on a shared grid, with flat node indexing.
struct MultiSample {
  MultiCurve source;
  std::vector<CurveSample> curves;
  std::vector<std::size_t> offset; // offset[c] = first flat index of curve c
  std::size_t total = 0;

  static MultiSample of(const MultiCurve& multi, std::size_t n);
  static MultiSample of(const MultiCurve& multi,
                        const std::vector<std::size_t>& ns);

  // Trapezoid weight (arc length) of flat node (c, i).
  double arc_weight(std::size_t c, std::size_t i) const;
};

} // namespace bisl
