#include "bisl/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bisl/errors.hpp"

namespace bisl {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double Vec2::norm() const { return std::hypot(x, y); }

ParamCurve ParamCurve::circle(double r, Vec2 center) {
  if (!(r > 0.0)) throw GeometryError("circle radius must be positive");
  ParamCurve c;
  c.kind_ = CurveKind::circle;
  c.p0_ = r;
  c.center_ = center;
  return c;
}

ParamCurve ParamCurve::ellipse(double a, double b, Vec2 center) {
  if (!(a > 0.0) || !(b > 0.0))
    throw GeometryError("ellipse semi-axes must be positive");
  ParamCurve c;
  c.kind_ = CurveKind::ellipse;
  c.p0_ = a;
  c.p1_ = b;
  c.center_ = center;
  return c;
}

ParamCurve ParamCurve::kite(double scale, Vec2 center) {
  if (!(scale > 0.0)) throw GeometryError("kite scale must be positive");
  ParamCurve c;
  c.kind_ = CurveKind::kite;
  c.p0_ = scale;
  c.center_ = center;
  return c;
}

ParamCurve ParamCurve::trig_star(double base, std::vector<double> cos_coef,
                                 std::vector<double> sin_coef, Vec2 center) {
  ParamCurve c;
  c.kind_ = CurveKind::trig_polynomial;
  c.p0_ = base;
  c.cos_coef_ = std::move(cos_coef);
  c.sin_coef_ = std::move(sin_coef);
  c.center_ = center;
  return c;
}

Vec2 ParamCurve::base_point(double t) const {
  switch (kind_) {
  case CurveKind::circle:
    return {p0_ * std::cos(t), p0_ * std::sin(t)};
  case CurveKind::ellipse:
    return {p0_ * std::cos(t), p1_ * std::sin(t)};
  case CurveKind::kite:
    return {p0_ * (std::cos(t) + 0.65 * std::cos(2.0 * t) - 0.65),
            p0_ * 1.5 * std::sin(t)};
  case CurveKind::trig_polynomial: {
    double r = p0_;
    for (std::size_t k = 0; k < cos_coef_.size(); ++k)
      r += cos_coef_[k] * std::cos(double(k + 1) * t);
    for (std::size_t k = 0; k < sin_coef_.size(); ++k)
      r += sin_coef_[k] * std::sin(double(k + 1) * t);
    return {r * std::cos(t), r * std::sin(t)};
  }
  }
  throw GeometryError("unknown curve kind");
}

Vec2 ParamCurve::base_d1(double t) const {
  switch (kind_) {
  case CurveKind::circle:
    return {-p0_ * std::sin(t), p0_ * std::cos(t)};
  case CurveKind::ellipse:
    return {-p0_ * std::sin(t), p1_ * std::cos(t)};
  case CurveKind::kite:
    return {p0_ * (-std::sin(t) - 1.3 * std::sin(2.0 * t)),
            p0_ * 1.5 * std::cos(t)};
  case CurveKind::trig_polynomial: {
    double r = p0_, dr = 0.0;
    for (std::size_t k = 0; k < cos_coef_.size(); ++k) {
      const double m = double(k + 1);
      r += cos_coef_[k] * std::cos(m * t);
      dr -= cos_coef_[k] * m * std::sin(m * t);
    }
    for (std::size_t k = 0; k < sin_coef_.size(); ++k) {
      const double m = double(k + 1);
      r += sin_coef_[k] * std::sin(m * t);
      dr += sin_coef_[k] * m * std::cos(m * t);
    }
    const double c = std::cos(t), s = std::sin(t);
    return {dr * c - r * s, dr * s + r * c};
  }
  }
  throw GeometryError("unknown curve kind");
}

Vec2 ParamCurve::base_d2(double t) const {
  switch (kind_) {
  case CurveKind::circle:
    return {-p0_ * std::cos(t), -p0_ * std::sin(t)};
  case CurveKind::ellipse:
    return {-p0_ * std::cos(t), -p1_ * std::sin(t)};
  case CurveKind::kite:
    return {p0_ * (-std::cos(t) - 2.6 * std::cos(2.0 * t)),
            -p0_ * 1.5 * std::sin(t)};
  case CurveKind::trig_polynomial: {
    double r = p0_, dr = 0.0, ddr = 0.0;
    for (std::size_t k = 0; k < cos_coef_.size(); ++k) {
      const double m = double(k + 1);
      r += cos_coef_[k] * std::cos(m * t);
      dr -= cos_coef_[k] * m * std::sin(m * t);
      ddr -= cos_coef_[k] * m * m * std::cos(m * t);
    }
    for (std::size_t k = 0; k < sin_coef_.size(); ++k) {
      const double m = double(k + 1);
      r += sin_coef_[k] * std::sin(m * t);
      dr += sin_coef_[k] * m * std::cos(m * t);
      ddr -= sin_coef_[k] * m * m * std::sin(m * t);
    }
    const double c = std::cos(t), s = std::sin(t);
    return {ddr * c - 2.0 * dr * s - r * c, ddr * s + 2.0 * dr * c - r * s};
  }
  }
  throw GeometryError("unknown curve kind");
}

Vec2 ParamCurve::point(double t) const {
  return center_ + similarity_ * base_point(t);
}

Vec2 ParamCurve::d1(double t) const { return similarity_ * base_d1(t); }

Vec2 ParamCurve::d2(double t) const { return similarity_ * base_d2(t); }

double ParamCurve::speed(double t) const { return d1(t).norm(); }

Vec2 ParamCurve::inward_normal(double t) const {
  const Vec2 v = d1(t);
  const double s = v.norm();
  if (!(s > 0.0)) throw GeometryError("zero speed; normal undefined");
  return {-v.y / s, v.x / s};
}

double ParamCurve::curvature(double t) const {
  const Vec2 v = d1(t), a = d2(t);
  const double s = v.norm();
  return cross(v, a) / (s * s * s);
}

ParamCurve ParamCurve::translated(Vec2 d) const {
  ParamCurve c = *this;
  c.center_ += d;
  return c;
}

ParamCurve ParamCurve::scaled_about_origin(double rho) const {
  if (!(rho > 0.0)) throw GeometryError("scale factor must be positive");
  ParamCurve c = *this;
  c.center_ = rho * c.center_;
  c.similarity_ *= rho;
  return c;
}

CurveSample CurveSample::of(const ParamCurve& curve, std::size_t n) {
  if (n < 8 || n % 2 != 0)
    throw ConfigError("node count must be even and at least 8");
  CurveSample s{curve, n, {}, {}, {}, {}, {}, {}};
  s.t.resize(n);
  s.x.resize(n);
  s.dx.resize(n);
  s.speed.resize(n);
  s.normal.resize(n);
  s.curvature.resize(n);
  double max_speed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s.t[i] = two_pi * double(i) / double(n);
    s.x[i] = curve.point(s.t[i]);
    s.dx[i] = curve.d1(s.t[i]);
    s.speed[i] = s.dx[i].norm();
    max_speed = std::max(max_speed, s.speed[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(s.speed[i] > 1e-12 * std::max(1.0, max_speed)))
      throw GeometryError("degenerate parametrization: vanishing speed");
    s.normal[i] = Vec2{-s.dx[i].y, s.dx[i].x} * (1.0 / s.speed[i]);
    s.curvature[i] = curve.curvature(s.t[i]);
  }
  return s;
}

int winding_number(const ParamCurve& curve, Vec2 p, std::size_t n) {
  double total = 0.0;
  double scale = 0.0;
  Vec2 prev = curve.point(0.0) - p;
  for (std::size_t i = 1; i <= n; ++i) {
    const Vec2 cur = curve.point(two_pi * double(i) / double(n)) - p;
    scale = std::max(scale, cur.norm());
    total += std::atan2(cross(prev, cur), dot(prev, cur));
    prev = cur;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (curve.point(two_pi * double(i) / double(n)) - p).norm();
    if (d < 1e-9 * std::max(1.0, scale))
      throw GeometryError("containment test point lies on a curve");
  }
  return int(std::lround(total / two_pi));
}

double enclosed_area(const ParamCurve& curve, std::size_t n) {
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = two_pi * double(i) / double(n);
    area += cross(curve.point(t), curve.d1(t));
  }
  return 0.5 * area * two_pi / double(n);
}

Vec2 enclosed_centroid(const ParamCurve& curve, std::size_t n) {
  // Green's theorem: int x1 dA = oint (x1^2/2) dx2, int x2 dA = -oint (x2^2/2) dx1.
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = two_pi * double(i) / double(n);
    const Vec2 x = curve.point(t), v = curve.d1(t);
    cx += 0.5 * x.x * x.x * v.y;
    cy -= 0.5 * x.y * x.y * v.x;
  }
  const double area = enclosed_area(curve, n);
  if (!(std::abs(area) > 0.0)) throw GeometryError("curve encloses no area");
  const double h = two_pi / double(n);
  return {cx * h / area, cy * h / area};
}

namespace {

// proper crossing of two segments (shared endpoints and tangencies are
// handled by the minimum-distance check instead)
bool segments_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return d1 * d2 < 0.0 && d3 * d4 < 0.0;
}

} // namespace

MultiCurve::MultiCurve(std::vector<ParamCurve> curves)
    : curves_(std::move(curves)) {
  if (curves_.empty()) throw GeometryError("empty curve list");
  const std::size_t nd = 512;
  std::vector<std::vector<Vec2>> pts(curves_.size());
  double scale = 0.0;
  for (std::size_t c = 0; c < curves_.size(); ++c) {
    pts[c].resize(nd);
    for (std::size_t i = 0; i < nd; ++i) {
      pts[c][i] = curves_[c].point(two_pi * double(i) / double(nd));
      scale = std::max(scale, pts[c][i].norm());
    }
  }
  for (std::size_t a = 0; a < curves_.size(); ++a)
    for (std::size_t b = a + 1; b < curves_.size(); ++b) {
      double dmin = std::numeric_limits<double>::infinity();
      for (const Vec2& pa : pts[a])
        for (const Vec2& pb : pts[b])
          dmin = std::min(dmin, (pa - pb).norm2());
      if (!(std::sqrt(dmin) > 1e-9 * std::max(1.0, scale)))
        throw GeometryError("curves are not pairwise disjoint");
      for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nd; ++j)
          if (segments_cross(pts[a][i], pts[a][(i + 1) % nd], pts[b][j],
                             pts[b][(j + 1) % nd]))
            throw GeometryError("curves are not pairwise disjoint");
    }
  exterior_.assign(curves_.size(), true);
  for (std::size_t a = 0; a < curves_.size(); ++a)
    for (std::size_t b = 0; b < curves_.size(); ++b) {
      if (a == b) continue;
      if (winding_number(curves_[b], pts[a][0]) != 0) {
        exterior_[a] = false;
        break;
      }
    }
}

MultiCurve MultiCurve::exterior_only() const {
  std::vector<ParamCurve> sub;
  for (std::size_t c = 0; c < curves_.size(); ++c)
    if (exterior_[c]) sub.push_back(curves_[c]);
  return MultiCurve(std::move(sub));
}

std::size_t MultiCurve::first_exterior_index() const {
  for (std::size_t c = 0; c < curves_.size(); ++c)
    if (exterior_[c]) return c;
  throw GeometryError("no exterior curve"); // unreachable for valid input
}

MultiCurve MultiCurve::translated(Vec2 d) const {
  std::vector<ParamCurve> moved;
  moved.reserve(curves_.size());
  for (const auto& c : curves_) moved.push_back(c.translated(d));
  return MultiCurve(std::move(moved));
}

MultiCurve MultiCurve::scaled_about_origin(double rho) const {
  std::vector<ParamCurve> scaled;
  scaled.reserve(curves_.size());
  for (const auto& c : curves_) scaled.push_back(c.scaled_about_origin(rho));
  return MultiCurve(std::move(scaled));
}

MultiCurve MultiCurve::normalized() const {
  const Vec2 g = enclosed_centroid(curves_[first_exterior_index()]);
  return translated(-g);
}

bool MultiCurve::origin_interior() const {
  for (std::size_t c = 0; c < curves_.size(); ++c)
    if (exterior_[c] && winding_number(curves_[c], Vec2{}) != 0) return true;
  return false;
}

std::pair<double, double> MultiCurve::bounding_radii() const {
  if (!origin_interior())
    throw GeometryError("origin is not inside the domain; normalize first");
  const std::size_t nd = 2048;
  double r_plus = 0.0;
  double r_minus = std::numeric_limits<double>::infinity();
  auto refine = [](const ParamCurve& cv, double t0, double h, bool maximize) {
    // golden-section polish of |x(t)| around a sampled extremum
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = t0 - h, b = t0 + h;
    auto f = [&](double t) {
      const double v = cv.point(t).norm();
      return maximize ? -v : v;
    };
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 60; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = f(d);
      }
    }
    return cv.point(0.5 * (a + b)).norm();
  };
  for (std::size_t c = 0; c < curves_.size(); ++c) {
    double best_max = 0.0, t_max = 0.0;
    double best_min = std::numeric_limits<double>::infinity(), t_min = 0.0;
    for (std::size_t i = 0; i < nd; ++i) {
      const double t = two_pi * double(i) / double(nd);
      const double r = curves_[c].point(t).norm();
      if (r > best_max) {
        best_max = r;
        t_max = t;
      }
      if (r < best_min) {
        best_min = r;
        t_min = t;
      }
    }
    const double h = two_pi / double(nd);
    r_plus = std::max(r_plus, refine(curves_[c], t_max, h, true));
    if (exterior_[c])
      r_minus = std::min(r_minus, refine(curves_[c], t_min, h, false));
  }
  return {r_minus, r_plus};
}

MultiCurve classify_exterior(const MultiCurve& multi) {
  return MultiCurve(multi.curves());
}

std::pair<double, double> bounding_radii(const MultiCurve& multi) {
  return multi.bounding_radii();
}

MultiCurve scale_about_origin(const MultiCurve& multi, double rho) {
  return multi.scaled_about_origin(rho);
}

namespace {

std::string lower(std::string_view sv) {
  std::string out(sv);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw GeometryError("curve spec: bad number for " + what + ": '" + s + "'");
  }
}

ParamCurve parse_one(const std::string& token) {
  const auto head = split(token, ':');
  if (head.empty() || head.size() > 2 || head[0].empty())
    throw GeometryError("curve spec: malformed token '" + token + "'");
  const std::string kind = head[0];
  std::vector<std::pair<std::string, double>> kv;
  if (head.size() == 2 && !head[1].empty()) {
    for (const auto& item : split(head[1], ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw GeometryError("curve spec: expected key=value, got '" + item + "'");
      kv.emplace_back(item.substr(0, eq),
                      parse_num(item.substr(eq + 1), item.substr(0, eq)));
    }
  }
  auto take = [&](const std::string& key, double* out) {
    for (auto it = kv.begin(); it != kv.end(); ++it)
      if (it->first == key) {
        *out = it->second;
        kv.erase(it);
        return true;
      }
    return false;
  };
  Vec2 center{};
  take("cx", &center.x);
  take("cy", &center.y);
  ParamCurve out = ParamCurve::circle(1.0);
  if (kind == "circle") {
    double r = 0.0;
    if (!take("r", &r)) throw GeometryError("curve spec: circle needs r=");
    out = ParamCurve::circle(r, center);
  } else if (kind == "ellipse") {
    double a = 0.0, b = 0.0;
    if (!take("a", &a) || !take("b", &b))
      throw GeometryError("curve spec: ellipse needs a= and b=");
    out = ParamCurve::ellipse(a, b, center);
  } else if (kind == "kite") {
    double scale = 1.0;
    take("scale", &scale);
    out = ParamCurve::kite(scale, center);
  } else {
    throw GeometryError("curve spec: unknown kind '" + kind + "'");
  }
  if (!kv.empty())
    throw GeometryError("curve spec: unknown key '" + kv.front().first + "'");
  return out;
}

} // namespace

MultiCurve parse_curve_spec(std::string_view spec) {
  const std::string s = lower(spec);
  if (s.empty()) throw GeometryError("empty curve spec");
  std::vector<ParamCurve> curves;
  for (const auto& token : split(s, '+')) {
    if (token.empty()) throw GeometryError("curve spec: empty component");
    curves.push_back(parse_one(token));
  }
  return MultiCurve(std::move(curves));
}

MultiSample MultiSample::of(const MultiCurve& multi, std::size_t n) {
  return of(multi, std::vector<std::size_t>(multi.size(), n));
}

MultiSample MultiSample::of(const MultiCurve& multi,
                            const std::vector<std::size_t>& ns) {
  if (ns.size() != multi.size())
    throw ConfigError("one node count per curve required");
  MultiSample ms{multi, {}, {}, 0};
  for (std::size_t c = 0; c < multi.size(); ++c) {
    ms.offset.push_back(ms.total);
    ms.curves.push_back(CurveSample::of(multi.curves()[c], ns[c]));
    ms.total += ns[c];
  }
  return ms;
}

double MultiSample::arc_weight(std::size_t c, std::size_t i) const {
  return two_pi / double(curves[c].n) * curves[c].speed[i];
}

} // namespace bisl
