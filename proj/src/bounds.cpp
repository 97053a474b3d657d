#include "entgen/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entgen::bounds {

namespace {

void require_transmittance(double transmittance) {
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw std::domain_error("transmittance must lie in (0,1)");
  }
}

double cross(const std::array<double, 2>& o, const std::array<double, 2>& a,
             const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double segment_distance(const std::array<double, 2>& a, const std::array<double, 2>& b,
                        const std::array<double, 2>& p) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = p[0] - (a[0] + t * dx), ey = p[1] - (a[1] + t * dy);
  return std::hypot(ex, ey);
}

}  // namespace

double pow_overlap(double u, double exponent) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("overlap magnitude must lie in [0,1]");
  }
  if (u == 0.0) {
    if (exponent > 0.0) return 0.0;
    if (exponent == 0.0) return 1.0;
    throw std::domain_error("0 raised to a negative exponent");
  }
  if (u == 1.0) return 1.0;
  return std::exp(exponent * std::log(u));
}

TriangleBound triangle(double u, double transmittance) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("overlap magnitude must lie in (0,1]");
  }
  require_transmittance(transmittance);
  TriangleBound t;
  t.u = u;
  t.transmittance = transmittance;
  t.x0 = {0.0, 0.0};
  t.x1 = {1.0 - u, (1.0 - u) * fidelity_cap(u, transmittance)};
  t.x2 = {1.0, 0.5};
  t.x3 = {1.0 - u * u, 0.5 * (1.0 - u * u)};
  return t;
}

double TriangleBound::containment_margin(const PerformancePoint& p) const {
  const std::array<double, 2> q = p.plane();
  const double area = cross(x0, x1, x2);
  if (std::abs(area) < 1e-30) {
    // Degenerate triangle (u = 1): the region collapses onto segment x0-x2.
    return -segment_distance(x0, x2, q);
  }
  const double sign = area > 0.0 ? 1.0 : -1.0;
  double margin = std::numeric_limits<double>::infinity();
  const std::array<std::array<const std::array<double, 2>*, 2>, 3> edges{{
      {&x0, &x1}, {&x1, &x2}, {&x2, &x0}}};
  for (const auto& e : edges) {
    const double len = std::hypot((*e[1])[0] - (*e[0])[0], (*e[1])[1] - (*e[0])[1]);
    margin = std::min(margin, sign * cross(*e[0], *e[1], q) / len);
  }
  return margin;
}

double fidelity_cap(double u, double transmittance) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("overlap magnitude must lie in [0,1]");
  }
  require_transmittance(transmittance);
  const double exponent = (1.0 - transmittance) / transmittance;
  return 0.5 * (1.0 + pow_overlap(u, exponent));
}

double g_polynomial(double ps, double z0, double zs, double u) {
  if (std::abs(z0) > 1.0 + 1e-12 || std::abs(zs) > 1.0 + 1e-12) {
    throw std::domain_error("Bloch z-components must lie in [-1,1]");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("overlap magnitude must lie in (0,1)");
  }
  return ps * ps * (1.0 - zs * zs) - 2.0 * ps * (1.0 - z0 * zs) +
         (1.0 - u * u) * (1.0 - z0 * z0);
}

double tradeoff_max_psf(double ps, double u, double transmittance) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("overlap magnitude must lie in (0,1]");
  }
  require_transmittance(transmittance);
  const double m = pow_overlap(u, (1.0 - 2.0 * transmittance) / transmittance);
  return 0.5 * (1.0 - m) * ps + 0.5 * (1.0 - u * u) * m;
}

double f_sym(double ps, double transmittance) {
  require_transmittance(transmittance);
  if (!(ps >= 0.0 && ps <= 1.0)) {
    throw std::domain_error("success probability must lie in [0,1]");
  }
  const double exponent = (1.0 - transmittance) / transmittance;
  return 0.5 * (1.0 + pow_overlap(1.0 - ps, exponent));
}

double ps_star(double transmittance) {
  require_transmittance(transmittance);
  return transmittance / (1.0 - transmittance);
}

double f_opt(double ps, double transmittance) {
  require_transmittance(transmittance);
  if (!(ps >= 0.0 && ps <= 1.0)) {
    throw std::domain_error("success probability must lie in [0,1]");
  }
  if (transmittance >= 0.5) return f_sym(ps, transmittance);
  const double kink = ps_star(transmittance);
  if (ps <= kink) return f_sym(ps, transmittance);
  const double t = transmittance;
  const double slope_term =
      (t / (1.0 - 2.0 * t)) * pow_overlap((1.0 - 2.0 * t) / (1.0 - t), (1.0 - t) / t);
  return 0.5 + (1.0 - ps) / (2.0 * ps) * slope_term;
}

CurveDerivatives fsym_curve_derivatives(double ps, double transmittance) {
  require_transmittance(transmittance);
  if (!(ps >= 0.0 && ps < 1.0)) {
    throw std::domain_error("derivatives defined for Ps in [0,1)");
  }
  const double t = transmittance;
  CurveDerivatives d;
  d.first = 0.5 * (1.0 + (1.0 - ps / t) * pow_overlap(1.0 - ps, (1.0 - 2.0 * t) / t));
  d.second = 0.5 * ((1.0 - t) / t) * (ps / t - 2.0) *
             pow_overlap(1.0 - ps, (1.0 - 3.0 * t) / t);
  return d;
}

PerformancePoint mix(const PerformancePoint& a, const PerformancePoint& b, double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::domain_error("mixing probability must lie in [0,1]");
  }
  return {r * a.ps + (1.0 - r) * b.ps, r * a.ps_f + (1.0 - r) * b.ps_f};
}

std::vector<std::array<double, 2>> upper_convex_hull(
    std::vector<std::array<double, 2>> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("upper_convex_hull needs at least 2 points");
  }
  std::sort(points.begin(), points.end());
  // Collapse duplicate abscissas onto the highest ordinate.
  std::vector<std::array<double, 2>> unique;
  for (const auto& p : points) {
    if (!unique.empty() && unique.back()[0] == p[0]) {
      unique.back()[1] = std::max(unique.back()[1], p[1]);
    } else {
      unique.push_back(p);
    }
  }
  if (unique.size() < 2) return unique;
  std::vector<std::array<double, 2>> hull;
  for (const auto& p : unique) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

double polyline_value(const std::vector<std::array<double, 2>>& polyline, double x) {
  if (polyline.empty()) throw std::invalid_argument("empty polyline");
  if (x <= polyline.front()[0]) return polyline.front()[1];
  if (x >= polyline.back()[0]) return polyline.back()[1];
  auto it = std::lower_bound(polyline.begin(), polyline.end(), x,
                             [](const std::array<double, 2>& p, double v) {
                               return p[0] < v;
                             });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (x - lo[0]) / (hi[0] - lo[0]);
  return lo[1] + w * (hi[1] - lo[1]);
}

BoundCurve bound_curve(double transmittance) {
  require_transmittance(transmittance);
  BoundCurve c;
  c.transmittance = transmittance;
  c.kink_ps = transmittance < 0.5 ? ps_star(transmittance) : 1.0;
  return c;
}

}  // namespace entgen::bounds
