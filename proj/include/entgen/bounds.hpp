#pragma once

#include <array>
#include <limits>
#include <vector>

namespace entgen::bounds {

// Protocol performance. The plane coordinates (Ps, Ps*F) are primary: mixing
// protocols is linear there, so all geometry lives in that plane and the
// fidelity is a derived view.
struct PerformancePoint {
  double ps = 0.0;
  double ps_f = 0.0;

  static PerformancePoint from_fidelity(double ps, double fidelity) {
    return {ps, ps * fidelity};
  }
  bool vacuous() const { return ps <= 0.0; }
  double fidelity() const {
    return vacuous() ? std::numeric_limits<double>::quiet_NaN() : ps_f / ps;
  }
  std::array<double, 2> plane() const { return {ps, ps_f}; }
};

// u^e for an overlap magnitude u in [0,1], evaluated in log space; u = 0 and
// u = 1 return the limit values.
double pow_overlap(double u, double exponent);

// Triangle containing every single-error-type protocol at fixed pulse overlap
// u and transmittance T, in the (Ps, Ps*F) plane. x3 marks the corner of the
// smaller region that protocols with non-degenerate preparation obey.
struct TriangleBound {
  double u = 0.0;
  double transmittance = 0.0;
  std::array<double, 2> x0{}, x1{}, x2{}, x3{};

  // Minimum inward signed distance to the triangle edges; >= -tol means the
  // point is inside (degenerate triangles fall back to segment distance).
  double containment_margin(const PerformancePoint& p) const;
  bool contains(const PerformancePoint& p, double tol = 1e-9) const {
    return containment_margin(p) >= -tol;
  }
};

TriangleBound triangle(double u, double transmittance);

// Largest fidelity compatible with the overlap: (1 + u^{(1-T)/T}) / 2.
double fidelity_cap(double u, double transmittance);

// Quadratic that every realizable protocol keeps nonnegative:
// Ps^2 (1-zs^2) - 2 Ps (1 - z0 zs) + (1-u^2)(1-z0^2).
double g_polynomial(double ps, double z0, double zs, double u);

// Linear trade-off cap on Ps*F at fixed overlap and transmittance.
double tradeoff_max_psf(double ps, double u, double transmittance);

// Fidelity of the symmetric protocol family at success probability Ps.
double f_sym(double ps, double transmittance);

// Tight upper envelope of achievable fidelity; piecewise with a kink at
// Ps* = T/(1-T) when T < 1/2, equal to f_sym otherwise.
double f_opt(double ps, double transmittance);

// Kink position T/(1-T); only reached inside [0,1] for T < 1/2.
double ps_star(double transmittance);

struct CurveDerivatives {
  double first = 0.0;
  double second = 0.0;
};

// Closed-form first and second derivatives of Ps * f_sym(Ps) in Ps.
CurveDerivatives fsym_curve_derivatives(double ps, double transmittance);

// Probabilistic mixture of two protocols: linear in the plane coordinates.
PerformancePoint mix(const PerformancePoint& a, const PerformancePoint& b, double r);

// Upper boundary of the convex hull (monotone chain), sorted by abscissa.
std::vector<std::array<double, 2>> upper_convex_hull(
    std::vector<std::array<double, 2>> points);

// Piecewise-linear evaluation of a polyline sorted by abscissa.
double polyline_value(const std::vector<std::array<double, 2>>& polyline, double x);

// Descriptor of the bound curves at fixed transmittance.
struct BoundCurve {
  double transmittance = 0.0;
  double kink_ps = 1.0;  // T/(1-T) clamped into [0,1]; 1 when T >= 1/2

  double sym(double ps) const { return f_sym(ps, transmittance); }
  double opt(double ps) const { return f_opt(ps, transmittance); }
};

BoundCurve bound_curve(double transmittance);

}  // namespace entgen::bounds
