#pragma once

#include <optional>

#include "approx/functions.hpp"
#include "approx/geometry.hpp"

namespace approx {

struct RiemannMapOptions {
  double boundary_tol = 1e-8;
  int min_nodes = 256;
  int max_nodes = 4096;
};

/// Conformal map of the unit disk onto the interior of an analytic Jordan
/// curve, normalized by Psi(0) = basepoint, Psi'(0) > 0. Built from a
/// double-layer Nystrom solve for the boundary correspondence; interior values
/// come from the Taylor series of the boundary data.
class RiemannMap {
public:
  RiemannMap() = default;

  Complex eval(Complex z) const;          // |z| <= 1
  Complex deriv(Complex z) const;
  Complex basepoint() const { return basepoint_; }
  double deriv_at_0() const { return deriv0_; }
  const JordanCurve& curve() const { return curve_; }

  // theta on the circle <-> parameter on the curve (both monotone lifts).
  double theta_of_param(double t) const;
  double param_of_theta(double theta) const;
  Complex boundary_point(double theta) const;  // on the curve exactly

  // Newton inversion of Psi; throws when w is too close to the boundary for
  // the iteration to settle.
  Complex inverse(Complex w) const;

  struct Residuals {
    double boundary = 0;    // max |series(e^it) - curve point|
    double neg_modes = 0;   // conformality: leaked negative-frequency mass
    double basepoint = 0;   // |Psi(0) - basepoint|
    int nodes = 0;
  };
  const Residuals& residuals() const { return residuals_; }
  const CVec& taylor() const { return taylor_; }

  friend RiemannMap riemann_map_interior(const JordanCurve&, Complex, const RiemannMapOptions&);

private:
  JordanCurve curve_;
  Complex basepoint_ = 0;
  double deriv0_ = 1;
  TrigInterp theta_minus_t_;   // theta(t) - t, periodic
  TrigInterp t_minus_theta_;   // t(theta) - theta, periodic
  double theta0_ = 0;          // theta at t = 0 (lift anchor)
  CVec taylor_;
  Residuals residuals_;
};

RiemannMap riemann_map_interior(const JordanCurve& curve, Complex basepoint,
                                const RiemannMapOptions& opts = {});

/// Complement-component chart: conformal sigma: D* -> Omega with
/// sigma(infinity) = pole, tau = sigma^{-1}. Reduced to the interior solver by
/// a Moebius inversion; for the unbounded component with pole = infinity the
/// normalization is sigma(z) = a z + O(1), a > 0.
class ExteriorChart {
public:
  ExteriorChart() = default;

  Complex tau(Complex z) const;
  Complex sigma(Complex zeta) const;
  Complex sigma_deriv(Complex zeta) const;
  bool bounded() const { return bounded_; }
  Complex pole() const { return pole_; }
  bool pole_at_infinity() const { return pole_at_inf_; }
  double far_field_scale() const { return far_scale_; }  // a, for pole = inf

  // Position on the unit circle of the boundary point with curve parameter t.
  double circle_angle_of_param(double t) const;
  double param_of_circle_angle(double angle) const;
  Complex boundary_point_of_angle(double angle) const;

  const JordanCurve& boundary() const { return boundary_; }
  const RiemannMap& inner_map() const { return inner_; }

  friend ExteriorChart exterior_chart(const JordanCurve&, bool, Complex, const RiemannMapOptions&);

private:
  JordanCurve boundary_;   // positively oriented; Omega is its exterior when !bounded_
  bool bounded_ = false;
  bool pole_at_inf_ = true;
  Complex pole_ = 0;
  Complex q_ = 0;          // inversion center for the unbounded case
  RiemannMap inner_;
  double far_scale_ = 1;
};

// region boundary must be positively oriented; `bounded` selects whether Omega
// is the interior (gap component) or the exterior of the curve.
ExteriorChart exterior_chart(const JordanCurve& region_boundary, bool bounded, Complex pole,
                             const RiemannMapOptions& opts = {});

/// Analytic target curve surrounding f(D) within eps of f(K), plus the
/// interior Riemann map onto its inside.
struct TargetCurve {
  JordanCurve curve;
  RiemannMap interior_map;
  double max_dist_to_fK = 0;  // measured, must be < eps
};

struct TargetCurveOptions {
  int smoothing_modes = 64;
  double cell = 0;  // raster cell; 0 = eps/40
  RiemannMapOptions map_opts{};
};

TargetCurve target_curve(const std::function<Complex(Complex)>& f, const CompactSetRep& K,
                         const DomainSpec& D, double eps, const TargetCurveOptions& opts = {});

// Newton inversion helpers shared by the pipeline.
Complex inverse_evaluate(const RiemannMap& map, Complex w);
Complex inverse_evaluate(const ExteriorChart& chart, Complex w);

// Outer boundary polyline of a raster set (marching-squares style walk).
std::vector<Complex> outer_boundary_polyline(const Raster& raster);

}  // namespace approx
