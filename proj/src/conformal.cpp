#include "approx/conformal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace approx {

namespace {

struct SolveData {
  RVec rho;
  RVec theta;  // lifted theta at nodes, theta(0) in [0, 2pi)
  Complex F_at_base;
  CVec zeta, dzeta, ddzeta;  // curve samples and derivatives at nodes
};

// Dirichlet solve for u = -log|zeta - a| by the double-layer equation
//   rho(t) + (1/pi) int Im(z'(s)/(zeta(s)-zeta(t))) rho(s) ds = g(t),
// then the boundary correspondence theta(t) = arg(zeta(t)-a) + v(t) + c with
// v the boundary trace of Im F, F the analytic completion of u.
SolveData solve_boundary(const JordanCurve& curve, Complex a, int N) {
  SolveData out;
  out.zeta = CVec(N);
  out.dzeta = CVec(N);
  out.ddzeta = CVec(N);
  for (int j = 0; j < N; ++j) {
    const double t = kTwoPi * j / N;
    out.zeta(j) = curve.point(t);
    out.dzeta(j) = curve.tangent(t);
    out.ddzeta(j) = curve.second(t);
  }

  RMat A(N, N);
  RMat corr(N, N);  // Re(z'(s)/(zeta(s)-zeta(t))) - (1/2)cot((s-t)/2)
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (i == j) {
        const Complex d = out.ddzeta(i) / (2.0 * out.dzeta(i));
        A(i, j) = 1.0 + (2.0 / N) * d.imag();
        corr(i, j) = d.real();
      } else {
        const Complex kern = out.dzeta(j) / (out.zeta(j) - out.zeta(i));
        A(i, j) = (2.0 / N) * kern.imag();
        const double s_minus_t = kTwoPi * (j - i) / N;
        corr(i, j) = kern.real() - 0.5 / std::tan(0.5 * s_minus_t);
      }
    }
  }
  RVec g(N);
  for (int j = 0; j < N; ++j) g(j) = -std::log(std::abs(out.zeta(j) - a));
  out.rho = A.partialPivLu().solve(g);

  // v = H[rho] - (2/N) * corr * rho
  RVec v = conjugate_periodic(out.rho) - (2.0 / N) * (corr * out.rho);

  // c from F(a): F(z) = (-i/pi) int rho z'/(zeta - z) ds
  Complex Fa = 0;
  for (int j = 0; j < N; ++j) Fa += out.rho(j) * out.dzeta(j) / (out.zeta(j) - a);
  Fa *= Complex(0, -1) / kPi * (kTwoPi / N);
  out.F_at_base = Fa;
  const double c = -Fa.imag();

  // lifted arg(zeta(t) - a)
  RVec lift(N + 1);
  lift(0) = std::arg(out.zeta(0) - a);
  for (int j = 1; j <= N; ++j) {
    const Complex cur = out.zeta(j % N) - a;
    const Complex prev = out.zeta(j - 1) - a;
    lift(j) = lift(j - 1) + std::arg(cur / prev);
  }
  if (std::abs(lift(N) - lift(0) - kTwoPi) > 1e-6)
    throw ApproxError("conformal", "basepoint winding is not 1 (curve orientation?)");

  out.theta = RVec(N);
  for (int j = 0; j < N; ++j) out.theta(j) = lift(j) + v(j) + c;
  return out;
}

}  // namespace

RiemannMap riemann_map_interior(const JordanCurve& curve, Complex basepoint,
                                const RiemannMapOptions& opts) {
  if (!curve.contains(basepoint))
    throw ApproxError("conformal", "basepoint not strictly inside the curve");
  if (curve.signed_area() <= 0)
    throw ApproxError("conformal", "curve must be positively oriented");

  RiemannMap best;
  double best_res = std::numeric_limits<double>::max();
  for (int N = opts.min_nodes; N <= opts.max_nodes; N *= 2) {
    SolveData sd = solve_boundary(curve, basepoint, N);

    // monotonicity of theta
    bool monotone = true;
    for (int j = 0; j + 1 < N; ++j) monotone &= sd.theta(j + 1) > sd.theta(j);
    if (!monotone) continue;

    RiemannMap map;
    map.curve_ = curve;
    map.basepoint_ = basepoint;
    map.theta0_ = sd.theta(0);

    // periodic interpolant of theta(t) - t
    CVec tm(N);
    for (int j = 0; j < N; ++j) tm(j) = sd.theta(j) - kTwoPi * j / N;
    map.theta_minus_t_ = TrigInterp(tm);

    // inverse table t(theta) on an equispaced theta grid by Newton
    const int M = 2 * N;
    CVec tmt(M);
    double t_guess = 0;
    for (int j = 0; j < M; ++j) {
      const double theta = sd.theta(0) + kTwoPi * j / M;
      double t = t_guess;
      for (int it = 0; it < 60; ++it) {
        const double f = t + map.theta_minus_t_.eval(t).real() - theta;
        const double df = 1.0 + map.theta_minus_t_.deriv(t).real();
        const double step = f / std::max(df, 1e-6);
        t -= step;
        if (std::abs(step) < 1e-14) break;
      }
      tmt(j) = t - theta;  // periodic in theta
      t_guess = t + kTwoPi / M;
    }
    map.t_minus_theta_ = TrigInterp(tmt);

    // Taylor coefficients from boundary samples at theta = theta0 + 2 pi j / M
    CVec bvals(M);
    for (int j = 0; j < M; ++j) {
      const double theta = sd.theta(0) + kTwoPi * j / M;
      const double t = theta + tmt(j).real();
      bvals(j) = curve.point(t);
    }
    CVec modes = dft(bvals);
    // modes are w.r.t. e^{i k (theta-theta0)}: rotate to absolute angle
    double neg = 0;
    for (int k = M / 2 + 1; k < M; ++k) neg = std::max(neg, std::abs(modes(k)));
    CVec taylor = CVec::Zero(M / 2);
    for (int k = 0; k < M / 2; ++k)
      taylor(k) = modes(k) * std::exp(-kI * (double(k) * sd.theta(0)));
    // trim negligible tail
    const double scale = taylor.cwiseAbs().maxCoeff();
    int keep = static_cast<int>(taylor.size());
    while (keep > 2 && std::abs(taylor(keep - 1)) < 1e-15 * scale) --keep;
    map.taylor_ = taylor.head(keep);

    map.residuals_.nodes = N;
    map.residuals_.neg_modes = neg;
    map.residuals_.basepoint = std::abs(map.taylor_(0) - basepoint);
    // boundary residual on offset samples
    double bres = 0;
    for (int j = 0; j < 256; ++j) {
      const double theta = sd.theta(0) + kTwoPi * (j + 0.37) / 256;
      const Complex series = map.eval(std::exp(kI * theta));
      bres = std::max(bres, curve.distance_to(series));
    }
    map.residuals_.boundary = std::max(bres, map.residuals_.basepoint);
    map.deriv0_ = map.taylor_.size() > 1 ? std::abs(map.taylor_(1)) : 0.0;

    if (map.residuals_.boundary < best_res) {
      best = map;
      best_res = map.residuals_.boundary;
    }
    if (best_res < opts.boundary_tol) break;
  }
  if (best.taylor_.size() == 0)
    throw ApproxError("conformal", "boundary correspondence not monotone at any resolution");
  if (best.taylor_.size() > 1 && best.taylor_(1).real() < 0)
    throw ApproxError("conformal", "normalization failed: Psi'(0) not positive");
  return best;
}

Complex RiemannMap::eval(Complex z) const {
  Complex acc = 0;
  for (int k = static_cast<int>(taylor_.size()) - 1; k >= 0; --k) acc = acc * z + taylor_(k);
  return acc;
}

Complex RiemannMap::deriv(Complex z) const {
  Complex acc = 0;
  for (int k = static_cast<int>(taylor_.size()) - 1; k >= 1; --k)
    acc = acc * z + taylor_(k) * double(k);
  return acc;
}

double RiemannMap::theta_of_param(double t) const { return t + theta_minus_t_.eval(t).real(); }

double RiemannMap::param_of_theta(double theta) const {
  return theta + t_minus_theta_.eval(theta - theta0_).real();
}

Complex RiemannMap::boundary_point(double theta) const {
  return curve_.point(param_of_theta(theta));
}

Complex RiemannMap::inverse(Complex w) const {
  // seeds: basepoint preimage 0, then a ring of interior starts
  Complex best_z = 0;
  double best_err = std::abs(eval(0.0) - w);
  for (int j = 0; j < 16; ++j) {
    const Complex z = 0.85 * std::exp(kI * (kTwoPi * j / 16));
    const double e = std::abs(eval(z) - w);
    if (e < best_err) {
      best_err = e;
      best_z = z;
    }
  }
  Complex z = best_z;
  const double scale = std::max(1.0, std::abs(w));
  for (int it = 0; it < 80; ++it) {
    const Complex f = eval(z) - w;
    if (std::abs(f) < 1e-12 * scale) return z;
    const Complex df = deriv(z);
    if (std::abs(df) < 1e-300) break;
    Complex step = f / df;
    if (std::abs(step) > 0.4) step *= 0.4 / std::abs(step);
    z -= step;
    if (std::abs(z) > 1.0 + 1e-9) z *= (1.0 + 1e-9) / std::abs(z);
  }
  if (std::abs(eval(z) - w) < 1e-9 * scale) return z;
  throw ApproxError("conformal",
                    "inverse Newton did not converge (target too close to the boundary; distance " +
                        std::to_string(curve_.distance_to(w)) + ")");
}

Complex inverse_evaluate(const RiemannMap& map, Complex w) { return map.inverse(w); }

ExteriorChart exterior_chart(const JordanCurve& region_boundary, bool bounded, Complex pole,
                             const RiemannMapOptions& opts) {
  ExteriorChart ch;
  ch.boundary_ = region_boundary;
  ch.bounded_ = bounded;
  ch.pole_ = pole;
  ch.pole_at_inf_ = !bounded && std::isinf(std::abs(pole));

  if (bounded) {
    if (std::isinf(std::abs(pole)))
      throw ApproxError("conformal", "bounded component cannot hold infinity");
    if (!region_boundary.contains(pole))
      throw ApproxError("conformal", "pole not inside the bounded component");
    const double margin = 0.02 * std::sqrt(std::abs(region_boundary.signed_area()) / kPi);
    if (region_boundary.distance_to(pole) < margin)
      throw ApproxError("conformal", "pole too close to the component boundary");
    ch.inner_ = riemann_map_interior(region_boundary, pole, opts);
    return ch;
  }

  // Unbounded component: invert through q inside the curve, flip orientation.
  double cx = 0, cy = 0, x1, y1;
  region_boundary.bounding_box(cx, cy, x1, y1);
  Complex q = 0.5 * Complex(cx + x1, cy + y1);
  if (!region_boundary.contains(q)) {
    q = region_boundary.samples().mean();
    if (!region_boundary.contains(q))
      throw ApproxError("conformal", "no inversion center found inside the region boundary");
  }
  ch.q_ = q;
  if (!ch.pole_at_inf_) {
    if (region_boundary.contains(pole))
      throw ApproxError("conformal", "pole must lie in the exterior component");
    const double margin = 1e-3 * std::sqrt(std::abs(region_boundary.signed_area()) / kPi);
    if (region_boundary.distance_to(pole) < margin)
      throw ApproxError("conformal", "pole too close to the component boundary");
  }

  const int n = region_boundary.sample_count();
  CVec inv_samples(n);
  for (int j = 0; j < n; ++j) {
    // reversed parameter keeps the image positively oriented
    const double t = kTwoPi * (n - j) / n;
    inv_samples(j) = 1.0 / (region_boundary.point(t) - q);
  }
  JordanCurve inverted(inv_samples);
  const Complex w0 = ch.pole_at_inf_ ? Complex(0) : 1.0 / (pole - q);
  ch.inner_ = riemann_map_interior(inverted, w0, opts);
  if (ch.pole_at_inf_) ch.far_scale_ = 1.0 / ch.inner_.deriv_at_0();
  return ch;
}

Complex ExteriorChart::tau(Complex z) const {
  const Complex w = bounded_ ? z : 1.0 / (z - q_);
  return 1.0 / inner_.inverse(w);
}

Complex ExteriorChart::sigma(Complex zeta) const {
  const Complex w = inner_.eval(1.0 / zeta);
  return bounded_ ? w : q_ + 1.0 / w;
}

Complex ExteriorChart::sigma_deriv(Complex zeta) const {
  const Complex iz = 1.0 / zeta;
  const Complex dw = inner_.deriv(iz) * (-iz * iz);
  if (bounded_) return dw;
  const Complex w = inner_.eval(iz);
  return -dw / (w * w);
}

double ExteriorChart::circle_angle_of_param(double t) const {
  const double theta = bounded_ ? inner_.theta_of_param(t) : inner_.theta_of_param(-t);
  return -theta;  // tau = 1/e^{i theta}
}

double ExteriorChart::param_of_circle_angle(double angle) const {
  const double t = inner_.param_of_theta(-angle);
  return bounded_ ? t : -t;
}

Complex ExteriorChart::boundary_point_of_angle(double angle) const {
  return boundary_.point(param_of_circle_angle(angle));
}

Complex inverse_evaluate(const ExteriorChart& chart, Complex w) { return chart.sigma(w); }

std::vector<Complex> outer_boundary_polyline(const Raster& raster) {
  // Moore-neighborhood boundary walk from the lowest-leftmost set cell.
  const Raster& r = raster;
  auto inside = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= r.nx || j >= r.ny) return false;
    return r.at(i, j);
  };
  int si = -1, sj = -1;
  for (int j = 0; j < r.ny && si < 0; ++j)
    for (int i = 0; i < r.nx; ++i)
      if (r.at(i, j)) {
        si = i;
        sj = j;
        break;
      }
  if (si < 0) throw ApproxError("conformal", "empty raster has no boundary");

  std::vector<Complex> pts;
  const int dirs[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  int ci = si, cj = sj;
  int backtrack = 4;  // came from the west
  const int max_steps = 8 * (r.nx + r.ny) + 4 * static_cast<int>(r.count());
  for (int step = 0; step < max_steps; ++step) {
    pts.push_back(r.center(ci, cj));
    int d = (backtrack + 1) % 8;
    int found = -1;
    for (int k = 0; k < 8; ++k) {
      const int dd = (d + k) % 8;
      if (inside(ci + dirs[dd][0], cj + dirs[dd][1])) {
        found = dd;
        break;
      }
    }
    if (found < 0) break;  // isolated cell
    ci += dirs[found][0];
    cj += dirs[found][1];
    backtrack = (found + 4) % 8;
    if (ci == si && cj == sj && pts.size() > 2) break;
  }
  return pts;
}

namespace {

JordanCurve smooth_closed_polyline(const std::vector<Complex>& pts, int modes, int out_samples) {
  if (pts.size() < 8) throw ApproxError("conformal", "boundary polyline too short to smooth");
  // resample by cumulative chord length, then low-pass
  const int n = static_cast<int>(pts.size());
  std::vector<double> cum(n + 1, 0.0);
  for (int j = 0; j < n; ++j) cum[j + 1] = cum[j] + std::abs(pts[(j + 1) % n] - pts[j]);
  const double total = cum[n];
  CVec samples(out_samples);
  int seg = 0;
  for (int j = 0; j < out_samples; ++j) {
    const double s = total * j / out_samples;
    while (cum[seg + 1] < s) ++seg;
    const double frac = (s - cum[seg]) / std::max(cum[seg + 1] - cum[seg], 1e-300);
    samples(j) = pts[seg] + frac * (pts[(seg + 1) % n] - pts[seg]);
  }
  JordanCurve raw(samples);
  JordanCurve sm = raw.smoothed(modes, out_samples);
  if (sm.signed_area() < 0) {
    CVec rev(out_samples);
    for (int j = 0; j < out_samples; ++j) rev(j) = sm.samples()((out_samples - j) % out_samples);
    sm = JordanCurve(rev);
  }
  return sm;
}

// raster of the filled image f(closure of D) via nonzero winding of f(dD)
Raster image_raster(const std::function<Complex(Complex)>& f, const JordanCurve& domain_boundary,
                    double cell) {
  const int M = std::max(1024, 4 * domain_boundary.sample_count());
  std::vector<Complex> img(M);
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (int j = 0; j < M; ++j) {
    img[j] = f(domain_boundary.point(kTwoPi * j / M));
    x0 = std::min(x0, img[j].real());
    x1 = std::max(x1, img[j].real());
    y0 = std::min(y0, img[j].imag());
    y1 = std::max(y1, img[j].imag());
  }
  Raster r;
  r.h = cell;
  const double margin = 8 * cell;
  r.x0 = x0 - margin;
  r.y0 = y0 - margin;
  r.nx = static_cast<int>(std::ceil((x1 - x0 + 2 * margin) / cell)) + 1;
  r.ny = static_cast<int>(std::ceil((y1 - y0 + 2 * margin) / cell)) + 1;
  r.cells.assign(static_cast<size_t>(r.nx) * r.ny, 0);
  for (int j = 0; j < r.ny; ++j) {
    for (int i = 0; i < r.nx; ++i) {
      const Complex z = r.center(i, j);
      double wind = 0;
      bool on_curve = false;
      for (int k = 0; k < M; ++k) {
        const Complex u = img[k] - z, v = img[(k + 1) % M] - z;
        if (std::abs(u) < cell) {
          on_curve = true;
          break;
        }
        wind += std::arg(v / u);
      }
      r.set(i, j, on_curve || std::lround(wind / kTwoPi) != 0);
    }
  }
  return r;
}

}  // namespace

TargetCurve target_curve(const std::function<Complex(Complex)>& f, const CompactSetRep& K,
                         const DomainSpec& D, double eps, const TargetCurveOptions& opts) {
  // precondition: d(f(z), f(K)) < eps/2 on dD, sampled
  std::vector<Complex> fK;
  for (const auto& c : K.curves)
    for (int j = 0; j < 2 * c.sample_count(); ++j)
      fK.push_back(f(c.point(kTwoPi * j / (2 * c.sample_count()))));
  for (Complex p : K.points) fK.push_back(f(p));
  auto dist_to_fK = [&](Complex w) {
    double d = 1e300;
    for (Complex v : fK) d = std::min(d, std::abs(w - v));
    return d;
  };
  for (int j = 0; j < 512; ++j) {
    const Complex z = D.outer.point(kTwoPi * j / 512);
    if (dist_to_fK(f(z)) >= eps / 2)
      throw ApproxError("conformal",
                        "target_curve precondition failed: f(dD) not within eps/2 of f(K)");
  }

  const double cell = opts.cell > 0 ? opts.cell : eps / 40;
  Raster img = image_raster(f, D.outer, cell);
  CompactSetRep set;
  set.raster = img;
  CompactSetRep hulled = hull(set);
  CompactSetRep grown = eps_neighborhood(hulled, eps / 2);

  auto poly = outer_boundary_polyline(grown.raster);
  JordanCurve gamma = smooth_closed_polyline(poly, opts.smoothing_modes, 1024);

  TargetCurve out;
  out.curve = gamma;
  // invariant: every gamma point within eps of f(K)
  double worst = 0;
  for (int j = 0; j < 512; ++j) worst = std::max(worst, dist_to_fK(gamma.point(kTwoPi * j / 512)));
  out.max_dist_to_fK = worst;
  if (worst >= eps)
    throw ApproxError("conformal",
                      "target curve drifted beyond eps of f(K); raise smoothing modes (measured " +
                          std::to_string(worst) + ")");
  // invariant: winding 1 about samples of f(D)
  const Complex d_center = D.outer.samples().mean();
  for (int j = 0; j < 64; ++j) {
    const Complex z = D.outer.point(kTwoPi * j / 64);
    const Complex w = f(d_center + 0.97 * (z - d_center));
    if (gamma.winding_number(w) != 1)
      throw ApproxError("conformal", "target curve does not surround f(D)");
  }

  // basepoint: area centroid of gamma
  Complex centroid = 0;
  double area = 0;
  const CVec& s = gamma.samples();
  const int n = gamma.sample_count();
  for (int j = 0; j < n; ++j) {
    const Complex a = s(j), b = s((j + 1) % n);
    const double cross = a.real() * b.imag() - b.real() * a.imag();
    area += cross;
    centroid += (a + b) * cross;
  }
  area *= 0.5;
  centroid /= (6.0 * area);
  out.interior_map = riemann_map_interior(gamma, centroid, opts.map_opts);
  return out;
}

}  // namespace approx
