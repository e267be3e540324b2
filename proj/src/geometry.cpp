#include "approx/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace approx {

JordanCurve::JordanCurve(const CVec& samples) : samples_(samples), interp_(samples) {
  const int n = sample_count();
  if (n < 8) throw ApproxError("geometry", "curve needs at least 8 samples");
  // Spectral cumulative arclength: integrate |z'(t)|.
  const int m = std::max(n, 256);
  RVec speed(m);
  for (int j = 0; j < m; ++j) speed(j) = std::abs(interp_.deriv(kTwoPi * j / m));
  CVec cspeed(m);
  for (int j = 0; j < m; ++j) cspeed(j) = speed(j);
  CVec c = dft(cspeed);
  const double mean = c(0).real();
  // periodic antiderivative of (speed - mean)
  CVec ic = CVec::Zero(m);
  for (int k = 1; k < m; ++k) {
    const int f = fft_freq(k, m);
    if (f == 0 || (m % 2 == 0 && k == m / 2)) continue;
    ic(k) = c(k) / (kI * double(f));
  }
  CVec periodic = idft(ic);
  arclen_ = RVec(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = kTwoPi * j / n;
    const int jm = (j * m / n) % m;
    // evaluate periodic part exactly at t via the coefficient sum when grids align
    double per;
    if (j * m % n == 0) {
      per = periodic(jm).real() - periodic(0).real();
    } else {
      per = (TrigInterp::from_coeffs(ic).eval(t) - periodic(0)).real();
    }
    arclen_(j) = mean * t + per;
  }
  total_length_ = arclen_(n);
  for (int j = 0; j < n; ++j) {
    if (arclen_(j + 1) <= arclen_(j))
      throw ApproxError("geometry", "arclength table not strictly increasing (degenerate curve)");
  }
}

JordanCurve JordanCurve::circle(Complex center, double radius, int n) {
  CVec s(n);
  for (int j = 0; j < n; ++j) s(j) = center + radius * std::exp(kI * (kTwoPi * j / n));
  return JordanCurve(s);
}

JordanCurve JordanCurve::ellipse(Complex center, double a, double b, int n) {
  CVec s(n);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    s(j) = center + Complex(a * std::cos(t), b * std::sin(t));
  }
  return JordanCurve(s);
}

double JordanCurve::signed_area() const {
  const int n = sample_count();
  double acc = 0;
  for (int j = 0; j < n; ++j) {
    const Complex a = samples_(j), b = samples_((j + 1) % n);
    acc += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * acc;
}

int JordanCurve::winding_number(Complex z) const {
  const int n = sample_count();
  double total = 0;
  for (int j = 0; j < n; ++j) {
    const Complex a = samples_(j) - z, b = samples_((j + 1) % n) - z;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

bool JordanCurve::is_simple_polyline() const {
  const int n = sample_count();
  auto seg = [&](int j, Complex& a, Complex& b) {
    a = samples_(j);
    b = samples_((j + 1) % n);
  };
  auto intersects = [](Complex p1, Complex p2, Complex q1, Complex q2) {
    auto cross = [](Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); };
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
  };
  for (int i = 0; i < n; ++i) {
    Complex a, b;
    seg(i, a, b);
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through wrap
      Complex c, d;
      seg(j, c, d);
      if (intersects(a, b, c, d)) return false;
    }
  }
  return true;
}

double JordanCurve::arclength_at(double t) const {
  t = wrap_angle(t);
  const int n = sample_count();
  const double x = t / kTwoPi * n;
  const int j = std::min(static_cast<int>(x), n - 1);
  const double frac = x - j;
  return arclen_(j) * (1 - frac) + arclen_(j + 1) * frac;
}

double JordanCurve::param_at_arclength(double s) const {
  const int n = sample_count();
  double wraps = std::floor(s / total_length_);
  s -= wraps * total_length_;
  // binary search in the table, then refine by Newton on the interpolant
  int lo = 0, hi = n;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (arclen_(mid) <= s)
      lo = mid;
    else
      hi = mid;
  }
  double t = kTwoPi * (lo + (s - arclen_(lo)) / (arclen_(lo + 1) - arclen_(lo))) / n;
  for (int it = 0; it < 30; ++it) {
    const double f = arclength_at(t) - s;
    const double df = std::abs(interp_.deriv(t));
    const double step = f / df;
    t -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return t + wraps * kTwoPi;
}

double JordanCurve::distance_to(Complex z) const {
  const int n = sample_count();
  double best = std::numeric_limits<double>::max();
  for (int j = 0; j < n; ++j) {
    const Complex a = samples_(j), b = samples_((j + 1) % n);
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0 ? std::clamp(((z - a) / ab).real(), 0.0, 1.0) : 0.0;
    best = std::min(best, std::abs(z - (a + t * ab)));
  }
  return best;
}

void JordanCurve::bounding_box(double& x0, double& y0, double& x1, double& y1) const {
  x0 = y0 = std::numeric_limits<double>::max();
  x1 = y1 = std::numeric_limits<double>::lowest();
  for (int j = 0; j < sample_count(); ++j) {
    x0 = std::min(x0, samples_(j).real());
    x1 = std::max(x1, samples_(j).real());
    y0 = std::min(y0, samples_(j).imag());
    y1 = std::max(y1, samples_(j).imag());
  }
}

JordanCurve JordanCurve::smoothed(int modes, int n) const {
  CVec c = interp_.coeffs();
  const int m = static_cast<int>(c.size());
  CVec out = CVec::Zero(n);
  for (int k = 0; k < m; ++k) {
    const int f = fft_freq(k, m);
    if (std::abs(f) > modes || std::abs(f) > n / 2 - 1) continue;
    out((f % n + n) % n) = c(k);
  }
  return JordanCurve(idft(out));
}

bool Raster::locate(Complex z, int& i, int& j) const {
  i = static_cast<int>(std::floor((z.real() - x0) / h));
  j = static_cast<int>(std::floor((z.imag() - y0) / h));
  return i >= 0 && i < nx && j >= 0 && j < ny;
}

size_t Raster::count() const {
  size_t c = 0;
  for (uint8_t v : cells) c += v != 0;
  return c;
}

bool CompactSetRep::member(Complex z) const {
  for (const auto& c : curves)
    if (c.contains(z) || c.distance_to(z) < raster.h) return true;
  for (Complex p : points)
    if (std::abs(z - p) < raster.h) return true;
  return false;
}

bool DomainSpec::contains(Complex z) const {
  if (!outer.contains(z)) return false;
  for (const auto& hcurve : holes)
    if (hcurve.contains(z) || hcurve.distance_to(z) == 0) return false;
  return true;
}

void DomainSpec::validate() const {
  if (outer.signed_area() <= 0) throw ApproxError("geometry", "outer curve not positively oriented");
  for (size_t a = 0; a < holes.size(); ++a) {
    for (int j = 0; j < holes[a].sample_count(); ++j) {
      if (!outer.contains(holes[a].samples()(j)))
        throw ApproxError("geometry", "hole not inside outer curve of domain " + label);
    }
    for (size_t b = a + 1; b < holes.size(); ++b) {
      bool overlap = false;
      for (int j = 0; j < holes[b].sample_count() && !overlap; ++j)
        overlap = holes[a].contains(holes[b].samples()(j));
      for (int j = 0; j < holes[a].sample_count() && !overlap; ++j)
        overlap = holes[b].contains(holes[a].samples()(j));
      if (overlap) throw ApproxError("geometry", "holes overlap in domain " + label);
    }
  }
}

namespace {

void fill_curve_interior(Raster& r, const JordanCurve& curve) {
  // Scanline even-odd fill over the sampled polyline.
  const int n = curve.sample_count();
  const CVec& s = curve.samples();
  for (int j = 0; j < r.ny; ++j) {
    const double y = r.y0 + (j + 0.5) * r.h;
    std::vector<double> xs;
    for (int k = 0; k < n; ++k) {
      const Complex a = s(k), b = s((k + 1) % n);
      const double ya = a.imag(), yb = b.imag();
      if ((ya <= y && yb > y) || (yb <= y && ya > y)) {
        const double t = (y - ya) / (yb - ya);
        xs.push_back(a.real() + t * (b.real() - a.real()));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (size_t k = 0; k + 1 < xs.size(); k += 2) {
      int i0 = static_cast<int>(std::ceil((xs[k] - r.x0) / r.h - 0.5));
      int i1 = static_cast<int>(std::floor((xs[k + 1] - r.x0) / r.h - 0.5));
      for (int i = std::max(i0, 0); i <= std::min(i1, r.nx - 1); ++i) r.set(i, j, true);
    }
  }
  // Mark boundary cells too, so thin features are never lost.
  for (int k = 0; k < n; ++k) {
    const Complex a = s(k), b = s((k + 1) % n);
    const int steps = std::max(1, static_cast<int>(std::abs(b - a) / (0.5 * r.h)));
    for (int q = 0; q <= steps; ++q) {
      const Complex z = a + (b - a) * (double(q) / steps);
      int i, jj;
      if (r.locate(z, i, jj)) r.set(i, jj, true);
    }
  }
}

std::vector<double> edt_1d(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<double> d(n);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::max();
  z[1] = std::numeric_limits<double>::max();
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2 * q - 2 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2 * q - 2 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::max();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    d[q] = (q - v[k]) * double(q - v[k]) + f[v[k]];
  }
  return d;
}

}  // namespace

std::vector<double> distance_transform(const Raster& r) {
  const double inf = 1e18;
  std::vector<double> g(static_cast<size_t>(r.nx) * r.ny);
  // pass 1: columns
  for (int i = 0; i < r.nx; ++i) {
    std::vector<double> f(r.ny);
    for (int j = 0; j < r.ny; ++j) f[j] = r.at(i, j) ? 0.0 : inf;
    auto d = edt_1d(f);
    for (int j = 0; j < r.ny; ++j) g[static_cast<size_t>(j) * r.nx + i] = d[j];
  }
  // pass 2: rows
  std::vector<double> out(g.size());
  for (int j = 0; j < r.ny; ++j) {
    std::vector<double> f(r.nx);
    for (int i = 0; i < r.nx; ++i) f[i] = g[static_cast<size_t>(j) * r.nx + i];
    auto d = edt_1d(f);
    for (int i = 0; i < r.nx; ++i) out[static_cast<size_t>(j) * r.nx + i] = d[i];
  }
  return out;
}

CompactSetRep make_compact_set(std::vector<JordanCurve> curves, std::vector<Complex> points,
                               double cell) {
  if (curves.empty() && points.empty()) throw ApproxError("geometry", "empty compact set");
  double x0 = std::numeric_limits<double>::max(), y0 = x0;
  double x1 = std::numeric_limits<double>::lowest(), y1 = x1;
  for (const auto& c : curves) {
    double a, b, cx, cy;
    c.bounding_box(a, b, cx, cy);
    x0 = std::min(x0, a);
    y0 = std::min(y0, b);
    x1 = std::max(x1, cx);
    y1 = std::max(y1, cy);
  }
  for (Complex p : points) {
    x0 = std::min(x0, p.real());
    y0 = std::min(y0, p.imag());
    x1 = std::max(x1, p.real());
    y1 = std::max(y1, p.imag());
  }
  const double margin = 8 * cell;
  CompactSetRep set;
  set.raster.h = cell;
  set.raster.x0 = x0 - margin;
  set.raster.y0 = y0 - margin;
  set.raster.nx = static_cast<int>(std::ceil((x1 - x0 + 2 * margin) / cell)) + 1;
  set.raster.ny = static_cast<int>(std::ceil((y1 - y0 + 2 * margin) / cell)) + 1;
  if (static_cast<long long>(set.raster.nx) * set.raster.ny > 64LL * 1024 * 1024)
    throw ApproxError("geometry", "raster too large; increase cell size");
  set.raster.cells.assign(static_cast<size_t>(set.raster.nx) * set.raster.ny, 0);

  // Resolution check: distinct curves should not come closer than 2 cells.
  for (size_t a = 0; a < curves.size(); ++a) {
    for (size_t b = a + 1; b < curves.size(); ++b) {
      double dmin = std::numeric_limits<double>::max();
      for (int j = 0; j < curves[b].sample_count(); ++j)
        dmin = std::min(dmin, curves[a].distance_to(curves[b].samples()(j)));
      const bool nested = curves[a].contains(curves[b].samples()(0)) ||
                          curves[b].contains(curves[a].samples()(0));
      if (!nested && dmin < 2 * cell)
        throw ApproxError("geometry", "raster resolution too coarse to separate curves");
    }
  }

  for (const auto& c : curves) fill_curve_interior(set.raster, c);
  for (Complex p : points) {
    int i, j;
    if (set.raster.locate(p, i, j)) set.raster.set(i, j, true);
  }
  set.curves = std::move(curves);
  set.points = std::move(points);
  return set;
}

namespace {

// Flood fill of the unset cells reachable from the raster border.
std::vector<uint8_t> outside_mask(const Raster& r) {
  std::vector<uint8_t> outside(r.cells.size(), 0);
  std::queue<std::pair<int, int>> q;
  auto push = [&](int i, int j) {
    const size_t idx = static_cast<size_t>(j) * r.nx + i;
    if (!outside[idx] && !r.at(i, j)) {
      outside[idx] = 1;
      q.emplace(i, j);
    }
  };
  for (int i = 0; i < r.nx; ++i) {
    push(i, 0);
    push(i, r.ny - 1);
  }
  for (int j = 0; j < r.ny; ++j) {
    push(0, j);
    push(r.nx - 1, j);
  }
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop();
    if (i > 0) push(i - 1, j);
    if (i + 1 < r.nx) push(i + 1, j);
    if (j > 0) push(i, j - 1);
    if (j + 1 < r.ny) push(i, j + 1);
  }
  return outside;
}

}  // namespace

CompactSetRep hull(const CompactSetRep& set) {
  if (set.empty()) throw ApproxError("geometry", "hull of empty set");
  CompactSetRep out = set;
  auto outside = outside_mask(set.raster);
  for (size_t idx = 0; idx < out.raster.cells.size(); ++idx)
    out.raster.cells[idx] = outside[idx] ? 0 : 1;
  return out;
}

CompactSetRep eps_neighborhood(const CompactSetRep& set, double eps) {
  if (eps <= 2 * set.raster.h)
    throw ApproxError("geometry", "eps_neighborhood: eps must exceed 2 raster cells");
  // Grow the frame so the dilation fits.
  const Raster& r = set.raster;
  const int pad = static_cast<int>(std::ceil(eps / r.h)) + 8;
  CompactSetRep out = set;
  out.raster.nx = r.nx + 2 * pad;
  out.raster.ny = r.ny + 2 * pad;
  out.raster.x0 = r.x0 - pad * r.h;
  out.raster.y0 = r.y0 - pad * r.h;
  out.raster.cells.assign(static_cast<size_t>(out.raster.nx) * out.raster.ny, 0);
  for (int j = 0; j < r.ny; ++j)
    for (int i = 0; i < r.nx; ++i)
      if (r.at(i, j)) out.raster.set(i + pad, j + pad, true);
  auto d2 = distance_transform(out.raster);
  const double thr = (eps / r.h) * (eps / r.h);
  for (size_t idx = 0; idx < out.raster.cells.size(); ++idx)
    out.raster.cells[idx] = d2[idx] < thr ? 1 : 0;
  return out;
}

namespace {

double directed_hausdorff(const Raster& from, const Raster& to) {
  auto d2 = distance_transform(to);
  double worst = 0;
  for (int j = 0; j < from.ny; ++j) {
    for (int i = 0; i < from.nx; ++i) {
      if (!from.at(i, j)) continue;
      const Complex z = from.center(i, j);
      // nearest "to" cell, via to's frame
      const double gx = (z.real() - to.x0) / to.h - 0.5;
      const double gy = (z.imag() - to.y0) / to.h - 0.5;
      const int ti = std::clamp(static_cast<int>(std::lround(gx)), 0, to.nx - 1);
      const int tj = std::clamp(static_cast<int>(std::lround(gy)), 0, to.ny - 1);
      const double base = std::sqrt(d2[static_cast<size_t>(tj) * to.nx + ti]) * to.h;
      const double offset = std::abs(z - to.center(ti, tj));
      worst = std::max(worst, base + offset);
    }
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const CompactSetRep& X, const CompactSetRep& Y) {
  if (X.empty() || Y.empty()) throw ApproxError("geometry", "hausdorff of empty set");
  return std::max(directed_hausdorff(X.raster, Y.raster), directed_hausdorff(Y.raster, X.raster));
}

bool is_full(const CompactSetRep& set) {
  auto outside = outside_mask(set.raster);
  for (size_t idx = 0; idx < set.raster.cells.size(); ++idx)
    if (!set.raster.cells[idx] && !outside[idx]) return false;
  return true;
}

}  // namespace approx
