#include "approx/functions.hpp"

#include <algorithm>
#include <cmath>

namespace approx {

Polynomial::Polynomial(CVec coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) coeffs_ = CVec::Zero(1);
}

Polynomial Polynomial::monomial(int degree, Complex lead) {
  CVec c = CVec::Zero(degree + 1);
  c(degree) = lead;
  return Polynomial(c);
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) acc = acc * z + coeffs_(k);
  return acc;
}

Polynomial Polynomial::derivative() const {
  const int n = static_cast<int>(coeffs_.size());
  if (n <= 1) return Polynomial(CVec::Zero(1));
  CVec d(n - 1);
  for (int k = 1; k < n; ++k) d(k - 1) = coeffs_(k) * double(k);
  return Polynomial(d);
}

int Polynomial::degree() const {
  const double scale = coeff_scale();
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
    if (std::abs(coeffs_(k)) > 1e-14 * scale) return k;
  return -1;
}

double Polynomial::coeff_scale() const {
  double s = 0;
  for (int k = 0; k < coeffs_.size(); ++k) s = std::max(s, std::abs(coeffs_(k)));
  return s > 0 ? s : 1.0;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  CVec c = CVec::Zero(std::max(coeffs_.size(), o.coeffs_.size()));
  c.head(coeffs_.size()) = coeffs_;
  c.head(o.coeffs_.size()) += o.coeffs_;
  return Polynomial(c);
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  CVec c = CVec::Zero(coeffs_.size() + o.coeffs_.size() - 1);
  for (int a = 0; a < coeffs_.size(); ++a)
    for (int b = 0; b < o.coeffs_.size(); ++b) c(a + b) += coeffs_(a) * o.coeffs_(b);
  return Polynomial(c);
}

Polynomial Polynomial::operator*(Complex s) const { return Polynomial(coeffs_ * s); }

std::vector<Complex> Polynomial::roots() const {
  const int d = degree();
  if (d <= 0) return {};
  CVec c = coeffs_.head(d + 1) / coeffs_(d);
  CMat companion = CMat::Zero(d, d);
  for (int k = 0; k < d - 1; ++k) companion(k + 1, k) = 1.0;
  for (int k = 0; k < d; ++k) companion(k, d - 1) = -c(k);
  Eigen::ComplexEigenSolver<CMat> es(companion, /*computeEigenvectors=*/false);
  std::vector<Complex> out(d);
  const Polynomial dp = derivative();
  for (int k = 0; k < d; ++k) {
    Complex z = es.eigenvalues()(k);
    const Complex f = (*this)(z), df = dp(z);
    if (std::abs(df) > 1e-300) {
      const Complex step = f / df;
      if (std::abs(step) < 0.5 * (1.0 + std::abs(z))) z -= step;  // polish once
    }
    out[k] = z;
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

Complex RationalMap::eval(Complex z, bool* at_pole) const {
  const Complex n = numerator(z), d = denominator(z);
  const double scale =
      denominator.coeff_scale() *
      std::max(1.0, std::pow(std::abs(z), std::max(0, denominator.degree())));
  if (std::abs(d) < 1e-14 * scale) {
    if (at_pole) *at_pole = true;
    return Complex(std::numeric_limits<double>::infinity(), 0);
  }
  if (at_pole) *at_pole = false;
  return n / d;
}

RationalMap RationalMap::derivative() const {
  return RationalMap{numerator.derivative() * denominator - numerator * denominator.derivative(),
                     denominator * denominator};
}

void RationalMap::validate() const {
  const auto zn = numerator.roots();
  const auto zd = denominator.roots();
  const double tol = 1e-8 * std::max(1.0, numerator.coeff_scale());
  for (Complex a : zn)
    for (Complex b : zd)
      if (std::abs(a - b) < tol)
        throw ApproxError("functions", "rational map has a shared numerator/denominator root");
}

Complex AnalyticFn::eval(Complex z, bool* at_pole) const {
  if (at_pole) *at_pole = false;
  if (std::holds_alternative<Polynomial>(rep_)) return std::get<Polynomial>(rep_)(z);
  if (std::holds_alternative<RationalMap>(rep_)) return std::get<RationalMap>(rep_).eval(z, at_pole);
  const PowerSeries& s = std::get<PowerSeries>(rep_);
  const Complex w = z - s.center;
  if (std::abs(w) > 0.95 * s.radius)
    throw ApproxError("functions", "power series evaluated outside 0.95*radius");
  Complex acc = 0;
  for (int k = static_cast<int>(s.coeffs.size()) - 1; k >= 0; --k) acc = acc * w + s.coeffs(k);
  return acc;
}

AnalyticFn AnalyticFn::derivative() const {
  if (std::holds_alternative<Polynomial>(rep_))
    return AnalyticFn(std::get<Polynomial>(rep_).derivative());
  if (std::holds_alternative<RationalMap>(rep_))
    return AnalyticFn(std::get<RationalMap>(rep_).derivative());
  const PowerSeries& s = std::get<PowerSeries>(rep_);
  PowerSeries d;
  d.center = s.center;
  d.radius = s.radius;
  const int n = static_cast<int>(s.coeffs.size());
  d.coeffs = CVec::Zero(std::max(1, n - 1));
  for (int k = 1; k < n; ++k) d.coeffs(k - 1) = s.coeffs(k) * double(k);
  return AnalyticFn(d);
}

namespace {

CriticalData critical_from_deriv_zeros(const std::vector<Complex>& pts,
                                       const std::function<Complex(Complex)>& f) {
  CriticalData cd;
  cd.points = pts;
  cd.values.reserve(pts.size());
  for (Complex z : pts) cd.values.push_back(f(z));
  return cd;
}

}  // namespace

CriticalData critical_data(const Polynomial& p) {
  if (p.degree() < 1) throw ApproxError("functions", "critical_data needs degree >= 1");
  return critical_from_deriv_zeros(p.derivative().roots(), [&](Complex z) { return p(z); });
}

CriticalData critical_data(const RationalMap& r) {
  if (std::max(r.numerator.degree(), r.denominator.degree()) < 1)
    throw ApproxError("functions", "critical_data needs degree >= 1");
  // finite critical points: zeros of n'd - nd'
  const Polynomial num =
      r.numerator.derivative() * r.denominator - r.numerator * r.denominator.derivative();
  auto pts = num.roots();
  // drop spurious roots that coincide with poles
  const auto poles = r.denominator.roots();
  std::vector<Complex> keep;
  for (Complex z : pts) {
    bool at_pole = false;
    for (Complex p : poles) at_pole |= std::abs(z - p) < 1e-10 * (1.0 + std::abs(p));
    if (!at_pole) keep.push_back(z);
  }
  return critical_from_deriv_zeros(keep, [&](Complex z) { return r.eval(z); });
}

CircleCoeffResult coefficients_from_circle(const std::function<Complex(Complex)>& sampler,
                                           double R, int degree, int samples) {
  if (samples <= 2 * degree)
    throw ApproxError("functions", "coefficients_from_circle needs samples > 2*degree");
  CVec vals(samples);
  for (int j = 0; j < samples; ++j) vals(j) = sampler(R * std::exp(kI * (kTwoPi * j / samples)));
  CVec c = dft(vals);  // c_k = (1/N) sum f_j w^{-jk}
  CircleCoeffResult out;
  CVec coeffs(degree + 1);
  double rk = 1.0;
  for (int k = 0; k <= degree; ++k) {
    coeffs(k) = c(k) / rk;
    rk *= R;
  }
  out.poly = Polynomial(coeffs);
  // Noise floor from the magnitude of the mode band just above the target degree.
  double tail = 0;
  const int lo = degree + 1, hi = std::min<int>(samples / 2, degree + 8);
  for (int k = lo; k <= hi && k < samples; ++k) tail = std::max(tail, std::abs(c(k)));
  out.noise_floor = tail;
  out.degree_deficient = std::abs(c(degree)) <= 2 * tail + 1e-300;
  return out;
}

Polynomial real_symmetrize(const Polynomial& q) {
  CVec c = q.coeffs();
  for (int k = 0; k < c.size(); ++k) c(k) = Complex(c(k).real(), 0.0);
  return Polynomial(c);
}

double sup_norm(const std::function<Complex(Complex)>& f, const CompactSetRep& K) {
  double best = 0;
  for (Complex p : K.points) best = std::max(best, std::abs(f(p)));
  for (const auto& curve : K.curves) {
    const int n = 4 * curve.sample_count();
    double local_best = 0;
    double t_best = 0;
    for (int j = 0; j < n; ++j) {
      const double t = kTwoPi * j / n;
      const double v = std::abs(f(curve.point(t)));
      if (v > local_best) {
        local_best = v;
        t_best = t;
      }
    }
    // local refinement: ternary search around the best sample
    double a = t_best - kTwoPi / n, b = t_best + kTwoPi / n;
    for (int it = 0; it < 60; ++it) {
      const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
      if (std::abs(f(curve.point(m1))) < std::abs(f(curve.point(m2))))
        a = m1;
      else
        b = m2;
    }
    local_best = std::max(local_best, std::abs(f(curve.point(0.5 * (a + b)))));
    best = std::max(best, local_best);
  }
  return best;
}

double sup_norm(const AnalyticFn& f, const CompactSetRep& K) {
  return sup_norm([&](Complex z) { return f.eval(z); }, K);
}

namespace {

// Argument increment along the arc t0->t1, subdividing until each step turns
// by less than pi/2 (handles sharp derivative spikes on the contour).
double arg_sweep(const std::function<Complex(Complex)>& fn, Complex center, double radius,
                 double t0, double t1, Complex f0, Complex f1, int depth) {
  const double d = std::arg(f1 / f0);
  if (std::abs(d) < kPi / 2 && depth > 3) return d;
  if (depth > 42) return d;
  const double tm = 0.5 * (t0 + t1);
  const Complex fm = fn(center + radius * std::exp(kI * tm));
  return arg_sweep(fn, center, radius, t0, tm, f0, fm, depth + 1) +
         arg_sweep(fn, center, radius, tm, t1, fm, f1, depth + 1);
}

}  // namespace

int winding_zero_count(const std::function<Complex(Complex)>& fn, Complex center, double radius,
                       int samples) {
  double total = 0;
  double t_prev = 0;
  Complex prev = fn(center + radius);
  for (int j = 1; j <= samples; ++j) {
    const double t = kTwoPi * j / samples;
    const Complex cur = fn(center + radius * std::exp(kI * t));
    total += arg_sweep(fn, center, radius, t_prev, t, prev, cur, 0);
    prev = cur;
    t_prev = t;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace approx
