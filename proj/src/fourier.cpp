#include "approx/fourier.hpp"

#include <unsupported/Eigen/FFT>

namespace approx {

CVec dft(const CVec& samples) {
  const int n = static_cast<int>(samples.size());
  Eigen::FFT<double> fft;
  std::vector<Complex> in(samples.data(), samples.data() + n), out(n);
  fft.fwd(out, in);
  CVec c(n);
  for (int k = 0; k < n; ++k) c(k) = out[k] / static_cast<double>(n);
  return c;
}

CVec idft(const CVec& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Eigen::FFT<double> fft;
  std::vector<Complex> in(n), out(n);
  for (int k = 0; k < n; ++k) in[k] = coeffs(k) * static_cast<double>(n);
  fft.inv(out, in);
  CVec f(n);
  for (int j = 0; j < n; ++j) f(j) = out[j];
  return f;
}

TrigInterp::TrigInterp(const CVec& samples) { coeffs_ = dft(samples); }

TrigInterp TrigInterp::from_coeffs(const CVec& coeffs) {
  TrigInterp t;
  t.coeffs_ = coeffs;
  return t;
}

namespace {

// Horner evaluation of sum_k c_k e^{i f(k) t} with an optional per-mode weight
// of i*f or -f^2 (derivative orders 0, 1, 2). Nyquist mode is split
// symmetrically for order 0 and dropped for derivatives.
Complex trig_eval(const CVec& c, double t, int order) {
  const int n = static_cast<int>(c.size());
  const int kmax = (n - 1) / 2;          // largest fully-present positive freq
  const bool has_nyq = (n % 2 == 0);
  const Complex w = std::exp(kI * t);
  const Complex v = std::conj(w);

  auto mode_weight = [order](double f) -> Complex {
    if (order == 0) return Complex(1, 0);
    if (order == 1) return kI * f;
    return Complex(-f * f, 0);
  };

  // positive frequencies kmax..1 then constant term
  Complex pos = 0;
  for (int f = kmax; f >= 1; --f) pos = (pos + c(f) * mode_weight(f)) * w;
  // negative frequencies -kmax..-1
  Complex neg = 0;
  for (int f = kmax; f >= 1; --f) neg = (neg + c(n - f) * mode_weight(-f)) * v;
  Complex acc = pos + neg;
  if (order == 0) acc += c(0);
  if (has_nyq && order == 0) {
    const int ny = n / 2;
    // split symmetrically: keeps real inputs real
    Complex wn = 1, vn = 1;
    for (int j = 0; j < ny; ++j) {
      wn *= w;
      vn *= v;
    }
    acc += c(ny) * 0.5 * (wn + vn);
  }
  return acc;
}

}  // namespace

Complex TrigInterp::eval(double t) const { return trig_eval(coeffs_, t, 0); }

Complex TrigInterp::deriv(double t) const { return trig_eval(coeffs_, t, 1); }

Complex TrigInterp::second_deriv(double t) const { return trig_eval(coeffs_, t, 2); }

TrigInterp TrigInterp::derivative() const {
  const int n = size();
  CVec d(n);
  for (int k = 0; k < n; ++k) {
    const int f = fft_freq(k, n);
    d(k) = (n % 2 == 0 && k == n / 2) ? Complex(0) : coeffs_(k) * kI * double(f);
  }
  return from_coeffs(d);
}

CVec TrigInterp::resample(int n) const {
  CVec c = CVec::Zero(n);
  const int m = size();
  for (int k = 0; k < m; ++k) {
    const int f = fft_freq(k, m);
    if (std::abs(f) > n / 2) continue;
    c((f % n + n) % n) += coeffs_(k);
  }
  return idft(c);
}

RVec conjugate_periodic(const RVec& u) {
  const int n = static_cast<int>(u.size());
  CVec cu(n);
  for (int j = 0; j < n; ++j) cu(j) = u(j);
  CVec c = dft(cu);
  for (int k = 0; k < n; ++k) {
    const int f = fft_freq(k, n);
    if (f > 0)
      c(k) *= Complex(0, -1);
    else if (f < 0)
      c(k) *= Complex(0, 1);
    else
      c(k) = 0;
  }
  CVec v = idft(c);
  RVec out(n);
  for (int j = 0; j < n; ++j) out(j) = v(j).real();
  return out;
}

void fft2_inplace(CMat& grid, bool inverse) {
  const int n = static_cast<int>(grid.rows());
  Eigen::FFT<double> fft;
  std::vector<Complex> buf(n), out(n);
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) buf[j] = grid(r, j);
    if (inverse)
      fft.inv(out, buf);
    else
      fft.fwd(out, buf);
    for (int j = 0; j < n; ++j) grid(r, j) = out[j];
  }
  for (int cidx = 0; cidx < n; ++cidx) {
    for (int j = 0; j < n; ++j) buf[j] = grid(j, cidx);
    if (inverse)
      fft.inv(out, buf);
    else
      fft.fwd(out, buf);
    for (int j = 0; j < n; ++j) grid(j, cidx) = out[j];
  }
}

}  // namespace approx
