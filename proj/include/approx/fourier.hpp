#pragma once

#include "approx/types.hpp"

namespace approx {

// Discrete Fourier helpers on uniform periodic grids. Conventions:
//   forward:  c_k = (1/N) sum_j f_j exp(-2*pi*i*j*k/N)   (normalized)
//   inverse:  f_j = sum_k c_k exp(+2*pi*i*j*k/N)
// Coefficient index k runs 0..N-1 and is interpreted symmetrically
// (k > N/2 stands for k - N).

CVec dft(const CVec& samples);
CVec idft(const CVec& coeffs);

// Signed frequency for slot k of an N-point transform.
inline int fft_freq(int k, int n) { return (k <= n / 2) ? k : k - n; }

/// Trigonometric interpolant of a 2*pi-periodic function given equispaced
/// samples f(2*pi*j/N). Evaluation and differentiation anywhere.
class TrigInterp {
public:
  TrigInterp() = default;
  explicit TrigInterp(const CVec& samples);
  static TrigInterp from_coeffs(const CVec& coeffs);

  Complex eval(double t) const;
  Complex deriv(double t) const;
  Complex second_deriv(double t) const;
  TrigInterp derivative() const;

  const CVec& coeffs() const { return coeffs_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  bool empty() const { return coeffs_.size() == 0; }

  // Resample onto n equispaced points (n need not match the original).
  CVec resample(int n) const;

private:
  CVec coeffs_;
};

// Conjugation operator on the circle: given real samples of u, returns samples
// of the conjugate function v with v = H[u], normalized so mean(v) = 0.
// H maps cos(kt) -> sin(kt) and sin(kt) -> -cos(kt).
RVec conjugate_periodic(const RVec& u);

// 2D transforms on row-major square grids (n x n), used by the Beltrami solver.
void fft2_inplace(CMat& grid, bool inverse);

}  // namespace approx
