#pragma once

#include <functional>
#include <vector>

#include "approx/functions.hpp"
#include "approx/types.hpp"

namespace approx {

/// Finite Blaschke product: front * prod (z - a_j)/(1 - conj(a_j) z) with all
/// |a_j| < 1 and |front| = 1. Evaluation stays in factored form; an optional
/// Schur-parameter form backs products from caratheodory_approx.
class BlaschkeProduct {
public:
  BlaschkeProduct() = default;
  BlaschkeProduct(std::vector<Complex> zeros, Complex front);

  // Schur-parameter representation: backward recursion with unimodular tail.
  static BlaschkeProduct from_schur(std::vector<Complex> gammas, Complex tail);

  Complex eval(Complex z) const;
  Complex deriv(Complex z) const;
  Complex operator()(Complex z) const { return eval(z); }

  int degree() const;
  const std::vector<Complex>& zeros() const { return zeros_; }
  Complex front() const { return front_; }
  bool has_zero_form() const { return zeros_valid_; }

  // Recover zeros+front from the Schur form (companion roots + Newton polish).
  void materialize_zeros();

  // max | |B(e^it)| - 1 | over samples: should be ~1e-12 for honest products.
  double unit_circle_residual(int samples = 512) const;

private:
  Complex eval_zero_form(Complex z) const;
  Complex eval_schur(Complex z) const;

  std::vector<Complex> zeros_;
  Complex front_ = 1.0;
  bool zeros_valid_ = false;

  std::vector<Complex> gammas_;
  Complex tail_ = 1.0;
  bool schur_valid_ = false;
};

/// Parameters of the family B_{n,delta,c}; r is derived, not free.
struct FamilyParams {
  int n = 1;
  double delta = 0.05;
  double c = 0.5;

  double r() const { return 1.0 - delta * (1.0 - c) / n; }
  void validate() const;
};

// The explicit family: z * prod_{j<n} (e^{2 pi i j/n} z + r)/(1 + r e^{2 pi i j/n} z).
// Degree n+1; zeros at 0 and at -r exp(-2 pi i j / n).
BlaschkeProduct family(const FamilyParams& params);

// Sampled sup_{|z|<=c} |B(z) - z| on a radial x angular grid.
double verify_close_to_identity(const FamilyParams& params, int radial = 128, int angular = 256);

// (min, max) of |B'(z)|/n over the unit circle, sampled with >= 8n points
// plus the extremal angles pi*k/n and pi*(1+1/n) from the derivative bound.
std::pair<double, double> verify_derivative_comparability(const FamilyParams& params,
                                                          int samples = 0);

// Poisson kernel P(z, zeta) = (1-|zeta|^2)/|z-zeta|^2 for |z|=1, |zeta|<1.
double poisson_kernel(Complex z, Complex zeta);

struct CaratheodoryOptions {
  int max_degree = 512;
  int circle_samples = 2048;
  double sample_radius = 0.0;  // 0: choose from K automatically
  bool require_monotone = false;
};

struct CaratheodoryResult {
  BlaschkeProduct product;
  double achieved_error = 0;
  int degree = 0;
  bool converged = false;
  std::vector<double> error_by_degree;  // error at each truncation depth tried
};

// Schur-algorithm approximation of an analytic G: D -> D by a finite Blaschke
// product, measured on the compact K (given as sample points in the disk).
CaratheodoryResult caratheodory_approx(const std::function<Complex(Complex)>& G,
                                       const std::vector<Complex>& K_samples, double tol,
                                       const CaratheodoryOptions& opts = {});

/// B_n = family(n, delta, c) o B, one per requested n, with the measured
/// derivative-comparability constant M on the unit circle.
struct ProperSequence {
  BlaschkeProduct base;
  double delta = 0;
  double c = 0;
  std::vector<int> n_list;
  double M = 0;

  FamilyParams params_for(int n) const { return FamilyParams{n, delta, c}; }
  Complex eval(int n, Complex z) const;
  Complex deriv(int n, Complex z) const;
  int boundary_degree(int n) const;  // covering degree of B_n on the circle
};

ProperSequence proper_sequence(double eps, const std::vector<Complex>& K_samples,
                               const std::function<Complex(Complex)>& f,
                               const std::vector<int>& n_list,
                               const CaratheodoryOptions& opts = {});

}  // namespace approx
