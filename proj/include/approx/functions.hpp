#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "approx/geometry.hpp"
#include "approx/types.hpp"

namespace approx {

/// Dense polynomial, coefficients ascending in degree.
class Polynomial {
public:
  Polynomial() : coeffs_(CVec::Zero(1)) {}
  explicit Polynomial(CVec coeffs);
  static Polynomial monomial(int degree, Complex lead = 1.0);

  Complex operator()(Complex z) const;
  Polynomial derivative() const;
  int degree() const;  // -1 for the zero polynomial
  const CVec& coeffs() const { return coeffs_; }
  double coeff_scale() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;

  // Roots via balanced companion matrix eigenvalues, one Newton polish step.
  std::vector<Complex> roots() const;

private:
  CVec coeffs_;
};

struct RationalMap {
  Polynomial numerator;
  Polynomial denominator;

  // Evaluation; at_pole set when |den| underflows relative to scale.
  Complex eval(Complex z, bool* at_pole = nullptr) const;
  RationalMap derivative() const;
  void validate() const;  // shared roots check, to root-finder tolerance
};

struct PowerSeries {
  CVec coeffs;  // about `center`
  Complex center = 0;
  double radius = 1;
};

/// Evaluable analytic function: polynomial, rational, or power series with a
/// radius of convergence. Series evaluation refuses |z-center| > 0.95 radius.
class AnalyticFn {
public:
  AnalyticFn() : rep_(Polynomial{}) {}
  AnalyticFn(Polynomial p) : rep_(std::move(p)) {}
  AnalyticFn(RationalMap r) : rep_(std::move(r)) {}
  AnalyticFn(PowerSeries s) : rep_(std::move(s)) {}

  Complex eval(Complex z, bool* at_pole = nullptr) const;
  Complex operator()(Complex z) const { return eval(z); }
  AnalyticFn derivative() const;

  bool is_polynomial() const { return std::holds_alternative<Polynomial>(rep_); }
  bool is_rational() const { return std::holds_alternative<RationalMap>(rep_); }
  const Polynomial& as_polynomial() const { return std::get<Polynomial>(rep_); }
  const RationalMap& as_rational() const { return std::get<RationalMap>(rep_); }
  const PowerSeries& as_series() const { return std::get<PowerSeries>(rep_); }

private:
  std::variant<Polynomial, RationalMap, PowerSeries> rep_;
};

/// Critical points and their images under the owning map; multiplicity kept
/// as repetition.
struct CriticalData {
  std::vector<Complex> points;
  std::vector<Complex> values;
};

CriticalData critical_data(const Polynomial& p);
CriticalData critical_data(const RationalMap& r);

struct CircleCoeffResult {
  Polynomial poly;
  double noise_floor = 0;
  bool degree_deficient = false;
};

// Discrete Cauchy coefficients c_k = (1/N) sum_j f(R w^j) R^{-k} w^{-jk},
// exact for polynomial samplers of degree <= `degree` when N > 2*degree.
CircleCoeffResult coefficients_from_circle(const std::function<Complex(Complex)>& sampler,
                                           double R, int degree, int samples);

// Q(z) := (q(z) + conj(q(conj z)))/2 -- real part of the coefficients.
Polynomial real_symmetrize(const Polynomial& q);

// sup |f| over boundary samples of K, refined by local maximization.
double sup_norm(const std::function<Complex(Complex)>& f, const CompactSetRep& K);
double sup_norm(const AnalyticFn& f, const CompactSetRep& K);

// Number of zeros of `fn` inside the circle |z-center|=radius by the argument
// principle (winding of fn over the circle). fn must not vanish on the circle.
int winding_zero_count(const std::function<Complex(Complex)>& fn, Complex center, double radius,
                       int samples = 4096);

}  // namespace approx
