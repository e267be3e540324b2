#include "approx/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace approx {

BlaschkeProduct::BlaschkeProduct(std::vector<Complex> zeros, Complex front)
    : zeros_(std::move(zeros)), front_(front), zeros_valid_(true) {
  for (Complex a : zeros_)
    if (std::abs(a) >= 1.0)
      throw ApproxError("blaschke", "Blaschke zero outside the open unit disk");
  const double m = std::abs(front_);
  if (std::abs(m - 1.0) > 1e-9) throw ApproxError("blaschke", "front constant not unimodular");
  front_ /= m;
}

BlaschkeProduct BlaschkeProduct::from_schur(std::vector<Complex> gammas, Complex tail) {
  BlaschkeProduct b;
  for (Complex g : gammas)
    if (std::abs(g) >= 1.0) throw ApproxError("blaschke", "Schur parameter not in the disk");
  b.gammas_ = std::move(gammas);
  b.tail_ = tail / std::abs(tail);
  b.schur_valid_ = true;
  return b;
}

Complex BlaschkeProduct::eval_zero_form(Complex z) const {
  Complex acc = front_;
  for (Complex a : zeros_) acc *= (z - a) / (1.0 - std::conj(a) * z);
  return acc;
}

Complex BlaschkeProduct::eval_schur(Complex z) const {
  Complex x = tail_;
  for (int j = static_cast<int>(gammas_.size()) - 1; j >= 0; --j) {
    const Complex zx = z * x;
    x = (gammas_[j] + zx) / (1.0 + std::conj(gammas_[j]) * zx);
  }
  return x;
}

Complex BlaschkeProduct::eval(Complex z) const {
  return zeros_valid_ ? eval_zero_form(z) : eval_schur(z);
}

Complex BlaschkeProduct::deriv(Complex z) const {
  if (zeros_valid_) {
    // log-derivative away from zeros, product rule nearby
    double dmin = 2.0;
    for (Complex a : zeros_) dmin = std::min(dmin, std::abs(z - a));
    if (dmin > 1e-6) {
      Complex sum = 0;
      for (Complex a : zeros_)
        sum += 1.0 / (z - a) + std::conj(a) / (1.0 - std::conj(a) * z);
      return eval_zero_form(z) * sum;
    }
    Complex total = 0;
    for (size_t j = 0; j < zeros_.size(); ++j) {
      const Complex a = zeros_[j];
      Complex term = front_ * (1.0 - std::norm(a)) / ((1.0 - std::conj(a) * z) * (1.0 - std::conj(a) * z));
      for (size_t k = 0; k < zeros_.size(); ++k) {
        if (k == j) continue;
        const Complex b = zeros_[k];
        term *= (z - b) / (1.0 - std::conj(b) * z);
      }
      total += term;
    }
    return total;
  }
  // Schur form: carry (G, G') through the backward recursion.
  Complex g = tail_, dg = 0;
  for (int j = static_cast<int>(gammas_.size()) - 1; j >= 0; --j) {
    const Complex gamma = gammas_[j];
    const Complex h = z * g, dh = g + z * dg;
    const Complex den = 1.0 + std::conj(gamma) * h;
    dg = dh * (1.0 - std::norm(gamma)) / (den * den);
    g = (gamma + h) / den;
  }
  return dg;
}

int BlaschkeProduct::degree() const {
  return zeros_valid_ ? static_cast<int>(zeros_.size()) : static_cast<int>(gammas_.size());
}

void BlaschkeProduct::materialize_zeros() {
  if (zeros_valid_) return;
  if (!schur_valid_) throw ApproxError("blaschke", "empty product");
  // Numerator/denominator coefficient recursion, then companion roots.
  const int d = static_cast<int>(gammas_.size());
  CVec N = CVec::Zero(d + 1), D = CVec::Zero(d + 1);
  N(0) = tail_;
  D(0) = 1.0;
  int len = 1;
  for (int j = d - 1; j >= 0; --j) {
    CVec Nn = CVec::Zero(d + 1), Dn = CVec::Zero(d + 1);
    for (int k = 0; k < len; ++k) {
      Nn(k) += gammas_[j] * D(k);
      Nn(k + 1) += N(k);
      Dn(k) += D(k);
      Dn(k + 1) += std::conj(gammas_[j]) * N(k);
    }
    N = Nn;
    D = Dn;
    ++len;
  }
  Polynomial num(N);
  auto rts = num.roots();
  // polish against the exact Schur evaluation
  for (Complex& a : rts) {
    for (int it = 0; it < 3; ++it) {
      const Complex f = eval_schur(a), df = deriv(a);
      if (std::abs(df) < 1e-300) break;
      const Complex step = f / df;
      if (std::abs(step) > 0.1) break;
      a -= step;
    }
    if (std::abs(a) >= 1.0) a *= (1.0 - 1e-14) / std::abs(a);
  }
  zeros_ = rts;
  // front from a circle point away from the zeros
  Complex z0 = 1.0;
  double best = -1;
  for (int k = 0; k < 16; ++k) {
    const Complex cand = std::exp(kI * (kTwoPi * k / 16));
    double dmin = 2.0;
    for (Complex a : rts) dmin = std::min(dmin, std::abs(cand - a / std::abs(a)));
    if (dmin > best) {
      best = dmin;
      z0 = cand;
    }
  }
  Complex prod = 1.0;
  for (Complex a : zeros_) prod *= (z0 - a) / (1.0 - std::conj(a) * z0);
  front_ = eval_schur(z0) / prod;
  front_ /= std::abs(front_);
  zeros_valid_ = true;
}

double BlaschkeProduct::unit_circle_residual(int samples) const {
  double worst = 0;
  for (int j = 0; j < samples; ++j) {
    const Complex z = std::exp(kI * (kTwoPi * j / samples));
    worst = std::max(worst, std::abs(std::abs(eval(z)) - 1.0));
  }
  return worst;
}

void FamilyParams::validate() const {
  if (n < 1) throw ApproxError("blaschke", "family index n must be positive");
  if (!(delta > 0 && delta < 1)) throw ApproxError("blaschke", "delta must lie in (0,1)");
  if (!(c > 0 && c < 1)) throw ApproxError("blaschke", "c must lie in (0,1)");
  const double rr = r();
  if (!(rr > 0 && rr < 1)) throw ApproxError("blaschke", "derived r outside (0,1)");
}

BlaschkeProduct family(const FamilyParams& params) {
  params.validate();
  const double rr = params.r();
  std::vector<Complex> zeros;
  zeros.reserve(params.n + 1);
  zeros.push_back(0.0);
  Complex front = 1.0;
  for (int j = 0; j < params.n; ++j) {
    const Complex phase = std::exp(kI * (kTwoPi * j / params.n));
    zeros.push_back(-rr * std::conj(phase));
    front *= phase;
  }
  return BlaschkeProduct(std::move(zeros), front);
}

double verify_close_to_identity(const FamilyParams& params, int radial, int angular) {
  params.validate();
  const double rr = params.r();
  // vectorized over the polar grid; factored evaluation
  CVec z(radial * angular);
  for (int i = 0; i < radial; ++i) {
    const double rho = params.c * (i + 1.0) / radial;
    for (int j = 0; j < angular; ++j)
      z(i * angular + j) = rho * std::exp(kI * (kTwoPi * j / angular));
  }
  CVec acc = z;
  for (int j = 0; j < params.n; ++j) {
    const Complex phase = std::exp(kI * (kTwoPi * j / params.n));
    acc = acc.array() * (phase * z.array() + rr) / (1.0 + rr * phase * z.array());
  }
  return (acc - z).cwiseAbs().maxCoeff();
}

std::pair<double, double> verify_derivative_comparability(const FamilyParams& params,
                                                          int samples) {
  params.validate();
  const int n = params.n;
  if (samples < 8 * n) samples = 8 * n + 7;
  const BlaschkeProduct b = family(params);
  std::vector<double> angles;
  angles.reserve(samples + 3 * n + 2);
  for (int j = 0; j < samples; ++j) angles.push_back(kTwoPi * j / samples);
  // extremal angles from the derivative-bound analysis
  for (int k = 0; k < 2 * n; ++k) angles.push_back(kPi * k / n);
  angles.push_back(kPi * (1.0 + 1.0 / n));
  angles.push_back(kPi * (1.0 - 1.0 / n));
  double lo = std::numeric_limits<double>::max(), hi = 0;
  for (double t : angles) {
    const double v = std::abs(b.deriv(std::exp(kI * t))) / n;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double poisson_kernel(Complex z, Complex zeta) {
  if (std::abs(std::abs(z) - 1.0) > 1e-9)
    throw ApproxError("blaschke", "poisson_kernel needs |z| = 1");
  if (std::abs(zeta) >= 1.0) throw ApproxError("blaschke", "poisson_kernel needs |zeta| < 1");
  return (1.0 - std::norm(zeta)) / std::norm(z - zeta);
}

CaratheodoryResult caratheodory_approx(const std::function<Complex(Complex)>& G,
                                       const std::vector<Complex>& K_samples, double tol,
                                       const CaratheodoryOptions& opts) {
  if (K_samples.empty()) throw ApproxError("blaschke", "caratheodory_approx: empty compact");
  double r_K = 0;
  for (Complex k : K_samples) r_K = std::max(r_K, std::abs(k));
  if (r_K >= 1.0) throw ApproxError("blaschke", "caratheodory_approx: K not inside the disk");
  double R = opts.sample_radius > 0 ? opts.sample_radius
                                    : std::min(0.99, std::max(0.9, 0.5 * (1.0 + r_K)));

  const int N = opts.circle_samples;
  std::vector<Complex> circle(N), vals(N);
  for (int j = 0; j < N; ++j) {
    circle[j] = R * std::exp(kI * (kTwoPi * j / N));
    vals[j] = G(circle[j]);
    if (std::abs(vals[j]) >= 1.0)
      throw ApproxError("blaschke", "caratheodory_approx: |G| >= 1 on the sampling circle");
  }

  // Pointwise Schur recursion; gammas[j] = G_j(0) by the circle mean.
  std::vector<Complex> gammas;
  std::vector<Complex> cur = vals;
  auto circle_mean = [&](const std::vector<Complex>& v) {
    Complex s = 0;
    for (Complex x : v) s += x;
    return s / double(N);
  };

  CaratheodoryResult out;
  double best_err = std::numeric_limits<double>::max();
  BlaschkeProduct best;
  int best_deg = 0;

  for (int d = 0; d < opts.max_degree; ++d) {
    const Complex gamma = circle_mean(cur);
    if (std::abs(gamma) >= 1.0 - 1e-12) break;  // recursion degenerates
    gammas.push_back(gamma);
    // advance the recursion
    for (int j = 0; j < N; ++j) {
      const Complex num = cur[j] - gamma;
      const Complex den = 1.0 - std::conj(gamma) * cur[j];
      cur[j] = num / (den * circle[j]);
    }
    // candidate at depth d+1: tail from the next parameter's phase
    const Complex next = circle_mean(cur);
    const Complex tail = std::abs(next) > 1e-12 ? next / std::abs(next) : Complex(1.0);
    BlaschkeProduct cand = BlaschkeProduct::from_schur(gammas, tail);
    double err = 0;
    for (Complex k : K_samples) err = std::max(err, std::abs(G(k) - cand.eval(k)));
    out.error_by_degree.push_back(err);
    if (err < best_err) {
      best_err = err;
      best = cand;
      best_deg = d + 1;
    }
    if (err < tol) break;
  }

  out.product = best;
  out.achieved_error = best_err;
  out.degree = best_deg;
  out.converged = best_err < tol;
  if (!out.converged && out.error_by_degree.empty())
    throw ApproxError("blaschke", "caratheodory_approx made no progress");
  if (out.degree <= 200) out.product.materialize_zeros();
  return out;
}

Complex ProperSequence::eval(int n, Complex z) const {
  return family(params_for(n)).eval(base.eval(z));
}

Complex ProperSequence::deriv(int n, Complex z) const {
  const Complex bz = base.eval(z);
  return family(params_for(n)).deriv(bz) * base.deriv(z);
}

int ProperSequence::boundary_degree(int n) const { return (n + 1) * base.degree(); }

ProperSequence proper_sequence(double eps, const std::vector<Complex>& K_samples,
                               const std::function<Complex(Complex)>& f,
                               const std::vector<int>& n_list, const CaratheodoryOptions& opts) {
  auto car = caratheodory_approx(f, K_samples, eps / 2, opts);
  if (!car.converged)
    throw ApproxError("blaschke", "caratheodory_approx failed: best error " +
                                      std::to_string(car.achieved_error) + " at degree cap");
  ProperSequence seq;
  seq.base = car.product;
  double supB = 0;
  for (Complex k : K_samples) supB = std::max(supB, std::abs(seq.base.eval(k)));
  seq.c = 0.5 * (supB + 1.0);
  // delta = min(eps/8, largest verified); halve until the 4*delta bound holds.
  double delta = eps / 8;
  for (int attempt = 0; attempt < 40; ++attempt) {
    bool ok = true;
    for (int n : n_list) {
      FamilyParams p{n, delta, seq.c};
      if (verify_close_to_identity(p, 64, 128) >= 4 * delta) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    delta *= 0.5;
    if (delta < 1e-12) throw ApproxError("blaschke", "no verified delta found");
  }
  seq.delta = delta;
  seq.n_list = n_list;
  // measured comparability constant on the circle
  double M = 1.0;
  for (int n : n_list) {
    const int deg = seq.boundary_degree(n);
    const int samples = std::max(16 * n, 8 * deg);
    for (int j = 0; j < samples; ++j) {
      const Complex z = std::exp(kI * (kTwoPi * j / samples));
      const double v = std::abs(seq.deriv(n, z)) / n;
      if (v > 0) M = std::max({M, v, 1.0 / v});
    }
  }
  seq.M = M;
  return seq;
}

}  // namespace approx
