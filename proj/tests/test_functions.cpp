#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "approx/functions.hpp"

using namespace approx;

namespace {
Polynomial from_list(std::initializer_list<Complex> cs) {
  CVec v(static_cast<int>(cs.size()));
  int k = 0;
  for (Complex c : cs) v(k++) = c;
  return Polynomial(v);
}
}  // namespace

TEST_CASE("evaluate and derivative basics") {
  auto p = from_list({1, 0, 1});  // z^2 + 1
  CHECK(std::abs(p(kI)) < 1e-15);
  auto cube = Polynomial::monomial(3);
  auto d = cube.derivative();
  CHECK(d.degree() == 2);
  CHECK(std::abs(d(Complex(2, 0)) - Complex(12, 0)) < 1e-14);

  RationalMap inv{Polynomial::monomial(0), Polynomial::monomial(1)};  // 1/z
  bool at_pole = false;
  const Complex v = inv.eval(0, &at_pole);
  CHECK(at_pole);
  CHECK(std::isinf(v.real()));
}

TEST_CASE("derivative is linear on coefficients") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  auto rand_poly = [&](int deg) {
    CVec c(deg + 1);
    for (int k = 0; k <= deg; ++k) c(k) = Complex(u(rng), u(rng));
    return Polynomial(c);
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto f = rand_poly(6), g = rand_poly(6);
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
    auto lhs = (f * a + g * b).derivative();
    auto rhs = f.derivative() * a + g.derivative() * b;
    CHECK((lhs.coeffs() - rhs.coeffs()).norm() < 1e-13);
  }
}

TEST_CASE("critical data of simple polynomials") {
  auto sq = Polynomial::monomial(2);
  auto cd = critical_data(sq);
  REQUIRE(cd.points.size() == 1);
  CHECK(std::abs(cd.points[0]) < 1e-12);
  CHECK(std::abs(cd.values[0]) < 1e-12);

  auto p = from_list({0, -3, 0, 1});  // z^3 - 3z
  auto cd2 = critical_data(p);
  REQUIRE(cd2.points.size() == 2);
  CHECK(std::abs(cd2.points[0] - Complex(-1, 0)) < 1e-10);
  CHECK(std::abs(cd2.points[1] - Complex(1, 0)) < 1e-10);
  CHECK(std::abs(cd2.values[0] - Complex(2, 0)) < 1e-10);
  CHECK(std::abs(cd2.values[1] - Complex(-2, 0)) < 1e-10);
}

TEST_CASE("random degree-6: residuals and winding-number oracle") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 6; ++trial) {
    CVec c(7);
    for (int k = 0; k < 7; ++k) c(k) = Complex(u(rng), u(rng));
    c(6) += Complex(1.5, 0);  // keep the leading coefficient honest
    Polynomial p(c);
    auto cd = critical_data(p);
    REQUIRE(cd.points.size() == 5);
    const Polynomial dp = p.derivative();
    double rmax = 0;
    for (Complex z : cd.points) rmax = std::max(rmax, std::abs(dp(z)));
    CHECK(rmax < 1e-8 * dp.coeff_scale());
    // argument-principle count of p' zeros in a disk that avoids the roots
    double radius = 3.0;
    int inside = 0;
    for (Complex z : cd.points)
      if (std::abs(z) < radius) ++inside;
    const int wound = winding_zero_count([&](Complex z) { return dp(z); }, 0, radius);
    CHECK(wound == inside);
  }
}

TEST_CASE("critical points are affine equivariant") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  CVec c(6);
  for (int k = 0; k < 6; ++k) c(k) = Complex(u(rng), u(rng));
  Polynomial p(c);
  const Complex a(0.7, 0.2), b(-0.3, 0.5);
  // q(z) = p(a z + b) via coefficient composition (Horner with polynomial arg)
  Polynomial az_b = from_list({b, a});
  Polynomial q = from_list({c(5)});
  for (int k = 4; k >= 0; --k) q = q * az_b + from_list({c(k)});
  auto cp_p = critical_data(p).points;
  auto cp_q = critical_data(q).points;
  REQUIRE(cp_p.size() == cp_q.size());
  std::vector<Complex> mapped;
  for (Complex x : cp_p) mapped.push_back((x - b) / a);
  std::sort(mapped.begin(), mapped.end(), [](Complex s, Complex t) {
    if (s.real() != t.real()) return s.real() < t.real();
    return s.imag() < t.imag();
  });
  for (size_t k = 0; k < mapped.size(); ++k) CHECK(std::abs(mapped[k] - cp_q[k]) < 1e-7);
}

TEST_CASE("coefficients_from_circle") {
  // monomial samplers are exact
  for (int m : {0, 1, 3, 5}) {
    auto res = coefficients_from_circle([m](Complex z) { return std::pow(z, m); }, 1.7, 6, 16);
    for (int k = 0; k <= 6; ++k) {
      const double expect = (k == m) ? 1.0 : 0.0;
      CHECK(std::abs(res.poly.coeffs()(k) - expect) < 1e-12);
    }
  }
  // 3z^2 + 2 at R=2, N=16
  auto res = coefficients_from_circle([](Complex z) { return 3.0 * z * z + 2.0; }, 2.0, 2, 16);
  CHECK(std::abs(res.poly.coeffs()(0) - 2.0) < 1e-12);
  CHECK(std::abs(res.poly.coeffs()(1)) < 1e-12);
  CHECK(std::abs(res.poly.coeffs()(2) - 3.0) < 1e-12);
  CHECK(!res.degree_deficient);

  // entire series: coefficient error bounded by the tail on |z| = R
  const double R = 2.0;
  auto rese = coefficients_from_circle([](Complex z) { return std::exp(z); }, R, 8, 64);
  double tail = 0;
  double fact = 1;
  for (int k = 0; k <= 80; ++k) {
    if (k > 8) tail += std::pow(R, k) / fact;
    fact *= (k + 1);
  }
  fact = 1;
  for (int k = 0; k <= 8; ++k) {
    const double err = std::abs(rese.poly.coeffs()(k) - 1.0 / fact);
    CHECK(err <= tail / std::pow(R, k) + 1e-12);
    fact *= (k + 1);
  }

  // exactness property: random polynomial of degree <= d, N > 2d
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1, 1);
  CVec c(5);
  for (int k = 0; k < 5; ++k) c(k) = Complex(u(rng), u(rng));
  Polynomial p(c);
  auto r2 = coefficients_from_circle([&](Complex z) { return p(z); }, 1.3, 4, 10);
  CHECK((r2.poly.coeffs() - p.coeffs()).norm() < 1e-12);

  CHECK_THROWS_AS(coefficients_from_circle([](Complex z) { return z; }, 1.0, 8, 16), ApproxError);
}

TEST_CASE("real_symmetrize") {
  auto q = from_list({Complex(0, 1), Complex(0, 0), Complex(1, 0)});  // z^2 + i
  auto Q = real_symmetrize(q);
  CHECK(std::abs(Q.coeffs()(0)) < 1e-15);
  CHECK(std::abs(Q.coeffs()(2) - 1.0) < 1e-15);
  auto iz = from_list({0, Complex(0, 1)});
  CHECK(real_symmetrize(iz).degree() == -1);
  auto realp = from_list({1, 2, 3});
  CHECK((real_symmetrize(realp).coeffs() - realp.coeffs()).norm() < 1e-15);
  // projection: applying twice equals applying once
  auto once = real_symmetrize(q);
  auto twice = real_symmetrize(once);
  CHECK((once.coeffs() - twice.coeffs()).norm() == 0);
  // Q(x) = Re(q(x)) on the real axis
  for (double x : {-1.3, 0.2, 2.7}) CHECK(Q(x).real() == doctest::Approx(q(x).real()));
}

TEST_CASE("sup_norm") {
  auto disk = make_compact_set({JordanCurve::circle(0, 1.0)}, {}, 0.02);
  CHECK(sup_norm(AnalyticFn(Polynomial::monomial(1)), disk) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sup_norm(AnalyticFn(from_list({Complex(0.3, -0.4)})), disk) ==
        doctest::Approx(0.5).epsilon(1e-12));
  auto small = make_compact_set({JordanCurve::circle(Complex(0.5, 0), 0.5)}, {}, 0.01);
  CHECK(sup_norm(AnalyticFn(Polynomial::monomial(2)), small) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("power series guard") {
  PowerSeries s;
  s.coeffs = CVec::Ones(4);
  s.center = 0;
  s.radius = 1.0;
  AnalyticFn f(s);
  CHECK_NOTHROW(f.eval(Complex(0.9, 0)));
  CHECK_THROWS_AS(f.eval(Complex(0.97, 0)), ApproxError);
}
