#include <doctest.h>

#include "hqc/qmath.hpp"
#include "hqc/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

using namespace hqc;

namespace {

double kronrod(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-15);
}

}  // namespace

TEST_CASE("closed-form integrals") {
  CHECK(quad::adaptive_simpson([](double x) { return std::sin(x) * std::sin(x); }, 0.0, kPi) ==
        doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(quad::gauss_legendre([](double x) { return x * x * x * x; }, 0.0, 2.0) ==
        doctest::Approx(32.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("both rules agree with Gauss-Kronrod on a holonomy-like integrand") {
  const auto f = [](double t) {
    const double b = kPi * std::sin(kPi * t / 2) * std::sin(kPi * t / 2);
    const double a = 2 * std::atan(1.3 * std::sin(b));
    return 0.5 * (kPi * kPi / 2) * std::sin(kPi * t) * (1 - std::cos(a));
  };
  const double ref = kronrod(f, 0.0, 1.0);
  CHECK(std::abs(quad::adaptive_simpson(f, 0.0, 1.0) - ref) < 1e-12);
  CHECK(std::abs(quad::gauss_legendre(f, 0.0, 1.0) - ref) < 1e-12);
}

TEST_CASE("golden-section maximum of a smooth bump") {
  const double x = quad::golden_max([](double t) { return -(t - 0.3) * (t - 0.3); }, 0.0, 1.0, 1e-12);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-6));
}
