#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>

#include "absorb/faddeeva.hpp"

using absorb::faddeeva_w;
using C = std::complex<double>;

TEST_CASE("fixture table: upper half-plane 1e-13, lower 1e-10") {
  std::ifstream is(std::string(ABSORB_DATA_DIR) + "/faddeeva_fixture.txt");
  REQUIRE(is.good());
  std::string line;
  double worst_upper = 0.0, worst_lower = 0.0;
  int n = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double zr, zi, wr, wi;
    REQUIRE((ls >> zr >> zi >> wr >> wi));
    const C ref(wr, wi);
    const double rel = std::abs(faddeeva_w({zr, zi}) - ref) / std::abs(ref);
    (zi >= 0.0 ? worst_upper : worst_lower) =
        std::max(zi >= 0.0 ? worst_upper : worst_lower, rel);
    ++n;
  }
  CHECK(n > 200);
  CHECK(worst_upper <= 1e-13);
  CHECK(worst_lower <= 1e-10);
}

TEST_CASE("known values") {
  CHECK(std::abs(faddeeva_w({0.0, 0.0}) - C(1.0, 0.0)) < 1e-15);
  // w(i y) = e^{y^2} erfc(y), real
  CHECK(faddeeva_w({0.0, 1.0}).real() ==
        doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-14));
  CHECK(std::abs(faddeeva_w({0.0, 1.0}).imag()) < 1e-16);
  // w(-conj(z)) = conj(w(z))
  const C z(1.3, 0.7);
  CHECK(std::abs(faddeeva_w(-std::conj(z)) - std::conj(faddeeva_w(z))) <
        1e-14);
}

TEST_CASE("reflection identity at moderate points") {
  for (double re : {-3.0, -1.2, 0.0, 0.5, 2.4}) {
    for (double im : {-2.0, -0.4, 0.0, 0.8, 2.0}) {
      const C z(re, im);
      const double scale = std::max(1.0, std::abs(2.0 * std::exp(-z * z)));
      CHECK(absorb::faddeeva_w_reflection_check(z) / scale <= 1e-10);
    }
  }
}

TEST_CASE("asymptotic tail ~ i/(sqrt(pi) z)") {
  const C z(5e7, 3e7);
  const C lead = C(0.0, 1.0) / (std::sqrt(M_PI) * z);
  CHECK(std::abs(faddeeva_w(z) - lead) / std::abs(lead) < 1e-13);
}

TEST_CASE("error conditions") {
  CHECK_THROWS_AS((void)faddeeva_w({std::nan(""), 0.0}), std::domain_error);
  // deep lower half-plane: 2 exp(-z^2) overflows
  CHECK_THROWS_AS((void)faddeeva_w({0.0, -30.0}), std::overflow_error);
}
