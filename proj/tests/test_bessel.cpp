#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "oracles.hpp"
#include "unruh/specfun.hpp"

using namespace unruh;
using Catch::Approx;

TEST_CASE("K_{i nu}(x) reduces to K_0 at nu = 0") {
  // K_0(1) frozen from the fixed-grid cosine-transform oracle (and equal to
  // the tabulated value of the ordinary Bessel K_0).
  const double k0_1 = 0.4210244382407083;
  CHECK(oracle::bessel_k_imag(0.0, 1.0) == Approx(k0_1).margin(1e-12));
  auto r = bessel_k_imag_order(0.0, 1.0, {});
  REQUIRE(r.converged);
  CHECK(r.value == Approx(k0_1).margin(1e-10));
}

TEST_CASE("K_{i nu}(x) is even in the order") {
  auto p = bessel_k_imag_order(2.5, 3.0, {});
  auto m = bessel_k_imag_order(-2.5, 3.0, {});
  CHECK(p.value == m.value);  // evenness is built in
  CHECK(p.value == Approx(0.0135373930905141).margin(1e-10));
}

TEST_CASE("exponential decay in the argument") {
  auto r = bessel_k_imag_order(1.0, 20.0, {});
  CHECK(std::abs(r.value) < 1e-8);
  CHECK(r.value == Approx(5.60278575534648e-10).margin(1e-15));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_k_imag_order(1.0, 0.0, {}), std::domain_error);
  CHECK_THROWS_AS(bessel_k_imag_order(1.0, -2.0, {}), std::domain_error);
}

TEST_CASE("agreement with the brute-force oracle over the working grid") {
  // nu in {0, 0.5, ..., 10}, x in {0.1, 0.5, 1, 2, 5, 10, 20}, <= 1e-8 absolute.
  const double xs[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double nu = 0.5 * i;
    for (double x : xs) {
      const double want = oracle::bessel_k_imag(nu, x, 40000);
      const double got = bessel_k_imag_order(nu, x, {}).value;
      worst = std::max(worst, std::abs(got - want));
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("huge arguments underflow to zero gracefully") {
  auto r = bessel_k_imag_order(2.0, 1e4, {});
  CHECK(r.value == Approx(0.0).margin(1e-300));
  CHECK(r.converged);
}
