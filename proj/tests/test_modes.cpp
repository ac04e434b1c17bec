#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "unruh/modes.hpp"

using namespace unruh;
using Catch::Approx;

namespace {
const QuadratureSpec kQuad{};
const RindlerGeometry kGeom{1.0, 1.0, 0.0};

Complex oracle_phi(const MinkowskiSpectrum& s, double x, double t, double m) {
  const auto [lo, hi] = s.f.support(1e-15);
  return oracle::simpson(
      [&](double k) {
        const double w = std::hypot(k, m);
        return s.f(k) * std::polar(1.0 / std::sqrt(4.0 * std::numbers::pi * w), k * x - w * t);
      },
      lo, hi, 20000);
}
}  // namespace

TEST_CASE("Minkowski wavepacket evaluation at the packet center") {
  // Frozen values for the k0 = 0, width 0.5, x0 = 0 packet at (x, t) = (0, 0).
  auto s = MinkowskiSpectrum::gaussian(0.0, 0.5, 0.0);
  auto v = evaluate_minkowski_wavepacket(s, kGeom, 0.0, 0.0, kQuad);
  CHECK(v.value.real() == Approx(0.41271317244451826).margin(1e-10));
  CHECK(v.value.imag() == Approx(0.0).margin(1e-12));
  CHECK(v.value.real() > 0.0);
  CHECK(v.dt.imag() == Approx(-0.48714419966486398).margin(1e-10));
  CHECK(v.dt.real() == Approx(0.0).margin(1e-12));

  // against the fine-grid Fourier oracle away from the center
  for (double x : {0.7, -1.3}) {
    auto got = evaluate_minkowski_wavepacket(s, kGeom, x, 0.4, kQuad);
    auto want = oracle_phi(s, x, 0.4, kGeom.m);
    CHECK(std::abs(got.value - want) < 1e-9);
  }
}

TEST_CASE("Minkowski wavepacket vanishes beyond its envelope") {
  auto s = MinkowskiSpectrum::gaussian(0.3, 0.5, 2.0);
  for (double x : {-40.0, 55.0}) {
    auto v = evaluate_minkowski_wavepacket(s, kGeom, x, 0.0, kQuad);
    CHECK(std::abs(v.value) < 1e-10);
    CHECK(std::abs(v.dt) < 1e-10);
  }
}

TEST_CASE("narrow spectra oscillate at the mean frequency") {
  const double k0 = 0.6, width = 0.05, x0 = 1.5;
  auto s = MinkowskiSpectrum::gaussian(k0, width, x0);
  const double mean_w =
      integrate_adaptive([&](double k) { return std::hypot(k, kGeom.m) * std::norm(s.f(k)); },
                         k0 - 10 * width, k0 + 10 * width, kQuad)
          .value;
  auto v = evaluate_minkowski_wavepacket(s, kGeom, x0, 0.0, kQuad);
  const Complex ratio = v.dt / v.value;
  CHECK(std::abs(ratio - Complex(0.0, -mean_w)) < 5e-3 * mean_w);
}

TEST_CASE("Rindler wavepacket evaluation in the turning region") {
  // Frozen values for the wedge-I bump at Omega0 = 3, width 0.5 (a = m = 1,
  // D = 0), evaluated at x = 3, from a high-precision reference quadrature.
  auto s = RindlerSpectrum::gaussian(Wedge::I, 3.0, 0.5).normalized(kQuad);
  auto v = evaluate_rindler_wavepacket(s, kGeom, 3.0, kQuad);
  CHECK(v.value.real() == Approx(0.33547211999393115).margin(2e-9));
  CHECK(v.value.imag() == Approx(0.0).margin(1e-11));
  CHECK(v.dt.imag() == Approx(-1.0833463828441204 / 3.0).margin(2e-9));

  // fixed-grid oracle over Omega at another position
  const double x = 1.7;
  Complex want = oracle::simpson(
      [&](double w) {
        return s.g_I(w) * rindler_mode_norm(w, kGeom.a) * oracle::bessel_k_imag(w, x, 8000);
      },
      1e-8, 3.0 + 4.5, 2000);
  auto got = evaluate_rindler_wavepacket(s, kGeom, x, kQuad);
  CHECK(std::abs(got.value - want) < 1e-8);
  CHECK(std::abs(got.value) > 1e-3);
}

TEST_CASE("Rindler wavepacket support conditions") {
  const RindlerGeometry sep{1.0, 1.0, 1.0};  // D = 1: wedges at x > 0.5, x < -0.5
  auto sI = RindlerSpectrum::gaussian(Wedge::I, 3.0, 0.5).normalized(kQuad);
  auto sII = RindlerSpectrum::gaussian(Wedge::II, 3.0, 0.5).normalized(kQuad);

  // between the wedges: exact zero, not an error
  for (double x : {-0.49, 0.0, 0.49}) {
    auto v = evaluate_rindler_wavepacket(sI, sep, x, kQuad);
    CHECK(v.value == Complex{0.0, 0.0});
    CHECK(v.dt == Complex{0.0, 0.0});
  }
  // wedge-II packet evaluated in region I
  auto v = evaluate_rindler_wavepacket(sII, sep, 2.0, kQuad);
  CHECK(v.value == Complex{0.0, 0.0});

  // wedge-II packet is the mirror image of the wedge-I packet
  auto a = evaluate_rindler_wavepacket(sI, sep, 2.3, kQuad);
  auto b = evaluate_rindler_wavepacket(sII, sep, -2.3, kQuad);
  CHECK(std::abs(a.value - b.value) < 1e-10);
  CHECK(std::abs(a.dt - b.dt) < 1e-10);
}

TEST_CASE("cached evaluator agrees with direct evaluation") {
  auto s = RindlerSpectrum::two_wedge(
      RindlerSpectrum::gaussian(Wedge::I, 2.5, 0.4, std::sqrt(0.6)).g_I,
      RindlerSpectrum::gaussian(Wedge::II, 3.1, 0.5, std::sqrt(0.4) * std::polar(1.0, 0.8)).g_II);
  s = s.normalized(kQuad);
  const RindlerGeometry geom{0.8, 1.0, 0.4};
  RindlerWaveEvaluator ev(s, geom, kQuad);
  for (double x : {0.7, 1.9, 4.2, -0.9, -3.0}) {
    auto fast = ev(x);
    auto direct = evaluate_rindler_wavepacket(s, geom, x, kQuad);
    CHECK(std::abs(fast.value - direct.value) < 1e-8);
    CHECK(std::abs(fast.dt - direct.dt) < 1e-8);
  }
}

TEST_CASE("KG product: normalized Minkowski packet has unit norm") {
  auto s = MinkowskiSpectrum::gaussian(0.4, 0.6, 1.0);
  auto mode = make_slice_mode(s, kGeom, kQuad);
  auto r = kg_inner_product(mode, mode, kQuad);
  CHECK(r.value.real() == Approx(1.0).margin(1e-8));
  CHECK(r.value.imag() == Approx(0.0).margin(1e-9));

  // negative-norm convention for the conjugate packet
  auto rc = kg_inner_product(conjugated(mode), conjugated(mode), kQuad);
  CHECK(rc.value.real() == Approx(-1.0).margin(1e-8));
}

TEST_CASE("KG product: disjoint spectra are orthogonal") {
  auto s1 = MinkowskiSpectrum::gaussian(-3.0, 0.25, 0.0);
  auto s2 = MinkowskiSpectrum::gaussian(3.0, 0.25, 0.0);
  auto r = kg_inner_product(make_slice_mode(s1, kGeom, kQuad), make_slice_mode(s2, kGeom, kQuad),
                            kQuad);
  CHECK(std::abs(r.value) < 1e-9);
}

TEST_CASE("KG product: Rindler packet norm matches the frequency-space integral") {
  auto s = RindlerSpectrum::gaussian(Wedge::I, 3.0, 0.5).normalized(kQuad);
  const double freq_norm = s.norm_squared(kQuad);
  auto mode = make_slice_mode(s, kGeom, kQuad);
  auto r = kg_inner_product(mode, mode, kQuad);
  CHECK(freq_norm == Approx(1.0).margin(1e-9));
  CHECK(r.value.real() == Approx(freq_norm).margin(1e-7));
  CHECK(r.value.imag() == Approx(0.0).margin(1e-8));
}

TEST_CASE("KG product: two-wedge packet norm on the slice") {
  auto s = RindlerSpectrum::two_wedge(
      RindlerSpectrum::gaussian(Wedge::I, 2.8, 0.45, std::sqrt(0.5)).g_I,
      RindlerSpectrum::gaussian(Wedge::II, 2.8, 0.45, std::sqrt(0.5)).g_II);
  s = s.normalized(kQuad);
  auto mode = make_slice_mode(s, kGeom, kQuad);
  auto r = kg_inner_product(mode, mode, kQuad);
  CHECK(r.value.real() == Approx(1.0).margin(1e-7));
}

TEST_CASE("KG product: opposite wedges are orthogonal for D >= 0") {
  for (double D : {0.0, 0.8}) {
    const RindlerGeometry geom{1.0, 1.0, D};
    auto sI = RindlerSpectrum::gaussian(Wedge::I, 2.5, 0.5).normalized(kQuad);
    auto sII = RindlerSpectrum::gaussian(Wedge::II, 2.5, 0.5).normalized(kQuad);
    auto r = kg_inner_product(make_slice_mode(sI, geom, kQuad), make_slice_mode(sII, geom, kQuad),
                              kQuad);
    CHECK(std::abs(r.value) < 1e-9);
  }
}
