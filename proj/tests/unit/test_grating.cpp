#include <doctest.h>

#include <cmath>
#include <random>

#include "constants.hpp"
#include "error.hpp"
#include "golden_values.hpp"
#include "grating.hpp"

using namespace mwg;

namespace {

GratingParameters grating(double phi0, double n0) {
  GratingParameters g;
  g.phi0 = phi0;
  g.n0 = n0;
  return g;
}

}  // namespace

TEST_CASE("measurement operator values") {
  auto g = grating(constants::pi, 1.0);
  CHECK(std::abs(m_ell(0.5, {g, 1})) < 1e-16);
  auto pure = grating(2.0, 0.0);
  for (double x : {0.0, 0.13, 0.5, 0.77}) CHECK(std::abs(m_ell(x, {pure, 0})) == doctest::Approx(1.0));
  cplx m2 = m_ell(0.0, {g, 2});
  CHECK(m2.real() == doctest::Approx(golden::m2_origin_re).epsilon(1e-14));
  CHECK(std::abs(m2.imag()) < 1e-15);
}

TEST_CASE("absorption probabilities are Poissonian and complete") {
  auto g = grating(1.3, 2.7);
  for (double x : {0.0, 0.21, 0.4, 0.5}) {
    double total = 0;
    for (int l = 0; l < 200 && total <= 1 - 1e-12; ++l) {
      double p = absorption_probability(x, l, g);
      CHECK(p == doctest::Approx(std::norm(m_ell(x, {g, l}))).epsilon(1e-13));
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(absorption_probability(0.5, 0, g) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(absorption_probability(0.5, 3, g) < 1e-90);
  CHECK(absorption_probability(0.0, 0, grating(0, 1.0)) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("|M_l|^2 equals p_l on a sampled grid") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(-1, 1);
  auto g = grating(2.2, 1.6);
  for (int i = 0; i < 50; ++i) {
    double x = ux(rng);
    for (int l = 0; l < 8; ++l)
      CHECK(std::norm(m_ell(x, {g, l})) == doctest::Approx(absorption_probability(x, l, g)).epsilon(1e-13));
  }
}

TEST_CASE("plane-wave diffraction without a grating is the identity") {
  auto amps = plane_wave_diffraction({grating(0, 0), 0}, 5);
  REQUIRE(amps.amplitude.size() == 1);
  CHECK(amps.amplitude.at(0) == cplx(1.0));
}

TEST_CASE("pure phase grating conserves probability") {
  auto amps = plane_wave_diffraction({grating(constants::pi, 0), 0}, 20);
  CHECK(amps.total_probability() == doctest::Approx(1.0).epsilon(1e-13));
  for (const auto& [q, a] : amps.amplitude) CHECK(q % 2 == 0);
}

TEST_CASE("total probability over all absorption channels is one") {
  auto g = grating(constants::pi, 1.0);
  double total = 0;
  for (int l = 0; l <= 20; ++l) {
    auto amps = plane_wave_diffraction({g, l}, 20);
    for (const auto& [q, a] : amps.amplitude) CHECK(((q - l) % 2 + 2) % 2 == 0);
    total += amps.total_probability();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diffraction amplitudes are the Fourier series of M_l") {
  auto g = grating(1.9, 1.4);
  const int n = 1024;
  for (int l = 0; l <= 3; ++l) {
    auto amps = plane_wave_diffraction({g, l}, 20);
    for (int q = -10; q <= 10; ++q) {
      // offset q in units of hbar k_L is the harmonic e^{i pi q x}; M_l has period 2 for odd l
      cplx s = 0;
      for (int i = 0; i < n; ++i) {
        double x = 2.0 * i / n;
        s += m_ell(x, {g, l}) * std::polar(1.0, -constants::pi * q * x);
      }
      s /= static_cast<double>(n);
      auto it = amps.amplitude.find(q);
      cplx a = it == amps.amplitude.end() ? cplx(0) : it->second;
      CHECK(std::abs(a - s) < 1e-8);
    }
  }
}

TEST_CASE("zero-absorption amplitudes are symmetric in magnitude") {
  auto amps = plane_wave_diffraction({grating(2.7, 0.8), 0}, 20);
  for (const auto& [q, a] : amps.amplitude)
    CHECK(std::abs(a) == doctest::Approx(std::abs(amps.amplitude.at(-q))).epsilon(1e-13));
}

TEST_CASE("diffraction cutoff that drops significant amplitudes is an error") {
  CHECK_THROWS_AS(plane_wave_diffraction({grating(12.0, 0.5), 0}, 2), ResolutionError);
}

TEST_CASE("Poisson cutoff") {
  CHECK(poisson_cutoff(0.0) == 0);
  for (double mean : {0.3, 1.0, 4.0, 10.0}) {
    int L = poisson_cutoff(mean);
    double tail = 0, term = std::exp(-mean);
    for (int l = 1; l < 400; ++l) {
      term *= mean / l;
      if (l > L) tail += term;
    }
    CHECK(tail < 1e-10);
    // one fewer would not be enough
    double prev = tail + std::exp(-mean + L * std::log(mean) - std::lgamma(L + 1.0));
    CHECK(prev >= 1e-10);
  }
}
