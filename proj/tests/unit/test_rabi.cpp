#include <doctest.h>

#include <cmath>
#include <vector>

#include "constants.hpp"
#include "error.hpp"
#include "grating.hpp"
#include "rabi.hpp"

using namespace mwg;

namespace {

const double pi = constants::pi;

RabiConfig rabi(double area, double detuning = 0, double lifetime = 1) {
  RabiConfig c;
  c.pulse_area = area;
  c.detuning = detuning;
  c.lifetime = lifetime;
  return c;
}

const double sample_pairs[][2] = {{0.0, 0.0}, {0.1, 0.35}, {-0.27, 0.4}, {0.5, 0.05}, {0.8, -0.6}};

}  // namespace

TEST_CASE("no drive leaves the ground state alone") {
  auto k = rabi_solve(rabi(0.0));
  for (std::size_t i = 0; i < k.x.size(); i += 37) {
    CHECK(k.p0[i] == doctest::Approx(1.0));
    CHECK(k.p1[i] == doctest::Approx(0.0));
    CHECK(k.p2[i] == doctest::Approx(0.0));
  }
  std::vector<cplx> out(1);
  k.ground->evaluate(0.2, 0.7, out);
  CHECK(std::abs(out[0] - 1.0) < 1e-14);
}

TEST_CASE("without decay the ground population follows the local Rabi frequency") {
  auto c = rabi(3 * pi, 0.0, 1e6);
  for (double x : {0.0, 0.13, 0.3}) {
    double omega = c.pulse_area * std::cos(pi * x);
    int checked = 0;
    rabi_pair_ode(c, x, x, [&](double t, const DensityMatrix& rho) {
      double ref = std::pow(std::cos(omega * t / 2), 2);
      CHECK(std::abs(rho[0].real() - ref) < 1e-6);
      ++checked;
    });
    CHECK(checked > 5);
  }
}

TEST_CASE("nodes are never excited") {
  for (double area : {pi, 4 * pi, 7.3}) {
    auto rho = rabi_pair_exact(rabi(area, 0.4, 0.5), 0.5, 0.5);
    CHECK(std::abs(rho[0] - 1.0) < 1e-12);
  }
  auto p = rabi_transmission_profile(rabi(4 * pi));
  CHECK(p[p.size() / 2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrator and matrix exponential agree") {
  auto c = rabi(4 * pi, 0.7, 0.6);
  for (auto [x, xp] : sample_pairs) {
    auto a = rabi_pair_ode(c, x, xp);
    auto b = rabi_pair_exact(c, x, xp);
    for (int i = 0; i < 9; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-8);
  }
}

TEST_CASE("populations stay normalized and the dark state only grows") {
  auto c = rabi(4 * pi, 0.5, 1.0);
  for (double x : {0.0, 0.2, 0.4}) {
    double last_p2 = 0;
    rabi_pair_ode(c, x, x, [&](double, const DensityMatrix& rho) {
      double p0 = rho[0].real(), p1 = rho[4].real(), p2 = rho[8].real();
      CHECK(std::abs(p0 + p1 + p2 - 1.0) < 1e-9);
      CHECK(p0 >= -1e-9);
      CHECK(p1 >= -1e-9);
      CHECK(p2 >= -1e-9);
      CHECK(p2 >= last_p2 - 1e-12);
      last_p2 = p2;
    });
  }
  auto k = rabi_solve(c);
  for (std::size_t i = 0; i < k.x.size(); ++i) {
    CHECK(k.p0[i] + k.p1[i] + k.p2[i] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(k.p0[i] >= 0);
    CHECK(k.p0[i] <= 1 + 1e-12);
  }
}

TEST_CASE("ground kernel is hermitian") {
  auto c = rabi(4 * pi, 0.3, 1.0);
  for (auto [x, xp] : sample_pairs) {
    auto a = rabi_pair_exact(c, x, xp);
    auto b = rabi_pair_exact(c, xp, x);
    CHECK(std::abs(a[0] - std::conj(b[0])) < 1e-12);
  }
}

TEST_CASE("short-lifetime mapping") {
  auto g = short_lifetime_parameters(rabi(10.0, 0.0, 0.01));
  CHECK(g.phi0 == 0.0);
  CHECK(g.n0 == doctest::Approx(0.01 * 100));
  auto far = short_lifetime_parameters(rabi(10.0, 5e4, 0.01));
  CHECK(far.phi0 == doctest::Approx(-100 / (4 * 5e4)).epsilon(1e-6));
  CHECK(far.n0 < 1e-3 * std::abs(far.phi0) * 100);
  CHECK_THROWS_AS(rabi_short_lifetime_limit(rabi(10.0, 0.0, 0.05)), RegimeError);
}

TEST_CASE("short lifetime reproduces the absorptive grating kernel") {
  for (double detuning : {0.0, 30.0}) {
    auto c = rabi(10.0, detuning, 0.01);
    auto limit = rabi_short_lifetime_limit(c);
    std::vector<cplx> ref(1);
    for (auto [x, xp] : sample_pairs) {
      limit.ground->evaluate(x, xp, ref);
      auto rho = rabi_pair_exact(c, x, xp);
      CHECK(std::abs(rho[0] - ref[0]) / std::abs(ref[0]) < 0.02);
    }
  }
}

TEST_CASE("4 pi transmission profile") {
  auto c = rabi(4 * pi, 0.0, 1.0);
  auto k = rabi_solve(c);
  int n = static_cast<int>(k.x.size());
  CHECK(k.p0[0] < 1.0);
  int minima = 0;
  for (int i = 0; i < n; ++i) {
    double l = k.p0[(i + n - 1) % n], m = k.p0[i], r = k.p0[(i + 1) % n];
    if (m < l && m <= r) {
      ++minima;
      double area = c.pulse_area * std::abs(std::cos(pi * k.x[i])) / pi;
      double odd = 2 * std::floor(area / 2) + 1;
      CHECK(std::abs(area - odd) <= 0.15);
    }
  }
  CHECK(minima >= 2);
}

TEST_CASE("finite lifetime is neither coherent nor incoherent") {
  auto c = rabi(4 * pi, 0.0, 1.0);
  double p0 = rabi_pair_exact(c, 0.0, 0.0)[0].real();
  double coherent = std::pow(std::cos(c.pulse_area / 2), 2);
  double incoherent = std::exp(-short_lifetime_parameters(c).n0);
  CHECK(std::abs(p0 - coherent) > 0.05);
  CHECK(std::abs(p0 - incoherent) > 0.05);
}

TEST_CASE("Rabi interferogram") {
  KdtliConfig k;
  k.talbot = 2.0;
  k.open_fraction = 0.1;
  auto still = rabi_kdtli(rabi(0.0), k);
  for (double v : still.values) CHECK(v == doctest::Approx(0.01).epsilon(1e-12));
  auto s = rabi_kdtli(rabi(4 * pi), k);
  for (double v : s.values) CHECK(v >= 0);
  CHECK(s.channel == "0");
}

TEST_CASE("rabi validation") {
  CHECK_THROWS_AS(validate(rabi(-1.0)), InvalidInput);
  CHECK_THROWS_AS(validate(rabi(1.0, 0.0, 0.0)), InvalidInput);
  auto c = rabi(1.0);
  c.grid = 64;
  CHECK_THROWS_AS(validate(c), ResolutionError);
}
