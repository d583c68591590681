#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "constants.hpp"
#include "error.hpp"
#include "farfield.hpp"
#include "nearfield.hpp"
#include "specfun.hpp"

using namespace mwg;

namespace {

const double pi = constants::pi;

GratingParameters grating(double phi0, double n0) {
  GratingParameters g;
  g.phi0 = phi0;
  g.n0 = n0;
  return g;
}

FarFieldConfig config(double half_width = 3.0, int points = 601) {
  FarFieldConfig c;
  c.slit_ratio = 10;
  c.period_ratio = 1e-3;
  c.screen = uniform_screen(half_width, points);
  return c;
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

double riemann(const ScreenDensity& d) {
  return std::accumulate(d.values.begin(), d.values.end(), 0.0) * (d.screen[1] - d.screen[0]);
}

std::vector<double> local_maxima(const ScreenDensity& d, double rel_floor) {
  double peak = *std::max_element(d.values.begin(), d.values.end());
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < d.values.size(); ++i)
    if (d.values[i] > d.values[i - 1] && d.values[i] >= d.values[i + 1] && d.values[i] > rel_floor * peak)
      out.push_back(d.screen[i]);
  return out;
}

}  // namespace

TEST_CASE("no grating gives the single-slit pattern") {
  auto c = config();
  ClosedFormSource src(grating(0, 0), Variant::quantum);
  auto d = fraunhofer_density(c, src, Channel::unconditional());
  double D = c.slit_ratio;
  for (std::size_t i = 0; i < d.screen.size(); ++i) {
    double s = specfun::sinc(pi * D * d.screen[i]);
    CHECK(d.values[i] == doctest::Approx(D * s * s).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("Fourier-space and Kirchhoff forms agree") {
  auto c = config();
  auto g = grating(2.5, 2.0);
  ClosedFormSource src(g, Variant::quantum);
  for (Channel ch : {Channel::unconditional(), Channel::conditional(0), Channel::conditional(1)}) {
    auto a = farfield_density(c, src, ch);
    auto b = farfield_kirchhoff(c, g, ch);
    CHECK(rel_l2(a.values, b.values) < 1e-4);
  }
}

TEST_CASE("Fraunhofer limit") {
  auto c = config();
  auto g = grating(2.5, 2.0);
  ClosedFormSource q(g, Variant::quantum), k(g, Variant::classical);
  auto fq = fraunhofer_density(c, q, Channel::unconditional());
  auto fk = fraunhofer_density(c, k, Channel::unconditional());
  CHECK(fq.warning.empty());
  for (std::size_t i = 0; i < fq.values.size(); ++i) CHECK(std::abs(fq.values[i] - fk.values[i]) <= 1e-10);
  // The neglected chirp makes the gap linear in d/dx.
  c.period_ratio = 1e-4;
  double e4 = rel_l2(fq.values, farfield_density(c, q, Channel::unconditional()).values);
  c.period_ratio = 1e-5;
  double e5 = rel_l2(fq.values, farfield_density(c, q, Channel::unconditional()).values);
  CHECK(e4 < 1e-3);
  CHECK(e4 / e5 == doctest::Approx(10).epsilon(0.2));
  c.period_ratio = 0.05;
  CHECK_FALSE(fraunhofer_density(c, q, Channel::unconditional()).warning.empty());
}

TEST_CASE("Fraunhofer limit at d/dx = 1e-3 and D/d = 10" * doctest::may_fail()) {
  auto c = config();
  ClosedFormSource q(grating(2.5, 2.0), Variant::quantum);
  auto full = farfield_density(c, q, Channel::unconditional());
  CHECK(rel_l2(fraunhofer_density(c, q, Channel::unconditional()).values, full.values) < 1e-3);
}

TEST_CASE("peak positions") {
  auto c = config(3.0, 1201);
  auto g = grating(2.5, 2.0);
  ClosedFormSource src(g, Variant::quantum);
  for (double x : local_maxima(fraunhofer_density(c, src, Channel::conditional(0)), 0.1))
    CHECK(std::abs(x - std::round(x)) <= 0.05);
  auto odd = local_maxima(farfield_density(c, src, Channel::conditional(1)), 0.1);
  CHECK_FALSE(odd.empty());
  for (double x : odd) {
    double half = std::round(x - 0.5) + 0.5;
    CHECK(std::abs(x - half) <= 0.05);
  }
  auto bare = farfield_density(c, ClosedFormSource(grating(0, 0), Variant::quantum), Channel::unconditional());
  auto with = farfield_density(c, src, Channel::unconditional());
  auto at = [&](const ScreenDensity& d, double x) {
    auto it = std::min_element(d.screen.begin(), d.screen.end(),
                               [&](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
    return d.values[it - d.screen.begin()];
  };
  CHECK(at(with, 0.0) < at(bare, 0.0));
  CHECK(at(with, 0.5) > at(bare, 0.5) + 0.01 * at(bare, 0.0));
}

TEST_CASE("unconditional density is the sum over absorption numbers") {
  auto c = config(2.0, 201);
  auto g = grating(2.5, 2.0);
  ClosedFormSource src(g, Variant::quantum);
  auto total = farfield_density(c, src, Channel::unconditional());
  std::vector<double> sum(total.values.size(), 0.0);
  for (int l = 0; l <= src.max_ell(); ++l) {
    auto d = farfield_density(c, src, Channel::conditional(l));
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += d.values[i];
  }
  for (std::size_t i = 0; i < sum.size(); ++i) CHECK(std::abs(sum[i] - total.values[i]) < 1e-6);
}

TEST_CASE("densities are even on axis") {
  auto c = config(2.5, 251);
  auto g = grating(2.5, 2.0);
  ClosedFormSource src(g, Variant::quantum);
  for (Channel ch : {Channel::unconditional(), Channel::conditional(1)}) {
    auto d = farfield_density(c, src, ch);
    std::size_t n = d.values.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(d.values[i] - d.values[n - 1 - i]) < 1e-8);
  }
}

TEST_CASE("narrow slit diffracts uniformly") {
  auto c = config(0.5, 51);
  c.slit_ratio = 1e-3;
  auto d = farfield_kirchhoff(c, grating(0, 0), Channel::unconditional());
  for (double v : d.values) CHECK(v == doctest::Approx(d.values[25]).epsilon(1e-5));
}

TEST_CASE("far field cannot tell quantum from classical while the near field can") {
  auto c = config(3.0, 601);
  c.period_ratio = 1e-5;
  auto g = grating(pi, 1.0);
  ClosedFormSource q(g, Variant::quantum), k(g, Variant::classical);
  auto a = farfield_density(c, q, Channel::unconditional());
  auto b = farfield_density(c, k, Channel::unconditional());
  double peak = *std::max_element(a.values.begin(), a.values.end());
  double diff = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
  CHECK(diff < 1e-3 * peak);

  KdtliConfig kc;
  kc.talbot = 3.25;
  kc.source = std::make_shared<ClosedFormSource>(g, Variant::quantum);
  double vq = sinusoidal_visibility(kc);
  kc.source = std::make_shared<ClosedFormSource>(g, Variant::classical);
  CHECK(std::abs(vq - sinusoidal_visibility(kc)) > 0.1);
}

TEST_CASE("detector resolution") {
  auto c = config(4.0, 801);
  ClosedFormSource src(grating(2.5, 2.0), Variant::quantum);
  auto d = farfield_density(c, src, Channel::unconditional());
  for (auto kind : {ResolutionKernel::gaussian, ResolutionKernel::boxcar}) {
    auto s = apply_detector_resolution(d, 0.1, kind);
    CHECK(s.smoothed);
    CHECK(riemann(s) == doctest::Approx(riemann(d)).epsilon(1e-8));
    for (double v : s.values) CHECK(v >= 0);
  }
  auto same = apply_detector_resolution(d, 0.0);
  CHECK(same.values == d.values);
  CHECK_THROWS_AS(apply_detector_resolution(d, 0.03), ResolutionError);
  auto uneven = d;
  uneven.screen[3] += 1e-3;
  CHECK_THROWS_AS(apply_detector_resolution(uneven, 0.1), ResolutionError);
}

TEST_CASE("phase-space pipeline matches the Fourier-space density") {
  auto c = config(1.5, 61);
  c.slit_ratio = 4;
  auto g = grating(2.5, 2.0);
  ClosedFormSource src(g, Variant::quantum);
  for (Channel ch : {Channel::unconditional(), Channel::conditional(1)}) {
    auto a = farfield_density(c, src, ch);
    auto b = farfield_phase_space(c, g, ch);
    CHECK(rel_l2(b.values, a.values) < 1e-3);
  }
}

TEST_CASE("collimation transform") {
  PhaseSpaceGrid s;
  s.x = {-0.3, 0.0, 0.3};
  for (int i = 0; i < 128; ++i) s.kappa.push_back(-8 + 16.0 * i / 128);
  for (double x : s.x)
    for (double k : s.kappa) s.values.push_back(std::exp(-k * k) * (1 + 0.1 * x * x));
  auto wide = collimation_transform(s, 1e3);
  for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(std::abs(wide.values[i] - s.values[i]) < 1e-9);
  auto narrow = collimation_transform(s, 1.0);
  std::size_t nk = s.kappa.size();
  for (std::size_t k = 0; k < nk; ++k) CHECK(narrow.values[k] == doctest::Approx(narrow.values[2 * nk + k]));
  CHECK(collimation_kernel(0.2, 0.0, 1.0) == doctest::Approx(2 * 0.6));
  CHECK(collimation_kernel(0.6, 0.3, 1.0) == 0.0);
}

TEST_CASE("far-field validation") {
  auto c = config();
  ClosedFormSource src(grating(1, 1), Variant::quantum);
  c.q_nodes_per_unit = 32;
  CHECK_THROWS_AS(farfield_density(c, src, Channel::unconditional()), ResolutionError);
  c = config();
  c.slit_ratio = 0;
  CHECK_THROWS_AS(farfield_density(c, src, Channel::unconditional()), InvalidInput);
  c = config();
  CHECK_THROWS_AS(farfield_kirchhoff(c, grating(1, 1), Channel::unconditional(), 1000), ResolutionError);
  c.period_ratio = 50;
  CHECK_THROWS_AS(farfield_kirchhoff(c, grating(1, 1), Channel::unconditional()), ResolutionError);
}
