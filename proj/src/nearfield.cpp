#include "nearfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "constants.hpp"
#include "error.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace mwg {

namespace {

using constants::pi;

constexpr double negligible = 1e-13;
constexpr double tail_bound = 1e-10;
constexpr int min_harmonics = 4;
constexpr int quiet_run = 3;
constexpr double realness = 1e-10;
constexpr int min_points_per_period = 256;

struct VelocityNode {
  double scale;   // multiplies the talbot parameter
  double weight;
};

std::vector<VelocityNode> velocity_nodes(double spread) {
  if (spread == 0) return {{1.0, 1.0}};
  // Gaussian in u = v/v0 truncated at 5 sigma; the talbot parameter scales as 1/u.
  auto rule = gauss_panels(1.0 - 5.0 * spread, 1.0 + 5.0 * spread, 4);
  std::vector<VelocityNode> out;
  double total = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double u = rule.nodes[i], d = (u - 1.0) / spread;
    double w = rule.weights[i] * std::exp(-0.5 * d * d);
    out.push_back({1.0 / u, w});
    total += w;
  }
  for (auto& n : out) n.weight /= total;
  return out;
}

}  // namespace

void validate(const KdtliConfig& cfg) {
  if (!(cfg.open_fraction > 0 && cfg.open_fraction < 1))
    throw InvalidInput("open fraction must lie in (0, 1)");
  if (!(cfg.talbot > 0) || !std::isfinite(cfg.talbot))
    throw InvalidInput("talbot parameter must be > 0");
  if (!cfg.source) throw InvalidInput("KDTLI: no coefficient source configured");
  if (cfg.jmax_cap < min_harmonics) throw InvalidInput("KDTLI: harmonic cap too small");
  if (!(cfg.velocity_spread >= 0 && cfg.velocity_spread < 0.2))
    throw InvalidInput("velocity spread must lie in [0, 0.2)");
  for (double x : cfg.shifts)
    if (!std::isfinite(x)) throw InvalidInput("KDTLI: shift grid has non-finite entries");
}

std::vector<cplx> kdtli_components(const KdtliConfig& cfg) {
  validate(cfg);
  double f = cfg.open_fraction;
  auto nodes = velocity_nodes(cfg.velocity_spread);
  std::vector<cplx> out;
  int quiet = 0;
  for (int j = 0; j <= cfg.jmax_cap; ++j) {
    cplx plus = 0, minus = 0;
    for (const auto& n : nodes) {
      double xi = j * cfg.talbot * n.scale;
      plus += n.weight * cfg.source->coefficient(2 * j, xi, cfg.channel);
      minus += n.weight * cfg.source->coefficient(-2 * j, -xi, cfg.channel);
    }
    double mask = f * f * std::pow(specfun::sinc(j * pi * f), 2);
    cplx sj = mask * plus, smj = mask * minus;
    if (std::abs(smj - std::conj(sj)) > realness)
      throw DomainError("KDTLI signal is not real: |S_-j - conj(S_j)| = " +
                        std::to_string(std::abs(smj - std::conj(sj))) + " at j=" +
                        std::to_string(j));
    out.push_back(0.5 * (sj + std::conj(smj)));
    bool small = std::abs(plus) < negligible && std::abs(minus) < negligible;
    quiet = small ? quiet + 1 : 0;
    if (j >= min_harmonics && quiet >= quiet_run) return out;
  }
  double last = std::abs(out.back());
  if (last >= tail_bound)
    throw ResolutionError("KDTLI: harmonic " + std::to_string(cfg.jmax_cap) +
                          " still exceeds the tail bound");
  return out;
}

std::vector<double> uniform_shifts(int points) {
  if (points < 1) throw InvalidInput("shift grid needs at least one point");
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) xs[i] = static_cast<double>(i) / points;
  return xs;
}

FringeSignal kdtli_signal(const KdtliConfig& cfg) {
  FringeSignal s;
  s.components = kdtli_components(cfg);
  s.shifts = cfg.shifts.empty() ? uniform_shifts(256) : cfg.shifts;
  s.mean = s.components[0].real();
  s.source = cfg.source->name();
  s.channel = cfg.channel.label();
  s.talbot = cfg.talbot;
  s.open_fraction = cfg.open_fraction;
  s.values.reserve(s.shifts.size());
  for (double x : s.shifts) {
    double v = s.components[0].real();
    for (std::size_t j = 1; j < s.components.size(); ++j)
      v += 2.0 * (s.components[j] * std::polar(1.0, 2.0 * pi * j * x)).real();
    s.values.push_back(v);
  }
  return s;
}

double sinusoidal_visibility(const KdtliConfig& cfg) {
  validate(cfg);
  double f = cfg.open_fraction;
  auto nodes = velocity_nodes(cfg.velocity_spread);
  cplx b2 = 0;
  for (const auto& n : nodes) b2 += n.weight * cfg.source->coefficient(2, cfg.talbot * n.scale, cfg.channel);
  cplx b0 = cfg.source->coefficient(0, 0.0, cfg.channel);
  if (std::abs(b0) < 1e-300)
    throw DomainError("sinusoidal visibility undefined: B_0(0) vanishes for channel " +
                      cfg.channel.label());
  return 2.0 * std::pow(specfun::sinc(pi * f), 2) * (b2 / b0).real();
}

double visibility_minmax(const FringeSignal& s) {
  if (s.values.empty()) throw InvalidInput("visibility of an empty signal");
  // Count the samples inside one period.
  std::size_t per_period = 0;
  for (double x : s.shifts)
    if (x >= s.shifts.front() && x < s.shifts.front() + 1.0) ++per_period;
  if (per_period < static_cast<std::size_t>(min_points_per_period))
    throw ResolutionError("min/max visibility needs at least 256 samples per period");
  auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
  if (*hi + *lo == 0) return 0;
  return (*hi - *lo) / (*hi + *lo);
}

double mean_transmission(const CoefficientSource& src, Channel ch, double f) {
  if (!(f > 0 && f < 1)) throw InvalidInput("open fraction must lie in (0, 1)");
  return f * f * src.coefficient(0, 0.0, ch).real();
}

double transmission_closed_form(int ell, double n0, double f) {
  if (ell < 0) throw InvalidInput("ell must be >= 0");
  if (!(n0 >= 0)) throw InvalidInput("n0 must be >= 0");
  auto bessel = specfun::bessel_i_range(ell, cplx(-0.5 * n0, 0));
  double sum = 0;
  for (int n = 0; n <= ell; ++n)
    for (int r = 0; r <= n; ++r)
      sum += bessel[std::abs(2 * r - n)].real() /
             (std::ldexp(1.0, n) * std::tgamma(r + 1.0) * std::tgamma(n - r + 1.0) *
              std::tgamma(ell - n + 1.0));
  return f * f * std::exp(-0.5 * n0) * std::pow(0.5 * n0, ell) * sum;
}

}  // namespace mwg
