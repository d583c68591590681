#include "farfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "constants.hpp"
#include "error.hpp"
#include "grating.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace mwg {

namespace {

using constants::pi;

constexpr int min_q_nodes_per_unit = 64;
constexpr double tail_bound = 1e-10;
constexpr double fraunhofer_limit = 1e-2;

int panels_for(double length, int nodes_per_unit) {
  return std::max(1, static_cast<int>(std::ceil(length * nodes_per_unit / 30.0)));
}

// G(q) = sum_j B_j(q) F_j(q) on the nodes of [0, D/d]; G is real and even in q.
std::vector<double> fourier_integrand(const QuadratureRule& rule, const CoefficientSource& src,
                                      Channel ch, double slit, double r, int jmax) {
  std::vector<double> out(rule.nodes.size());
  parallel_for(rule.nodes.size(), 0, [&](std::size_t i) {
    double q = rule.nodes[i];
    CoefficientRow row = src.row(q, ch, jmax);
    if (std::abs(row(jmax)) >= tail_bound || std::abs(row(-jmax)) >= tail_bound)
      throw ResolutionError("far field: Talbot coefficients at |j| = " + std::to_string(jmax) +
                            " exceed the tail bound at q = " + std::to_string(q));
    double width = pi * (slit - q);
    cplx g = 0;
    for (int j = -jmax; j <= jmax; ++j)
      g += row(j) * (width * specfun::sinc(width * (j + 2.0 * q * r)));
    out[i] = g.real();
  });
  return out;
}

ScreenDensity fourier_density(const FarFieldConfig& cfg, const CoefficientSource& src, Channel ch,
                              double r) {
  validate(cfg);
  auto rule = gauss_panels(0.0, cfg.slit_ratio, panels_for(cfg.slit_ratio, cfg.q_nodes_per_unit));
  auto g = fourier_integrand(rule, src, ch, cfg.slit_ratio, r, cfg.jmax);
  ScreenDensity out;
  out.screen = cfg.screen;
  out.values.resize(cfg.screen.size());
  out.channel = ch.label();
  out.model = src.name();
  out.normalization = "probability per unit x/dx";
  double pref = 2.0 / (pi * cfg.slit_ratio);
  parallel_for(cfg.screen.size(), 0, [&](std::size_t k) {
    double x = cfg.screen[k], s = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * std::cos(2.0 * pi * rule.nodes[i] * x) * g[i];
    out.values[k] = pref * s;
  });
  return out;
}

bool is_uniform(const std::vector<double>& x) {
  if (x.size() < 2) return false;
  double h = x[1] - x[0];
  if (!(h > 0)) return false;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * h) return false;
  return true;
}

}  // namespace

void validate(const FarFieldConfig& cfg) {
  if (!(cfg.slit_ratio > 0) || !std::isfinite(cfg.slit_ratio))
    throw InvalidInput("collimator ratio D/d must be > 0");
  if (!(cfg.period_ratio >= 0) || !std::isfinite(cfg.period_ratio))
    throw InvalidInput("d/dx must be >= 0");
  if (cfg.q_nodes_per_unit < min_q_nodes_per_unit)
    throw ResolutionError("far field needs at least 64 q nodes per unit q");
  if (cfg.jmax < 1) throw InvalidInput("far field: jmax must be >= 1");
  if (cfg.screen.empty()) throw InvalidInput("far field: empty screen grid");
  for (double x : cfg.screen)
    if (!std::isfinite(x)) throw InvalidInput("far field: screen grid has non-finite entries");
}

ScreenDensity farfield_density(const FarFieldConfig& cfg, const CoefficientSource& src, Channel ch) {
  return fourier_density(cfg, src, ch, cfg.period_ratio);
}

ScreenDensity fraunhofer_density(const FarFieldConfig& cfg, const CoefficientSource& src, Channel ch) {
  ScreenDensity out = fourier_density(cfg, src, ch, 0.0);
  if (cfg.period_ratio > fraunhofer_limit)
    out.warning = "d/dx = " + std::to_string(cfg.period_ratio) +
                  " exceeds 1e-2; the Fraunhofer limit is not reliable here";
  return out;
}

ScreenDensity farfield_kirchhoff(const FarFieldConfig& cfg, const GratingParameters& g, Channel ch,
                                 int nodes_across_slit) {
  validate(cfg);
  validate(g);
  if (nodes_across_slit < 4096)
    throw ResolutionError("Kirchhoff integral needs at least 4096 nodes across the slit");
  double half = 0.5 * cfg.slit_ratio, r = cfg.period_ratio;
  auto rule = gauss_panels(-half, half, (nodes_across_slit + 29) / 30);
  double xmax = 0;
  for (double x : cfg.screen) xmax = std::max(xmax, std::abs(x));
  double spacing = cfg.slit_ratio / static_cast<double>(rule.nodes.size());
  if (2.0 * pi * (xmax + r * cfg.slit_ratio) * spacing > pi / 4)
    throw ResolutionError("Kirchhoff integral: chirp phase advances more than pi/4 per node");

  int lo = ch.summed ? 0 : ch.ell, hi = ch.summed ? ladder_cutoff(g) : ch.ell;
  // Aperture samples per ell.
  std::vector<std::vector<cplx>> aperture;
  for (int l = lo; l <= hi; ++l) {
    std::vector<cplx> t(rule.nodes.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = rule.weights[i] * m_ell(rule.nodes[i], {g, l}) *
             std::polar(1.0, -2.0 * pi * r * rule.nodes[i] * rule.nodes[i]);
    aperture.push_back(std::move(t));
  }

  ScreenDensity out;
  out.screen = cfg.screen;
  out.values.resize(cfg.screen.size());
  out.channel = ch.label();
  out.model = "kirchhoff/quantum";
  out.normalization = "probability per unit x/dx";
  parallel_for(cfg.screen.size(), 0, [&](std::size_t k) {
    double x = cfg.screen[k], s = 0;
    for (const auto& t : aperture) {
      cplx a = 0;
      for (std::size_t i = 0; i < t.size(); ++i)
        a += t[i] * std::polar(1.0, 2.0 * pi * rule.nodes[i] * x);
      s += std::norm(a);
    }
    out.values[k] = s / cfg.slit_ratio;
  });
  return out;
}

ScreenDensity apply_detector_resolution(const ScreenDensity& d, double sigma, ResolutionKernel kind) {
  if (!(sigma >= 0) || !std::isfinite(sigma)) throw InvalidInput("detector resolution must be >= 0");
  if (d.values.size() != d.screen.size()) throw InvalidInput("density and grid sizes differ");
  ScreenDensity out = d;
  out.smoothed = true;
  if (sigma == 0) return out;
  if (!is_uniform(d.screen)) throw ResolutionError("detector resolution needs a uniform grid");
  double h = d.screen[1] - d.screen[0];
  if (h >= sigma / 4) throw ResolutionError("screen grid too coarse for the detector resolution");

  std::size_t n = d.values.size();
  double reach = kind == ResolutionKernel::gaussian ? 8.0 * sigma : std::sqrt(3.0) * sigma;
  int band = static_cast<int>(std::ceil(reach / h));
  auto weight = [&](int offset) {
    double u = offset * h;
    if (kind == ResolutionKernel::gaussian) return std::exp(-0.5 * u * u / (sigma * sigma));
    return std::abs(u) <= reach ? 1.0 : 0.0;
  };
  std::vector<double> kernel(2 * band + 1);
  for (int o = -band; o <= band; ++o) kernel[o + band] = weight(o);

  std::fill(out.values.begin(), out.values.end(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    int ilo = std::max<int>(0, static_cast<int>(k) - band);
    int ihi = std::min<int>(static_cast<int>(n) - 1, static_cast<int>(k) + band);
    double column = 0;
    for (int i = ilo; i <= ihi; ++i) column += kernel[i - static_cast<int>(k) + band];
    for (int i = ilo; i <= ihi; ++i)
      out.values[i] += d.values[k] * kernel[i - static_cast<int>(k) + band] / column;
  }
  return out;
}

double collimation_kernel(double x, double kappa, double slit_ratio) {
  double a = slit_ratio - 2.0 * std::abs(x);
  if (a <= 0) return 0.0;
  return 2.0 * a * specfun::sinc(2.0 * pi * a * kappa);
}

PhaseSpaceGrid collimation_transform(const PhaseSpaceGrid& state, double slit_ratio) {
  if (!(slit_ratio > 0)) throw InvalidInput("collimator ratio D/d must be > 0");
  std::size_t nx = state.x.size(), nk = state.kappa.size();
  if (state.values.size() != nx * nk) throw InvalidInput("phase-space grid shape mismatch");
  if (nk < 16 || !is_uniform(state.kappa))
    throw ResolutionError("collimation needs a uniform momentum grid with >= 16 points");
  double dk = state.kappa[1] - state.kappa[0];
  int n = static_cast<int>(nk);
  // Conjugate grid s_m = m / (n dk), m = -n/2 .. n - n/2 - 1.
  PhaseSpaceGrid out = state;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double a = slit_ratio - 2.0 * std::abs(state.x[ix]);
    const double* row = &state.values[ix * nk];
    double* dst = &out.values[ix * nk];
    if (a <= 0) {
      std::fill(dst, dst + nk, 0.0);
      continue;
    }
    std::vector<cplx> spectrum(nk);
    for (int m = -n / 2; m < n - n / 2; ++m) {
      double s = m / (n * dk);
      if (std::abs(s) > a) continue;
      cplx acc = 0;
      for (int k = 0; k < n; ++k) acc += row[k] * std::polar(1.0, -2.0 * pi * s * state.kappa[k]);
      spectrum[m + n / 2] = acc;
    }
    for (int k = 0; k < n; ++k) {
      cplx acc = 0;
      for (int m = -n / 2; m < n - n / 2; ++m) {
        double s = m / (n * dk);
        acc += spectrum[m + n / 2] * std::polar(1.0, 2.0 * pi * s * state.kappa[k]);
      }
      dst[k] = acc.real() / n;
    }
  }
  return out;
}

ScreenDensity farfield_phase_space(const FarFieldConfig& cfg, const GratingParameters& g, Channel ch) {
  validate(cfg);
  validate(g);
  double slit = cfg.slit_ratio, r = cfg.period_ratio;
  int lo = ch.summed ? 0 : ch.ell, hi = ch.summed ? ladder_cutoff(g) : ch.ell;

  // h_m(X) = sum_{n + n' = 2m} A_n conj(A_n') e^{i pi (n - n') X}, summed over channels.
  std::vector<std::map<int, cplx>> amplitudes;
  int cutoff = static_cast<int>(std::ceil(std::abs(g.phi0) + g.n0 + 20));
  for (int l = lo; l <= hi; ++l)
    amplitudes.push_back(plane_wave_diffraction({g, l}, cutoff).amplitude);

  int per_unit = std::max(cfg.q_nodes_per_unit, 480);
  auto left = gauss_panels(-0.5 * slit, 0.0, panels_for(0.5 * slit, per_unit));
  auto right = gauss_panels(0.0, 0.5 * slit, panels_for(0.5 * slit, per_unit));
  QuadratureRule rule = left;
  rule.nodes.insert(rule.nodes.end(), right.nodes.begin(), right.nodes.end());
  rule.weights.insert(rule.weights.end(), right.weights.begin(), right.weights.end());

  std::map<int, std::vector<cplx>> h;  // keyed by m
  for (const auto& amp : amplitudes)
    for (const auto& [n1, a1] : amp)
      for (const auto& [n2, a2] : amp) {
        int m = (n1 + n2) / 2;
        auto& hm = h[m];
        if (hm.empty()) hm.assign(rule.nodes.size(), cplx(0));
        cplx c = a1 * std::conj(a2);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
          hm[i] += c * std::polar(1.0, pi * (n1 - n2) * rule.nodes[i]);
      }

  ScreenDensity out;
  out.screen = cfg.screen;
  out.values.resize(cfg.screen.size());
  out.channel = ch.label();
  out.model = "phase-space/quantum";
  out.normalization = "probability per unit x/dx";
  parallel_for(cfg.screen.size(), 0, [&](std::size_t k) {
    double y = cfg.screen[k];
    cplx s = 0;
    for (const auto& [m, hm] : h)
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double x = rule.nodes[i];
        s += rule.weights[i] * hm[i] * collimation_kernel(x, y + 2.0 * r * x - 0.5 * m, slit);
      }
    out.values[k] = s.real() / slit;
  });
  return out;
}

std::vector<double> uniform_screen(double half_width, int points) {
  if (points < 2 || !(half_width > 0)) throw InvalidInput("screen grid needs >= 2 points");
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) x[i] = -half_width + 2.0 * half_width * i / (points - 1);
  return x;
}

}  // namespace mwg
