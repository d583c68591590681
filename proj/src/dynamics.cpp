#include "dynamics.hpp"

#include <cmath>
#include <string>

#include "constants.hpp"
#include "error.hpp"
#include "grating.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace mwg {

namespace {

using constants::pi;

constexpr double gaussian_reach = 4.5;

struct PairGeometry {
  double c, cp;    // cos(pi x), cos(pi x')
  double phase;    // phi(x) - phi(x')
  double loss;     // (n(x) + n(x')) / 2
};

PairGeometry geometry(const GratingParameters& g, double x, double xp) {
  double c = std::cos(pi * x), cp = std::cos(pi * xp);
  return {c, cp, g.phi0 * (c * c - cp * cp), 0.5 * g.n0 * (c * c + cp * cp)};
}

void check_out(const LadderConfig& cfg, std::span<cplx> out) {
  if (static_cast<int>(out.size()) != resolved_max_ell(cfg) + 1)
    throw InvalidInput("ladder: output span must hold max_ell + 1 entries");
}

std::string pair_tag(double x, double xp) {
  return "ladder at (x, x') = (" + std::to_string(x) + ", " + std::to_string(xp) + ")";
}

}  // namespace

const char* to_string(Envelope e) { return e == Envelope::gaussian ? "gaussian" : "constant"; }

const char* to_string(LadderMethod m) {
  switch (m) {
    case LadderMethod::ode: return "ode";
    case LadderMethod::analytic: return "analytic";
    case LadderMethod::t1_integral: return "t1-integral";
  }
  return "?";
}

void validate(const LadderConfig& cfg) {
  validate(cfg.grating);
  if (cfg.grating.eta_p < 0) throw InvalidInput("eta_p must be >= 0");
  if (cfg.max_ell < -1) throw InvalidInput("ladder: max_ell must be >= 0 or -1 for automatic");
  if (cfg.grid < min_oracle_grid) throw ResolutionError("ladder: grid must have >= 512 points");
}

int resolved_max_ell(const LadderConfig& cfg) {
  return cfg.max_ell >= 0 ? cfg.max_ell : ladder_cutoff(cfg.grating);
}

void ladder_ode_pair(const LadderConfig& cfg, double x, double xp, std::span<cplx> out) {
  check_out(cfg, out);
  const auto& g = cfg.grating;
  auto geo = geometry(g, x, xp);
  int lmax = resolved_max_ell(cfg);
  cplx d0(-geo.loss, geo.phase);
  cplx deta(-g.eta_a * geo.loss, g.eta_p * geo.phase);
  double cc = geo.c * geo.cp;
  bool gauss = cfg.envelope == Envelope::gaussian;

  auto rhs = [&](const OdeState& y, OdeState& dy, double s) {
    double env = gauss ? std::exp(-pi * s * s) : 1.0;
    dy[0] = env * d0 * y[0];
    for (int l = 1; l <= lmax; ++l) {
      double rate = (l == 1 ? 1.0 : g.eta_a) * g.n0;
      dy[l] = env * (deta * y[l] + rate * cc * y[l - 1]);
    }
  };
  OdeState y(lmax + 1, cplx(0));
  y[0] = 1.0;
  double t0 = gauss ? -gaussian_reach : 0.0, t1 = gauss ? gaussian_reach : 1.0;
  integrate(rhs, y, t0, t1, cfg.tolerance, pair_tag(x, xp));
  std::copy(y.begin(), y.end(), out.begin());
}

void ladder_analytic_pair(const LadderConfig& cfg, double x, double xp, std::span<cplx> out) {
  check_out(cfg, out);
  const auto& g = cfg.grating;
  bool uniform = g.eta_p == 1 && g.eta_a == 1;
  if (cfg.envelope != Envelope::constant && !uniform)
    throw InvalidInput("the closed-form ladder solution with eta != 1 needs the constant envelope");
  auto geo = geometry(g, x, xp);
  cplx base = std::exp(cplx(-geo.loss, geo.phase));
  cplx z(-(g.eta_a - 1.0) * geo.loss, (g.eta_p - 1.0) * geo.phase);
  double cc = geo.c * geo.cp;
  for (std::size_t l = 0; l < out.size(); ++l) {
    int ell = static_cast<int>(l);
    // sqrt(n0^l/l!)^2 (c c')^l, i.e. the product M_l(x) conj(M_l(x')) without phases.
    double amp = std::pow(poisson_amplitude(g.n0, ell), 2) * std::pow(cc, ell);
    if (ell == 0 || uniform) {
      out[l] = amp * base;
      continue;
    }
    out[l] = amp * base * std::pow(g.eta_a, ell - 1) * specfun::hyp1f1_ladder(ell, z);
  }
}

void ladder_t1_pair(const LadderConfig& cfg, double x, double xp, std::span<cplx> out) {
  check_out(cfg, out);
  const auto& g = cfg.grating;
  if (cfg.envelope != Envelope::constant)
    throw InvalidInput("the first-absorption-time representation needs the constant envelope");
  double c = std::cos(pi * x), cp = std::cos(pi * xp);
  // Exponents of the generalized operators before and after the first absorption.
  auto before = [&](double cv) { return cplx(-0.5 * g.n0 * cv * cv, g.phi0 * cv * cv); };
  auto after = [&](double cv) {
    return cplx(-0.5 * g.eta_a * g.n0 * cv * cv, g.eta_p * g.phi0 * cv * cv);
  };
  cplx b = before(c), bp = std::conj(before(cp)), a = after(c), ap = std::conj(after(cp));
  out[0] = std::exp(b + bp);
  static const QuadratureRule rule = gauss_panels(0.0, 1.0, 4);
  for (std::size_t l = 1; l < out.size(); ++l) {
    int ell = static_cast<int>(l);
    // |prefactor|^2 = (eta_a (1 - alpha))^(l-1) n0^l / (l-1)!, times (c c')^l.
    double fixed = std::exp(ell * std::log(std::max(g.n0, 1e-300)) - std::lgamma(ell)) *
                   std::pow(c * cp, ell);
    if (g.n0 == 0) fixed = 0;
    cplx sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      double alpha = rule.nodes[i];
      double ladder = std::pow(g.eta_a * (1.0 - alpha), ell - 1);
      sum += rule.weights[i] * ladder * std::exp((b + bp) * alpha + (a + ap) * (1.0 - alpha));
    }
    out[l] = fixed * sum;
  }
}

std::shared_ptr<const TwoPointKernel> ladder_kernel(const LadderConfig& cfg, LadderMethod method) {
  validate(cfg);
  int lmax = resolved_max_ell(cfg);
  TwoPointKernel::PairFn fn;
  switch (method) {
    case LadderMethod::ode:
      fn = [cfg](double x, double xp, std::span<cplx> out) { ladder_ode_pair(cfg, x, xp, out); };
      break;
    case LadderMethod::analytic:
      fn = [cfg](double x, double xp, std::span<cplx> out) { ladder_analytic_pair(cfg, x, xp, out); };
      break;
    case LadderMethod::t1_integral:
      fn = [cfg](double x, double xp, std::span<cplx> out) { ladder_t1_pair(cfg, x, xp, out); };
      break;
  }
  auto kernel = std::make_shared<TwoPointKernel>(lmax, cfg.grid, std::move(fn),
                                                 std::string("ladder-") + to_string(method), cfg.jobs);
  kernel->metadata["phi0"] = std::to_string(cfg.grating.phi0);
  kernel->metadata["n0"] = std::to_string(cfg.grating.n0);
  kernel->metadata["eta_p"] = std::to_string(cfg.grating.eta_p);
  kernel->metadata["eta_a"] = std::to_string(cfg.grating.eta_a);
  kernel->metadata["envelope"] = to_string(cfg.envelope);
  return kernel;
}

TalbotCoefficientSet kernel_to_talbot(std::shared_ptr<const TwoPointKernel> kernel,
                                      const std::vector<double>& xi, int jmax, int jobs) {
  KernelSource src(kernel);
  std::vector<Channel> channels;
  for (int l = 0; l <= kernel->max_ell(); ++l) channels.push_back(Channel::conditional(l));
  channels.push_back(Channel::unconditional());
  return tabulate(src, xi, jmax, channels, jobs);
}

}  // namespace mwg
