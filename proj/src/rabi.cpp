#include "rabi.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "constants.hpp"
#include "error.hpp"
#include "grating.hpp"
#include "talbot.hpp"

namespace mwg {

namespace {

using constants::pi;
using Mat3 = Eigen::Matrix3cd;

constexpr double short_lifetime_ratio = 1.0 / 50.0;

// H / hbar in units of 1/t_L at position x.
Mat3 hamiltonian(const RabiConfig& cfg, double x) {
  double half = 0.5 * cfg.pulse_area * std::cos(pi * x);
  Mat3 h = Mat3::Zero();
  h(0, 1) = h(1, 0) = half;
  h(1, 1) = -cfg.detuning;
  return h;
}

// Two-point Lindblad generator applied to rho(x, x').
Mat3 generator(const Mat3& h, const Mat3& hp, double lifetime, const Mat3& rho) {
  Mat3 out = cplx(0, -1) * (h * rho - rho * hp);
  double g = 1.0 / lifetime;
  // L = |2><1| / sqrt(tau): L rho L^dagger and -{L^dagger L, rho}/2 with L^dagger L = |1><1|/tau.
  out(2, 2) += g * rho(1, 1);
  out.row(1) -= 0.5 * g * rho.row(1);
  out.col(1) -= 0.5 * g * rho.col(1);
  return out;
}

DensityMatrix to_array(const Mat3& m) {
  DensityMatrix a;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) a[3 * i + k] = m(i, k);
  return a;
}

std::string pair_tag(double x, double xp) {
  return "rabi at (x, x') = (" + std::to_string(x) + ", " + std::to_string(xp) + ")";
}

std::shared_ptr<const TwoPointKernel> ground_kernel(const RabiConfig& cfg, RabiMethod method) {
  TwoPointKernel::PairFn fn = [cfg, method](double x, double xp, std::span<cplx> out) {
    DensityMatrix rho = method == RabiMethod::ode ? rabi_pair_ode(cfg, x, xp) : rabi_pair_exact(cfg, x, xp);
    out[0] = rho[0];
  };
  auto k = std::make_shared<TwoPointKernel>(0, cfg.grid, std::move(fn),
                                            method == RabiMethod::ode ? "rabi-ode" : "rabi-exact", cfg.jobs);
  k->metadata["pulse_area"] = std::to_string(cfg.pulse_area);
  k->metadata["detuning"] = std::to_string(cfg.detuning);
  k->metadata["lifetime"] = std::to_string(cfg.lifetime);
  return k;
}

}  // namespace

void validate(const RabiConfig& cfg) {
  if (!std::isfinite(cfg.pulse_area) || cfg.pulse_area < 0)
    throw InvalidInput("pulse area must be finite and >= 0");
  if (!std::isfinite(cfg.detuning)) throw InvalidInput("detuning is not finite");
  if (!(cfg.lifetime > 0) || !std::isfinite(cfg.lifetime))
    throw InvalidInput("excited-state lifetime must be > 0");
  if (cfg.grid < min_oracle_grid) throw ResolutionError("rabi: grid must have >= 512 points");
}

DensityMatrix rabi_pair_ode(const RabiConfig& cfg, double x, double xp, const RabiObserver& observe) {
  validate(cfg);
  Mat3 h = hamiltonian(cfg, x), hp = hamiltonian(cfg, xp);
  auto rhs = [&](const OdeState& y, OdeState& dy, double) {
    Eigen::Map<const Eigen::Matrix<cplx, 3, 3, Eigen::RowMajor>> rho(y.data());
    Mat3 d = generator(h, hp, cfg.lifetime, rho);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) dy[3 * i + k] = d(i, k);
  };
  OdeState y(9, cplx(0));
  y[0] = 1.0;
  auto obs = [&](const OdeState& state, double t) {
    if (!observe) return;
    DensityMatrix a;
    std::copy(state.begin(), state.end(), a.begin());
    observe(t, a);
  };
  integrate(rhs, y, 0.0, 1.0, cfg.tolerance, obs, pair_tag(x, xp));
  DensityMatrix out;
  std::copy(y.begin(), y.end(), out.begin());
  return out;
}

DensityMatrix rabi_pair_exact(const RabiConfig& cfg, double x, double xp) {
  validate(cfg);
  Mat3 h = hamiltonian(cfg, x), hp = hamiltonian(cfg, xp);
  Eigen::Matrix<cplx, 9, 9> gen;
  for (int b = 0; b < 9; ++b) {
    Mat3 basis = Mat3::Zero();
    basis(b / 3, b % 3) = 1.0;
    Mat3 img = generator(h, hp, cfg.lifetime, basis);
    for (int a = 0; a < 9; ++a) gen(a, b) = img(a / 3, a % 3);
  }
  Eigen::Matrix<cplx, 9, 9> prop = gen.exp();
  Mat3 rho;
  for (int a = 0; a < 9; ++a) rho(a / 3, a % 3) = prop(a, 0);
  return to_array(rho);
}

RabiKernel rabi_solve(const RabiConfig& cfg, RabiMethod method) {
  validate(cfg);
  RabiKernel out;
  out.ground = ground_kernel(cfg, method);
  out.x = uniform_shifts(cfg.grid);
  for (double x : out.x) {
    DensityMatrix rho = method == RabiMethod::ode ? rabi_pair_ode(cfg, x, x) : rabi_pair_exact(cfg, x, x);
    out.p0.push_back(rho[0].real());
    out.p1.push_back(rho[4].real());
    out.p2.push_back(rho[8].real());
  }
  return out;
}

GratingParameters short_lifetime_parameters(const RabiConfig& cfg) {
  validate(cfg);
  double a2 = cfg.pulse_area * cfg.pulse_area, tau = cfg.lifetime, det = cfg.detuning;
  double denom = 1.0 + 4.0 * det * det * tau * tau;
  GratingParameters g;
  g.phi0 = -det * tau * tau * a2 / denom;
  g.n0 = tau * a2 / denom;
  return g;
}

RabiKernel rabi_short_lifetime_limit(const RabiConfig& cfg) {
  validate(cfg);
  if (cfg.lifetime > short_lifetime_ratio)
    throw RegimeError("short-lifetime reduction needs tau <= t_L / 50");
  GratingParameters g = short_lifetime_parameters(cfg);
  RabiKernel out;
  TwoPointKernel::PairFn fn = [g](double x, double xp, std::span<cplx> o) {
    o[0] = m_ell(x, {g, 0}) * std::conj(m_ell(xp, {g, 0}));
  };
  auto k = std::make_shared<TwoPointKernel>(0, cfg.grid, std::move(fn), "rabi-short-lifetime", cfg.jobs);
  k->metadata["phi0"] = std::to_string(g.phi0);
  k->metadata["n0"] = std::to_string(g.n0);
  out.ground = k;
  out.x = uniform_shifts(cfg.grid);
  for (double x : out.x) {
    out.p0.push_back(absorption_probability(x, 0, g));
    out.p1.push_back(0.0);
    out.p2.push_back(1.0 - out.p0.back());
  }
  return out;
}

std::vector<double> rabi_transmission_profile(const RabiConfig& cfg, RabiMethod method) {
  return rabi_solve(cfg, method).p0;
}

FringeSignal rabi_kdtli(const RabiConfig& cfg, KdtliConfig kdtli, RabiMethod method) {
  validate(cfg);
  kdtli.source = std::make_shared<KernelSource>(ground_kernel(cfg, method));
  kdtli.channel = Channel::conditional(0);
  return kdtli_signal(kdtli);
}

}  // namespace mwg
