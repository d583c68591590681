#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "kernel.hpp"
#include "nearfield.hpp"
#include "ode.hpp"
#include "params.hpp"

namespace mwg {

// Three-level model in units of the interaction time t_L: ground |0>, excited |1>
// decaying with lifetime tau into the dark state |2>. Constant envelope.
struct RabiConfig {
  double pulse_area = 0;  // Omega_0 t_L
  double detuning = 0;    // Delta t_L
  double lifetime = 1;    // tau / t_L
  int grid = 512;
  int jobs = 0;
  OdeTolerance tolerance;
};

enum class RabiMethod { ode, exact };

using DensityMatrix = std::array<cplx, 9>;  // rho_{n n'}(x, x'), row-major

void validate(const RabiConfig& cfg);

// Called after each accepted step with the dimensionless time.
using RabiObserver = std::function<void(double t, const DensityMatrix& rho)>;

DensityMatrix rabi_pair_ode(const RabiConfig& cfg, double x, double xp, const RabiObserver& observe = {});
// Matrix exponential of the time-independent generator.
DensityMatrix rabi_pair_exact(const RabiConfig& cfg, double x, double xp);

struct RabiKernel {
  std::shared_ptr<const TwoPointKernel> ground;  // K_00(x, x')
  std::vector<double> x;
  std::vector<double> p0, p1, p2;  // diagonal populations on x
};

RabiKernel rabi_solve(const RabiConfig& cfg, RabiMethod method = RabiMethod::exact);

// Effective ladder parameters of the tau << t_L reduction (no regime check).
GratingParameters short_lifetime_parameters(const RabiConfig& cfg);
// Closed-form tau << t_L kernel; requires tau <= t_L / 50.
RabiKernel rabi_short_lifetime_limit(const RabiConfig& cfg);

std::vector<double> rabi_transmission_profile(const RabiConfig& cfg, RabiMethod method = RabiMethod::exact);

// Ground-state-only KDTLI signal; the source and channel of `kdtli` are replaced.
FringeSignal rabi_kdtli(const RabiConfig& cfg, KdtliConfig kdtli, RabiMethod method = RabiMethod::exact);

}  // namespace mwg
