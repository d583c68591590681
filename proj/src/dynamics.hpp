#pragma once

#include <memory>
#include <span>
#include <vector>

#include "kernel.hpp"
#include "ode.hpp"
#include "params.hpp"
#include "talbot.hpp"

namespace mwg {

enum class Envelope { gaussian, constant };
enum class LadderMethod { ode, analytic, t1_integral };

const char* to_string(Envelope e);
const char* to_string(LadderMethod m);

// Time runs in units of the mean interaction time t_L. The gaussian envelope is
// exp(-pi s^2) on |s| <= 4.5, the constant one is 1 on [0, 1]; both integrate to 1,
// so n0 and phi0 keep their meaning.
struct LadderConfig {
  GratingParameters grating;
  Envelope envelope = Envelope::constant;
  int max_ell = -1;  // -1: Poisson tail rule
  int grid = 512;
  int jobs = 0;
  OdeTolerance tolerance;
};

void validate(const LadderConfig& cfg);
int resolved_max_ell(const LadderConfig& cfg);

// K_l(x, x') for l = 0..max_ell at one position pair (units of the period).
void ladder_ode_pair(const LadderConfig& cfg, double x, double xp, std::span<cplx> out);
void ladder_analytic_pair(const LadderConfig& cfg, double x, double xp, std::span<cplx> out);
void ladder_t1_pair(const LadderConfig& cfg, double x, double xp, std::span<cplx> out);

std::shared_ptr<const TwoPointKernel> ladder_kernel(const LadderConfig& cfg, LadderMethod method);

// Per-ell and summed coefficient table of a dynamical kernel.
TalbotCoefficientSet kernel_to_talbot(std::shared_ptr<const TwoPointKernel> kernel,
                                      const std::vector<double>& xi, int jmax, int jobs = 0);

}  // namespace mwg
