#pragma once

#include <memory>
#include <string>
#include <vector>

#include "talbot.hpp"

namespace mwg {

struct KdtliConfig {
  double open_fraction = 0.42;  // f, shared by G1 and G3
  double talbot = 1.0;          // L / L_T
  std::shared_ptr<const CoefficientSource> source;
  Channel channel = Channel::unconditional();
  std::vector<double> shifts;  // x_s in units of d; empty -> 256 points on [0, 1)
  int jmax_cap = 64;
  double velocity_spread = 0;  // rms dv/v of a gaussian velocity profile; 0 = monochromatic
};

struct FringeSignal {
  std::vector<double> shifts;
  std::vector<double> values;
  std::vector<cplx> components;  // S_j for j = 0..J
  double mean = 0;
  std::string source;
  std::string channel;
  double talbot = 0;
  double open_fraction = 0;
};

void validate(const KdtliConfig& cfg);

// Fourier components S_j of the fringe signal, j = 0..J with an adaptive cutoff J.
std::vector<cplx> kdtli_components(const KdtliConfig& cfg);
FringeSignal kdtli_signal(const KdtliConfig& cfg);

// Signed 2 Re S_1 / S_0, i.e. 2 sinc^2(pi f) B_2(L/L_T) / B_0(0).
double sinusoidal_visibility(const KdtliConfig& cfg);

// (S_max - S_min) / (S_max + S_min) over the sampled shifts.
double visibility_minmax(const FringeSignal& s);

// f^2 B_0(0; channel), the x_s-averaged signal.
double mean_transmission(const CoefficientSource& src, Channel ch, double open_fraction);

// Closed-form mean transmission for ell absorbed photons.
double transmission_closed_form(int ell, double n0, double open_fraction);

std::vector<double> uniform_shifts(int points);

}  // namespace mwg
