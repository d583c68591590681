#pragma once

#include <memory>
#include <string>
#include <vector>

#include "talbot.hpp"

namespace mwg {

// Screen coordinates X = x / dx, where dx = d L / L_T is the diffraction-peak spacing.
struct FarFieldConfig {
  double slit_ratio = 10;      // D / d
  double period_ratio = 1e-3;  // d / dx
  std::vector<double> screen;  // X grid
  int q_nodes_per_unit = 240;
  int jmax = 64;
};

struct ScreenDensity {
  std::vector<double> screen;
  std::vector<double> values;
  std::string channel;
  std::string model;
  std::string normalization;
  bool smoothed = false;
  std::string warning;
};

enum class ResolutionKernel { gaussian, boxcar };

void validate(const FarFieldConfig& cfg);

// Fourier-space form: sum_j int dq e^{2 pi i q X} B_j(q) sin[pi (D/d - |q|)(j - 2 q d/dx)]/(j - 2 q d/dx),
// scaled by 1/(pi D/d) so that it integrates over X to the slit-averaged transmission.
ScreenDensity farfield_density(const FarFieldConfig& cfg, const CoefficientSource& src, Channel ch);

// Fresnel-Kirchhoff form |int dq e^{2 pi i q (X - q d/dx)} t(q)|^2 / (D/d) with the slit
// transmitting |q| <= D/(2d). Quantum model only.
ScreenDensity farfield_kirchhoff(const FarFieldConfig& cfg, const GratingParameters& g, Channel ch,
                                 int nodes_across_slit = 4096);

// The d/dx -> 0 limit of farfield_density. Sets `warning` when d/dx > 1e-2.
ScreenDensity fraunhofer_density(const FarFieldConfig& cfg, const CoefficientSource& src, Channel ch);

// Column-normalized convolution with a kernel of width sigma (units of dx); the
// discrete integral is preserved exactly. The grid must be uniform with spacing < sigma/4.
ScreenDensity apply_detector_resolution(const ScreenDensity& d, double sigma,
                                        ResolutionKernel kind = ResolutionKernel::gaussian);

// Phase-space state on a uniform grid: positions X (units of d) and kappa = p d / (2 pi hbar).
struct PhaseSpaceGrid {
  std::vector<double> x;
  std::vector<double> kappa;     // uniform
  std::vector<double> values;    // row-major [x][kappa]
};

// Slit convolution kernel at position X (units of d) for momentum transfer kappa.
double collimation_kernel(double x, double kappa, double slit_ratio);

// Applies the slit convolution row by row. Exact for states band-limited in the
// conjugate variable: along kappa it multiplies the Fourier transform by the box
// |s| <= D/d - 2|X|.
PhaseSpaceGrid collimation_transform(const PhaseSpaceGrid& state, double slit_ratio);

// Screen density obtained by propagating a point source through free flight, the
// slit convolution, the grating (momentum amplitudes) and free flight again.
ScreenDensity farfield_phase_space(const FarFieldConfig& cfg, const GratingParameters& g, Channel ch);

std::vector<double> uniform_screen(double half_width, int points);

}  // namespace mwg
