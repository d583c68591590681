#include "params.hpp"

#include <cmath>
#include <string>

#include "constants.hpp"
#include "error.hpp"

namespace mwg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidInput(std::string("beam setup: ") + what);
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidInput(std::string(what) + " is not finite");
  return v;
}

// P / (w_y v_z), the only way power and velocity enter the grating strengths.
double fluence_ratio(const BeamSetup& s) { return s.power / (s.waist_y * s.velocity); }

}  // namespace

void validate(const BeamSetup& s) {
  require(std::isfinite(s.power) && s.power >= 0, "power must be >= 0");
  require(std::isfinite(s.waist_y) && s.waist_y > 0, "waist_y must be > 0");
  require(std::isfinite(s.waist_z) && s.waist_z > 0, "waist_z must be > 0");
  require(std::isfinite(s.wavelength) && s.wavelength > 0, "wavelength must be > 0");
  require(std::isfinite(s.alpha_si) && s.alpha_si > 0, "polarizability must be > 0");
  require(std::isfinite(s.sigma_abs) && s.sigma_abs >= 0, "absorption cross-section must be >= 0");
  require(std::isfinite(s.velocity) && s.velocity > 0, "velocity must be > 0");
  require(std::isfinite(s.mass) && s.mass > 0, "mass must be > 0");
}

void validate(const GratingParameters& g) {
  if (!std::isfinite(g.phi0)) throw InvalidInput("phi0 is not finite");
  if (!std::isfinite(g.n0) || g.n0 < 0) throw InvalidInput("n0 must be finite and >= 0");
  if (!std::isfinite(g.eta_p)) throw InvalidInput("eta_p is not finite");
  if (!std::isfinite(g.eta_a) || g.eta_a < 0) throw InvalidInput("eta_a must be finite and >= 0");
  if (!std::isfinite(g.period) || g.period <= 0) throw InvalidInput("period must be > 0");
}

double derive_phi0(const BeamSetup& s) {
  using namespace constants;
  validate(s);
  double pref = 2.0 * std::sqrt(2.0) / (std::sqrt(pi) * eps0);
  return finite_or_throw(pref * s.alpha_si / (hbar * c) * fluence_ratio(s), "phi0");
}

double derive_n0(const BeamSetup& s) {
  using namespace constants;
  validate(s);
  double omega = 2.0 * pi * c / s.wavelength;
  double pref = 8.0 / std::sqrt(2.0 * pi);
  return finite_or_throw(pref * s.sigma_abs / (hbar * omega) * fluence_ratio(s), "n0");
}

InterferometerScales derive_scales(const BeamSetup& s, double separation) {
  validate(s);
  if (!std::isfinite(separation) || separation <= 0)
    throw InvalidInput("grating separation must be > 0");
  InterferometerScales out{};
  double d = s.wavelength / 2.0;
  out.de_broglie = constants::h / (s.mass * s.velocity);
  out.talbot_length = d * d / out.de_broglie;
  out.separation = separation;
  out.talbot_parameter = separation / out.talbot_length;
  out.interaction_time = std::sqrt(constants::pi / 2.0) * s.waist_z / s.velocity;
  return out;
}

GratingParameters derive_grating(const BeamSetup& s) {
  GratingParameters g;
  g.phi0 = derive_phi0(s);
  g.n0 = derive_n0(s);
  g.period = s.wavelength / 2.0;
  return g;
}

double alpha_si_from_angstrom3(double alpha_a3) {
  return 4.0 * constants::pi * constants::eps0 * 1e-30 * alpha_a3;
}

}  // namespace mwg
