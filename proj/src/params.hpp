#pragma once

namespace mwg {

// Physical inputs. SI units throughout; alpha_si is the polarizability in C m^2/V.
struct BeamSetup {
  double power = 0;          // W
  double waist_y = 0;        // m
  double waist_z = 0;        // m
  double wavelength = 0;     // m
  double alpha_si = 0;       // C m^2 / V
  double sigma_abs = 0;      // m^2
  double velocity = 0;       // m/s
  double mass = 0;           // kg
};

struct GratingParameters {
  double phi0 = 0;
  double n0 = 0;
  double eta_p = 1;
  double eta_a = 1;
  double period = 1;  // m; the numerical core works in units of the period
};

struct InterferometerScales {
  double talbot_length;   // m
  double de_broglie;      // m
  double separation;      // m
  double talbot_parameter;
  double interaction_time;  // s
};

void validate(const BeamSetup& s);
void validate(const GratingParameters& g);

double derive_phi0(const BeamSetup& s);
double derive_n0(const BeamSetup& s);
InterferometerScales derive_scales(const BeamSetup& s, double separation);
GratingParameters derive_grating(const BeamSetup& s);

// alpha/(4 pi eps0) given in cubic angstrom, as tabulated in cgs-flavoured literature.
double alpha_si_from_angstrom3(double alpha_a3);

}  // namespace mwg
