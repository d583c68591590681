#pragma once

#include <complex>
#include <map>

#include "params.hpp"

namespace mwg {

using cplx = std::complex<double>;

struct MeasurementProfile {
  GratingParameters grating;
  int ell = 0;
};

// Momentum offset in units of hbar k_L -> amplitude.
struct DiffractionAmplitudes {
  std::map<int, cplx> amplitude;
  int parity = 0;  // every offset is congruent to ell mod 2
  double total_probability() const;
};

// Positions are in units of the grating period.
cplx m_ell(double x, const MeasurementProfile& profile);
double absorption_probability(double x, int ell, const GratingParameters& g);

DiffractionAmplitudes plane_wave_diffraction(const MeasurementProfile& profile, int cutoff);

// sqrt(n0^ell / ell!) without overflow for large ell.
double poisson_amplitude(double n0, int ell);

// Smallest L with sum_{l > L} Poisson(mean, l) < tail.
int poisson_cutoff(double mean, double tail = 1e-10);

// Truncation used for every ell-sum: tail bound at the antinode with the largest rate.
int ladder_cutoff(const GratingParameters& g);

}  // namespace mwg
