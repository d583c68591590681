#include "grating.hpp"

#include <cmath>
#include <string>

#include "constants.hpp"
#include "error.hpp"
#include "specfun.hpp"

namespace mwg {

double poisson_amplitude(double n0, int ell) {
  if (ell == 0) return 1.0;
  if (n0 <= 0) return 0.0;
  return std::exp(0.5 * (ell * std::log(n0) - std::lgamma(ell + 1.0)));
}

cplx m_ell(double x, const MeasurementProfile& p) {
  if (!std::isfinite(x)) throw InvalidInput("m_ell: position is not finite");
  if (p.ell < 0) throw InvalidInput("m_ell: ell must be >= 0");
  const auto& g = p.grating;
  double c = std::cos(constants::pi * x);
  double c2 = c * c;
  double mag = poisson_amplitude(g.n0, p.ell) * std::pow(c, p.ell) * std::exp(-0.5 * g.n0 * c2);
  return std::polar(1.0, g.phi0 * c2) * mag;
}

double absorption_probability(double x, int ell, const GratingParameters& g) {
  if (ell < 0) throw InvalidInput("absorption_probability: ell must be >= 0");
  double c = std::cos(constants::pi * x);
  double n = g.n0 * c * c;
  if (n == 0) return ell == 0 ? 1.0 : 0.0;
  return std::exp(-n + ell * std::log(n) - std::lgamma(ell + 1.0));
}

double DiffractionAmplitudes::total_probability() const {
  double s = 0;
  for (const auto& [offset, a] : amplitude) s += std::norm(a);
  return s;
}

DiffractionAmplitudes plane_wave_diffraction(const MeasurementProfile& p, int cutoff) {
  if (p.ell < 0) throw InvalidInput("plane_wave_diffraction: ell must be >= 0");
  if (cutoff < 0) throw InvalidInput("plane_wave_diffraction: cutoff must be >= 0");
  const auto& g = p.grating;
  // e^{c cos^2} = e^{c/2} sum_nu I_nu(c/2) e^{2 i nu pi x}
  cplx half(-0.25 * g.n0, 0.5 * g.phi0);
  cplx pref = std::exp(half) * poisson_amplitude(g.n0, p.ell) * std::ldexp(1.0, -p.ell);
  auto bessel = specfun::bessel_i_range(cutoff + 1, half);
  if (std::abs(pref * bessel[cutoff + 1]) >= 1e-10)
    throw ResolutionError("plane_wave_diffraction: cutoff " + std::to_string(cutoff) +
                          " drops amplitudes above 1e-10");

  DiffractionAmplitudes out;
  out.parity = p.ell % 2;
  if (pref == cplx(0)) return out;
  double binom = 1.0;  // C(ell, n)
  for (int n = 0; n <= p.ell; ++n) {
    for (int nu = -cutoff; nu <= cutoff; ++nu) {
      int offset = 2 * nu + p.ell - 2 * n;
      out.amplitude[offset] += pref * binom * bessel[std::abs(nu)];
    }
    binom = binom * (p.ell - n) / (n + 1);
  }
  std::erase_if(out.amplitude, [](const auto& kv) { return kv.second == cplx(0); });
  return out;
}

int poisson_cutoff(double mean, double tail) {
  if (!(mean >= 0) || !std::isfinite(mean)) throw InvalidInput("poisson_cutoff: bad mean");
  if (mean == 0) return 0;
  // Accumulate the head; the tail is 1 - head, tracked directly once it is small.
  double term = std::exp(-mean), head = term;
  int ell = 0;
  while (true) {
    // Tail above ell, bounded by term_{ell+1} / (1 - mean/(ell+2)) once ell+2 > mean.
    double next = term * mean / (ell + 1);
    if (ell + 2 > mean) {
      double bound = next / (1.0 - mean / (ell + 2));
      if (bound < tail) return ell;
    } else if (1.0 - head < tail) {
      return ell;
    }
    ++ell;
    term = next;
    head += term;
    if (ell > 10000) throw DomainError("poisson_cutoff: mean too large");
  }
}

int ladder_cutoff(const GratingParameters& g) {
  return poisson_cutoff(std::max(1.0, g.eta_a) * g.n0);
}

}  // namespace mwg
