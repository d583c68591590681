#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "grating.hpp"
#include "kernel.hpp"
#include "params.hpp"

namespace mwg {

enum class Variant { quantum, classical };

const char* to_string(Variant v);

// Which interferogram: conditioned on ell absorbed photons, or summed over all ell.
struct Channel {
  bool summed = true;
  int ell = 0;

  static Channel conditional(int ell) { return {false, ell}; }
  static Channel unconditional() { return {true, 0}; }
  std::string label() const;  // "sum" or the decimal ell
};

struct Zeta {
  double abs;
  double coh;
  double abs_prime;
};

Zeta zeta(double xi, const GratingParameters& g);

// B_j for j in [-jmax, jmax]; orders outside the row are zero.
struct CoefficientRow {
  int jmax = 0;
  std::vector<cplx> values;

  cplx operator()(int j) const {
    return (j < -jmax || j > jmax) ? cplx(0) : values[static_cast<std::size_t>(j + jmax)];
  }
};

// Primary evaluation: products of I_k and J_m, free of branch choices.
CoefficientRow conditional_row(int jmax, double xi, int ell, const GratingParameters& g);
CoefficientRow unconditional_row(int jmax, double xi, const GratingParameters& g, Variant v);

cplx b_conditional(int j, double xi, int ell, const GratingParameters& g);
cplx b_unconditional(int j, double xi, const GratingParameters& g, Variant v);

// The single-Bessel closed form (ell = 0 or summed), used as a cross-check.
cplx b_closed_form(int j, double xi, const GratingParameters& g, Channel ch, Variant v);

// Direct Fourier definition on an N-point periodic trapezoid grid.
inline constexpr int min_oracle_grid = 512;
inline constexpr int oracle_margin = 8;

cplx b_numeric(int j, double xi, const MeasurementProfile& profile, int grid = min_oracle_grid);
CoefficientRow numeric_row(int jmax, const std::vector<cplx>& line_samples);

class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;
  virtual CoefficientRow row(double xi, Channel ch, int jmax) const = 0;
  virtual cplx coefficient(int j, double xi, Channel ch) const;
  // Largest conditional ell this source resolves.
  virtual int max_ell() const = 0;
  virtual std::string name() const = 0;
};

class ClosedFormSource : public CoefficientSource {
 public:
  ClosedFormSource(GratingParameters g, Variant v);
  CoefficientRow row(double xi, Channel ch, int jmax) const override;
  int max_ell() const override;
  std::string name() const override;
  const GratingParameters& grating() const { return g_; }
  Variant variant() const { return v_; }

 private:
  GratingParameters g_;
  Variant v_;
};

// Coefficients of a sampled dynamical kernel via the numeric Fourier reduction.
class KernelSource : public CoefficientSource {
 public:
  explicit KernelSource(std::shared_ptr<const TwoPointKernel> kernel);
  CoefficientRow row(double xi, Channel ch, int jmax) const override;
  int max_ell() const override;
  std::string name() const override;
  const TwoPointKernel& kernel() const { return *kernel_; }

 private:
  std::shared_ptr<const TwoPointKernel> kernel_;
};

struct TalbotCoefficientSet {
  std::string source;
  std::vector<Channel> channels;
  std::vector<double> xi;
  int jmax = 0;
  // values[c][x] is the row for channel c at xi[x]
  std::vector<std::vector<CoefficientRow>> values;
};

std::vector<double> default_xi_grid(int points = 512);

// Dense table; throws ResolutionError if |B_{+-jmax}| >= tail anywhere.
TalbotCoefficientSet tabulate(const CoefficientSource& src, const std::vector<double>& xi, int jmax,
                              const std::vector<Channel>& channels, int jobs = 0,
                              double tail = 1e-10);

}  // namespace mwg
