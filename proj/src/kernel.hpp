#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace mwg {

using cplx = std::complex<double>;

// Samples of K_l(x_i - xi/2, x_i + xi/2), l = 0..max_ell, on x_i = i/N.
struct KernelLine {
  double xi = 0;
  std::vector<std::vector<cplx>> per_ell;
};

// A multiplicative grating kernel K_l(x, x') given by a pair evaluator. The evaluator
// fills out[l] for l = 0..max_ell at one pair of positions (units of the period).
//
// Kernels must satisfy K(x + 1, x' - 1) = K(x, x'), so lines are cached by xi mod 2.
class TwoPointKernel {
 public:
  using PairFn = std::function<void(double x, double xp, std::span<cplx> out)>;

  TwoPointKernel(int max_ell, int grid, PairFn fn, std::string model, int jobs = 0);

  int max_ell() const { return max_ell_; }
  int grid() const { return grid_; }
  const std::string& model() const { return model_; }

  void evaluate(double x, double xp, std::span<cplx> out) const { fn_(x, xp, out); }

  // Lazily computed and memoized line for Talbot argument xi.
  std::shared_ptr<const KernelLine> line(double xi) const;

  // Full grid for channel ell, row-major over (x_i, x'_k), for dumps and symmetry checks.
  std::vector<cplx> sample_grid(int ell) const;

  std::map<std::string, std::string> metadata;

 private:
  int max_ell_;
  int grid_;
  PairFn fn_;
  std::string model_;
  int jobs_;
  mutable std::mutex mutex_;
  mutable std::map<long long, std::shared_ptr<const KernelLine>> cache_;
};

}  // namespace mwg
