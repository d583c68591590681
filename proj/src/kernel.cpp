#include "kernel.hpp"

#include <cmath>

#include "error.hpp"
#include "parallel.hpp"

namespace mwg {

TwoPointKernel::TwoPointKernel(int max_ell, int grid, PairFn fn, std::string model, int jobs)
    : max_ell_(max_ell), grid_(grid), fn_(std::move(fn)), model_(std::move(model)), jobs_(jobs) {
  if (max_ell < 0) throw InvalidInput("kernel: max_ell must be >= 0");
  if (grid < 8) throw InvalidInput("kernel: grid too small");
  if (!fn_) throw InvalidInput("kernel: missing pair evaluator");
}

std::shared_ptr<const KernelLine> TwoPointKernel::line(double xi) const {
  if (!std::isfinite(xi)) throw InvalidInput("kernel: xi is not finite");
  double reduced = xi - 2.0 * std::floor(xi / 2.0);
  long long key = std::llround(reduced * 1e12);
  if (key >= 2'000'000'000'000LL) {
    key = 0;
    reduced = 0;
  }
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto out = std::make_shared<KernelLine>();
  out->xi = reduced;
  out->per_ell.assign(max_ell_ + 1, std::vector<cplx>(grid_));
  parallel_for(grid_, jobs_, [&](std::size_t i) {
    std::vector<cplx> buf(max_ell_ + 1);
    double x = static_cast<double>(i) / grid_;
    fn_(x - reduced / 2, x + reduced / 2, buf);
    for (int l = 0; l <= max_ell_; ++l) out->per_ell[l][i] = buf[l];
  });
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(key, std::move(out));
  return it->second;
}

std::vector<cplx> TwoPointKernel::sample_grid(int ell) const {
  if (ell < 0 || ell > max_ell_) throw InvalidInput("kernel: channel out of range");
  std::vector<cplx> out(static_cast<std::size_t>(grid_) * grid_);
  parallel_for(grid_, jobs_, [&](std::size_t i) {
    std::vector<cplx> buf(max_ell_ + 1);
    for (int k = 0; k < grid_; ++k) {
      fn_(static_cast<double>(i) / grid_, static_cast<double>(k) / grid_, buf);
      out[i * grid_ + k] = buf[ell];
    }
  });
  return out;
}

}  // namespace mwg
