#include "talbot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "constants.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "specfun.hpp"

namespace mwg {

namespace {

using constants::pi;

// Coefficients of exp(a cos t + i b sin t) = sum_j c_j e^{i j t} for |j| <= jmax:
// c_j = sum_k I_k(a) J_{j-k}(b).
std::vector<cplx> exp_cos_sin_row(int jmax, double a, double b) {
  int kmax = static_cast<int>(std::ceil(std::abs(a) + 25.0 + 4.0 * std::sqrt(std::abs(a))));
  auto ivals = specfun::bessel_i_range(kmax, cplx(a, 0));
  auto jvals = specfun::bessel_j_range(jmax + kmax, b);
  auto jm = [&](int m) {
    int am = std::abs(m);
    return (m < 0 && (am % 2)) ? -jvals[am] : jvals[am];
  };
  std::vector<cplx> out(2 * jmax + 1);
  for (int j = -jmax; j <= jmax; ++j) {
    double s = 0;
    for (int k = -kmax; k <= kmax; ++k) s += ivals[std::abs(k)].real() * jm(j - k);
    out[j + jmax] = s;
  }
  return out;
}

CoefficientRow row_ell0(int jmax, double xi, const GratingParameters& g) {
  Zeta z = zeta(xi, g);
  CoefficientRow r{jmax, exp_cos_sin_row(jmax, -z.abs, z.coh)};
  double pref = std::exp(-0.5 * g.n0);
  for (auto& v : r.values) v *= pref;
  return r;
}

void check_grating(const GratingParameters& g) { validate(g); }

}  // namespace

const char* to_string(Variant v) { return v == Variant::quantum ? "quantum" : "classical"; }

std::string Channel::label() const { return summed ? "sum" : std::to_string(ell); }

Zeta zeta(double xi, const GratingParameters& g) {
  double s = std::sin(0.5 * pi * xi);
  return {0.5 * g.n0 * std::cos(pi * xi), g.phi0 * std::sin(pi * xi), g.n0 * s * s};
}

CoefficientRow conditional_row(int jmax, double xi, int ell, const GratingParameters& g) {
  check_grating(g);
  if (ell < 0) throw InvalidInput("conditional Talbot coefficient: ell must be >= 0");
  if (jmax < 0) throw InvalidInput("conditional Talbot coefficient: jmax must be >= 0");
  if (ell == 0) return row_ell0(jmax, xi, g);

  CoefficientRow base = row_ell0(jmax + ell, xi, g);
  CoefficientRow out{jmax, std::vector<cplx>(2 * jmax + 1)};
  if (g.n0 == 0) return out;
  double za = zeta(xi, g).abs;
  // weight(n, r) = (n0/4)^n za^(ell-n) / (r! (n-r)! (ell-n)!)
  for (int n = 0; n <= ell; ++n) {
    double outer = std::pow(0.25 * g.n0, n) * std::pow(za, ell - n) / std::tgamma(ell - n + 1.0);
    for (int r = 0; r <= n; ++r) {
      double w = outer / (std::tgamma(r + 1.0) * std::tgamma(n - r + 1.0));
      if (w == 0) continue;
      for (int j = -jmax; j <= jmax; ++j) out.values[j + jmax] += w * base(j - n + 2 * r);
    }
  }
  return out;
}

CoefficientRow unconditional_row(int jmax, double xi, const GratingParameters& g, Variant v) {
  check_grating(g);
  if (jmax < 0) throw InvalidInput("unconditional Talbot coefficient: jmax must be >= 0");
  Zeta z = zeta(xi, g);
  CoefficientRow r{jmax, exp_cos_sin_row(jmax, z.abs_prime, z.coh)};
  double pref = std::exp(-z.abs_prime);
  for (auto& val : r.values) val *= pref;
  if (v == Variant::classical) std::reverse(r.values.begin(), r.values.end());
  return r;
}

cplx b_conditional(int j, double xi, int ell, const GratingParameters& g) {
  return conditional_row(std::abs(j), xi, ell, g)(j);
}

cplx b_unconditional(int j, double xi, const GratingParameters& g, Variant v) {
  return unconditional_row(std::abs(j), xi, g, v)(j);
}

cplx b_closed_form(int j, double xi, const GratingParameters& g, Channel ch, Variant v) {
  check_grating(g);
  if (!ch.summed && ch.ell != 0) throw InvalidInput("closed form exists for ell = 0 and the sum");
  if (!ch.summed && v == Variant::classical)
    throw InvalidInput("the classical variant is defined for the unconditional channel");
  if (v == Variant::classical) j = -j;
  Zeta z = zeta(xi, g);
  // Kernel exponent a cos t + i b sin t = A e^{it} + B e^{-it}.
  double a = ch.summed ? z.abs_prime : -z.abs;
  double pref = ch.summed ? std::exp(-z.abs_prime) : std::exp(-0.5 * g.n0);
  double A = 0.5 * (z.coh + a), B = 0.5 * (a - z.coh);
  double u2 = -4.0 * A * B;  // zeta_coh^2 - a^2
  double scale = std::abs(A) + std::abs(B);
  if (scale == 0) return j == 0 ? pref : 0.0;
  if (std::abs(u2) <= 1e-24 * scale * scale) {
    // Degenerate point: only one of A, B survives and the series has a single term.
    int aj = std::abs(j);
    double base = j >= 0 ? A : B;
    return pref * std::pow(base, aj) / std::tgamma(aj + 1.0);
  }
  if (u2 > 0) {
    double u = std::sqrt(u2);
    return pref * std::pow(2.0 * A / u, j) * specfun::bessel_j(j, u);
  }
  double w = std::sqrt(-u2);
  return pref * std::pow(2.0 * A / w, j) * specfun::bessel_i(j, cplx(w, 0)).real();
}

cplx b_numeric(int j, double xi, const MeasurementProfile& p, int grid) {
  if (grid < min_oracle_grid)
    throw ResolutionError("numeric Talbot oracle needs at least 512 points per period");
  if (std::abs(j) + oracle_margin > grid / 2)
    throw ResolutionError("numeric Talbot oracle: order " + std::to_string(j) +
                          " too close to the grid Nyquist order");
  cplx sum = 0;
  for (int i = 0; i < grid; ++i) {
    double x = static_cast<double>(i) / grid;
    cplx k = m_ell(x - xi / 2, p) * std::conj(m_ell(x + xi / 2, p));
    sum += std::polar(1.0, -2.0 * pi * j * x) * k;
  }
  return sum / static_cast<double>(grid);
}

CoefficientRow numeric_row(int jmax, const std::vector<cplx>& line) {
  int n = static_cast<int>(line.size());
  if (n < min_oracle_grid)
    throw ResolutionError("numeric Talbot oracle needs at least 512 points per period");
  if (jmax + oracle_margin > n / 2)
    throw ResolutionError("numeric Talbot oracle: order " + std::to_string(jmax) +
                          " too close to the grid Nyquist order");
  std::vector<cplx> twiddle(n);
  for (int i = 0; i < n; ++i) twiddle[i] = std::polar(1.0, -2.0 * pi * i / n);
  CoefficientRow out{jmax, std::vector<cplx>(2 * jmax + 1)};
  for (int j = -jmax; j <= jmax; ++j) {
    int step = ((j % n) + n) % n;
    cplx s = 0;
    int idx = 0;
    for (int i = 0; i < n; ++i) {
      s += twiddle[idx] * line[i];
      idx += step;
      if (idx >= n) idx -= n;
    }
    out.values[j + jmax] = s / static_cast<double>(n);
  }
  return out;
}

cplx CoefficientSource::coefficient(int j, double xi, Channel ch) const {
  return row(xi, ch, std::abs(j))(j);
}

ClosedFormSource::ClosedFormSource(GratingParameters g, Variant v) : g_(g), v_(v) {
  check_grating(g_);
}

CoefficientRow ClosedFormSource::row(double xi, Channel ch, int jmax) const {
  if (ch.summed) return unconditional_row(jmax, xi, g_, v_);
  if (v_ == Variant::classical)
    throw InvalidInput("the classical variant is defined for the unconditional channel");
  return conditional_row(jmax, xi, ch.ell, g_);
}

int ClosedFormSource::max_ell() const { return ladder_cutoff(g_); }

std::string ClosedFormSource::name() const {
  return std::string("closed-form/") + to_string(v_);
}

KernelSource::KernelSource(std::shared_ptr<const TwoPointKernel> kernel)
    : kernel_(std::move(kernel)) {
  if (!kernel_) throw InvalidInput("kernel source: null kernel");
}

CoefficientRow KernelSource::row(double xi, Channel ch, int jmax) const {
  auto line = kernel_->line(xi);
  if (!ch.summed) {
    if (ch.ell < 0 || ch.ell > kernel_->max_ell())
      throw InvalidInput("kernel source: channel ell=" + std::to_string(ch.ell) +
                         " not available");
    return numeric_row(jmax, line->per_ell[ch.ell]);
  }
  std::vector<cplx> total(kernel_->grid(), cplx(0));
  for (const auto& l : line->per_ell)
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += l[i];
  return numeric_row(jmax, total);
}

int KernelSource::max_ell() const { return kernel_->max_ell(); }

std::string KernelSource::name() const { return "kernel/" + kernel_->model(); }

std::vector<double> default_xi_grid(int points) {
  if (points < 1) throw InvalidInput("xi grid needs at least one point");
  std::vector<double> xi(points);
  for (int i = 0; i < points; ++i) xi[i] = 2.0 * i / points;
  return xi;
}

TalbotCoefficientSet tabulate(const CoefficientSource& src, const std::vector<double>& xi, int jmax,
                              const std::vector<Channel>& channels, int jobs, double tail) {
  TalbotCoefficientSet out;
  out.source = src.name();
  out.channels = channels;
  out.xi = xi;
  out.jmax = jmax;
  out.values.assign(channels.size(), std::vector<CoefficientRow>(xi.size()));
  std::size_t n = channels.size() * xi.size();
  parallel_for(n, jobs, [&](std::size_t idx) {
    std::size_t c = idx / xi.size(), x = idx % xi.size();
    CoefficientRow r = src.row(xi[x], channels[c], jmax);
    if (std::abs(r(jmax)) >= tail || std::abs(r(-jmax)) >= tail)
      throw ResolutionError("Talbot table: |B_j| at the cutoff jmax=" + std::to_string(jmax) +
                            " exceeds the tail bound at xi=" + std::to_string(xi[x]));
    out.values[c][x] = std::move(r);
  });
  return out;
}

}  // namespace mwg
