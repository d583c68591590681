#include "specfun.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace mwg::specfun {

namespace {

constexpr int max_order = 10000;
constexpr double max_real_arg = 1e4;
constexpr double max_complex_arg = 100.0;
constexpr double big = 1e250;
constexpr double rescale = 1e-250;

// Starting index for Miller's backward recurrence.
int miller_start(int nmax, double absz) {
  double m = std::max(static_cast<double>(nmax), absz);
  int n = static_cast<int>(std::ceil(m + 30.0 + 2.0 * std::sqrt(40.0 * m)));
  return n + (n % 2);
}

// Runs y_{k-1} = (2k/z) y_k + s * y_{k+1} downward from a tiny seed and returns the
// unnormalized y_0..y_nmax together with the weighted sum y_0 + 2 sum_k y_{w k}.
// s = -1, w = 2 gives the J normalization; s = +1, w = 1 the I normalization.
template <class T>
std::vector<T> miller(int nmax, T z, double sign, int stride, T& norm) {
  int n_start = miller_start(nmax, std::abs(z));
  std::vector<T> out(nmax + 1, T(0));
  T next(0), cur(1e-300), sum(0);
  for (int k = n_start;; --k) {
    if (k <= nmax) out[k] = cur;
    if (k % stride == 0) sum += (k == 0 ? 1.0 : 2.0) * cur;
    if (k == 0) break;
    T prev = (2.0 * k) / z * cur + sign * next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > big) {
      cur *= rescale;
      next *= rescale;
      sum *= rescale;
      for (int i = k; i <= nmax; ++i) out[i] *= rescale;
    }
  }
  norm = sum;
  return out;
}

}  // namespace

std::vector<double> bessel_j_range(int nmax, double x) {
  if (nmax < 0 || nmax > max_order) throw DomainError("bessel_j: order out of range");
  if (!std::isfinite(x) || std::abs(x) > max_real_arg)
    throw DomainError("bessel_j: argument out of range");
  std::vector<double> out(nmax + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  double norm = 0;
  out = miller<double>(nmax, std::abs(x), -1.0, 2, norm);
  for (int k = 0; k <= nmax; ++k) {
    out[k] /= norm;
    if (x < 0 && (k % 2)) out[k] = -out[k];
  }
  return out;
}

double bessel_j(int n, double x) {
  int an = std::abs(n);
  double v = bessel_j_range(an, x)[an];
  return (n < 0 && (an % 2)) ? -v : v;
}

std::vector<cplx> bessel_i_range(int nmax, cplx z) {
  if (nmax < 0 || nmax > max_order) throw DomainError("bessel_i: order out of range");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > max_complex_arg)
    throw DomainError("bessel_i: argument out of range");
  std::vector<cplx> out(nmax + 1, cplx(0));
  if (z == cplx(0)) {
    out[0] = 1.0;
    return out;
  }
  bool reflect = z.real() < 0;
  cplx w = reflect ? -z : z;
  cplx norm;
  out = miller<cplx>(nmax, w, 1.0, 1, norm);
  cplx scale = std::exp(w) / norm;
  for (int k = 0; k <= nmax; ++k) {
    out[k] *= scale;
    if (reflect && (k % 2)) out[k] = -out[k];
  }
  return out;
}

cplx bessel_i(int n, cplx z) {
  int an = std::abs(n);
  return bessel_i_range(an, z)[an];
}

cplx hyp1f1_ladder(int ell, cplx z, SeriesTolerance tol) {
  if (ell < 1) throw InvalidInput("hyp1f1_ladder: ell must be >= 1");
  if (!(tol.rel > 0) || tol.max_terms < 1) throw InvalidInput("hyp1f1_ladder: bad tolerance");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > max_complex_arg)
    throw DomainError("hyp1f1_ladder: argument out of range");
  if (z == cplx(0)) return 1.0;

  if (std::abs(z) <= ell + 1.0) {
    // Kummer: e^z 1F1(1; ell+1; -z), terms shrink monotonically here.
    cplx term = 1.0, sum = 1.0;
    for (int k = 1; k <= tol.max_terms; ++k) {
      term *= -z / static_cast<double>(ell + k);
      sum += term;
      if (std::abs(term) <= tol.rel * std::abs(sum)) return std::exp(z) * sum;
    }
    throw DomainError("hyp1f1_ladder: series did not converge in " +
                      std::to_string(tol.max_terms) + " terms");
  }

  // F_m = int_0^1 e^{z a} a^{m-1} da; the upward recurrence damps errors when |z| > ell.
  cplx ez = std::exp(z);
  cplx f = (ez - 1.0) / z;
  for (int m = 2; m <= ell; ++m) f = (ez - static_cast<double>(m - 1) * f) / z;
  return static_cast<double>(ell) * f;
}

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

}  // namespace mwg::specfun
