#pragma once

#include <complex>
#include <vector>

namespace mwg::specfun {

using cplx = std::complex<double>;

struct SeriesTolerance {
  double rel = 1e-12;
  int max_terms = 500;
};

// Integer-order Bessel J for real argument; |n| <= 10^4.
double bessel_j(int n, double x);
// J_0(x) ... J_nmax(x) from a single backward recurrence.
std::vector<double> bessel_j_range(int nmax, double x);

// Integer-order modified Bessel I for complex argument; |z| <= 100.
cplx bessel_i(int n, cplx z);
std::vector<cplx> bessel_i_range(int nmax, cplx z);

// 1F1(ell; ell+1; z) for ell >= 1, |z| <= 100.
cplx hyp1f1_ladder(int ell, cplx z, SeriesTolerance tol = {});

// sin(u)/u with sinc(0) = 1.
double sinc(double u);

}  // namespace mwg::specfun
