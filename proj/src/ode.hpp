#pragma once

#include <cmath>
#include <complex>
#include <exception>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "error.hpp"

namespace mwg {

using OdeState = std::vector<std::complex<double>>;

struct OdeTolerance {
  double rel = 1e-9;
  double abs = 1e-12;
  std::size_t max_steps = 2'000'000;
};

// Adaptive Dormand-Prince integration of y' = rhs(y, dy, t) from t0 to t1.
// observe(y, t) runs after every accepted step. `where` tags error messages.
template <class Rhs, class Observer>
void integrate(Rhs&& rhs, OdeState& y, double t0, double t1, const OdeTolerance& tol,
               Observer&& observe, const std::string& where) {
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<OdeState>>(tol.abs, tol.rel);
  std::size_t steps = 0;
  auto obs = [&](const OdeState& state, double t) {
    if (++steps > tol.max_steps) throw IntegratorError("step limit exceeded");
    for (const auto& v : state)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw IntegratorError("non-finite state at t = " + std::to_string(t));
    observe(state, t);
  };
  try {
    odeint::integrate_adaptive(stepper, rhs, y, t0, t1, (t1 - t0) * 1e-3, obs);
  } catch (const IntegratorError& e) {
    throw IntegratorError(where + ": " + e.what());
  } catch (const std::exception& e) {
    throw IntegratorError(where + ": integrator failed: " + e.what());
  }
}

template <class Rhs>
void integrate(Rhs&& rhs, OdeState& y, double t0, double t1, const OdeTolerance& tol,
               const std::string& where) {
  integrate(std::forward<Rhs>(rhs), y, t0, t1, tol, [](const OdeState&, double) {}, where);
}

}  // namespace mwg
