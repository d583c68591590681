#pragma once

#include <vector>

namespace mwg {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Composite 30-point Gauss-Legendre rule on [a, b] with `panels` equal panels.
QuadratureRule gauss_panels(double a, double b, int panels);

}  // namespace mwg
