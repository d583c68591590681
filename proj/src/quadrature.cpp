#include "quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "error.hpp"

namespace mwg {

QuadratureRule gauss_panels(double a, double b, int panels) {
  if (panels < 1) throw InvalidInput("quadrature needs at least one panel");
  using rule = boost::math::quadrature::gauss<double, 30>;
  const auto& abscissa = rule::abscissa();  // non-negative half, 15 entries
  const auto& weight = rule::weights();
  QuadratureRule out;
  out.nodes.reserve(30 * panels);
  out.weights.reserve(30 * panels);
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h, half = 0.5 * h;
    for (std::size_t k = 0; k < abscissa.size(); ++k) {
      double u = abscissa[k];
      if (u == 0.0) {
        out.nodes.push_back(mid);
        out.weights.push_back(half * weight[k]);
        continue;
      }
      out.nodes.push_back(mid - half * u);
      out.weights.push_back(half * weight[k]);
      out.nodes.push_back(mid + half * u);
      out.weights.push_back(half * weight[k]);
    }
  }
  return out;
}

}  // namespace mwg
