#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mwc {

// Points in configuration space, dimension <= 4, stack allocated.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

// Gauss-Legendre rule on [0,1]. Exact for polynomials of degree <= 2*order-1.
class GaussLegendre {
public:
  explicit GaussLegendre(int order);

  int order() const { return static_cast<int>(node_.size()); }
  const std::vector<double> &nodes() const { return node_; }
  const std::vector<double> &weights() const { return weight_; }

  // integral of f over [0,1]
  template <class F> double integrate(F &&f) const {
    double acc = 0.0;
    for (std::size_t q = 0; q < node_.size(); ++q)
      acc += weight_[q] * f(node_[q]);
    return acc;
  }

private:
  std::vector<double> node_, weight_;
};

// Cached rule lookup; rules are immutable once built.
const GaussLegendre &gauss_legendre(int order);

// Finite-difference weights for the m-th derivative at point x0 given
// arbitrary stencil nodes (Fornberg's recurrence).
std::vector<double> fd_weights(double x0, const std::vector<double> &nodes,
                               int deriv_order);

} // namespace mwc
