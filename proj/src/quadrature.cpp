#include "mwc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mwc {

GaussLegendre::GaussLegendre(int order) {
  if (order < 1 || order > 128)
    throw std::invalid_argument("GaussLegendre: order out of range");
  node_.resize(order);
  weight_.resize(order);
  // Newton iteration on P_n, nodes on [-1,1], then map to [0,1].
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      const double dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15)
        break;
    }
    // recompute derivative at the converged node for the weight
    p0 = 1.0;
    p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
    }
    const double dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    node_[i] = 0.5 * (1.0 - x); // mirror so nodes ascend on [0,1]
    node_[n - 1 - i] = 0.5 * (1.0 + x);
    weight_[i] = 0.5 * w;
    weight_[n - 1 - i] = 0.5 * w;
  }
}

const GaussLegendre &gauss_legendre(int order) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, GaussLegendre(order)).first;
  return it->second;
}

std::vector<double> fd_weights(double x0, const std::vector<double> &nodes,
                               int m) {
  // B. Fornberg, Math. Comp. 51 (1988): weights for derivatives 0..m at x0.
  const int nn = static_cast<int>(nodes.size());
  if (nn < m + 1)
    throw std::invalid_argument("fd_weights: not enough stencil nodes");
  std::vector<std::vector<double>> c(nn, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < nn; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(nn);
  for (int i = 0; i < nn; ++i)
    w[i] = c[i][m];
  return w;
}

} // namespace mwc
