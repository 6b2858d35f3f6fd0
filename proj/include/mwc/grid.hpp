#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mwc/quadrature.hpp"

namespace mwc {

using Complex = std::complex<double>;

// Discretized configuration box [-L, L)^n with N uniformly spaced nodes per
// axis and the discrete-Fourier dual lattice xi_k = (k - N/2) * pi/L.
// N must be even; the quantizer works internally on the doubled midpoint
// lattice, the public grid never exposes half-nodes.
class PhaseGrid {
public:
  PhaseGrid(int dim, int points_per_axis, double half_width);

  int dim() const { return dim_; }
  int points_per_axis() const { return n_pts_; }
  double half_width() const { return half_width_; }

  double x_step() const { return 2.0 * half_width_ / n_pts_; }
  double xi_step() const { return M_PI / half_width_; }
  double nyquist_radius() const { return 0.5 * n_pts_ * xi_step(); }

  double x(int i) const { return -half_width_ + i * x_step(); }
  double xi(int k) const { return (k - n_pts_ / 2) * xi_step(); }

  long num_x() const { return num_x_; }  // N^n
  long num_xi() const { return num_x_; } // same lattice size

  // row-major multi-index helpers (axis 0 slowest)
  long flatten(const std::vector<int> &idx) const;
  std::vector<int> unflatten(long flat) const;

  Point x_point(const std::vector<int> &idx) const;
  Point x_point(long flat) const;
  Point xi_point(const std::vector<int> &idx) const;
  Point xi_point(long flat) const;

  // middle half of the box, |x_a| < L/2 on every axis
  bool is_interior_x(long flat) const;
  std::vector<long> interior_x_indices() const;
  // |xi| >= radius
  std::vector<long> high_xi_indices(double radius) const;

  bool operator==(const PhaseGrid &o) const {
    return dim_ == o.dim_ && n_pts_ == o.n_pts_ && half_width_ == o.half_width_;
  }

private:
  int dim_;
  int n_pts_;
  double half_width_;
  long num_x_;
};

// Complex state vector over the x-lattice.
struct GridFunction {
  PhaseGrid grid;
  Eigen::VectorXcd values;

  GridFunction(const PhaseGrid &g) : grid(g), values(g.num_x()) {
    values.setZero();
  }
  GridFunction(const PhaseGrid &g, Eigen::VectorXcd v)
      : grid(g), values(std::move(v)) {}

  double norm() const { return values.norm(); }
};

// Sample a state closure u(x) on the lattice.
GridFunction sample_state(const PhaseGrid &grid,
                          const std::function<Complex(const Point &)> &u);

} // namespace mwc
