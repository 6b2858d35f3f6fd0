#include "mwc/grid.hpp"

#include <stdexcept>

namespace mwc {

PhaseGrid::PhaseGrid(int dim, int points_per_axis, double half_width)
    : dim_(dim), n_pts_(points_per_axis), half_width_(half_width) {
  if (dim < 1 || dim > 4)
    throw std::invalid_argument("PhaseGrid: dim must be in [1,4]");
  if (n_pts_ < 4 || n_pts_ % 2 != 0)
    throw std::invalid_argument("PhaseGrid: points_per_axis must be even, >= 4");
  if (!(half_width_ > 0.0))
    throw std::invalid_argument("PhaseGrid: half_width must be positive");
  num_x_ = 1;
  for (int a = 0; a < dim_; ++a)
    num_x_ *= n_pts_;
}

long PhaseGrid::flatten(const std::vector<int> &idx) const {
  long f = 0;
  for (int a = 0; a < dim_; ++a)
    f = f * n_pts_ + idx[a];
  return f;
}

std::vector<int> PhaseGrid::unflatten(long flat) const {
  std::vector<int> idx(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n_pts_);
    flat /= n_pts_;
  }
  return idx;
}

Point PhaseGrid::x_point(const std::vector<int> &idx) const {
  Point p(dim_);
  for (int a = 0; a < dim_; ++a)
    p[a] = x(idx[a]);
  return p;
}

Point PhaseGrid::x_point(long flat) const { return x_point(unflatten(flat)); }

Point PhaseGrid::xi_point(const std::vector<int> &idx) const {
  Point p(dim_);
  for (int a = 0; a < dim_; ++a)
    p[a] = xi(idx[a]);
  return p;
}

Point PhaseGrid::xi_point(long flat) const {
  return xi_point(unflatten(flat));
}

bool PhaseGrid::is_interior_x(long flat) const {
  const double lim = 0.5 * half_width_;
  std::vector<int> idx = unflatten(flat);
  for (int a = 0; a < dim_; ++a) {
    const double xa = x(idx[a]);
    if (xa < -lim - 1e-12 || xa > lim - 1e-12)
      return false;
  }
  return true;
}

std::vector<long> PhaseGrid::interior_x_indices() const {
  std::vector<long> out;
  for (long i = 0; i < num_x_; ++i)
    if (is_interior_x(i))
      out.push_back(i);
  return out;
}

std::vector<long> PhaseGrid::high_xi_indices(double radius) const {
  std::vector<long> out;
  for (long k = 0; k < num_x_; ++k)
    if (xi_point(k).norm() >= radius)
      out.push_back(k);
  return out;
}

GridFunction sample_state(const PhaseGrid &grid,
                          const std::function<Complex(const Point &)> &u) {
  GridFunction g(grid);
  for (long i = 0; i < grid.num_x(); ++i)
    g.values[i] = u(grid.x_point(i));
  return g;
}

} // namespace mwc
