#include "mwc/symbols.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mwc {

SymbolField::SymbolField(const PhaseGrid &grid, Eigen::VectorXcd values,
                         SymbolClosure closure, std::optional<ClassMeta> meta,
                         std::optional<Envelope> envelope)
    : grid_(grid), values_(std::move(values)), closure_(std::move(closure)),
      meta_(meta), envelope_(envelope) {
  if (values_.size() != grid_.num_x() * grid_.num_xi())
    throw std::invalid_argument("SymbolField: value array has wrong size");
}

SymbolField SymbolField::with_meta(ClassMeta m) const {
  return SymbolField(grid_, values_, closure_, m, envelope_);
}

SymbolField SymbolField::with_envelope(Envelope e) const {
  return SymbolField(grid_, values_, closure_, meta_, e);
}

double SymbolField::interior_norm() const {
  double acc = 0.0;
  const long nxi = grid_.num_xi();
  for (long ix = 0; ix < grid_.num_x(); ++ix) {
    if (!grid_.is_interior_x(ix))
      continue;
    acc += values_.segment(ix * nxi, nxi).squaredNorm();
  }
  return std::sqrt(acc);
}

SymbolField sample(const SymbolClosure &closure, const PhaseGrid &grid) {
  Eigen::VectorXcd v(grid.num_x() * grid.num_xi());
  for (long ix = 0; ix < grid.num_x(); ++ix) {
    const Point xp = grid.x_point(ix);
    for (long ik = 0; ik < grid.num_xi(); ++ik) {
      const Complex val = closure(xp, grid.xi_point(ik));
      if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
        std::ostringstream msg;
        msg << "sample: non-finite value at x=(" << xp.transpose()
            << "), xi=(" << grid.xi_point(ik).transpose() << ")";
        throw PreconditionError(msg.str());
      }
      v[ix * grid.num_xi() + ik] = val;
    }
  }
  return SymbolField(grid, std::move(v), closure);
}

SymbolClosure builtin(const std::string &name,
                      const std::vector<double> &params) {
  if (name == "one")
    return [](const Point &, const Point &) { return Complex(1.0, 0.0); };
  if (name == "bracket") {
    if (params.size() != 1)
      throw std::invalid_argument("bracket expects one parameter m");
    const double m = params[0];
    return [m](const Point &, const Point &xi) {
      return Complex(std::pow(1.0 + xi.squaredNorm(), 0.5 * m), 0.0);
    };
  }
  if (name == "kinetic")
    return [](const Point &, const Point &xi) {
      return Complex(xi.squaredNorm(), 0.0);
    };
  if (name == "monomial") {
    const std::vector<double> alpha = params;
    return [alpha](const Point &, const Point &xi) {
      double v = 1.0;
      for (std::size_t a = 0; a < alpha.size() && a < std::size_t(xi.size());
           ++a)
        v *= std::pow(xi[a], alpha[a]);
      return Complex(v, 0.0);
    };
  }
  if (name == "xmonomial") {
    const std::vector<double> beta = params;
    return [beta](const Point &x, const Point &) {
      double v = 1.0;
      for (std::size_t a = 0; a < beta.size() && a < std::size_t(x.size()); ++a)
        v *= std::pow(x[a], beta[a]);
      return Complex(v, 0.0);
    };
  }
  if (name == "cubic") {
    if (params.size() != 3)
      throw std::invalid_argument("cubic expects three axis indices");
    const int j = static_cast<int>(params[0]), k = static_cast<int>(params[1]),
              l = static_cast<int>(params[2]);
    return [j, k, l](const Point &, const Point &xi) {
      return Complex(xi[j] * xi[k] * xi[l], 0.0);
    };
  }
  if (name == "gaussian") {
    if (params.size() < 2)
      throw std::invalid_argument("gaussian expects at least sx, sxi");
    const double sx = params[0], sxi = params[1];
    const std::vector<double> rest(params.begin() + 2, params.end());
    return [sx, sxi, rest](const Point &x, const Point &xi) {
      const int n = static_cast<int>(x.size());
      double qx = 0.0, qxi = 0.0;
      for (int a = 0; a < n; ++a) {
        const double cx = (static_cast<int>(rest.size()) >= n) ? rest[a] : 0.0;
        const double cxi =
            (static_cast<int>(rest.size()) >= 2 * n) ? rest[n + a] : 0.0;
        qx += (x[a] - cx) * (x[a] - cx);
        qxi += (xi[a] - cxi) * (xi[a] - cxi);
      }
      return Complex(
          std::exp(-0.5 * qx / (sx * sx) - 0.5 * qxi / (sxi * sxi)), 0.0);
    };
  }
  throw std::invalid_argument("unknown symbol builtin '" + name + "'");
}

SymbolClosure parse_symbol(const std::string &spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> par;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ','))
      par.push_back(std::stod(item));
  }
  return builtin(name, par);
}

std::optional<Envelope> envelope_of_spec(int dim, const std::string &spec) {
  const auto colon = spec.find(':');
  if (spec.substr(0, colon) != "gaussian")
    return std::nullopt;
  std::vector<double> par;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ','))
    par.push_back(std::stod(item));
  if (par.size() < 2)
    return std::nullopt;
  Envelope env;
  env.sigma_x = par[0];
  env.sigma_xi = par[1];
  env.x_center = Point::Zero(dim);
  env.xi_center = Point::Zero(dim);
  for (int a = 0; a < dim; ++a) {
    if (static_cast<int>(par.size()) >= 2 + dim)
      env.x_center[a] = par[2 + a];
    if (static_cast<int>(par.size()) >= 2 + 2 * dim)
      env.xi_center[a] = par[2 + dim + a];
  }
  return env;
}

namespace {

// centered stencil half-widths giving 4th-order accuracy for derivative
// order m: m=1,2 -> 5 points; m=3,4 -> 7 points
int stencil_halfwidth(int m) { return m <= 2 ? 2 : 3; }

} // namespace

SymbolField derivative(const SymbolField &f, Axis axis, int order) {
  if (order < 1 || order > 4)
    throw std::invalid_argument("derivative: order must be in [1,4]");
  const PhaseGrid &g = f.grid();
  if (axis.index < 0 || axis.index >= g.dim())
    throw std::invalid_argument("derivative: axis index out of range");
  const double step = axis.kind == AxisKind::X ? g.x_step() : g.xi_step();
  const int hw = stencil_halfwidth(order);
  const int N = g.points_per_axis();

  if (f.has_closure()) {
    // shift the closure argument directly; off-lattice points are fine
    const SymbolClosure base = f.closure();
    const int ax = axis.index;
    const AxisKind kind = axis.kind;
    std::vector<double> offs(2 * hw + 1);
    for (int s = -hw; s <= hw; ++s)
      offs[s + hw] = s * step;
    const std::vector<double> w = fd_weights(0.0, offs, order);
    SymbolClosure dcl = [base, ax, kind, w, offs, hw](const Point &x,
                                                      const Point &xi) {
      Complex acc(0.0, 0.0);
      Point xs = x, xis = xi;
      for (int s = -hw; s <= hw; ++s) {
        if (kind == AxisKind::X)
          xs[ax] = x[ax] + offs[s + hw];
        else
          xis[ax] = xi[ax] + offs[s + hw];
        acc += w[s + hw] * base(xs, xis);
      }
      return acc;
    };
    return sample(dcl, g);
  }

  // sampled-only field: centered interior, one-sided (same order) at edges
  const long nxi = g.num_xi();
  Eigen::VectorXcd out(g.num_x() * nxi);
  const int npts = 2 * hw + 1;

  // precompute weights for every position along the axis
  std::vector<std::vector<double>> wtab(N);
  std::vector<std::vector<int>> itab(N);
  for (int i = 0; i < N; ++i) {
    int lo = i - hw;
    if (lo < 0)
      lo = 0;
    if (lo + npts > N)
      lo = N - npts;
    std::vector<double> nodes(npts);
    std::vector<int> ids(npts);
    for (int s = 0; s < npts; ++s) {
      ids[s] = lo + s;
      nodes[s] = (lo + s - i) * step;
    }
    wtab[i] = fd_weights(0.0, nodes, order);
    itab[i] = ids;
  }

  const bool on_x = axis.kind == AxisKind::X;
  for (long ix = 0; ix < g.num_x(); ++ix) {
    const std::vector<int> xv = g.unflatten(ix);
    for (long ik = 0; ik < nxi; ++ik) {
      const std::vector<int> kv = g.unflatten(ik);
      const int pos = on_x ? xv[axis.index] : kv[axis.index];
      Complex acc(0.0, 0.0);
      std::vector<int> xw = xv, kw = kv;
      for (int s = 0; s < npts; ++s) {
        if (on_x)
          xw[axis.index] = itab[pos][s];
        else
          kw[axis.index] = itab[pos][s];
        acc += wtab[pos][s] * f.value(g.flatten(xw), g.flatten(kw));
      }
      out[ix * nxi + ik] = acc;
    }
  }
  return SymbolField(g, std::move(out));
}

namespace {

void check_same_grid(const SymbolField &a, const SymbolField &b,
                     const char *who) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

} // namespace

SymbolField poisson(const SymbolField &f, const SymbolField &g) {
  check_same_grid(f, g, "poisson");
  const PhaseGrid &grid = f.grid();
  Eigen::VectorXcd acc(grid.num_x() * grid.num_xi());
  acc.setZero();
  for (int j = 0; j < grid.dim(); ++j) {
    const SymbolField fxi = derivative(f, {AxisKind::Xi, j});
    const SymbolField gx = derivative(g, {AxisKind::X, j});
    const SymbolField fx = derivative(f, {AxisKind::X, j});
    const SymbolField gxi = derivative(g, {AxisKind::Xi, j});
    acc += fxi.values().cwiseProduct(gx.values()) -
           fx.values().cwiseProduct(gxi.values());
  }
  return SymbolField(grid, std::move(acc));
}

SymbolField poisson_magnetic(const SymbolField &f, const SymbolField &g,
                             const MagneticField &B) {
  check_same_grid(f, g, "poisson_magnetic");
  const PhaseGrid &grid = f.grid();
  SymbolField canonical = poisson(f, g);
  if (B.is_zero())
    return canonical;
  Eigen::VectorXcd acc = canonical.values();
  const long nxi = grid.num_xi();
  std::vector<SymbolField> fxi, gxi;
  for (int j = 0; j < grid.dim(); ++j) {
    fxi.push_back(derivative(f, {AxisKind::Xi, j}));
    gxi.push_back(derivative(g, {AxisKind::Xi, j}));
  }
  for (long ix = 0; ix < grid.num_x(); ++ix) {
    const Point xp = grid.x_point(ix);
    for (int j = 0; j < grid.dim(); ++j)
      for (int k = 0; k < grid.dim(); ++k) {
        if (j == k)
          continue;
        const double bjk = B(j, k, xp);
        if (bjk == 0.0)
          continue;
        acc.segment(ix * nxi, nxi) -=
            bjk * fxi[j].values().segment(ix * nxi, nxi).cwiseProduct(
                      gxi[k].values().segment(ix * nxi, nxi));
      }
  }
  return SymbolField(grid, std::move(acc));
}

SymbolField sym_add(const SymbolField &a, const SymbolField &b) {
  check_same_grid(a, b, "sym_add");
  return SymbolField(a.grid(), a.values() + b.values());
}

SymbolField sym_sub(const SymbolField &a, const SymbolField &b) {
  check_same_grid(a, b, "sym_sub");
  return SymbolField(a.grid(), a.values() - b.values());
}

SymbolField sym_mul(const SymbolField &a, const SymbolField &b) {
  check_same_grid(a, b, "sym_mul");
  return SymbolField(a.grid(), a.values().cwiseProduct(b.values()));
}

SymbolField sym_scale(Complex c, const SymbolField &a) {
  return SymbolField(a.grid(), c * a.values());
}

SymbolField sym_conj(const SymbolField &a) {
  SymbolClosure cl = nullptr;
  if (a.has_closure()) {
    const SymbolClosure base = a.closure();
    cl = [base](const Point &x, const Point &xi) {
      return std::conj(base(x, xi));
    };
  }
  return SymbolField(a.grid(), a.values().conjugate(), cl);
}

SymbolField sym_const(const PhaseGrid &grid, Complex c) {
  Eigen::VectorXcd v(grid.num_x() * grid.num_xi());
  v.setConstant(c);
  return SymbolField(grid, std::move(v),
                     [c](const Point &, const Point &) { return c; });
}

} // namespace mwc
