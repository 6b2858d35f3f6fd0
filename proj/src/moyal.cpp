#include "mwc/moyal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mwc {

SymbolField moyal_product(const SymbolField &f, const SymbolField &g,
                          const VectorPotential &A,
                          const QuantizeOptions &opt) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("moyal_product: grid mismatch");
  const OperatorMatrix Mf = quantize_magnetic(f, A, opt);
  const OperatorMatrix Mg = quantize_magnetic(g, A, opt);
  OperatorMatrix prod(f.grid());
  prod.m = Mf.m * Mg.m;
  prod.scheme = Mf.scheme;
  prod.potential_tag = Mf.potential_tag;
  SymbolField out = extract_symbol(prod, A, opt);
  if (f.class_meta() && g.class_meta()) {
    ClassMeta meta;
    meta.order = f.class_meta()->order + g.class_meta()->order;
    meta.rho = std::min(f.class_meta()->rho, g.class_meta()->rho);
    meta.delta = std::max(f.class_meta()->delta, g.class_meta()->delta);
    out = out.with_meta(meta);
  }
  return out;
}

namespace {

struct GaussGrid1 {
  std::vector<double> node, weight;
};

// Gauss-Legendre nodes on [c - r, c + r]
GaussGrid1 window(double c, double r, int q) {
  const GaussLegendre &rule = gauss_legendre(q);
  GaussGrid1 g;
  g.node.resize(q);
  g.weight.resize(q);
  for (int i = 0; i < q; ++i) {
    g.node[i] = c - r + 2.0 * r * rule.nodes()[i];
    g.weight[i] = 2.0 * r * rule.weights()[i];
  }
  return g;
}

} // namespace

std::vector<Complex> moyal_product_integral(const SymbolField &f,
                                            const SymbolField &g,
                                            const MagneticField &B,
                                            const std::vector<Point> &x_pts,
                                            const std::vector<Point> &xi_pts,
                                            const OracleOptions &opt) {
  if (!f.has_closure() || !g.has_closure())
    throw PreconditionError("moyal_product_integral: closure-backed symbols "
                            "required");
  if (!f.envelope() || !g.envelope())
    throw PreconditionError("moyal_product_integral: inputs must declare a "
                            "Gaussian envelope");
  if (x_pts.size() != xi_pts.size() || x_pts.size() > 16)
    throw PreconditionError("moyal_product_integral: at most 16 evaluation "
                            "points");
  const int n = f.grid().dim();
  const double radius = std::sqrt(-2.0 * std::log(opt.envelope_cut));
  const Envelope &ef = *f.envelope();
  const Envelope &eg = *g.envelope();
  const int q = opt.nodes_per_axis;
  long qn = 1;
  for (int a = 0; a < n; ++a)
    qn *= q;

  const bool const_field = !B.is_zero() && B.tag().rfind("constant:", 0) == 0;

  std::vector<Complex> out;
  // the heavy tables depend on x only; reuse them across points sharing x
  long prev_x = -1;
  std::vector<Complex> fhat, ghat;
  std::vector<GaussGrid1> gy, gz, geta, gzeta;
  bool empty = false;
  for (std::size_t pt = 0; pt < x_pts.size(); ++pt) {
    const Point &x = x_pts[pt];
    const Point &xi = xi_pts[pt];
    bool same_x = prev_x >= 0 && (x - x_pts[prev_x]).norm() == 0.0;

    // The y window combines f's x-envelope with the decay of the partial
    // transform of g (|int g e^{-2i zeta y} dzeta| ~ e^{-2 sigma^2 y^2},
    // centered at y = 0); same for z with the roles swapped. Without the
    // intersection the windows of very wide symbols would be hopelessly
    // oscillatory.
    const double decay_rad = std::sqrt(-std::log(opt.transform_cut) / 2.0);
    if (!same_x) {
    empty = false;
    gy.assign(n, {});
    gz.assign(n, {});
    geta.assign(n, {});
    gzeta.assign(n, {});
    for (int a = 0; a < n; ++a) {
      auto clipped = [&](double c1, double r1, double r2) {
        const double lo = std::max(c1 - r1, -r2), hi = std::min(c1 + r1, r2);
        if (hi <= lo)
          empty = true;
        return window(0.5 * (lo + hi), 0.5 * std::max(hi - lo, 0.0), q);
      };
      gy[a] = clipped(x[a] - ef.x_center[a], radius * ef.sigma_x,
                      decay_rad / eg.sigma_xi);
      gz[a] = clipped(x[a] - eg.x_center[a], radius * eg.sigma_x,
                      decay_rad / ef.sigma_xi);
      geta[a] = window(ef.xi_center[a], radius * ef.sigma_xi, q);
      gzeta[a] = window(eg.xi_center[a], radius * eg.sigma_xi, q);
    }
    }
    if (empty) {
      out.push_back(Complex(0.0, 0.0));
      continue;
    }

    auto unflat = [&](long idx, std::vector<int> &iv) {
      for (int a = n - 1; a >= 0; --a) {
        iv[a] = static_cast<int>(idx % q);
        idx /= q;
      }
    };

    // fhat[y][z] = int deta f(x-y, eta) e^{2i eta.z}; axis-separated.
    // ghat[z][y] = int dzeta g(x-z, zeta) e^{-2i zeta.y}.
    std::vector<int> iv(n), jv(n);
    if (!same_x) {
    fhat.assign(qn * qn, Complex(0.0, 0.0));
    ghat.assign(qn * qn, Complex(0.0, 0.0));
    std::vector<Complex> buf, nxt;
    for (long yi = 0; yi < qn; ++yi) {
      unflat(yi, iv);
      buf.assign(qn, Complex(0.0, 0.0));
      Point xy(n), eta(n);
      for (int a = 0; a < n; ++a)
        xy[a] = x[a] - gy[a].node[iv[a]];
      for (long ei = 0; ei < qn; ++ei) {
        unflat(ei, jv);
        double w = 1.0;
        for (int a = 0; a < n; ++a) {
          eta[a] = geta[a].node[jv[a]];
          w *= geta[a].weight[jv[a]];
        }
        buf[ei] = w * f.closure()(xy, eta);
      }
      long stride = qn;
      for (int a = 0; a < n; ++a) {
        stride /= q;
        nxt.assign(qn, Complex(0.0, 0.0));
        for (long idx = 0; idx < qn; ++idx) {
          const int src = static_cast<int>((idx / stride) % q);
          const long base = idx - src * stride;
          for (int zt = 0; zt < q; ++zt) {
            const Complex ph =
                std::polar(1.0, 2.0 * geta[a].node[src] * gz[a].node[zt]);
            nxt[base + zt * stride] += ph * buf[idx];
          }
        }
        buf.swap(nxt);
      }
      std::copy(buf.begin(), buf.end(), fhat.begin() + yi * qn);

      buf.assign(qn, Complex(0.0, 0.0));
      Point xz(n), zeta(n);
      for (int a = 0; a < n; ++a)
        xz[a] = x[a] - gz[a].node[iv[a]];
      for (long zi = 0; zi < qn; ++zi) {
        unflat(zi, jv);
        double w = 1.0;
        for (int a = 0; a < n; ++a) {
          zeta[a] = gzeta[a].node[jv[a]];
          w *= gzeta[a].weight[jv[a]];
        }
        buf[zi] = w * g.closure()(xz, zeta);
      }
      long stride2 = qn;
      for (int a = 0; a < n; ++a) {
        stride2 /= q;
        nxt.assign(qn, Complex(0.0, 0.0));
        for (long idx = 0; idx < qn; ++idx) {
          const int src = static_cast<int>((idx / stride2) % q);
          const long base = idx - src * stride2;
          for (int yt = 0; yt < q; ++yt) {
            const Complex ph =
                std::polar(1.0, -2.0 * gzeta[a].node[src] * gy[a].node[yt]);
            nxt[base + yt * stride2] += ph * buf[idx];
          }
        }
        buf.swap(nxt);
      }
      std::copy(buf.begin(), buf.end(), ghat.begin() + yi * qn);
    }
    }
    prev_x = static_cast<long>(pt);

    // pi^{-2n} sum_y sum_z wy wz omega_B(x,y,z) e^{2i xi.(y-z)}
    //          fhat[y][z] ghat[z][y]
    Complex acc(0.0, 0.0);
    Point yv(n), zv(n);
    for (long yi = 0; yi < qn; ++yi) {
      unflat(yi, iv);
      double wy = 1.0, xiy = 0.0;
      for (int a = 0; a < n; ++a) {
        yv[a] = gy[a].node[iv[a]];
        wy *= gy[a].weight[iv[a]];
        xiy += xi[a] * yv[a];
      }
      for (long zi = 0; zi < qn; ++zi) {
        unflat(zi, jv);
        double wz = 1.0, xiz = 0.0;
        for (int a = 0; a < n; ++a) {
          zv[a] = gz[a].node[jv[a]];
          wz *= gz[a].weight[jv[a]];
          xiz += xi[a] * zv[a];
        }
        Complex om(1.0, 0.0);
        if (const_field) {
          // F_B = (1/2) <y, B z> for a constant field
          double ybz = 0.0;
          for (int ja = 0; ja < n; ++ja)
            for (int ka = 0; ka < n; ++ka)
              if (ja != ka)
                ybz += yv[ja] * B(ja, ka, yv) * zv[ka];
          om = std::polar(1.0, -2.0 * ybz);
        } else if (!B.is_zero()) {
          om = flux_phase(B, x, yv, zv, opt.flux_order);
        }
        acc += wy * wz * om * std::polar(1.0, 2.0 * (xiy - xiz)) *
               fhat[yi * qn + zi] * ghat[zi * qn + yi];
      }
    }
    out.push_back(acc * std::pow(M_PI, -2.0 * n));
  }
  return out;
}

ExpansionSeries product_expansion(const SymbolField &f, const SymbolField &g,
                                  const MagneticField &B, int up_to) {
  if (up_to < 0 || up_to > 2)
    throw std::invalid_argument(
        "product_expansion: only orders 0, 1, 2 are supported");
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("product_expansion: grid mismatch");
  const PhaseGrid &grid = f.grid();
  const int n = grid.dim();

  ExpansionSeries series;
  auto declared_order = [&](int j) {
    if (!f.class_meta() || !g.class_meta())
      return std::nan("");
    const double rd = std::min(f.class_meta()->rho, g.class_meta()->rho) -
                      std::max(f.class_meta()->delta, g.class_meta()->delta);
    return f.class_meta()->order + g.class_meta()->order - j * rd;
  };

  series.terms.push_back(sym_mul(f, g));
  series.orders.push_back(declared_order(0));
  if (up_to >= 1) {
    series.terms.push_back(sym_scale(Complex(0.0, -0.5), poisson(f, g)));
    series.orders.push_back(declared_order(1));
  }
  if (up_to >= 2) {
    Eigen::VectorXcd acc(grid.num_x() * grid.num_xi());
    acc.setZero();
    std::vector<SymbolField> fXi, gXi;
    for (int j = 0; j < n; ++j) {
      fXi.push_back(derivative(f, {AxisKind::Xi, j}));
      gXi.push_back(derivative(g, {AxisKind::Xi, j}));
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const SymbolField f_xik_x =
            derivative(derivative(f, {AxisKind::Xi, j}), {AxisKind::X, k});
        const SymbolField g_x_xik =
            derivative(derivative(g, {AxisKind::X, j}), {AxisKind::Xi, k});
        const SymbolField f_xixi = derivative(fXi[j], {AxisKind::Xi, k});
        const SymbolField g_xx =
            derivative(derivative(g, {AxisKind::X, j}), {AxisKind::X, k});
        const SymbolField f_xx =
            derivative(derivative(f, {AxisKind::X, j}), {AxisKind::X, k});
        const SymbolField g_xixi = derivative(gXi[j], {AxisKind::Xi, k});
        acc += 0.125 * (2.0 * f_xik_x.values().cwiseProduct(g_x_xik.values()) -
                        f_xixi.values().cwiseProduct(g_xx.values()) -
                        f_xx.values().cwiseProduct(g_xixi.values()));
      }
    if (!B.is_zero()) {
      const long nxi = grid.num_xi();
      for (long ix = 0; ix < grid.num_x(); ++ix) {
        const Point xp = grid.x_point(ix);
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            if (j == k)
              continue;
            const double bjk = B(j, k, xp);
            if (bjk == 0.0)
              continue;
            acc.segment(ix * nxi, nxi) +=
                Complex(0.0, 0.5) * bjk *
                fXi[j].values().segment(ix * nxi, nxi).cwiseProduct(
                    gXi[k].values().segment(ix * nxi, nxi));
          }
      }
    }
    series.terms.push_back(SymbolField(grid, std::move(acc)));
    series.orders.push_back(declared_order(2));
  }
  return series;
}

double high_frequency_sup(const SymbolField &f, double radius) {
  const PhaseGrid &g = f.grid();
  double sup = 0.0;
  const std::vector<long> region = g.high_xi_indices(radius);
  for (long ix = 0; ix < g.num_x(); ++ix) {
    if (!g.is_interior_x(ix))
      continue;
    for (long ik : region)
      sup = std::max(sup, std::abs(f.value(ix, ik)));
  }
  return sup;
}

ParametrixResult build_parametrix(const SymbolField &a,
                                  const VectorPotential &A, double R, int J,
                                  const QuantizeOptions &opt) {
  if (J < 0 || J > 3)
    throw std::invalid_argument("build_parametrix: J must be in [0,3]");
  if (!a.class_meta())
    throw PreconditionError(
        "build_parametrix: the symbol needs a class_meta order");
  const PhaseGrid &grid = a.grid();
  const double m = a.class_meta()->order;
  if (2.0 * R >= grid.nyquist_radius())
    throw std::invalid_argument(
        "build_parametrix: 2R must stay below the Nyquist radius");

  // ellipticity estimate on {|xi| >= R, interior x}
  double c = std::numeric_limits<double>::infinity();
  const std::vector<long> region = grid.high_xi_indices(R);
  for (long ix = 0; ix < grid.num_x(); ++ix) {
    if (!grid.is_interior_x(ix))
      continue;
    for (long ik : region) {
      const double bra =
          std::pow(1.0 + grid.xi_point(ik).squaredNorm(), 0.5 * m);
      c = std::min(c, std::abs(a.value(ix, ik)) / bra);
    }
  }
  if (!(c > 1e-12))
    throw PreconditionError("build_parametrix: ellipticity estimate failed "
                            "(c = " +
                            std::to_string(c) + ")");

  // quintic smoothstep cutoff, 0 for |xi| <= R, 1 for |xi| >= 2R
  auto chi = [R](double r) {
    const double t = std::clamp((r - R) / R, 0.0, 1.0);
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  };

  SymbolClosure b0_closure = nullptr;
  if (a.has_closure()) {
    const SymbolClosure ac = a.closure();
    b0_closure = [ac, chi](const Point &x, const Point &xi) {
      const double c0 = chi(xi.norm());
      if (c0 == 0.0)
        return Complex(0.0, 0.0);
      return c0 / ac(x, xi);
    };
  }
  Eigen::VectorXcd b0v(grid.num_x() * grid.num_xi());
  for (long ix = 0; ix < grid.num_x(); ++ix)
    for (long ik = 0; ik < grid.num_xi(); ++ik) {
      const double c0 = chi(grid.xi_point(ik).norm());
      const long idx = ix * grid.num_xi() + ik;
      b0v[idx] = (c0 == 0.0) ? Complex(0.0, 0.0) : c0 / a.value(ix, ik);
    }
  const ClassMeta meta_b{-m, a.class_meta()->rho, a.class_meta()->delta};
  const SymbolField b0(grid, std::move(b0v), b0_closure, meta_b);

  // The Neumann series is accumulated in operator space (one extraction at
  // the end): composing through repeated extract/re-quantize round trips
  // would let box-edge artifacts feed on themselves.
  const OperatorMatrix Ma = quantize_magnetic(a, A, opt);
  const OperatorMatrix Mb0 = quantize_magnetic(b0, A, opt);
  const long dim = grid.num_x();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(dim, dim);

  SymbolField b = b0;
  OperatorMatrix Mb = Mb0;
  if (J >= 1) {
    const Eigen::MatrixXcd R0 = Mb0.m * Ma.m - I;
    Eigen::MatrixXcd S = I;
    Eigen::MatrixXcd pw = R0;
    for (int j = 1; j <= J; ++j) {
      S += (j % 2 == 1) ? -pw : pw;
      if (j < J)
        pw = pw * R0;
    }
    Mb.m = S * Mb0.m;
    b = extract_symbol(Mb, A, opt).with_meta(meta_b);
  }

  OperatorMatrix Mres(grid);
  Mres.m = Ma.m * Mb.m;
  Mres.scheme = Ma.scheme;
  Mres.potential_tag = Ma.potential_tag;
  const SymbolField one = sym_const(grid, Complex(1.0, 0.0));
  ParametrixResult res{
      b, sym_sub(extract_symbol(Mres, A, opt), one), J, R, c, 0.0};
  res.residual_sup = high_frequency_sup(res.residual_field, 2.0 * R);
  return res;
}

} // namespace mwc
