#include "mwc/quantize.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace mwc {

const char *scheme_name(Scheme s) {
  switch (s) {
  case Scheme::Weyl:
    return "weyl";
  case Scheme::Minimal:
    return "minimal";
  case Scheme::Magnetic:
    return "magnetic";
  }
  return "?";
}

namespace {

using CVec = std::vector<Complex>;

// e^{i d h xi_k} = (-1)^d e^{i 2 pi d k / N}
struct PhaseLut {
  int N;
  Eigen::MatrixXcd omega; // omega(r,k) = e^{i 2 pi r k / N}
  explicit PhaseLut(int n_pts) : N(n_pts), omega(n_pts, n_pts) {
    for (int r = 0; r < N; ++r)
      for (int k = 0; k < N; ++k)
        omega(r, k) = std::polar(1.0, 2.0 * M_PI * r * k / N);
  }
  Complex phase(long d, int k) const {
    const int r = static_cast<int>(((d % N) + N) % N);
    const Complex w = omega(r, k);
    return (d & 1L) ? -w : w;
  }
};

void run_rows(long rows, int threads, const std::function<void(long)> &body) {
  if (threads <= 1) {
    for (long r = 0; r < rows; ++r)
      body(r);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (rows + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk, hi = std::min(rows, lo + chunk);
    if (lo >= hi)
      break;
    pool.emplace_back([lo, hi, &body] {
      for (long r = lo; r < hi; ++r)
        body(r);
    });
  }
  for (auto &th : pool)
    th.join();
}

// Row-major tensor contraction along one axis: replaces extent `old_e` on
// `axis` by `new_e`, out[..,w,..] = sum_e coef(w,e) in[..,e,..].
CVec transform_axis(const CVec &in, std::vector<long> &shape, int axis,
                    long new_e, const Eigen::MatrixXcd &coef) {
  const long old_e = shape[axis];
  long before = 1, after = 1;
  for (int a = 0; a < axis; ++a)
    before *= shape[a];
  for (std::size_t a = axis + 1; a < shape.size(); ++a)
    after *= shape[a];
  CVec out(before * new_e * after, Complex(0.0, 0.0));
  for (long b = 0; b < before; ++b) {
    const Complex *in_b = in.data() + b * old_e * after;
    Complex *out_b = out.data() + b * new_e * after;
    for (long w = 0; w < new_e; ++w) {
      Complex *dst = out_b + w * after;
      for (long e = 0; e < old_e; ++e) {
        const Complex c = coef(w, e);
        const Complex *src = in_b + e * after;
        for (long a = 0; a < after; ++a)
          dst[a] += c * src[a];
      }
    }
  }
  shape[axis] = new_e;
  return out;
}

// Interpolation weights from the N lattice samples to the doubled midpoint
// s = 0..2N-2 along one axis (trigonometric; exact picks at even s).
Eigen::MatrixXd midpoint_interp_matrix(int N) {
  Eigen::MatrixXd W(2 * N - 1, N);
  W.setZero();
  for (int s = 0; s < 2 * N - 1; ++s) {
    if (s % 2 == 0) {
      W(s, s / 2) = 1.0;
      continue;
    }
    for (int p = 0; p < N; ++p) {
      const double delta = 0.5 * s - p;
      double acc = 1.0 + std::cos(M_PI * delta);
      for (int kappa = 1; kappa < N / 2; ++kappa)
        acc += 2.0 * std::cos(2.0 * M_PI * kappa * delta / N);
      W(s, p) = acc / N;
    }
  }
  return W;
}

// Symbol values on the doubled midpoint lattice: tensor with shape
// [2N-1]^n (x part) x [N]^n (xi part).
CVec midpoint_symbol_table(const SymbolField &f, std::vector<long> &shape) {
  const PhaseGrid &g = f.grid();
  const int n = g.dim(), N = g.points_per_axis();
  const long S = 2 * N - 1;

  shape.assign(2 * n, N);
  for (int a = 0; a < n; ++a)
    shape[a] = S;

  if (f.has_closure()) {
    long total = 1;
    for (long e : shape)
      total *= e;
    CVec out(total);
    const long nxi = g.num_xi();
    long srows = total / nxi;
    Point xm(n);
    std::vector<int> sidx(n, 0);
    for (long row = 0; row < srows; ++row) {
      long rest = row;
      for (int a = n - 1; a >= 0; --a) {
        sidx[a] = static_cast<int>(rest % S);
        rest /= S;
      }
      for (int a = 0; a < n; ++a)
        xm[a] = -g.half_width() + 0.5 * sidx[a] * g.x_step();
      for (long ik = 0; ik < nxi; ++ik)
        out[row * nxi + ik] = f.closure()(xm, g.xi_point(ik));
    }
    return out;
  }

  // sampled-only: interpolate x axes one at a time
  CVec data(f.values().data(), f.values().data() + f.values().size());
  std::vector<long> cur(2 * n, N);
  const Eigen::MatrixXcd W = midpoint_interp_matrix(N).cast<Complex>();
  for (int a = 0; a < n; ++a)
    data = transform_axis(data, cur, a, S, W);
  return data;
}

Eigen::MatrixXcd circulation_phases(const PhaseGrid &g,
                                    const VectorPotential &A, int order,
                                    int threads) {
  const long num = g.num_x();
  Eigen::MatrixXcd lam(num, num);
  if (A.is_zero()) {
    lam.setOnes();
    return lam;
  }
  std::vector<Point> pts(num);
  for (long i = 0; i < num; ++i)
    pts[i] = g.x_point(i);
  run_rows(num, threads, [&](long i) {
    lam(i, i) = Complex(1.0, 0.0);
    for (long j = i + 1; j < num; ++j) {
      const Complex ph = circulation_phase(A, pts[i], pts[j], order);
      lam(i, j) = ph;
      lam(j, i) = std::conj(ph);
    }
  });
  return lam;
}

} // namespace

OperatorMatrix quantize_magnetic(const SymbolField &f,
                                 const VectorPotential &A,
                                 const QuantizeOptions &opt) {
  const PhaseGrid &g = f.grid();
  const int n = g.dim(), N = g.points_per_axis();
  if (A.dim() != n)
    throw std::invalid_argument("quantize_magnetic: potential dimension "
                                "does not match the grid");
  const long S = 2 * N - 1;
  const PhaseLut lut(N);

  std::vector<long> mshape;
  const CVec mid = midpoint_symbol_table(f, mshape);
  const long nxi = g.num_xi();
  const double scale = std::pow(static_cast<double>(N), -n);

  const Eigen::MatrixXcd lam =
      circulation_phases(g, A, opt.circulation_order, opt.threads);

  OperatorMatrix M(g);
  M.scheme = A.is_zero() ? Scheme::Weyl : Scheme::Magnetic;
  M.potential_tag = A.tag();

  long srows = 1;
  for (int a = 0; a < n; ++a)
    srows *= S;

  run_rows(srows, opt.threads, [&](long row) {
    std::vector<int> sidx(n);
    long rest = row;
    for (int a = n - 1; a >= 0; --a) {
      sidx[a] = static_cast<int>(rest % S);
      rest /= S;
    }
    // window of admissible output indices per axis
    std::vector<int> ilo(n), W(n);
    for (int a = 0; a < n; ++a) {
      ilo[a] = std::max(0, sidx[a] - N + 1);
      const int ihi = std::min(N - 1, sidx[a]);
      W[a] = ihi - ilo[a] + 1;
    }
    // contract xi axes with the kernel phases e^{i(2i - s) h xi_k}
    CVec cube(mid.data() + row * nxi, mid.data() + (row + 1) * nxi);
    std::vector<long> cshape(n, N);
    for (int a = 0; a < n; ++a) {
      Eigen::MatrixXcd coef(W[a], N);
      for (int w = 0; w < W[a]; ++w)
        for (int k = 0; k < N; ++k)
          coef(w, k) = lut.phase(2L * (ilo[a] + w) - sidx[a], k);
      cube = transform_axis(cube, cshape, a, W[a], coef);
    }
    // scatter onto the anti-diagonal i + j = s
    long wtotal = 1;
    for (int a = 0; a < n; ++a)
      wtotal *= W[a];
    std::vector<int> iw(n);
    for (long widx = 0; widx < wtotal; ++widx) {
      long wr = widx;
      for (int a = n - 1; a >= 0; --a) {
        iw[a] = static_cast<int>(wr % W[a]);
        wr /= W[a];
      }
      long fi = 0, fj = 0;
      for (int a = 0; a < n; ++a) {
        const int ia = ilo[a] + iw[a];
        const int ja = sidx[a] - ia;
        fi = fi * N + ia;
        fj = fj * N + ja;
      }
      M.m(fi, fj) = scale * lam(fi, fj) * cube[widx];
    }
  });
  return M;
}

OperatorMatrix quantize_weyl(const SymbolField &f, const QuantizeOptions &opt) {
  return quantize_magnetic(f, VectorPotential::zero(f.grid().dim()), opt);
}

SymbolClosure minimal_coupling_pullback(const SymbolClosure &p,
                                        const VectorPotential &A) {
  return [p, A](const Point &x, const Point &xi) {
    Point shifted = xi;
    for (int j = 0; j < A.dim(); ++j)
      shifted[j] -= A(j, x);
    return p(x, shifted);
  };
}

OperatorMatrix quantize_minimal(const SymbolField &p, const VectorPotential &A,
                                const QuantizeOptions &opt) {
  if (!p.has_closure())
    throw std::invalid_argument(
        "quantize_minimal: symbol must be closure-backed");
  if (A.dim() != p.grid().dim())
    throw std::invalid_argument("quantize_minimal: potential dimension "
                                "does not match the grid");
  const SymbolField pulled =
      sample(minimal_coupling_pullback(p.closure(), A), p.grid());
  OperatorMatrix M = quantize_weyl(pulled, opt);
  M.scheme = A.is_zero() ? Scheme::Weyl : Scheme::Minimal;
  M.potential_tag = A.tag();
  return M;
}

namespace {

// single inversion pass: conjugate phase, separation DFT, demodulation
SymbolField extract_symbol_raw(const OperatorMatrix &M,
                               const VectorPotential &A,
                               const QuantizeOptions &opt);

} // namespace

SymbolField extract_symbol(const OperatorMatrix &M, const VectorPotential &A,
                           const QuantizeOptions &opt) {
  if (M.scheme == Scheme::Magnetic && A.tag() != M.potential_tag)
    throw PreconditionError(
        "extract_symbol: potential tag '" + A.tag() +
        "' does not match the operator's tag '" + M.potential_tag + "'");
  SymbolField f = extract_symbol_raw(M, A, opt);
  // Defect correction: the forward map Q is exact on grid data, the raw
  // inversion E only approximate, so each pass of f += E(M - Q(f))
  // multiplies the extraction error by |I - EQ| (about 1e-3 at N = 16).
  const VectorPotential Azero = VectorPotential::zero(M.grid.dim());
  double prev = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < opt.extract_refine; ++pass) {
    const OperatorMatrix Mf = (M.scheme == Scheme::Magnetic)
                                  ? quantize_magnetic(f, A, opt)
                                  : quantize_magnetic(f, Azero, opt);
    OperatorMatrix defect(M.grid);
    defect.m = M.m - Mf.m;
    defect.scheme = M.scheme;
    defect.potential_tag = M.potential_tag;
    const double dn = defect.m.norm();
    if (!(dn < prev))
      break; // stop once the defect no longer contracts
    prev = dn;
    const SymbolField corr = extract_symbol_raw(defect, A, opt);
    f = SymbolField(M.grid, f.values() + corr.values());
  }
  return f;
}

namespace {

SymbolField extract_symbol_raw(const OperatorMatrix &M,
                               const VectorPotential &A,
                               const QuantizeOptions &opt) {
  const PhaseGrid &g = M.grid;
  const int n = g.dim(), N = g.points_per_axis();
  const long S = 2 * N - 1;
  const long nxi = g.num_xi();
  const PhaseLut lut(N);

  Eigen::MatrixXcd G;
  if (M.scheme == Scheme::Magnetic) {
    if (A.tag() != M.potential_tag)
      throw PreconditionError(
          "extract_symbol: potential tag '" + A.tag() +
          "' does not match the operator's tag '" + M.potential_tag + "'");
    const Eigen::MatrixXcd lam =
        circulation_phases(g, A, opt.circulation_order, opt.threads);
    G = lam.conjugate().cwiseProduct(M.m);
  } else {
    G = M.m;
  }
  const double scale = std::pow(static_cast<double>(N), n); // undo N^{-n}
  G *= scale;

  long srows = 1;
  for (int a = 0; a < n; ++a)
    srows *= S;

  // U[s][q] = f(m_s, xi_q) + parity-signed aliases
  CVec U(srows * nxi);
  run_rows(srows, opt.threads, [&](long row) {
    std::vector<int> sidx(n);
    long rest = row;
    for (int a = n - 1; a >= 0; --a) {
      sidx[a] = static_cast<int>(rest % S);
      rest /= S;
    }
    // Gather the full-period separation window. Every slot is read at the
    // minimal-|d| representative of its separation class: forward-generated
    // kernels are exactly N-periodic in the separation so the choice is
    // free, while for products of localized operators the near
    // representative is the one whose entries act on interior states.
    // Slots whose minimal pair still leaves the box (edge rows) fall back
    // to the same separation at the nearest admissible row, rescaled by
    // the ratio of the rows' anchor entries (1 for x-independent kernels,
    // amplitude-tracking for localized ones).
    std::vector<std::vector<int>> ia(n, std::vector<int>(N)),
        ja(n, std::vector<int>(N));
    std::vector<std::vector<int>> sfill(n, std::vector<int>(N, -1));
    for (int a = 0; a < n; ++a)
      for (int t = 0; t < N; ++t) {
        const long d = -N + (sidx[a] & 1) + 2L * t;
        long dmin = d;
        for (const long cand : {d - N, d + N})
          if (std::labs(cand) < std::labs(dmin))
            dmin = cand;
        const long i0 = (sidx[a] + dmin) / 2, j0 = (sidx[a] - dmin) / 2;
        if (i0 >= 0 && i0 < N && j0 >= 0 && j0 < N) {
          ia[a][t] = static_cast<int>(i0);
          ja[a][t] = static_cast<int>(j0);
        } else {
          const long ad = std::labs(dmin);
          const long sstar =
              std::clamp(static_cast<long>(sidx[a]), ad, 2L * (N - 1) - ad);
          ia[a][t] = static_cast<int>((sstar + dmin) / 2);
          ja[a][t] = static_cast<int>((sstar - dmin) / 2);
          sfill[a][t] = static_cast<int>(sstar);
        }
      }
    // anchor pair of a row: its smallest admissible separation
    auto anchor = [N](int srow) {
      const int d = srow & 1;
      return std::pair<int, int>((srow + d) / 2, (srow - d) / 2);
    };
    CVec cube(nxi);
    std::vector<int> t(n, 0);
    for (long c = 0; c < nxi; ++c) {
      long cr = c, fi = 0, fj = 0;
      for (int a = n - 1; a >= 0; --a) {
        t[a] = static_cast<int>(cr % N);
        cr /= N;
      }
      for (int a = 0; a < n; ++a) {
        fi = fi * N + ia[a][t[a]];
        fj = fj * N + ja[a][t[a]];
      }
      Complex v = G(fi, fj);
      for (int a = 0; a < n && v != Complex(0.0, 0.0); ++a) {
        if (sfill[a][t[a]] < 0)
          continue;
        const auto [ai, aj] = anchor(sidx[a]);
        const auto [bi, bj] = anchor(sfill[a][t[a]]);
        long fin = 0, fjn = 0, fid = 0, fjd = 0;
        for (int b = 0; b < n; ++b) {
          const int ib = (b == a) ? ai : ia[b][t[b]];
          const int jb = (b == a) ? aj : ja[b][t[b]];
          const int ibd = (b == a) ? bi : ia[b][t[b]];
          const int jbd = (b == a) ? bj : ja[b][t[b]];
          fin = fin * N + ib;
          fjn = fjn * N + jb;
          fid = fid * N + ibd;
          fjd = fjd * N + jbd;
        }
        const Complex num = G(fin, fjn), den = G(fid, fjd);
        if (std::abs(den) > 1e-300 &&
            std::abs(num) < 1e2 * std::abs(den)) {
          v *= num / den;
        } else {
          v = Complex(0.0, 0.0);
        }
      }
      cube[c] = v;
    }
    // contract the separation axes with e^{-i d h xi_q} / N
    std::vector<long> cshape(n, N);
    for (int a = 0; a < n; ++a) {
      Eigen::MatrixXcd coef(N, N);
      for (int q = 0; q < N; ++q)
        for (int tt = 0; tt < N; ++tt) {
          const long d = -N + (sidx[a] & 1) + 2L * tt;
          coef(q, tt) = std::conj(lut.phase(d, q)) / static_cast<double>(N);
        }
      cube = transform_axis(cube, cshape, a, N, coef);
    }
    std::copy(cube.begin(), cube.end(), U.begin() + row * nxi);
  });

  // Demodulate each midpoint axis. The even rows already carry
  // f + alias exactly wherever their separation window is complete, so the
  // reconstruction is  f(x_p) = U(2p) - alias(2p)  with the alias field
  // estimated by a weighted least-squares fit of U to the two bands of the
  // doubled lattice (base band kappa in [-N/2, N/2-1] and the alias band
  // shifted by N). Rows with incomplete windows are down-weighted so their
  // filled slots cannot pollute the fit.
  // basis: base band kappa in [-N/2, N/2-1] plus the alias band shifted by
  // N with its boundary mode dropped (squares the system)
  Eigen::MatrixXcd Phi(S, S);
  std::vector<int> modes;
  for (int kp = -N / 2; kp <= N / 2 - 1; ++kp)
    modes.push_back(kp);
  for (int kp = N / 2 + 1; kp <= 3 * N / 2 - 1; ++kp)
    modes.push_back(kp);
  for (int s = 0; s < S; ++s)
    for (int m = 0; m < S; ++m)
      Phi(s, m) = std::polar(1.0, 2.0 * M_PI * modes[m] * s / (2.0 * N));
  // mild row weights: rows with incomplete separation windows count less
  Eigen::VectorXd wrow(S);
  for (int s = 0; s < S; ++s) {
    int exact = 0;
    for (int t = 0; t < N; ++t) {
      const long d = -N + (s & 1) + 2L * t;
      bool ok = false;
      for (const long dd : {d, d - N, d + N}) {
        const long lo = std::labs(dd);
        if (s >= lo && s <= 2L * (N - 1) - lo)
          ok = true;
      }
      exact += ok ? 1 : 0;
    }
    const double frac = static_cast<double>(exact) / N;
    wrow[s] = frac * frac;
  }
  const Eigen::MatrixXcd PhiW = wrow.asDiagonal() * Phi;
  const Eigen::MatrixXcd fit =
      (Phi.adjoint() * PhiW).partialPivLu().solve(PhiW.adjoint());
  Eigen::MatrixXcd evalAlias(N, S);
  {
    Eigen::MatrixXcd alias_modes(N, S);
    alias_modes.setZero();
    for (int p = 0; p < N; ++p)
      for (int m = N; m < S; ++m)
        alias_modes(p, m) =
            std::polar(1.0, 2.0 * M_PI * modes[m] * (2 * p) / (2.0 * N));
    evalAlias = alias_modes * fit;
  }
  Eigen::MatrixXcd D(N, S);
  D.setZero();
  for (int p = 0; p < N; ++p)
    D(p, 2 * p) = 1.0;
  D -= evalAlias;

  std::vector<long> ushape(2 * n, N);
  for (int a = 0; a < n; ++a)
    ushape[a] = S;
  CVec field = U;
  for (int a = 0; a < n; ++a)
    field = transform_axis(field, ushape, a, N, D);

  Eigen::VectorXcd vals =
      Eigen::Map<Eigen::VectorXcd>(field.data(), field.size());
  return SymbolField(g, std::move(vals));
}

} // namespace

GridFunction apply(const OperatorMatrix &M, const GridFunction &u) {
  if (!(M.grid == u.grid))
    throw std::invalid_argument("apply: grid mismatch");
  return GridFunction(u.grid, M.m * u.values);
}

double hermiticity_defect(const OperatorMatrix &M) {
  const double denom = M.m.norm();
  if (denom == 0.0)
    return 0.0;
  return (M.m - M.m.adjoint()).norm() / denom;
}

double gauge_covariance_residual(const SymbolField &f,
                                 const VectorPotential &A,
                                 const ScalarPotential &phi, Scheme scheme,
                                 const QuantizeOptions &opt) {
  const PhaseGrid &g = f.grid();
  const VectorPotential Ap = apply_gauge(A, phi);
  OperatorMatrix M1(g), M2(g);
  if (scheme == Scheme::Minimal) {
    M1 = quantize_minimal(f, A, opt);
    M2 = quantize_minimal(f, Ap, opt);
  } else {
    M1 = quantize_magnetic(f, A, opt);
    M2 = quantize_magnetic(f, Ap, opt);
  }
  Eigen::VectorXcd ph(g.num_x());
  for (long i = 0; i < g.num_x(); ++i)
    ph[i] = std::polar(1.0, phi.value(g.x_point(i)));
  const Eigen::MatrixXcd twisted =
      ph.asDiagonal() * M1.m * ph.conjugate().asDiagonal();
  return (twisted - M2.m).norm() / M1.m.norm();
}

double gauge_covariance_residual_on_states(
    const SymbolField &f, const VectorPotential &A, const ScalarPotential &phi,
    Scheme scheme, const std::vector<GridFunction> &battery,
    const QuantizeOptions &opt) {
  const PhaseGrid &g = f.grid();
  const VectorPotential Ap = apply_gauge(A, phi);
  OperatorMatrix M1(g), M2(g);
  if (scheme == Scheme::Minimal) {
    M1 = quantize_minimal(f, A, opt);
    M2 = quantize_minimal(f, Ap, opt);
  } else {
    M1 = quantize_magnetic(f, A, opt);
    M2 = quantize_magnetic(f, Ap, opt);
  }
  Eigen::VectorXcd ph(g.num_x());
  for (long i = 0; i < g.num_x(); ++i)
    ph[i] = std::polar(1.0, phi.value(g.x_point(i)));
  const Eigen::MatrixXcd diff =
      ph.asDiagonal() * M1.m * ph.conjugate().asDiagonal() - M2.m;
  double worst = 0.0, scale = 0.0;
  for (const GridFunction &u : battery) {
    worst = std::max(worst, (diff * u.values).norm() / u.values.norm());
    scale = std::max(scale, (M1.m * u.values).norm() / u.values.norm());
  }
  return scale > 0.0 ? worst / scale : worst;
}

CommutatorProbe commutator_probe(const PhaseGrid &grid,
                                 const VectorPotential &A,
                                 const MagneticField &B,
                                 const std::vector<GridFunction> &battery,
                                 const QuantizeOptions &opt) {
  if (grid.dim() < 2)
    throw std::invalid_argument("commutator_probe: needs dim >= 2");
  const SymbolField x1 = sample(builtin("monomial", {1.0, 0.0}), grid);
  const SymbolField x2 = sample(builtin("monomial", {0.0, 1.0}), grid);
  const OperatorMatrix P1 = quantize_magnetic(x1, A, opt);
  const OperatorMatrix P2 = quantize_magnetic(x2, A, opt);
  const Eigen::MatrixXcd comm = P1.m * P2.m - P2.m * P1.m;

  Eigen::VectorXcd target(grid.num_x());
  for (long i = 0; i < grid.num_x(); ++i)
    target[i] = Complex(0.0, 1.0) * B(0, 1, grid.x_point(i));

  double rp = 0.0, rm = 0.0;
  for (const GridFunction &u : battery) {
    const Eigen::VectorXcd cu = comm * u.values;
    const Eigen::VectorXcd tu = target.cwiseProduct(u.values);
    const double nu = u.values.norm();
    rp = std::max(rp, (cu - tu).norm() / nu);
    rm = std::max(rm, (cu + tu).norm() / nu);
  }
  CommutatorProbe probe;
  probe.sigma = rp <= rm ? +1 : -1;
  probe.residual_best = std::min(rp, rm);
  probe.residual_other = std::max(rp, rm);
  return probe;
}

std::vector<GridFunction> interior_state_battery(const PhaseGrid &grid,
                                                 int count,
                                                 unsigned long long seed,
                                                 double sigma_min,
                                                 double sigma_max,
                                                 double k_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uc(-0.1875 * grid.half_width(),
                                            0.1875 * grid.half_width());
  std::uniform_real_distribution<double> us(sigma_min, sigma_max);
  std::uniform_real_distribution<double> uk(-k_max, k_max);
  std::vector<GridFunction> out;
  const int n = grid.dim();
  for (int b = 0; b < count; ++b) {
    Point c(n), k(n);
    for (int a = 0; a < n; ++a) {
      c[a] = uc(rng);
      k[a] = uk(rng);
    }
    const double sigma = us(rng);
    GridFunction u = sample_state(grid, [&](const Point &x) {
      const double q = (x - c).squaredNorm();
      return std::polar(std::exp(-0.5 * q / (sigma * sigma)), k.dot(x));
    });
    u.values /= u.values.norm();
    out.push_back(std::move(u));
  }
  return out;
}

} // namespace mwc
