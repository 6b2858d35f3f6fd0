#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "mwc/fields.hpp"
#include "mwc/grid.hpp"

namespace mwc {

using SymbolClosure = std::function<Complex(const Point &x, const Point &xi)>;

// Advisory S^m_{rho,delta} class tag; no runtime seminorm enforcement.
struct ClassMeta {
  double order = 0.0;
  double rho = 1.0;
  double delta = 0.0;
};

// Gaussian envelope metadata: declares that |f| is dominated by the product
// of Gaussians with these centers and widths. Required by the oscillatory
// integral oracle to truncate its domain.
struct Envelope {
  Point x_center, xi_center;
  double sigma_x = 1.0;
  double sigma_xi = 1.0;
};

// Complex-valued function on the phase-space lattice, optionally backed by
// an analytic closure. Values are immutable after construction; resampling a
// closure-backed field reproduces the stored values bit-exactly.
class SymbolField {
public:
  SymbolField(const PhaseGrid &grid, Eigen::VectorXcd values,
              SymbolClosure closure = nullptr,
              std::optional<ClassMeta> meta = std::nullopt,
              std::optional<Envelope> envelope = std::nullopt);

  const PhaseGrid &grid() const { return grid_; }
  const Eigen::VectorXcd &values() const { return values_; }
  Complex value(long ix, long ik) const {
    return values_[ix * grid_.num_xi() + ik];
  }
  bool has_closure() const { return static_cast<bool>(closure_); }
  const SymbolClosure &closure() const { return closure_; }
  const std::optional<ClassMeta> &class_meta() const { return meta_; }
  const std::optional<Envelope> &envelope() const { return envelope_; }

  SymbolField with_meta(ClassMeta m) const;
  SymbolField with_envelope(Envelope e) const;

  double norm() const { return values_.norm(); }
  // l2 norm over interior-x rows only
  double interior_norm() const;

private:
  PhaseGrid grid_;
  Eigen::VectorXcd values_;
  SymbolClosure closure_;
  std::optional<ClassMeta> meta_;
  std::optional<Envelope> envelope_;
};

// Pointwise evaluation of the closure on the lattice; the closure is
// retained. Non-finite values are rejected with the offending node reported.
SymbolField sample(const SymbolClosure &closure, const PhaseGrid &grid);

// Named symbol closures:
//   one                           constant 1
//   bracket:m                     <xi>^m = (1+|xi|^2)^{m/2}
//   kinetic                       |xi|^2
//   monomial:a1,...,an            xi^alpha
//   xmonomial:b1,...,bn           x^beta
//   cubic:j,k,l                   xi_j xi_k xi_l
//   gaussian:sx,sxi[,x0...,xi0...] Gaussian envelope in (x, xi)
SymbolClosure builtin(const std::string &name,
                      const std::vector<double> &params = {});
// "name" or "name:p1,p2,..."
SymbolClosure parse_symbol(const std::string &spec);
// Envelope metadata for a "gaussian:..." spec (centers/widths as declared).
std::optional<Envelope> envelope_of_spec(int dim, const std::string &spec);

enum class AxisKind { X, Xi };
struct Axis {
  AxisKind kind;
  int index;
};

// Partial derivative by 4th-order finite differences: centered stencils in
// the interior, one-sided at lattice edges. Closure-backed fields are
// differentiated through the closure at off-lattice stencil points, so the
// result is again closure-backed and edge-accurate. Derivative order <= 4.
SymbolField derivative(const SymbolField &f, Axis axis, int order = 1);

// {f,g} = sum_j d_{xi_j} f d_{x_j} g - d_{x_j} f d_{xi_j} g
SymbolField poisson(const SymbolField &f, const SymbolField &g);

// {f,g}_B = {f,g} - sum_{j,k} B_jk(x) d_{xi_j} f d_{xi_k} g
SymbolField poisson_magnetic(const SymbolField &f, const SymbolField &g,
                             const MagneticField &B);

// algebra on fields sharing a grid
SymbolField sym_add(const SymbolField &a, const SymbolField &b);
SymbolField sym_sub(const SymbolField &a, const SymbolField &b);
SymbolField sym_mul(const SymbolField &a, const SymbolField &b);
SymbolField sym_scale(Complex c, const SymbolField &a);
SymbolField sym_conj(const SymbolField &a);
SymbolField sym_const(const PhaseGrid &grid, Complex c);

} // namespace mwc
