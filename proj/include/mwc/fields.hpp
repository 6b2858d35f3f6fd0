#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "mwc/quadrature.hpp"

namespace mwc {

// Numerical precondition violated (elliptic estimate failed, Hermiticity
// defect too large, ...). The CLI maps this to exit code 3.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Closed 2-form B on R^n as an antisymmetric matrix-valued function of x.
// Only the components j<k are stored; the rest follow by reflection, so
// antisymmetry holds exactly. For n = 1 the field is identically zero.
class MagneticField {
public:
  using Component = std::function<double(int j, int k, const Point &x)>;

  MagneticField(int dim, Component upper, std::string tag = "custom",
                std::optional<double> decay_epsilon = std::nullopt);

  int dim() const { return dim_; }
  const std::string &tag() const { return tag_; }
  std::optional<double> decay_epsilon() const { return decay_eps_; }

  // B_jk(x) for any j,k; antisymmetric by construction.
  double operator()(int j, int k, const Point &x) const;

  bool is_zero() const { return zero_; }

  // --- presets -------------------------------------------------------------
  static MagneticField zero(int dim);
  static MagneticField constant(int dim, double b); // B_12 = b
  // B_12(x) = b0 + amp*cos(k*x_1), slowly varying for small k
  static MagneticField periodic(int dim, double b0, double amp, double k);
  // B_12(x) = b0 * <x>^{-1-eps}, satisfies the short-range decay hypothesis
  static MagneticField shortrange(int dim, double b0, double eps);

private:
  int dim_;
  Component comp_;
  std::string tag_;
  std::optional<double> decay_eps_;
  bool zero_ = false;
};

// 1-form A with dA = B. Components are callables; an optional exact gradient
// closure (j,k,x) -> d_k A_j(x) enables sharp dA = B checks.
class VectorPotential {
public:
  using Component = std::function<double(int j, const Point &x)>;
  using Gradient = std::function<double(int j, int k, const Point &x)>;

  VectorPotential(int dim, Component comp, std::string tag = "custom",
                  Gradient grad = nullptr);

  int dim() const { return dim_; }
  const std::string &tag() const { return tag_; }
  double operator()(int j, const Point &x) const { return comp_(j, x); }
  bool has_gradient() const { return static_cast<bool>(grad_); }
  double gradient(int j, int k, const Point &x) const;
  bool is_zero() const { return zero_; }

  static VectorPotential zero(int dim);

private:
  int dim_;
  Component comp_;
  std::string tag_;
  Gradient grad_;
  bool zero_ = false;

  friend VectorPotential transversal_gauge(const MagneticField &, int);
};

// Smooth real function with an exact gradient closure, used for gauge
// transformations A -> A + grad(phi).
struct ScalarPotential {
  std::function<double(const Point &)> value;
  std::function<double(int j, const Point &)> grad;
  std::string tag = "phi";
};

// Oriented triangle given by its corners.
struct Triangle {
  Point a, b, c;
};

// A_j(x) = -sum_k int_0^1 B_jk(s x) s x_k ds, evaluated by Gauss-Legendre
// of the given order. dA = B up to quadrature accuracy (exact for
// polynomial B of degree <= 2*order-2).
VectorPotential transversal_gauge(const MagneticField &B, int order = 16);

// Circulation of A along the oriented segment from x to y.
double circulation(const VectorPotential &A, const Point &x, const Point &y,
                   int order = 16);

// Flux of B through the oriented triangle <a,b,c>, by tensor Gauss-Legendre
// on the collapsed-square parametrization. For constant B this is B times
// the signed area summed over coordinate planes.
double triangle_flux(const MagneticField &B, const Triangle &t,
                     int order = 16);

// F_B(x,y,z) = sum_jk y_j (z_k - y_k) int int ds dt s B_jk(x-y-z+2sy+2st(z-y));
// satisfies 4 F_B(x,y,z) = triangle_flux over corners (x-y+z, x-y-z, x+y-z).
double flux_factor(const MagneticField &B, const Point &x, const Point &y,
                   const Point &z, int order = 16);

// | flux(<x,y,z>) - circ[x,y] - circ[y,z] - circ[z,x] |, zero when dA = B.
double stokes_residual(const VectorPotential &A, const MagneticField &B,
                       const Triangle &t, int order = 16);

// Lambda^A(x,y) = exp(-i circulation(A; x,y)); unit modulus,
// conjugate under swapping x and y.
std::complex<double> circulation_phase(const VectorPotential &A,
                                       const Point &x, const Point &y,
                                       int order = 16);

// omega_B(x,y,z) = exp(-4 i F_B(x,y,z))
std::complex<double> flux_phase(const MagneticField &B, const Point &x,
                                const Point &y, const Point &z,
                                int order = 16);

// Omega^B(x,y,z) = exp(-i flux(<x,y,z>))
std::complex<double> triangle_flux_phase(const MagneticField &B,
                                         const Triangle &t, int order = 16);

// A + grad(phi); pairs with the same magnetic field.
VectorPotential apply_gauge(const VectorPotential &A,
                            const ScalarPotential &phi);

// Short-range decay diagnostic: max over sample points of
// <x>^{1+eps} |d^alpha B_jk(x)| for |alpha| <= 2 (finite differences).
// Requires a declared decay_epsilon on the field.
struct DecayReport {
  double epsilon = 0.0;
  double max_weighted_derivative = 0.0;
  bool finite = false;
};
DecayReport decay_hypothesis_report(const MagneticField &B,
                                    double sample_radius = 32.0,
                                    int samples_per_axis = 9);

// Resolve a preset description like "constant:0.5", "periodic:1,0.25,0.5",
// "shortrange:1,1" or "zero". Throws std::invalid_argument on unknown names.
MagneticField parse_field_preset(int dim, const std::string &spec);

} // namespace mwc
