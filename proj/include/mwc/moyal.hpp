#pragma once

#include "mwc/quantize.hpp"

namespace mwc {

// f o^B g through the operator product: extract_symbol(Op(f) Op(g)).
// The result depends only on dA: extraction with any gauge-equivalent
// potential yields the same field (exact at the kernel level).
SymbolField moyal_product(const SymbolField &f, const SymbolField &g,
                          const VectorPotential &A,
                          const QuantizeOptions &opt = {});

struct OracleOptions {
  int nodes_per_axis = 40;     // Gauss-Legendre nodes per integration axis
  double envelope_cut = 1e-12; // truncate where the Gaussian falls below
  double transform_cut = 1e-8; // clip against the partial-transform decay
  int flux_order = 12;         // quadrature for the flux factor phase
};

// Direct tensor-quadrature evaluation of the double phase-space integral
//   (f o^B g)(X) = pi^{-2n} int int dY dZ e^{-2i[[Y,Z]]} omega_B(x,y,z)
//                  f(X-Y) g(X-Z),   [[Y,Z]] = <eta,z> - <zeta,y>.
// Requires closure-backed inputs with declared Gaussian envelopes; at most
// 16 evaluation points.
std::vector<Complex> moyal_product_integral(const SymbolField &f,
                                            const SymbolField &g,
                                            const MagneticField &B,
                                            const std::vector<Point> &x_pts,
                                            const std::vector<Point> &xi_pts,
                                            const OracleOptions &opt = {});

// Asymptotic expansion of f o^B g up to order 2:
//   h0 = f g
//   h1 = -(i/2) {f, g}
//   h2 = (1/8) sum_jk [ 2 d_xi_j d_x_k f * d_x_j d_xi_k g
//                       - d_xi_j d_xi_k f * d_x_j d_x_k g
//                       - d_x_j d_x_k f * d_xi_j d_xi_k g ]
//        + (i/2) sum_jk B_jk d_xi_j f d_xi_k g
struct ExpansionSeries {
  std::vector<SymbolField> terms;
  std::vector<double> orders; // declared symbol orders, NaN when unknown
};
ExpansionSeries product_expansion(const SymbolField &f, const SymbolField &g,
                                  const MagneticField &B, int up_to = 2);

// Truncated parametrix of an elliptic symbol:
//   b0 = chi * a^{-1} with chi a quintic smoothstep on [R, 2R],
//   r0 = b0 o^B a - 1,
//   b  = (1 + sum_{j=1..J} (-1)^j r0^{oj}) o^B b0.
struct ParametrixResult {
  SymbolField b;
  SymbolField residual_field; // a o^B b - 1
  int neumann_order = 0;
  double cutoff_radius = 0.0;
  double ellipticity_constant = 0.0;
  double residual_sup = 0.0; // sup over {|xi| >= 2R, interior x}
};
ParametrixResult build_parametrix(const SymbolField &a,
                                  const VectorPotential &A, double R, int J,
                                  const QuantizeOptions &opt = {});

// sup norm of a field over {|xi| >= radius, interior x}
double high_frequency_sup(const SymbolField &f, double radius);

} // namespace mwc
