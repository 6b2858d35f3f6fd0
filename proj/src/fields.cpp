#include "mwc/fields.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mwc {

MagneticField::MagneticField(int dim, Component upper, std::string tag,
                             std::optional<double> decay_epsilon)
    : dim_(dim), comp_(std::move(upper)), tag_(std::move(tag)),
      decay_eps_(decay_epsilon) {
  if (dim < 1)
    throw std::invalid_argument("MagneticField: dim must be >= 1");
  // a 2-form on R^1 vanishes identically
  if (dim == 1 || !comp_)
    zero_ = true;
}

double MagneticField::operator()(int j, int k, const Point &x) const {
  if (zero_ || j == k)
    return 0.0;
  return j < k ? comp_(j, k, x) : -comp_(k, j, x);
}

MagneticField MagneticField::zero(int dim) {
  MagneticField B(dim, nullptr, "zero");
  return B;
}

MagneticField MagneticField::constant(int dim, double b) {
  std::ostringstream tag;
  tag << "constant:" << b;
  return MagneticField(
      dim,
      [b](int j, int k, const Point &) {
        return (j == 0 && k == 1) ? b : 0.0;
      },
      tag.str());
}

MagneticField MagneticField::periodic(int dim, double b0, double amp,
                                      double k) {
  std::ostringstream tag;
  tag << "periodic:" << b0 << "," << amp << "," << k;
  return MagneticField(
      dim,
      [b0, amp, k](int j, int l, const Point &x) {
        return (j == 0 && l == 1) ? b0 + amp * std::cos(k * x[0]) : 0.0;
      },
      tag.str());
}

MagneticField MagneticField::shortrange(int dim, double b0, double eps) {
  std::ostringstream tag;
  tag << "shortrange:" << b0 << "," << eps;
  MagneticField B(
      dim,
      [b0, eps](int j, int l, const Point &x) {
        if (!(j == 0 && l == 1))
          return 0.0;
        return b0 * std::pow(1.0 + x.squaredNorm(), -0.5 * (1.0 + eps));
      },
      tag.str(), eps);
  return B;
}

VectorPotential::VectorPotential(int dim, Component comp, std::string tag,
                                 Gradient grad)
    : dim_(dim), comp_(std::move(comp)), tag_(std::move(tag)),
      grad_(std::move(grad)) {
  if (dim < 1)
    throw std::invalid_argument("VectorPotential: dim must be >= 1");
  if (!comp_) {
    zero_ = true;
    comp_ = [](int, const Point &) { return 0.0; };
    grad_ = [](int, int, const Point &) { return 0.0; };
  }
}

double VectorPotential::gradient(int j, int k, const Point &x) const {
  if (!grad_)
    throw std::logic_error("VectorPotential: no gradient closure supplied");
  return grad_(j, k, x);
}

VectorPotential VectorPotential::zero(int dim) {
  return VectorPotential(dim, nullptr, "zero");
}

VectorPotential transversal_gauge(const MagneticField &B, int order) {
  const int n = B.dim();
  if (B.is_zero())
    return VectorPotential::zero(n);
  const GaussLegendre &rule = gauss_legendre(order);
  auto comp = [B, rule, n](int j, const Point &x) {
    double acc = 0.0;
    Point sx(n);
    for (int q = 0; q < rule.order(); ++q) {
      const double s = rule.nodes()[q];
      sx = s * x;
      double row = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == j)
          continue;
        row += B(j, k, sx) * x[k];
      }
      acc += rule.weights()[q] * s * row;
    }
    return -acc;
  };
  VectorPotential A(n, comp, "transversal[" + B.tag() + "]");
  return A;
}

double circulation(const VectorPotential &A, const Point &x, const Point &y,
                   int order) {
  if (A.is_zero())
    return 0.0;
  const int n = A.dim();
  const GaussLegendre &rule = gauss_legendre(order);
  const Point d = y - x;
  double acc = 0.0;
  Point p(n);
  for (int q = 0; q < rule.order(); ++q) {
    const double s = rule.nodes()[q];
    p = x + s * d;
    double dot = 0.0;
    for (int j = 0; j < n; ++j)
      dot += A(j, p) * d[j];
    acc += rule.weights()[q] * dot;
  }
  return acc;
}

double triangle_flux(const MagneticField &B, const Triangle &t, int order) {
  if (B.is_zero())
    return 0.0;
  const int n = B.dim();
  const GaussLegendre &rule = gauss_legendre(order);
  const Point e1 = t.c - t.b; // swept from corner b toward c
  const Point e2 = t.a - t.c; // then tilted toward a
  double acc = 0.0;
  Point p(n);
  for (int qs = 0; qs < rule.order(); ++qs) {
    const double s = rule.nodes()[qs];
    for (int qt = 0; qt < rule.order(); ++qt) {
      const double tt = rule.nodes()[qt];
      p = t.b + s * e1 + (s * tt) * e2;
      double val = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          val += (e1[j] * e2[k] - e1[k] * e2[j]) * B(j, k, p);
      acc += rule.weights()[qs] * rule.weights()[qt] * s * val;
    }
  }
  return acc;
}

double flux_factor(const MagneticField &B, const Point &x, const Point &y,
                   const Point &z, int order) {
  if (B.is_zero())
    return 0.0;
  const int n = B.dim();
  const GaussLegendre &rule = gauss_legendre(order);
  const Point base = x - y - z;
  const Point dy = 2.0 * y;
  const Point dzy = 2.0 * (z - y);
  double acc = 0.0;
  Point p(n);
  for (int qs = 0; qs < rule.order(); ++qs) {
    const double s = rule.nodes()[qs];
    for (int qt = 0; qt < rule.order(); ++qt) {
      const double tt = rule.nodes()[qt];
      p = base + s * dy + (s * tt) * dzy;
      double val = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (j == k)
            continue;
          val += y[j] * (z[k] - y[k]) * B(j, k, p);
        }
      acc += rule.weights()[qs] * rule.weights()[qt] * s * val;
    }
  }
  return acc;
}

double stokes_residual(const VectorPotential &A, const MagneticField &B,
                       const Triangle &t, int order) {
  const double lhs = triangle_flux(B, t, order);
  const double rhs = circulation(A, t.a, t.b, order) +
                     circulation(A, t.b, t.c, order) +
                     circulation(A, t.c, t.a, order);
  return std::abs(lhs - rhs);
}

std::complex<double> circulation_phase(const VectorPotential &A,
                                       const Point &x, const Point &y,
                                       int order) {
  return std::polar(1.0, -circulation(A, x, y, order));
}

std::complex<double> flux_phase(const MagneticField &B, const Point &x,
                                const Point &y, const Point &z, int order) {
  return std::polar(1.0, -4.0 * flux_factor(B, x, y, z, order));
}

std::complex<double> triangle_flux_phase(const MagneticField &B,
                                         const Triangle &t, int order) {
  return std::polar(1.0, -triangle_flux(B, t, order));
}

VectorPotential apply_gauge(const VectorPotential &A,
                            const ScalarPotential &phi) {
  const int n = A.dim();
  auto comp = [A, phi](int j, const Point &x) {
    return A(j, x) + phi.grad(j, x);
  };
  VectorPotential out(n, comp, A.tag() + "+grad(" + phi.tag + ")");
  return out;
}

DecayReport decay_hypothesis_report(const MagneticField &B,
                                    double sample_radius,
                                    int samples_per_axis) {
  if (!B.decay_epsilon())
    throw PreconditionError("decay_hypothesis_report: field has no declared "
                            "decay_epsilon");
  const int n = B.dim();
  const double eps = *B.decay_epsilon();
  const double fd = 1e-3 * std::max(1.0, sample_radius / 16.0);
  DecayReport rep;
  rep.epsilon = eps;

  // sample along rays through the axes and the main diagonal
  std::vector<Point> pts;
  for (int axis = 0; axis <= n; ++axis) {
    for (int i = 0; i < samples_per_axis; ++i) {
      Point p = Point::Zero(n);
      const double r =
          sample_radius * static_cast<double>(i) / (samples_per_axis - 1);
      if (axis < n)
        p[axis] = r;
      else
        p.setConstant(n, r / std::sqrt(static_cast<double>(n)));
      pts.push_back(p);
    }
  }

  double worst = 0.0;
  for (const Point &p : pts) {
    const double w = std::pow(1.0 + p.squaredNorm(), 0.5 * (1.0 + eps));
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        auto f = [&](const Point &q) { return B(j, k, q); };
        worst = std::max(worst, w * std::abs(f(p)));
        for (int a = 0; a < n; ++a) {
          Point pp = p, pm = p;
          pp[a] += fd;
          pm[a] -= fd;
          const double d1 = (f(pp) - f(pm)) / (2.0 * fd);
          const double d2 = (f(pp) - 2.0 * f(p) + f(pm)) / (fd * fd);
          worst = std::max(worst, w * std::abs(d1));
          worst = std::max(worst, w * std::abs(d2));
        }
      }
  }
  rep.max_weighted_derivative = worst;
  rep.finite = std::isfinite(worst);
  return rep;
}

MagneticField parse_field_preset(int dim, const std::string &spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> par;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ','))
      par.push_back(std::stod(item));
  }
  auto want = [&](std::size_t k) {
    if (par.size() != k)
      throw std::invalid_argument("field preset '" + name + "' expects " +
                                  std::to_string(k) + " parameter(s)");
  };
  if (name == "zero") {
    want(0);
    return MagneticField::zero(dim);
  }
  if (name == "constant") {
    want(1);
    return MagneticField::constant(dim, par[0]);
  }
  if (name == "periodic") {
    want(3);
    return MagneticField::periodic(dim, par[0], par[1], par[2]);
  }
  if (name == "shortrange") {
    want(2);
    return MagneticField::shortrange(dim, par[0], par[1]);
  }
  throw std::invalid_argument("unknown field preset '" + name + "'");
}

} // namespace mwc
