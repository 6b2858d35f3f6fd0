#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mwc/fields.hpp"

using namespace mwc;

namespace {

Point pt2(double a, double b) {
  Point p(2);
  p << a, b;
  return p;
}

// random polynomial field of degree <= deg in each coordinate pair
MagneticField random_poly_field(int dim, int deg, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> uc(-0.5, 0.5);
  // coefficients for each (j,k), j<k, of a 2-variable polynomial in x_j,x_k
  std::vector<std::vector<double>> coef;
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) {
      std::vector<double> c((deg + 1) * (deg + 1));
      for (auto &v : c)
        v = uc(rng);
      coef.push_back(std::move(c));
    }
  const int d = deg;
  return MagneticField(
      dim,
      [coef, d, dim](int j, int k, const Point &x) {
        int idx = 0;
        for (int a = 0; a < dim; ++a)
          for (int b = a + 1; b < dim; ++b) {
            if (a == j && b == k)
              goto found;
            ++idx;
          }
      found:
        double v = 0.0;
        for (int p = 0; p <= d; ++p)
          for (int q = 0; p + q <= d; ++q)
            v += coef[idx][p * (d + 1) + q] * std::pow(x[j], p) *
                 std::pow(x[k], q);
        return v;
      },
      "poly");
}

} // namespace

TEST_CASE("transversal gauge of a constant field") {
  const MagneticField B = MagneticField::constant(2, 1.0);
  const VectorPotential A = transversal_gauge(B);
  // closed form A = (-b x2 / 2, b x1 / 2)
  const Point x = pt2(2.0, 4.0);
  CHECK(A(0, x) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(A(1, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transversal gauge of the zero field") {
  const MagneticField B = MagneticField::zero(2);
  const VectorPotential A = transversal_gauge(B);
  const Point x = pt2(-3.0, 7.0);
  CHECK(A(0, x) == 0.0);
  CHECK(A(1, x) == 0.0);
}

TEST_CASE("transversal gauge of B12 = x1") {
  const MagneticField B(
      2, [](int j, int k, const Point &x) { return (j == 0 && k == 1) ? x[0] : 0.0; },
      "linear");
  const VectorPotential A = transversal_gauge(B);
  // A_2(x) = + int_0^1 s (s x1) x1 ds = x1^2 / 3; at x = (3,0): 3
  const Point x = pt2(3.0, 0.0);
  CHECK(A(0, x) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(A(1, x) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("circulation of a constant potential") {
  const VectorPotential A(
      2, [](int j, const Point &) { return j == 0 ? 1.0 : 0.0; }, "const");
  CHECK(circulation(A, pt2(0, 0), pt2(2, 3)) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(circulation(A, pt2(1, 1), pt2(1, 1)) == doctest::Approx(0.0));
}

TEST_CASE("circulation of a gradient equals the potential difference") {
  // A = grad(x1 x2)
  const VectorPotential A(
      2, [](int j, const Point &x) { return j == 0 ? x[1] : x[0]; }, "grad");
  CHECK(circulation(A, pt2(0, 0), pt2(1, 2)) ==
        doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("circulation of gradients, random degree-5 potentials") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    // phi = sum c_pq x1^p x2^q, p+q <= 5
    std::vector<double> c(36);
    for (auto &v : c)
      v = uc(rng);
    auto phi = [&c](const Point &x) {
      double v = 0.0;
      for (int p = 0; p <= 5; ++p)
        for (int q = 0; p + q <= 5; ++q)
          v += c[p * 6 + q] * std::pow(x[0], p) * std::pow(x[1], q);
      return v;
    };
    const VectorPotential A(
        2,
        [&c](int j, const Point &x) {
          double v = 0.0;
          for (int p = 0; p <= 5; ++p)
            for (int q = 0; p + q <= 5; ++q) {
              const double cc = c[p * 6 + q];
              if (j == 0 && p >= 1)
                v += cc * p * std::pow(x[0], p - 1) * std::pow(x[1], q);
              if (j == 1 && q >= 1)
                v += cc * std::pow(x[0], p) * q * std::pow(x[1], q - 1);
            }
          return v;
        },
        "gradphi");
    const Point x = pt2(uc(rng), uc(rng)), y = pt2(uc(rng), uc(rng));
    CHECK(std::abs(circulation(A, x, y) - (phi(y) - phi(x))) <= 1e-10);
  }
}

TEST_CASE("circulation is antisymmetric in the endpoints") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  const VectorPotential A(
      2,
      [](int j, const Point &x) {
        return j == 0 ? std::sin(x[1]) + x[0] * x[0] : std::cos(x[0] * x[1]);
      },
      "smooth");
  for (int t = 0; t < 20; ++t) {
    const Point x = pt2(uc(rng), uc(rng)), y = pt2(uc(rng), uc(rng));
    CHECK(std::abs(circulation(A, x, y) + circulation(A, y, x)) <= 1e-14);
  }
}

TEST_CASE("flux through oriented triangles, constant field") {
  const MagneticField B = MagneticField::constant(2, 1.0);
  const Triangle t{pt2(0, 0), pt2(1, 0), pt2(0, 1)};
  CHECK(triangle_flux(B, t) == doctest::Approx(0.5).epsilon(1e-13));
  const Triangle t_rev{pt2(0, 0), pt2(0, 1), pt2(1, 0)};
  CHECK(triangle_flux(B, t_rev) == doctest::Approx(-0.5).epsilon(1e-13));
  const Triangle degenerate{pt2(0, 0), pt2(1, 1), pt2(2, 2)};
  CHECK(std::abs(triangle_flux(B, degenerate)) <= 1e-15);
}

TEST_CASE("flux antisymmetry under corner swaps, random polynomial fields") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  const MagneticField B = random_poly_field(2, 3, rng);
  for (int trial = 0; trial < 100; ++trial) {
    const Triangle t{pt2(uc(rng), uc(rng)), pt2(uc(rng), uc(rng)),
                     pt2(uc(rng), uc(rng))};
    const double f = triangle_flux(B, t);
    const Triangle sab{t.b, t.a, t.c};
    const Triangle sbc{t.a, t.c, t.b};
    const Triangle sac{t.c, t.b, t.a};
    CHECK(triangle_flux(B, sab) == doctest::Approx(-f).epsilon(1e-10));
    CHECK(triangle_flux(B, sbc) == doctest::Approx(-f).epsilon(1e-10));
    CHECK(triangle_flux(B, sac) == doctest::Approx(-f).epsilon(1e-10));
  }
}

TEST_CASE("flux factor matches the corner-mapped triangle flux") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uc(-1.5, 1.5);
  const MagneticField B = random_poly_field(2, 2, rng);
  for (int trial = 0; trial < 30; ++trial) {
    const Point x = pt2(uc(rng), uc(rng)), y = pt2(uc(rng), uc(rng)),
                z = pt2(uc(rng), uc(rng));
    const Triangle mapped{x - y + z, x - y - z, x + y - z};
    CHECK(4.0 * flux_factor(B, x, y, z) ==
          doctest::Approx(triangle_flux(B, mapped)).epsilon(1e-10));
  }
}

TEST_CASE("Stokes identity for polynomial fields") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  for (int rep = 0; rep < 5; ++rep) {
    const MagneticField B = random_poly_field(2, 3, rng);
    const VectorPotential A = transversal_gauge(B, 16);
    for (int trial = 0; trial < 4; ++trial) {
      const Triangle t{pt2(uc(rng), uc(rng)), pt2(uc(rng), uc(rng)),
                       pt2(uc(rng), uc(rng))};
      CHECK(stokes_residual(A, B, t, 16) <= 1e-10);
    }
  }
}

TEST_CASE("Stokes identity for zero field and a sinusoidal field") {
  const MagneticField B0 = MagneticField::zero(2);
  const VectorPotential A0 = VectorPotential::zero(2);
  const Triangle t{pt2(0, 0), pt2(1, 0), pt2(0, 1)};
  CHECK(stokes_residual(A0, B0, t) == 0.0);

  const MagneticField Bs(
      2,
      [](int j, int k, const Point &x) {
        return (j == 0 && k == 1) ? std::sin(x[0]) : 0.0;
      },
      "sin");
  const VectorPotential As = transversal_gauge(Bs, 16);
  CHECK(stokes_residual(As, Bs, t, 16) <= 1e-8);
}

TEST_CASE("phase factors have unit modulus and the right symmetries") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  const MagneticField B = MagneticField::constant(2, 1.0);
  const VectorPotential A = transversal_gauge(B);
  for (int t = 0; t < 20; ++t) {
    const Point x = pt2(uc(rng), uc(rng)), y = pt2(uc(rng), uc(rng)),
                z = pt2(uc(rng), uc(rng));
    const auto lam = circulation_phase(A, x, y);
    CHECK(std::abs(std::abs(lam) - 1.0) <= 1e-15);
    CHECK(std::abs(lam - std::conj(circulation_phase(A, y, x))) <= 1e-14);
    // omega against the flux oracle on the mapped corners
    const auto om = flux_phase(B, x, y, z);
    const Triangle mapped{x - y + z, x - y - z, x + y - z};
    const auto expected = std::polar(1.0, -triangle_flux(B, mapped));
    CHECK(std::abs(om - expected) <= 1e-12);
  }
  // omega == 1 for the zero field
  const MagneticField Z = MagneticField::zero(2);
  CHECK(std::abs(flux_phase(Z, pt2(1, 0), pt2(0, 2), pt2(3, 1)) - 1.0) <=
        1e-15);
}

TEST_CASE("gauge transformation keeps the field") {
  const MagneticField B = MagneticField::constant(2, 0.7);
  const VectorPotential A = transversal_gauge(B);
  const ScalarPotential phi{
      [](const Point &x) { return x[0] * x[1]; },
      [](int j, const Point &x) { return j == 0 ? x[1] : x[0]; },
      "x1x2"};
  const VectorPotential Ap = apply_gauge(A, phi);

  SUBCASE("phi == 0 leaves A unchanged") {
    const ScalarPotential zero{[](const Point &) { return 0.0; },
                               [](int, const Point &) { return 0.0; },
                               "0"};
    const VectorPotential same = apply_gauge(A, zero);
    const Point x = pt2(0.3, -1.2);
    CHECK(same(0, x) == doctest::Approx(A(0, x)).epsilon(1e-15));
    CHECK(same(1, x) == doctest::Approx(A(1, x)).epsilon(1e-15));
  }

  SUBCASE("A = 0, phi = x1 x2 gives (x2, x1)") {
    const VectorPotential grad = apply_gauge(VectorPotential::zero(2), phi);
    const Point x = pt2(2.0, -3.0);
    CHECK(grad(0, x) == doctest::Approx(-3.0));
    CHECK(grad(1, x) == doctest::Approx(2.0));
  }

  SUBCASE("dA' = dA by finite differences") {
    const double fd = 1e-4;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uc(-1.5, 1.5);
    for (int t = 0; t < 10; ++t) {
      const Point x = pt2(uc(rng), uc(rng));
      auto curl = [&](const VectorPotential &V) {
        Point xp = x, xm = x;
        xp[0] += fd;
        xm[0] -= fd;
        const double d1A2 = (V(1, xp) - V(1, xm)) / (2 * fd);
        xp = x;
        xm = x;
        xp[1] += fd;
        xm[1] -= fd;
        const double d2A1 = (V(0, xp) - V(0, xm)) / (2 * fd);
        return d1A2 - d2A1;
      };
      CHECK(std::abs(curl(Ap) - curl(A)) <= 1e-8);
    }
  }
}

TEST_CASE("one-dimensional fields vanish") {
  const MagneticField B = MagneticField::constant(1, 5.0);
  Point x(1);
  x << 2.0;
  CHECK(B(0, 0, x) == 0.0);
  CHECK(B.is_zero());
}

TEST_CASE("closedness residual of preset fields") {
  // dB = 0 by finite differences for the periodic preset in 3 dimensions
  const MagneticField B = MagneticField::periodic(3, 1.0, 0.5, 0.7);
  const double fd = 1e-4;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    Point x(3);
    x << uc(rng), uc(rng), uc(rng);
    auto dB = [&](int l, int j, int k) {
      Point xp = x, xm = x;
      xp[l] += fd;
      xm[l] -= fd;
      return (B(j, k, xp) - B(j, k, xm)) / (2 * fd);
    };
    const double res = dB(0, 1, 2) + dB(1, 2, 0) + dB(2, 0, 1);
    CHECK(std::abs(res) <= 1e-8);
  }
}

TEST_CASE("decay hypothesis report for the short-range preset") {
  const MagneticField B = MagneticField::shortrange(2, 1.0, 1.0);
  const DecayReport rep = decay_hypothesis_report(B);
  CHECK(rep.finite);
  CHECK(rep.epsilon == doctest::Approx(1.0));
  CHECK(rep.max_weighted_derivative > 0.0);
  CHECK(rep.max_weighted_derivative < 100.0);

  const MagneticField C = MagneticField::constant(2, 1.0);
  CHECK_THROWS_AS(decay_hypothesis_report(C), PreconditionError);
}

TEST_CASE("field preset parsing") {
  CHECK(parse_field_preset(2, "constant:0.5")(0, 1, pt2(0, 0)) ==
        doctest::Approx(0.5));
  CHECK(parse_field_preset(2, "zero").is_zero());
  CHECK(parse_field_preset(2, "periodic:1,0.5,0.3")(0, 1, pt2(0, 0)) ==
        doctest::Approx(1.5));
  CHECK_THROWS_AS(parse_field_preset(2, "nope:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_field_preset(2, "constant:1,2"),
                  std::invalid_argument);
}
