#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "hermsv/diagnostics.hpp"
#include "hermsv/transform.hpp"

using namespace hermsv;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
// (pi/2)^{1/4} and the H_1^{sqrt2} moment of x e^{-x^2}, 50-digit values
constexpr double kQuarterRootPiHalf = 1.1195151349202476;
constexpr double kXGaussianMode1 = 0.55975756746012381;

CoeffVec random_coeffs(const BasisSpec& spec, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CoeffVec u = CoeffVec::zero(spec);
  for (double& v : u.values) v = dist(rng);
  return u;
}
}  // namespace

TEST_CASE("gauss_hermite_rule: symmetry and moment exactness") {
  for (int M : {1, 2, 7, 20, 63}) {
    for (double c : {1.0, 3.0}) {
      const QuadRule rule = gauss_hermite_rule(M, c);
      REQUIRE(rule.node_count == M);
      for (int j = 0; j < M; ++j) {
        CHECK(rule.folded_weights[static_cast<size_t>(j)] > 0.0);
        CHECK(rule.nodes[static_cast<size_t>(j)] ==
              -rule.nodes[static_cast<size_t>(M - 1 - j)]);
        CHECK(rule.folded_weights[static_cast<size_t>(j)] ==
              rule.folded_weights[static_cast<size_t>(M - 1 - j)]);
      }

      // int x^k e^{-c x^2} dx = Gamma((k+1)/2) / c^{(k+1)/2} for even k.
      const double scale = 1.0 / std::sqrt(c);
      for (int k = 0; k <= 2 * M - 1; ++k) {
        double sum = 0.0, abs_sum = 0.0;
        for (int j = 0; j < M; ++j) {
          const double x = rule.nodes[static_cast<size_t>(j)] * scale;
          const double term = rule.folded_weights[static_cast<size_t>(j)] *
                              std::pow(x, k) * std::exp(-c * x * x);
          sum += term;
          abs_sum += std::abs(term);
        }
        sum *= scale;
        abs_sum *= scale;
        const double exact =
            (k % 2 == 1) ? 0.0
                         : std::exp(std::lgamma((k + 1) / 2.0) -
                                    0.5 * (k + 1) * std::log(c));
        CHECK(std::abs(sum - exact) <= 1e-12 * std::max(abs_sum, 1e-300));
      }
    }
  }
}

TEST_CASE("make_quadrature sizing") {
  SUBCASE("Burgers rule at N=40, alpha=sqrt2") {
    const QuadRule r = make_quadrature(BasisSpec{kSqrt2, 40}, 2);
    CHECK(r.gauss_exponent == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(r.node_count == 63);
  }
  SUBCASE("degenerate N=0") {
    CHECK(make_quadrature(BasisSpec{1.0, 0}, 2).node_count == 3);
  }
  SUBCASE("linear flux") {
    const QuadRule r = make_quadrature(BasisSpec{1.0, 10}, 1);
    CHECK(r.gauss_exponent == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.node_count == 13);
  }
  CHECK_THROWS_AS(make_quadrature(BasisSpec{1.0, 10}, 0), std::invalid_argument);
}

TEST_CASE("analyze: Gaussian ground state at alpha=sqrt2") {
  // e^{-x^2} is proportional to H_0^{sqrt2}; only mode 0 survives and its
  // coefficient is (pi/2)^{1/4}.
  const BasisSpec spec{kSqrt2, 12};
  const CoeffVec u = analyze([](double x) { return std::exp(-x * x); }, spec,
                             make_quadrature(spec, 2));
  CHECK(u[0] == doctest::Approx(kQuarterRootPiHalf).epsilon(1e-13));
  CHECK(u[0] == doctest::Approx(std::pow(M_PI / 2.0, 0.25)).epsilon(1e-13));
  for (int n = 1; n <= 12; ++n) CHECK(std::abs(u[n]) < 1e-12);
}

TEST_CASE("analyze: orthonormality recovers a unit coefficient") {
  const BasisSpec spec{1.3, 10};
  const CoeffVec u = analyze([&](double x) { return eval_basis(spec, x)[7]; },
                             spec, make_quadrature(spec, 1));
  for (int n = 0; n <= 10; ++n) {
    CHECK(std::abs(u[n] - (n == 7 ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("analyze: odd Gaussian moment lands in mode 1") {
  const BasisSpec spec{kSqrt2, 8};
  const CoeffVec u = analyze([](double x) { return x * std::exp(-x * x); },
                             spec, make_quadrature(spec, 2));
  CHECK(u[1] == doctest::Approx(kXGaussianMode1).epsilon(1e-13));
  for (int n = 0; n <= 8; ++n) {
    if (n != 1) CHECK(std::abs(u[n]) < 1e-12);
  }
}

TEST_CASE("analyze rejects non-finite samples naming the node") {
  const BasisSpec spec{1.0, 4};
  const QuadRule rule = make_quadrature(spec, 1);
  CHECK_THROWS_WITH_AS(
      analyze([](double) { return std::nan(""); }, spec, rule),
      doctest::Contains("node"), std::runtime_error);
}

TEST_CASE("flux-rule exactness: coefficients of u^2 for u in R_N") {
  // The Burgers-sized rule reproduces the true coefficients of u^2 through
  // mode N+1; a 3x-oversampled rule is the reference.
  const BasisSpec spec{kSqrt2, 40};
  const CoeffVec u = random_coeffs(spec, 11);
  auto usq = [&](double x) {
    const double v = eval_series(u, x);
    return v * v;
  };
  const BasisSpec ext{spec.alpha, spec.n_max + 1};
  const QuadRule rule = make_quadrature(spec, 2);
  const QuadRule fine = gauss_hermite_rule(3 * rule.node_count, rule.gauss_exponent);
  const CoeffVec a = analyze(usq, ext, rule);
  const CoeffVec b = analyze(usq, ext, fine);
  for (int n = 0; n <= ext.n_max; ++n) {
    CHECK(std::abs(a[n] - b[n]) < 1e-12);
  }
}

TEST_CASE("project") {
  const BasisSpec spec{1.0, 10};
  const CoeffVec u = random_coeffs(spec, 3);
  SUBCASE("projection to the native degree is the identity") {
    const CoeffVec p = project(u, 10);
    for (int n = 0; n <= 10; ++n) CHECK(p[n] == u[n]);
  }
  SUBCASE("projection annihilates higher modes") {
    const CoeffVec h = CoeffVec::unit(BasisSpec{1.0, 6}, 6);
    const CoeffVec p = project(h, 5);
    for (int n = 0; n <= 5; ++n) CHECK(p[n] == 0.0);
  }
  SUBCASE("zero-extension when re-embedding") {
    const CoeffVec p = project(u, 14);
    CHECK(p.spec.n_max == 14);
    for (int n = 11; n <= 14; ++n) CHECK(p[n] == 0.0);
  }
  SUBCASE("tail norm by Parseval") {
    const CoeffVec p = project(u, 6);
    double tail = 0.0;
    for (int n = 7; n <= 10; ++n) tail += u[n] * u[n];
    double diff = 0.0;
    for (int n = 0; n <= 10; ++n) {
      const double pn = (n <= 6) ? p[n] : 0.0;
      diff += (u[n] - pn) * (u[n] - pn);
    }
    CHECK(diff == doctest::Approx(tail).epsilon(1e-14));
  }
}

TEST_CASE("op_dx") {
  const BasisSpec spec{1.7, 9};
  SUBCASE("single-mode stencil") {
    for (int n : {0, 4, 9}) {
      const CoeffVec d = op_dx(CoeffVec::unit(spec, n));
      for (int m = 0; m <= 10; ++m) {
        double expect = 0.0;
        if (m == n + 1) expect = -0.5 * std::sqrt(lambda(spec, n + 1));
        if (m == n - 1) expect = 0.5 * std::sqrt(lambda(spec, n));
        CHECK(d[m] == doctest::Approx(expect).epsilon(1e-15));
      }
    }
  }
  SUBCASE("ground state, alpha = 1") {
    const CoeffVec d = op_dx(CoeffVec::unit(BasisSpec{1.0, 0}, 0));
    CHECK(d[0] == 0.0);
    CHECK(d[1] == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-15));
  }
  SUBCASE("finite differences of the synthesis") {
    const CoeffVec u = random_coeffs(BasisSpec{kSqrt2, 16}, 5);
    const CoeffVec d = op_dx(u);
    const double h = 1e-5;
    for (double x : {-1.1, 0.0, 0.9, 2.3}) {
      const double fd = (eval_series(u, x + h) - eval_series(u, x - h)) / (2 * h);
      CHECK(std::abs(eval_series(d, x) - fd) < 1e-6);
    }
  }
}

TEST_CASE("op_Dx") {
  const BasisSpec spec{1.7, 9};
  SUBCASE("lowering action") {
    for (int n : {1, 5, 9}) {
      const CoeffVec d = op_Dx(CoeffVec::unit(spec, n));
      for (int m = 0; m <= d.spec.n_max; ++m) {
        const double expect = (m == n - 1) ? std::sqrt(lambda(spec, n)) : 0.0;
        CHECK(d[m] == doctest::Approx(expect).epsilon(1e-15));
      }
    }
  }
  SUBCASE("kills the ground state") {
    const CoeffVec d = op_Dx(CoeffVec::unit(BasisSpec{2.0, 0}, 0));
    for (double v : d.values) CHECK(v == 0.0);
  }
  SUBCASE("D_x = d/dx + alpha^2 x entrywise") {
    const CoeffVec u = random_coeffs(spec, 8);
    const CoeffVec lhs = op_Dx(u);
    const CoeffVec d = op_dx(u);
    const CoeffVec xw = op_x(u);
    const double a2 = spec.alpha * spec.alpha;
    for (int m = 0; m <= spec.n_max + 1; ++m) {
      const double l = (m <= lhs.spec.n_max) ? lhs[m] : 0.0;
      CHECK(std::abs(l - (d[m] + a2 * xw[m])) < 1e-13);
    }
  }
  SUBCASE("exact coefficient-space orthogonality") {
    for (int n = 0; n <= 9; ++n) {
      for (int m = 0; m <= 9; ++m) {
        const double ip =
            inner(op_Dx(CoeffVec::unit(spec, n)), op_Dx(CoeffVec::unit(spec, m)));
        const double expect = (n == m) ? lambda(spec, n) : 0.0;
        CHECK(std::abs(ip - expect) < 1e-12 * std::max(1.0, lambda(spec, 9)));
      }
    }
  }
}

TEST_CASE("op_x") {
  const BasisSpec spec{1.7, 9};
  SUBCASE("single-mode stencil") {
    for (int n : {0, 4, 9}) {
      const CoeffVec d = op_x(CoeffVec::unit(spec, n));
      const double inv2a2 = 0.5 / (spec.alpha * spec.alpha);
      for (int m = 0; m <= 10; ++m) {
        double expect = 0.0;
        if (m == n + 1) expect = std::sqrt(lambda(spec, n + 1)) * inv2a2;
        if (m == n - 1) expect = std::sqrt(lambda(spec, n)) * inv2a2;
        CHECK(d[m] == doctest::Approx(expect).epsilon(1e-15));
      }
    }
  }
  SUBCASE("ground state, alpha = 1") {
    const CoeffVec d = op_x(CoeffVec::unit(BasisSpec{1.0, 0}, 0));
    CHECK(d[1] == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  }
  SUBCASE("pointwise multiplication by x") {
    const CoeffVec u = random_coeffs(BasisSpec{kSqrt2, 14}, 21);
    const CoeffVec xu = op_x(u);
    for (double x : {-2.0, -0.4, 0.8, 1.9}) {
      CHECK(std::abs(eval_series(xu, x) - x * eval_series(u, x)) < 1e-10);
    }
  }
}

TEST_CASE("op_Lalpha") {
  const BasisSpec spec{kSqrt2, 11};
  SUBCASE("diagonal eigenvalue action") {
    for (int n : {0, 3, 11}) {
      const CoeffVec l = op_Lalpha(CoeffVec::unit(spec, n));
      for (int m = 0; m <= 11; ++m) {
        const double expect = (m == n) ? lambda(spec, n) : 0.0;
        CHECK(l[m] == doctest::Approx(expect).epsilon(1e-15));
      }
    }
  }
  SUBCASE("<L_alpha u, v> = <D_x u, D_x v>") {
    const CoeffVec u = random_coeffs(spec, 31);
    const CoeffVec v = random_coeffs(spec, 32);
    CHECK(inner(op_Lalpha(u), v) ==
          doctest::Approx(inner(op_Dx(u), op_Dx(v))).epsilon(1e-12));
  }
}

TEST_CASE("commutator defect of projection and derivative") {
  const BasisSpec spec{kSqrt2, 13};
  const int N = 12;
  SUBCASE("top basis function") {
    const CoeffVec phi = CoeffVec::unit(spec, N);
    const CoeffVec d = commutator_defect(phi, N);
    CHECK(d[N + 1] ==
          doctest::Approx(0.5 * std::sqrt(lambda(spec, N + 1))).epsilon(1e-15));
    CHECK(d[N] == 0.0);
  }
  SUBCASE("low-degree input has zero defect") {
    CoeffVec phi = CoeffVec::zero(spec);
    phi[3] = 2.5;
    for (double v : commutator_defect(phi, N).values) CHECK(v == 0.0);
  }
  SUBCASE("random input matches the two projections") {
    const CoeffVec phi = random_coeffs(spec, 99);
    const CoeffVec formula = commutator_defect(phi, N);
    const CoeffVec dphi = op_dx(phi);               // modes 0..N+2
    const CoeffVec dProj = op_dx(project(phi, N));  // modes 0..N+1
    for (int m = 0; m <= N + 1; ++m) {
      const double lhs = (m <= N ? dphi[m] : 0.0) - dProj[m];
      CHECK(std::abs(lhs - formula[m]) < 1e-13);
    }
  }
  CHECK_THROWS_AS(commutator_defect(CoeffVec::zero(BasisSpec{1.0, 5}), 5),
                  std::invalid_argument);
}

TEST_CASE("Parseval and the derivative norm dominations") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double alpha : {1.0, kSqrt2, 3.0}) {
    const BasisSpec spec{alpha, 24};
    const QuadRule rule = make_quadrature(spec, 2);
    for (int rep = 0; rep < 20; ++rep) {
      CoeffVec u = CoeffVec::zero(spec);
      for (double& v : u.values) v = dist(rng);

      // Parseval through quadrature of u^2.
      const double l2sq = inner(u, u);
      const double quad = rule.integrate([&](double x) {
        const double v = eval_series(u, x);
        return v * v;
      });
      CHECK(std::abs(quad - l2sq) < 1e-10);

      // ||dx u||^2 <= 2 (||D_x u||^2 + alpha^2 ||u||^2) and
      // ||x u||^2 <= (2/alpha^4) (||D_x u||^2 + alpha^2 ||u||^2).
      const double ddx = inner(op_dx(u), op_dx(u));
      const double dDx = inner(op_Dx(u), op_Dx(u));
      const double dx2 = inner(op_x(u), op_x(u));
      const double a2 = alpha * alpha;
      const double budget = dDx + a2 * l2sq;
      CHECK(ddx <= 2.0 * budget * (1 + 1e-14));
      CHECK(dx2 <= 2.0 / (a2 * a2) * budget * (1 + 1e-14));
    }
  }
}
