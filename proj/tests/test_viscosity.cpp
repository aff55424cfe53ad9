#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hermsv/transform.hpp"
#include "hermsv/viscosity.hpp"

using namespace hermsv;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;

CoeffVec random_coeffs(const BasisSpec& spec, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CoeffVec u = CoeffVec::zero(spec);
  for (double& v : u.values) v = dist(rng);
  return u;
}
}  // namespace

TEST_CASE("parameter laws") {
  ViscositySpec v;
  v.kind = ViscosityKind::HighModeQ;
  v.eps_coeff = 0.5;
  v.eps_exp = -0.33;
  v.m_coeff = 5.0;
  v.m_exp = 0.16;
  CHECK(v.eps(40) == doctest::Approx(0.5 * std::pow(40.0, -0.33)).epsilon(1e-15));
  CHECK(v.m(40) == 9);   // floor(5 * 40^0.16)
  CHECK(v.m(70) == 9);   // floor(5 * 70^0.16) = floor(9.87)
  CHECK(v.m(2) == 1);    // clamped to [1, N-1]
  CHECK_NOTHROW(v.validate(40));
  CHECK_THROWS_AS(v.validate(1), std::invalid_argument);
  v.eps_coeff = 0.0;
  CHECK_THROWS_AS(v.validate(40), std::invalid_argument);
}

TEST_CASE("make_multipliers: the fractional family") {
  const MultiplierSet q = make_multipliers(40, 9, MultiplierFamily::PaperFraction);
  REQUIRE(q.size() == 41);
  for (int k = 0; k <= 9; ++k) CHECK(q.q[static_cast<size_t>(k)] == 0.0);
  CHECK(q.q[20] == doctest::Approx(40.0 / 31.0 * 11.0 / 20.0).epsilon(1e-15));
  CHECK(q.q[20] == doctest::Approx(0.70967741935483875).epsilon(1e-15));
  CHECK(q.q[40] == 1.0);
  for (int k = 10; k <= 40; ++k) {
    CHECK(q.q[static_cast<size_t>(k)] >= 1.0 - 9.0 / k);
    CHECK(q.q[static_cast<size_t>(k)] <= 1.0 + 1e-15);
  }
  CHECK_THROWS_AS(make_multipliers(40, 40, MultiplierFamily::PaperFraction),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_multipliers(40, 0, MultiplierFamily::PaperFraction),
                  std::invalid_argument);
}

TEST_CASE("apply_Q") {
  const BasisSpec spec{kSqrt2, 40};
  const MultiplierSet q = make_multipliers(40, 9, MultiplierFamily::PaperFraction);
  SUBCASE("low modes are annihilated") {
    CoeffVec u = CoeffVec::zero(spec);
    for (int k = 0; k <= 9; ++k) u[k] = 1.0 + k;
    for (double v : apply_Q(u, q).values) CHECK(v == 0.0);
  }
  SUBCASE("all-ones multipliers act as the identity") {
    MultiplierSet ones;
    ones.q.assign(41, 1.0);
    const CoeffVec u = random_coeffs(spec, 17);
    const CoeffVec qu = apply_Q(u, ones);
    for (int k = 0; k <= 40; ++k) CHECK(qu[k] == u[k]);
  }
  SUBCASE("||D_x Q u||^2 = sum q_k^2 lambda_k u_k^2") {
    const CoeffVec u = random_coeffs(spec, 18);
    const CoeffVec dqu = op_Dx(apply_Q(u, q));
    double expect = 0.0;
    for (int k = 0; k <= 40; ++k) {
      expect += q.q[static_cast<size_t>(k)] * q.q[static_cast<size_t>(k)] *
                lambda(spec, k) * u[k] * u[k];
    }
    CHECK(inner(dqu, dqu) == doctest::Approx(expect).epsilon(1e-14));
  }
  SUBCASE("length mismatch is rejected") {
    CHECK_THROWS_AS(apply_Q(CoeffVec::zero(BasisSpec{1.0, 12}), q),
                    std::invalid_argument);
  }
}

TEST_CASE("scheme1_viscosity") {
  const int N = 24;
  const BasisSpec spec{kSqrt2, N};
  const MultiplierSet q = make_multipliers(N, 6, MultiplierFamily::PaperFraction);
  const double eps = 0.11;

  SUBCASE("modes below the cutoff produce nothing") {
    for (int k = 0; k <= 6; ++k) {
      const CoeffVec t = scheme1_viscosity(CoeffVec::unit(spec, k), q, eps);
      for (double v : t.values) CHECK(v == 0.0);
    }
  }
  SUBCASE("top mode: hand-composed band values") {
    const CoeffVec t = scheme1_viscosity(CoeffVec::unit(spec, N), q, eps);
    const double qs = q.q[static_cast<size_t>(N)] * std::sqrt(lambda(spec, N));
    for (int m = 0; m <= N; ++m) {
      double expect = 0.0;
      if (m == N) expect = -eps * qs * 0.5 * std::sqrt(lambda(spec, N));
      if (m == N - 2) expect = eps * qs * 0.5 * std::sqrt(lambda(spec, N - 1));
      CHECK(t[m] == doctest::Approx(expect).epsilon(1e-14));
    }
  }
  SUBCASE("quadratic form splits into the two energy terms") {
    // <eps dx D_x Q u, u> = -eps sum q_k lambda_k u_k^2
    //                       + eps alpha^2 <D_x Q u, x u>
    const CoeffVec u = random_coeffs(spec, 77);
    const double lhs = inner(scheme1_viscosity(u, q, eps), u);
    double term1 = 0.0;
    for (int k = 0; k <= N; ++k) {
      term1 += q.q[static_cast<size_t>(k)] * lambda(spec, k) * u[k] * u[k];
    }
    const double term2 = inner(op_Dx(apply_Q(u, q)), op_x(u));
    const double rhs = -eps * term1 + eps * spec.alpha * spec.alpha * term2;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("scheme2_viscosity") {
  const BasisSpec spec{kSqrt2, 12};
  SUBCASE("ground mode is untouched") {
    for (double v : scheme2_viscosity(CoeffVec::unit(spec, 0), 0.3).values) {
      CHECK(v == 0.0);
    }
  }
  SUBCASE("single mode scaling") {
    const CoeffVec t = scheme2_viscosity(CoeffVec::unit(spec, 5), 0.1);
    CHECK(t[5] == doctest::Approx(-2.0).epsilon(1e-15));  // -0.1 * 20
  }
  SUBCASE("quadratic form is the D_x energy") {
    const CoeffVec u = random_coeffs(spec, 13);
    const double eps = 0.07;
    CHECK(-inner(scheme2_viscosity(u, eps), u) / eps ==
          doctest::Approx(inner(op_Dx(u), op_Dx(u))).epsilon(1e-13));
  }
  SUBCASE("dissipative, with equality only on the ground state") {
    const CoeffVec u = random_coeffs(spec, 14);
    CHECK(inner(scheme2_viscosity(u, 0.3), u) < 0.0);
    CoeffVec ground = CoeffVec::zero(spec);
    ground[0] = 1.7;
    CHECK(inner(scheme2_viscosity(ground, 0.3), ground) == 0.0);
  }
}

TEST_CASE("Q is a D_x contraction") {
  std::mt19937 rng(2026);
  for (int N : {10, 40, 80}) {
    ViscositySpec law;
    law.kind = ViscosityKind::HighModeQ;
    const MultiplierSet q =
        make_multipliers(N, law.m(N), MultiplierFamily::PaperFraction);
    const BasisSpec spec{kSqrt2, N};
    for (int rep = 0; rep < 10; ++rep) {
      const CoeffVec u = random_coeffs(spec, rng());
      const CoeffVec dq = op_Dx(apply_Q(u, q));
      const CoeffVec d = op_Dx(u);
      CHECK(inner(dq, dq) <= inner(d, d) * (1 + 1e-14));
    }
  }
}

TEST_CASE("lower bound ||D_x u||^2 <= 4 (||D_x Q u||^2 + alpha^2 m^2 ||u||^2)") {
  std::mt19937 rng(31415);
  for (double alpha : {1.0, kSqrt2}) {
    for (int N : {10, 40, 80}) {
      ViscositySpec law;
      law.kind = ViscosityKind::HighModeQ;
      const int m = law.m(N);
      const MultiplierSet q = make_multipliers(N, m, MultiplierFamily::PaperFraction);
      const BasisSpec spec{alpha, N};
      for (int rep = 0; rep < 25; ++rep) {
        const CoeffVec u = random_coeffs(spec, rng());
        const double lhs = inner(op_Dx(u), op_Dx(u));
        const CoeffVec dq = op_Dx(apply_Q(u, q));
        const double rhs =
            inner(dq, dq) + alpha * alpha * m * m * inner(u, u);
        const double empirical = lhs / rhs;
        INFO("empirical constant ", empirical, " at N=", N, " alpha=", alpha);
        CHECK(lhs <= 4.0 * rhs);
      }
    }
  }
}
