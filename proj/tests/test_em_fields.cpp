#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "diraclab/em_fields.hpp"
#include "diraclab/random.hpp"

using namespace diraclab;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs_diff(const Tensor2& a, const Tensor2& b) {
  double n = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      n = std::max(n, std::abs(a(mu, nu) - b(mu, nu)));
  return n;
}
}  // namespace

TEST_CASE("Wei fields: radial electric field and axial magnetic field") {
  const FieldConfiguration wei = FieldConfiguration::wei(2.0, 1.0);
  const FieldSample s = wei.evaluate({2.0, 0.0, 0.0});
  CHECK(s.E.x == 1.0);
  CHECK(s.E.y == 0.0);
  CHECK(s.E.z == 0.0);
  CHECK(s.B.x == 0.0);
  CHECK(s.B.y == 0.0);
  CHECK(s.B.z == 1.0);

  const FieldConfiguration unit = FieldConfiguration::wei(1.0, 1.0);
  const FieldSample t = unit.evaluate({1.0, kPi / 2.0, 5.0});
  CHECK(std::abs(t.E.x) <= 1e-15);
  CHECK(t.E.y == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.E.z == 0.0);
  CHECK(t.B.z == 1.0);
}

TEST_CASE("Wei fields are independent of z and rotate with phi") {
  const FieldConfiguration wei = FieldConfiguration::wei(1.5, 0.7);
  DeterministicRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double r = rng.uniform(0.1, 5.0);
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const FieldSample a = wei.evaluate({r, phi, rng.uniform(-3.0, 3.0)});
    const FieldSample b = wei.evaluate({r, phi, rng.uniform(-3.0, 3.0)});
    CHECK(norm(a.E - b.E) == 0.0);
    CHECK(norm(a.B - b.B) == 0.0);

    // r |E| = lambda, E.B = 0, B uniform
    CHECK(r * norm(a.E) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(dot(a.E, a.B) == 0.0);

    // rotating phi rotates E accordingly and fixes B
    const double delta = rng.uniform(0.0, 2.0 * kPi);
    const FieldSample c = wei.evaluate({r, phi + delta, 0.0});
    const Vec3 rotated{a.E.x * std::cos(delta) - a.E.y * std::sin(delta),
                       a.E.x * std::sin(delta) + a.E.y * std::cos(delta), 0.0};
    CHECK(norm(c.E - rotated) <= 1e-14 * norm(a.E));
    CHECK(norm(c.B - a.B) == 0.0);
  }
}

TEST_CASE("Wei evaluation rejects the line-charge singularity") {
  const FieldConfiguration wei = FieldConfiguration::wei(1.0, 1.0);
  CHECK_THROWS_AS(wei.evaluate({0.0, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(wei.evaluate({-1.0, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(wei.evaluate_local_cylindrical({0.0, 0.0, 0.0}),
                  std::domain_error);
}

TEST_CASE("uniform and custom variants evaluate as given") {
  const FieldConfiguration zero = FieldConfiguration::uniform({}, {});
  const FieldSample s = zero.evaluate({3.0, 1.0, -2.0});
  CHECK(norm(s.E) == 0.0);
  CHECK(norm(s.B) == 0.0);

  const FieldConfiguration custom =
      FieldConfiguration::custom([](const CylindricalPoint& p) {
        return FieldSample{{p.r, 0.0, 0.0}, {0.0, 0.0, p.z}};
      });
  const FieldSample t = custom.evaluate({2.0, 0.0, 5.0});
  CHECK(t.E.x == 2.0);
  CHECK(t.B.z == 5.0);
}

TEST_CASE("local cylindrical components") {
  const FieldConfiguration wei = FieldConfiguration::wei(3.0, 2.0);
  const FieldSample local = wei.evaluate_local_cylindrical({2.0, 1.234, 0.0});
  CHECK(local.E.x == 1.5);  // radial, exactly lambda / r
  CHECK(local.E.y == 0.0);
  CHECK(local.E.z == 0.0);
  CHECK(local.B.z == 2.0);

  // generic rotation path agrees with the exact Wei form
  const FieldSample rotated =
      to_local_cylindrical(wei.evaluate({2.0, 1.234, 0.0}), 1.234);
  CHECK(std::abs(rotated.E.x - 1.5) <= 1e-14);
  CHECK(std::abs(rotated.E.y) <= 1e-14);
}

TEST_CASE("lambda from a uniform volume charge") {
  CHECK(lambda_from_volume_charge(2.0, 1.0) == 1.0);
  CHECK(lambda_from_volume_charge(0.0, 5.0) == 0.0);
  CHECK(lambda_from_volume_charge(1.0, 2.0) == 2.0);
  CHECK_THROWS_AS(lambda_from_volume_charge(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("field tensor components") {
  const Tensor2 f1 = field_tensor({3.0, 0.0, 0.0}, {});
  CHECK(f1(0, 1) == -3.0);
  CHECK(f1(1, 0) == 3.0);
  double rest = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      if (!((mu == 0 && nu == 1) || (mu == 1 && nu == 0)))
        rest = std::max(rest, std::abs(f1(mu, nu)));
  CHECK(rest == 0.0);

  const Tensor2 f2 = field_tensor({}, {0.0, 0.0, 2.0});
  CHECK(f2(1, 2) == 2.0);
  CHECK(f2(2, 1) == -2.0);

  CHECK(field_tensor({}, {}).max_abs_norm() == 0.0);
}

TEST_CASE("moment tensor components and substitution rule") {
  DipoleParams alpha_only;
  alpha_only.alpha_pol = 2.0;
  const Tensor2 k1 = moment_tensor({1.0, 0.0, 0.0}, {}, alpha_only);
  CHECK(k1(0, 1) == -2.0);

  DipoleParams chi_only;
  chi_only.chi = 3.0;
  const Tensor2 k2 = moment_tensor({}, {0.0, 0.0, 1.0}, chi_only);
  CHECK(k2(1, 2) == -3.0);

  CHECK(moment_tensor({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}, DipoleParams{})
            .max_abs_norm() == 0.0);

  // K(E, B) == F(alpha_pol E, -chi B) entrywise, exactly.
  DeterministicRng rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 e = rng.uniform_vec3(-2.0, 2.0);
    const Vec3 b = rng.uniform_vec3(-2.0, 2.0);
    DipoleParams p;
    p.alpha_pol = rng.uniform(-2.0, 2.0);
    p.chi = rng.uniform(-2.0, 2.0);
    const Tensor2 k = moment_tensor(e, b, p);
    const Tensor2 f = field_tensor(p.alpha_pol * e, -1.0 * (p.chi * b));
    CHECK(max_abs_diff(k, f) == 0.0);
  }
}

TEST_CASE("antisymmetry holds for random fields") {
  DeterministicRng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 e = rng.uniform_vec3(-5.0, 5.0);
    const Vec3 b = rng.uniform_vec3(-5.0, 5.0);
    DipoleParams p;
    p.alpha_pol = rng.uniform(-3.0, 3.0);
    p.chi = rng.uniform(-3.0, 3.0);
    CHECK(field_tensor(e, b).is_antisymmetric());
    CHECK(moment_tensor(e, b, p).is_antisymmetric());
  }
}

TEST_CASE("tensor pair setter guards the diagonal") {
  Tensor2 t;
  t.set_pair(0, 3, 2.5);
  CHECK(t(0, 3) == 2.5);
  CHECK(t(3, 0) == -2.5);
  CHECK_THROWS_AS(t.set_pair(1, 1, 1.0), std::invalid_argument);
}

TEST_CASE("dipole parameter validation") {
  DipoleParams good;
  good.mass = 1.0;
  CHECK_NOTHROW(validate(good));

  DipoleParams negative_mass;
  negative_mass.mass = -0.5;
  CHECK_THROWS_AS(validate(negative_mass), std::invalid_argument);

  DipoleParams non_finite;
  non_finite.chi = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate(non_finite), std::invalid_argument);
}
