#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "fracwave/errors.hpp"
#include "fracwave/models.hpp"

using namespace fracwave;

TEST_CASE("catalog") {
  const auto names = preset_names();
  CHECK(names.size() == 7);
  for (const auto& name : names) {
    const auto p = preset(name);
    CHECK(p.name == name);
    CHECK(!p.description.empty());
    CHECK(p.spec.alpha() > p.spec.beta());
    CHECK(p.grid_length > 0.0);
  }
  CHECK(preset("ost").spec.kind() == DispersionKind::laplacian);
  CHECK(preset("npbo").spec.kind() == DispersionKind::hilbert);
  CHECK(decay_exponent(preset("plasma").spec).value() == 2);
  CHECK(decay_exponent(preset("mbo").spec).value() == 3);
  CHECK(decay_exponent(preset("ks").spec).is_schwartz());
  CHECK(decay_exponent(preset("dkv").spec).is_schwartz());
  CHECK(preset("dkv").spec.gwp_eligible());
  CHECK_FALSE(preset("ks").spec.gwp_eligible());
}

TEST_CASE("overrides") {
  const auto m = preset("mkdv", {.alpha = 3.5, .beta = 1.0});
  CHECK(m.spec.alpha() == 3.5);
  CHECK(m.spec.beta() == 1.0);
  const auto d = preset("dkv", {.gamma2 = 1.0, .gamma3 = 3.0});
  CHECK(d.spec.gamma3() == 3.0);
  CHECK(preset("ks", {.gamma3 = 2.0}).spec.gamma3() == 2.0);
  // restating a fixed value is fine, changing it is not
  CHECK_NOTHROW(preset("ost", {.alpha = 3.0}));
  CHECK_THROWS_AS(preset("ost", {.alpha = 4.0}), DomainError);
  CHECK_THROWS_AS(preset("ks", {.gamma2 = 1.0}), DomainError);
  CHECK_THROWS_AS(preset("npbo", {.gamma1 = 2.0}), DomainError);
  CHECK_THROWS_AS(preset("mkdv", {.alpha = 1.0}), DomainError);
}

TEST_CASE("unknown model names the catalog") {
  try {
    preset("kdv");
    FAIL("expected an error");
  } catch (const UnknownModelError& e) {
    const std::string what = e.what();
    CHECK(what.find("kdv") != std::string::npos);
    CHECK(what.find("ost") != std::string::npos);
    CHECK(what.find("ks") != std::string::npos);
  }
}

TEST_CASE("initial data") {
  const Grid g(1024, 100.0);
  const auto gauss = gaussian_datum(g, 2.0, 1.5);
  CHECK(gauss[0].real() * g.length() == doctest::Approx(2.0 * 1.5 * std::sqrt(std::numbers::pi)));
  const auto wave = wavelet_datum(g, 1.0, 2.0);
  CHECK(std::abs(wave[0]) < 1e-14);
  const auto alg = algebraic_datum(g, 1.0, 3.0);
  const auto u = to_physical(alg);
  CHECK(u[g.n() / 2] == doctest::Approx(1.0));
  CHECK(u[0] == doctest::Approx(std::pow(1.0 + 2500.0, -1.5)));

  const auto r1 = random_band_limited(g, 20, 0.1, 7);
  const auto r2 = random_band_limited(g, 20, 0.1, 7);
  const auto r3 = random_band_limited(g, 20, 0.1, 8);
  bool same = true, differ = false;
  for (std::size_t k = 0; k < g.n(); ++k) {
    same = same && r1[k] == r2[k];
    differ = differ || r1[k] != r3[k];
    if (g.mode(k) > 20 || g.mode(k) < -20) CHECK(r1[k] == cplx{});
  }
  CHECK(same);
  CHECK(differ);

  CHECK_THROWS_AS(gaussian_datum(g, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(algebraic_datum(g, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(random_band_limited(g, 512, 1.0, 1), DomainError);
}

TEST_CASE("seed from the environment") {
  ::unsetenv("FRACWAVE_SEED");
  CHECK(seed_from_env() == 20240601u);
  CHECK(seed_from_env(5) == 5u);
  ::setenv("FRACWAVE_SEED", "1234", 1);
  CHECK(seed_from_env() == 1234u);
  ::setenv("FRACWAVE_SEED", "12x", 1);
  CHECK(seed_from_env(9) == 9u);
  ::unsetenv("FRACWAVE_SEED");
}
