#include <doctest.h>

#include <cmath>
#include <limits>

#include "aniso/norms.hpp"
#include "aniso/spectral/ops.hpp"
#include "aniso/spectral/random.hpp"
#include "oracles.hpp"

using namespace aniso;
using namespace aniso::spectral;
using oracle::kPi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("3D Sobolev norm against direct summation") {
  const Grid g = Grid::cube(16);
  const ScalarField a = random_scalar_field(g, 5, {1.0, 5.0, -1.0, false});
  for (double s : {-0.5, 0.0, 0.5, 1.5}) {
    const double n = norms::hs_norm_3d(a, s);
    CHECK(n * n == doctest::Approx(oracle::sobolev_sq(a, s)).epsilon(1e-13));
  }
  CHECK(norms::hs_norm_3d(ScalarField(g), 0.5) == 0.0);
}

TEST_CASE("slice Sobolev norms of a plane wave") {
  const Grid g = Grid::cube(16);
  const ScalarField a = oracle::field(g, {{{2, 1, 3}, {0.5, 0.0}}});
  // each slice is cos(2 x1 + x2 + const): (2 pi)^2 5^s / 2
  for (double s : {0.0, 0.5, 1.0}) {
    const double expected = std::sqrt(4 * kPi * kPi * std::pow(5.0, s) / 2);
    for (double v : norms::hs_slice_norms(a, s)) CHECK(v == doctest::Approx(expected).epsilon(1e-13));
    CHECK(norms::hs_slice_sup(a, s) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("slice norm of a vertically modulated field") {
  const Grid g = Grid::cube(16);
  // cos(x1) cos(x3)
  const ScalarField a = oracle::field(g, {{{1, 0, 1}, {0.25, 0.0}}, {{1, 0, -1}, {0.25, 0.0}}});
  const auto slices = norms::hs_slice_norms(a, 0.5);
  for (int j = 0; j < g.n3(); ++j) {
    const double x3 = 2 * kPi * j / g.n3();
    CHECK(slices[std::size_t(j)] == doctest::Approx(std::abs(std::cos(x3)) * kPi * std::sqrt(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("horizontal Besov norms of single-block modes") {
  const Grid g = Grid::cube(16);
  // |xi_h| = sqrt 2 is seen by the k = 0 block alone, with phi = 1
  const ScalarField a = oracle::field(g, {{{1, 1, 1}, {0.5, 0.0}}});
  const double slice_l2 = kPi * std::sqrt(2.0);
  CHECK(norms::besov_h_norm(a, 0.5, 2, 2, norms::VerticalNorm::linf) == doctest::Approx(slice_l2).epsilon(1e-12));
  CHECK(norms::besov_h_norm(a, 0.5, 2, 1, norms::VerticalNorm::l2) ==
        doctest::Approx(std::sqrt(2 * kPi) * slice_l2).epsilon(1e-12));
  CHECK(norms::besov_h_norm(a, 0.3, kInf, kInf, norms::VerticalNorm::linf) == doctest::Approx(1.0).epsilon(1e-12));

  // |xi_h| = 2 sqrt 2 belongs to the k = 1 block: weight 2^s
  const ScalarField b = oracle::field(g, {{{2, 2, 0}, {0.5, 0.0}}});
  for (double s : {-0.5, 0.5, 1.0}) {
    CHECK(norms::besov_h_norm(b, s, 2, 2, norms::VerticalNorm::linf) ==
          doctest::Approx(std::pow(2.0, s) * slice_l2).epsilon(1e-12));
  }
}

TEST_CASE("log-weighted norm against direct summation") {
  const Grid g = Grid::cube(16);
  const ScalarField a = random_scalar_field(g, 9, {1.0, 5.0, -5.0 / 3.0, false});
  for (double E : {0.5, 1.0, 100.0}) {
    double sum = 0.0;
    for (const auto& [k, c] : oracle::modes(a)) {
      const double perp = std::sqrt(double(k.k1) * k.k1 + double(k.k2) * k.k2);
      sum += std::sqrt(k.norm2()) * std::log(perp * E + std::exp(1.0)) * std::norm(c);
    }
    CHECK(norms::log_weighted_norm(a, E) == doctest::Approx(std::sqrt(oracle::kVolume * sum)).epsilon(1e-13));
  }
  CHECK(norms::log_weighted_norm(a, 0.0) == doctest::Approx(norms::hs_norm_3d(a, 0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(norms::log_weighted_norm(a, 1.0, {1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("log weight along a general direction") {
  const Grid g = Grid::cube(16);
  const ScalarField a = oracle::field(g, {{{3, 0, 0}, {0.5, 0.0}}});
  // xi parallel to sigma: no log gain
  CHECK(norms::log_weighted_norm(a, 10.0, {1.0, 0.0, 0.0}) == doctest::Approx(norms::hs_norm_3d(a, 0.5)));
  const double expected = std::sqrt(oracle::kVolume * 0.5 * 3.0 * std::log(30.0 + std::exp(1.0)));
  CHECK(norms::log_weighted_norm(a, 10.0) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("anisotropic Lebesgue norms of a separable field") {
  const Grid g = Grid::cube(16);
  const ScalarField a = oracle::field(g, {{{1, 0, 1}, {0.25, 0.0}}, {{1, 0, -1}, {0.25, 0.0}}});
  using norms::MixedOrder;
  const double l2h = kPi * std::sqrt(2.0);
  const double l4h = std::pow(1.5 * kPi * kPi, 0.25);
  CHECK(norms::mixed_norm(a, kInf, 2) == doctest::Approx(l2h).epsilon(1e-12));
  CHECK(norms::mixed_norm(a, 2, 2) == doctest::Approx(std::sqrt(kPi) * l2h).epsilon(1e-12));
  CHECK(norms::mixed_norm(a, 2, 4) == doctest::Approx(std::sqrt(kPi) * l4h).epsilon(1e-12));
  CHECK(norms::mixed_norm(a, kInf, kInf) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norms::mixed_norm(a, 2, 4, MixedOrder::horizontal_outer) == doctest::Approx(std::sqrt(kPi) * l4h).epsilon(1e-12));
  CHECK(norms::mixed_norm(a, kInf, 2, MixedOrder::horizontal_outer) == doctest::Approx(l2h).epsilon(1e-12));
}

TEST_CASE("heat-flow norms of a single mode") {
  const Grid g = Grid::cube(32);
  for (int K : {1, 3, 7}) {
    const double A = 1.7;
    const ScalarField u = oracle::field(g, {{{K, 0, 0}, {0.5 * A, 0.0}}});
    for (double gamma : {0.1, 0.25, 0.4}) {
      const double alpha = 0.5 - gamma;
      const double optimum = std::pow(alpha, alpha) * std::exp(-alpha) * A * std::pow(K, -2 * alpha);
      const auto sup = norms::heat_besov_sup(u, gamma);
      CHECK(sup.value == doctest::Approx(optimum).epsilon(0.02));
      CHECK(sup.t_at_max == doctest::Approx(alpha / (K * K)).epsilon(0.05));
    }
    const auto l2 = norms::heat_besov_l2(u);
    CHECK(l2.value == doctest::Approx(A * A / (2.0 * K * K)).epsilon(0.01));
    CHECK(l2.tail_bound >= 0.0);
    CHECK(l2.value + l2.tail_bound >= A * A / (2.0 * K * K) * (1 - 1e-6));
  }
}

TEST_CASE("heat-flow norms of the zero field") {
  const Grid g = Grid::cube(16);
  CHECK(norms::heat_besov_sup(ScalarField(g), 0.25).value == 0.0);
  CHECK(norms::heat_besov_l2(ScalarField(g)).value == 0.0);
}

TEST_CASE("norm specs") {
  using nlohmann::json;
  const auto spec = norms::norm_spec_from_json(json{{"kind", "besov_h"}, {"s", 0.5}, {"p", "inf"}, {"q", 1}});
  CHECK(spec.kind == norms::NormKind::besov_h);
  CHECK(spec.p == kInf);
  CHECK(spec.q == 1.0);
  const auto round = norms::norm_spec_from_json(norms::to_json(spec));
  CHECK(round.p == kInf);
  CHECK(round.s == 0.5);

  CHECK_THROWS_AS(norms::norm_spec_from_json(json{{"kind", "bogus"}}), std::invalid_argument);
  CHECK_THROWS_AS(norms::norm_spec_from_json(json{{"s", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(norms::norm_spec_from_json(json{{"kind", "besov_h"}, {"p", 3}}), std::invalid_argument);
  CHECK_THROWS_AS(norms::norm_spec_from_json(json{{"kind", "mixed"}, {"q", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(norms::norm_spec_from_json(json{{"kind", "heat_sup"}, {"gamma", 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(norms::norm_spec_from_json(json{{"kind", "log_sobolev"}, {"E", -1}}), std::invalid_argument);
  CHECK_THROWS_AS(norms::norm_spec_from_json(json{{"kind", "sobolev3d"}, {"s", "x"}}), std::invalid_argument);
}

TEST_CASE("spec evaluation on scalar and vector containers") {
  const Grid g = Grid::cube(16);
  const ScalarField a = random_scalar_field(g, 1, {1.0, 4.0, -1.0, false});
  const ScalarField b = random_scalar_field(g, 2, {1.0, 4.0, -1.0, false});
  norms::NormSpec spec;
  spec.kind = norms::NormKind::sobolev3d;
  spec.s = 1.0;
  const double na = norms::evaluate(spec, a).value;
  const double nb = norms::evaluate(spec, b).value;
  CHECK(norms::evaluate(spec, std::vector<ScalarField>{a, b}).value == doctest::Approx(std::hypot(na, nb)));

  spec.kind = norms::NormKind::mixed;
  spec.p = 2;
  spec.q = 2;
  CHECK_THROWS_AS(norms::evaluate(spec, std::vector<ScalarField>{a, b}), std::invalid_argument);
  spec.component = 1;
  CHECK(norms::evaluate(spec, std::vector<ScalarField>{a, b}).value ==
        doctest::Approx(std::sqrt(l2_norm_squared(b))).epsilon(1e-12));
}
