#include <doctest.h>

#include <cmath>
#include <limits>

#include "aniso/initial_data.hpp"
#include "aniso/inequality_lab.hpp"
#include "aniso/norms.hpp"
#include "aniso/spectral/ops.hpp"
#include "aniso/spectral/random.hpp"
#include "oracles.hpp"

using namespace aniso;
using namespace aniso::spectral;
using oracle::kPi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

VectorField sample(const Grid& g, std::uint64_t seed, double k_max = 3) {
  RandomFieldSpec spec;
  spec.seed = seed;
  spec.k_max = k_max;
  return init_random_divfree(g, spec);
}

}  // namespace

TEST_CASE("cutoff choice") {
  const auto a = lab::choose_cutoffs(0.0, 1.0, 1.0);
  CHECK(a.lambda == 1.0);
  CHECK(a.Lambda == doctest::Approx(std::exp(1.0)));
  CHECK(a.ordered);
  const auto b = lab::choose_cutoffs(4.0, 1.0, 1.0);
  CHECK(b.Lambda == doctest::Approx(10000.0 + std::exp(1.0)));
  const auto c = lab::choose_cutoffs(1.0, 2.0, 0.1);
  CHECK(c.lambda == 0.5);
  CHECK(c.Lambda == doctest::Approx(25.0 + std::exp(1.0) / 2.0));
  CHECK_THROWS_AS(lab::choose_cutoffs(1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("J against direct convolution") {
  const Grid g = Grid::cube(16);
  const VectorField v = sample(g, 3);
  for (int i = 1; i <= 2; ++i)
    for (int l = 1; l <= 2; ++l) {
      const double direct = oracle::triple(derivative(v[2], i), derivative(v[l - 1], 3), derivative(v[l - 1], i));
      CHECK(lab::J_il(v, i, l) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("band components add up") {
  const Grid g = Grid::cube(32);
  const VectorField v = sample(g, 4, 10);
  for (double lambda : {0.5, 2.0, 3.0}) {
    const auto bands = lab::j_band_components(v, 1, 2, lambda, 3.0 * lambda);
    CHECK(bands.residual <= 1e-12);
    CHECK(bands.flat + bands.natural + bands.sharp == doctest::Approx(bands.total));
  }
  CHECK(lab::j_band_components(v, 2, 1, 3.0, 3.0).natural == 0.0);
  // below the lattice: everything sits in the upper bands
  CHECK(lab::j_band_components(v, 1, 1, 0.5, 0.9).flat ==
        doctest::Approx(lab::J_il(v, 1, 1) - lab::j_band_components(v, 1, 1, 1.0, 1.0).sharp).epsilon(1e-12));
}

TEST_CASE("sharp band paraproduct split") {
  const Grid g = Grid::cube(32);
  const VectorField v = sample(g, 7, 10);
  const auto s = lab::j_sharp_bony(v, 1, 2, 1.0);
  CHECK(s.residual <= 1e-8 * std::max(1.0, std::abs(s.direct)));
  CHECK(s.mean_piece == 0.0);
}

TEST_CASE("lemma checks report finite constants") {
  const Grid g = Grid::cube(16);
  const VectorField v = sample(g, 2, 5);
  const auto in = lab::lemma_ingredients(v, {1.0});
  const auto r21 = lab::check_lemma21(in, 1.0);
  REQUIRE(r21.implied_constant);
  CHECK(std::isfinite(*r21.implied_constant));
  CHECK(*r21.implied_constant > 0.0);
  CHECK(r21.ratio == doctest::Approx(r21.lhs / (in.gh_h1 + r21.term("structure"))));
  CHECK(std::isfinite(*lab::check_lemma22(in, 1.0, 0.1).implied_constant));
  CHECK(std::isfinite(*lab::check_lemma23(in, 1.0).implied_constant));
  CHECK_THROWS_AS(lab::check_lemma21(in, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lab::check_lemma23(in, 2.0), std::invalid_argument);

  RandomFieldSpec planar;
  planar.two_dimensional = true;
  const auto flat = lab::check_lemma21(init_random_divfree(g, planar), 1.0);
  CHECK(flat.lhs == 0.0);
  CHECK(*flat.implied_constant == 0.0);
}

TEST_CASE("Navier-Stokes scaling leaves the lemma ratio unchanged") {
  const Grid g = Grid::cube(32);
  const VectorField v = sample(g, 5, 4);
  const auto r = lab::lemma21_ns_scaling(v, 1.0, 2);
  CHECK(r.ratio <= 1e-9);
  CHECK_THROWS_AS(lab::ns_rescale(sample(g, 5, 8), 2), std::invalid_argument);
  // critical Sobolev norm per cell
  const VectorField w = lab::ns_rescale(v, 2);
  CHECK(norms::hs_norm_3d(w, 0.5) / std::sqrt(8.0) == doctest::Approx(norms::hs_norm_3d(v, 0.5)).epsilon(1e-12));
}

TEST_CASE("trace bound on single modes") {
  const Grid g = Grid::cube(16);
  const ScalarField a = oracle::field(g, {{{1, 2, 2}, {0.5, 0.0}}});
  for (double s : {0.5, 0.75}) {
    const auto r = lab::check_trace(a, s);
    CHECK(r.ratio == doctest::Approx(std::sqrt(std::pow(5.0, s) / (2 * kPi * std::pow(9.0, s + 0.5)))));
    CHECK(*r.pass);
  }
  CHECK_THROWS_AS(lab::check_trace(a, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lab::check_trace(a, 0.25), std::invalid_argument);
}

TEST_CASE("Bernstein ratios of a single mode") {
  const Grid g = Grid::cube(16);
  const ScalarField a = oracle::field(g, {{{1, 0, 0}, {0.5, 0.0}}});
  using lab::Support;
  CHECK(lab::check_bernstein(a, 0, Support::low, 2, 2, {1, 0}).ratio == doctest::Approx(1.0));
  CHECK(lab::check_bernstein(a, 0, Support::low, kInf, 2, {0, 0}).ratio == doctest::Approx(1.0 / (kPi * std::sqrt(2.0))));
  CHECK(lab::check_bernstein(a, 0, Support::low, kInf, kInf, {1, 0}).ratio == doctest::Approx(1.0));
  CHECK(lab::check_bernstein(a, 1, Support::low, 2, 2, {0, 1}).ratio == 0.0);
  CHECK_THROWS_AS(lab::check_bernstein(a, -1, Support::low, 2, 2, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(lab::check_bernstein(a, 0, Support::low, 2, 4, {1, 0}), std::invalid_argument);

  const ScalarField b = oracle::field(g, {{{2, 0, 1}, {0.5, 0.0}}});
  const auto inv = lab::check_ring_inverse(b, 0);
  CHECK(inv.ratio == doctest::Approx(0.5));
  CHECK(*inv.pass);
  CHECK_THROWS_AS(lab::check_ring_inverse(b, 2), std::invalid_argument);
}

TEST_CASE("product checks on planar pairs") {
  const Grid g(16, 16, 8);
  const ScalarField a = random_scalar_field(g, 1, {1.0, 2.0, -1.0, true});
  const ScalarField b = random_scalar_field(g, 2, {1.0, 2.0, -1.0, true});
  for (auto variant : {lab::ProductVariant::bony_paraproducts, lab::ProductVariant::b21_law, lab::ProductVariant::full_law}) {
    const auto r = lab::check_product(a, b, variant);
    CHECK(r.lhs > 0.0);
    CHECK(std::isfinite(*r.implied_constant));
  }
  const ScalarField c = oracle::field(g, {{{1, 0, 1}, {0.5, 0.0}}});
  CHECK_THROWS_AS(lab::check_product(a, c, lab::ProductVariant::full_law), std::invalid_argument);
}

TEST_CASE("suite runner") {
  lab::SuiteOptions o;
  o.n = 16;
  o.corpus_size = 4;
  const auto r = lab::run_suite("identities", o);
  CHECK(r.hard_failures == 0);
  CHECK(r.reports.size() == 6);
  for (const auto& rep : r.reports) CHECK(*rep.pass);
  CHECK_THROWS_AS(lab::run_suite("nonsense", o), std::invalid_argument);

  o.threads = 3;
  const auto threaded = lab::run_suite("identities", o);
  for (std::size_t n = 0; n < r.reports.size(); ++n) CHECK(threaded.reports[n].lhs == r.reports[n].lhs);
}

TEST_CASE("fixed shell corpus is grid independent") {
  lab::SuiteOptions o;
  o.corpus_size = 6;
  o.shell_max = 5;
  o.n = 16;
  const auto coarse = lab::run_suite("lemmas", o);
  o.n = 32;
  const auto fine = lab::run_suite("lemmas", o);
  REQUIRE(coarse.reports.size() == fine.reports.size());
  for (std::size_t n = 0; n < fine.reports.size(); ++n)
    CHECK(*fine.reports[n].implied_constant == doctest::Approx(*coarse.reports[n].implied_constant).epsilon(1e-10));
}
