#include "aniso/initial_data.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "aniso/spectral/field_io.hpp"
#include "aniso/spectral/ops.hpp"
#include "aniso/spectral/random.hpp"

namespace aniso {

using spectral::cplx;

namespace {

ScalarField sample(const Grid& g, const std::function<double(double, double, double)>& f) {
  std::vector<double> x(g.size());
  const double h1 = Grid::period / g.n1();
  const double h2 = Grid::period / g.n2();
  const double h3 = Grid::period / g.n3();
  for (int i3 = 0; i3 < g.n3(); ++i3)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i1 = 0; i1 < g.n1(); ++i1) x[g.index(i1, i2, i3)] = f(i1 * h1, i2 * h2, i3 * h3);
  // The generators are trigonometric polynomials; drop transform round-off.
  const ScalarField raw = spectral::to_spectral(g, x);
  const double floor = 1e-13 * raw.max_amplitude();
  std::vector<cplx> c(raw.coeffs().begin(), raw.coeffs().end());
  for (auto& z : c)
    if (std::abs(z) < floor) z = cplx{};
  return ScalarField::from_trusted(g, std::move(c));
}

double number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw std::invalid_argument(std::string("initial_data.") + key + " must be a number");
  return j[key].get<double>();
}

RandomFieldSpec random_spec(const nlohmann::json& j) {
  RandomFieldSpec s;
  s.slope = number(j, "slope", s.slope);
  s.amplitude = number(j, "amplitude", s.amplitude);
  s.k_min = number(j, "k_min", s.k_min);
  s.k_max = number(j, "k_max", s.k_max);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw std::invalid_argument("initial_data.seed must be a nonnegative integer");
    }
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("two_dimensional")) {
    if (!j["two_dimensional"].is_boolean()) throw std::invalid_argument("initial_data.two_dimensional must be boolean");
    s.two_dimensional = j["two_dimensional"].get<bool>();
  }
  if (!(s.amplitude >= 0.0)) throw std::invalid_argument("initial_data.amplitude must be >= 0");
  if (!(s.k_min >= 0.0 && s.k_max >= s.k_min)) throw std::invalid_argument("initial_data needs 0 <= k_min <= k_max");
  return s;
}

}  // namespace

VectorField init_taylor_green(const Grid& grid) {
  auto v1 = sample(grid, [](double x1, double x2, double) { return std::cos(x1) * std::sin(x2); });
  auto v2 = sample(grid, [](double x1, double x2, double) { return -std::sin(x1) * std::cos(x2); });
  return spectral::leray_project(VectorField(v1, v2, ScalarField(grid)));
}

VectorField init_taylor_green_3d(const Grid& grid) {
  auto v1 = sample(grid, [](double x1, double x2, double x3) { return std::cos(x1) * std::sin(x2) * std::cos(x3); });
  auto v2 = sample(grid, [](double x1, double x2, double x3) { return -std::sin(x1) * std::cos(x2) * std::cos(x3); });
  return spectral::leray_project(VectorField(v1, v2, ScalarField(grid)));
}

VectorField init_abc(const Grid& grid, double A, double B, double C) {
  auto v1 = sample(grid, [=](double, double x2, double x3) { return A * std::sin(x3) + C * std::cos(x2); });
  auto v2 = sample(grid, [=](double x1, double, double x3) { return B * std::sin(x1) + A * std::cos(x3); });
  auto v3 = sample(grid, [=](double x1, double x2, double) { return C * std::sin(x2) + B * std::cos(x1); });
  return spectral::leray_project(VectorField(v1, v2, v3));
}

VectorField init_random_divfree(const Grid& grid, const RandomFieldSpec& spec) {
  spectral::BandSpec band{spec.k_min, spec.k_max, spec.slope, spec.two_dimensional};
  // Distinct, fixed streams per component.
  auto c1 = spectral::random_scalar_field(grid, spec.seed * 3 + 0, band);
  auto c2 = spectral::random_scalar_field(grid, spec.seed * 3 + 1, band);
  auto c3 = spec.two_dimensional ? ScalarField(grid) : spectral::random_scalar_field(grid, spec.seed * 3 + 2, band);
  VectorField v = spectral::leray_project(VectorField(c1, c2, c3));
  const double rms = std::sqrt(spectral::l2_norm_squared(v) / Grid::volume());
  return rms > 0.0 ? v * (spec.amplitude / rms) : v;
}

VectorField self_similar_field(const Grid& grid, double tau, const std::array<double, 3>& a) {
  if (!(tau > 0.0)) throw std::invalid_argument("self_similar_field requires tau > 0");
  std::array<std::vector<cplx>, 3> c;
  for (auto& comp : c) comp.assign(grid.size(), cplx{});
  const double root = std::sqrt(tau);
  grid.for_each_mode([&](std::size_t i, const spectral::Wavevector& k) {
    if (grid.on_nyquist(k)) return;
    if (k.is_zero() || !grid.in_dealias_set(k)) return;
    const double damp = tau * std::exp(-tau * k.norm2());
    const double e1 = root * k.k1, e2 = root * k.k2, e3 = root * k.k3;
    const std::array<double, 3> cross{e2 * a[2] - e3 * a[1], e3 * a[0] - e1 * a[2], e1 * a[1] - e2 * a[0]};
    for (int m = 0; m < 3; ++m) c[static_cast<std::size_t>(m)][i] = cplx(0.0, damp * cross[static_cast<std::size_t>(m)]);
  });
  return VectorField::certified(ScalarField::from_coefficients(grid, std::move(c[0])),
                                ScalarField::from_coefficients(grid, std::move(c[1])),
                                ScalarField::from_coefficients(grid, std::move(c[2])));
}

void validate_initial_data(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string()) {
    throw std::invalid_argument("initial_data must be an object with a string 'type'");
  }
  const auto type = spec["type"].get<std::string>();
  if (type == "taylor_green" || type == "taylor_green_3d") return;
  if (type == "abc") {
    number(spec, "A", 1.0);
    number(spec, "B", 1.0);
    number(spec, "C", 1.0);
    return;
  }
  if (type == "random") {
    random_spec(spec);
    return;
  }
  if (type == "file") {
    if (!spec.contains("path") || !spec["path"].is_string()) throw std::invalid_argument("initial_data.path missing");
    return;
  }
  throw std::invalid_argument("unknown initial_data type '" + type + "'");
}

VectorField make_initial_data(const Grid& grid, const nlohmann::json& spec) {
  validate_initial_data(spec);
  const auto type = spec["type"].get<std::string>();
  if (type == "taylor_green") return init_taylor_green(grid);
  if (type == "taylor_green_3d") return init_taylor_green_3d(grid);
  if (type == "abc") return init_abc(grid, number(spec, "A", 1.0), number(spec, "B", 1.0), number(spec, "C", 1.0));
  if (type == "random") return init_random_divfree(grid, random_spec(spec));
  const auto file = spectral::read_field_file(spec["path"].get<std::string>());
  if (!(file.grid == grid)) {
    throw std::invalid_argument("initial_data file grid " + file.grid.describe() + " != config grid " +
                                grid.describe());
  }
  return spectral::leray_project(file.as_vector());
}

}  // namespace aniso
