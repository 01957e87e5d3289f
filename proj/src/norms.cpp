#include "aniso/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "aniso/littlewood_paley.hpp"
#include "aniso/spectral/fft.hpp"
#include "aniso/spectral/ops.hpp"

namespace aniso::norms {

using spectral::cplx;
using spectral::Wavevector;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double weighted_sum(const ScalarField& a, double s) {
  const Grid& g = a.grid();
  double sum = 0.0;
  g.for_each_mode([&](std::size_t i, const spectral::Wavevector& k) {
    if (a[i] == cplx{}) return;
    sum += std::pow(k.norm2(), s) * std::norm(a[i]);
  });
  return sum;
}

// Squared horizontal norms of every slice with weight |xi_h|^{2s}.
std::vector<double> slice_sums(const ScalarField& a, double s) {
  const Grid& g = a.grid();
  const auto slices = spectral::fft::vertical_synthesis(g, a.coeffs());
  std::vector<double> weight(g.slice_size());
  for (int i2 = 0; i2 < g.n2(); ++i2) {
    for (int i1 = 0; i1 < g.n1(); ++i1) {
      const double kh2 = double(g.wavenumber(0, i1)) * g.wavenumber(0, i1) +
                         double(g.wavenumber(1, i2)) * g.wavenumber(1, i2);
      weight[std::size_t(i2) * g.n1() + i1] = kh2 > 0.0 ? std::pow(kh2, s) : 0.0;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(g.n3()), 0.0);
  for (int j = 0; j < g.n3(); ++j) {
    double sum = 0.0;
    const std::size_t base = std::size_t(j) * g.slice_size();
    for (std::size_t m = 0; m < g.slice_size(); ++m) sum += weight[m] * std::norm(slices[base + m]);
    out[static_cast<std::size_t>(j)] = Grid::area() * sum;
  }
  return out;
}

// Horizontal L^2 norm squared of every slice, including xi_h = 0.
std::vector<double> slice_l2_squared(const ScalarField& a) {
  const Grid& g = a.grid();
  const auto slices = spectral::fft::vertical_synthesis(g, a.coeffs());
  std::vector<double> out(static_cast<std::size_t>(g.n3()), 0.0);
  for (int j = 0; j < g.n3(); ++j) {
    double sum = 0.0;
    const std::size_t base = std::size_t(j) * g.slice_size();
    for (std::size_t m = 0; m < g.slice_size(); ++m) sum += std::norm(slices[base + m]);
    out[static_cast<std::size_t>(j)] = Grid::area() * sum;
  }
  return out;
}

std::vector<double> slice_sup(const Grid& g, const std::vector<double>& samples) {
  std::vector<double> out(static_cast<std::size_t>(g.n3()), 0.0);
  for (int j = 0; j < g.n3(); ++j) {
    const std::size_t base = std::size_t(j) * g.slice_size();
    double m = 0.0;
    for (std::size_t i = 0; i < g.slice_size(); ++i) m = std::max(m, std::abs(samples[base + i]));
    out[static_cast<std::size_t>(j)] = m;
  }
  return out;
}

double lq_aggregate(const std::vector<double>& values, double q) {
  if (q == kInf) return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::pow(v, q);
  return std::pow(sum, 1.0 / q);
}

double vertical_compose(const Grid& g, const std::vector<double>& per_slice, VerticalNorm vertical) {
  if (vertical == VerticalNorm::linf) return *std::max_element(per_slice.begin(), per_slice.end());
  double sum = 0.0;
  for (double v : per_slice) sum += v * v;
  return std::sqrt(Grid::period / g.n3() * sum);
}

void require_index(double value, std::initializer_list<double> allowed, const char* what) {
  if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
    throw std::invalid_argument(std::string("unsupported ") + what + " index " + std::to_string(value));
  }
}

// ||e^{t Delta} u||_{L^inf} with u given by components (pointwise Euclidean norm).
double heat_sup_norm(const std::vector<const ScalarField*>& comps, double t) {
  const Grid& g = comps.front()->grid();
  std::vector<double> mag2(g.size(), 0.0);
  for (const ScalarField* c : comps) {
    const ScalarField heated = c->filtered([t](const spectral::Wavevector& k) { return std::exp(-t * k.norm2()); });
    const auto x = spectral::to_physical(heated);
    for (std::size_t i = 0; i < x.size(); ++i) mag2[i] += x[i] * x[i];
  }
  return std::sqrt(*std::max_element(mag2.begin(), mag2.end()));
}

HeatSup heat_sup_impl(const std::vector<const ScalarField*>& comps, double gamma) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("heat_besov_sup requires 0 < gamma < 1/2");
  const Grid& g = comps.front()->grid();
  const double alpha = 0.5 - gamma;
  const auto times = heat_time_grid(g);
  std::vector<double> vals(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) vals[i] = std::pow(times[i], alpha) * heat_sup_norm(comps, times[i]);
  const auto best = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  HeatSup out{vals[best], times[best], 0.0};
  if (out.value > 0.0) {
    const double left = best > 0 ? vals[best - 1] : 0.0;
    const double right = best + 1 < vals.size() ? vals[best + 1] : 0.0;
    out.resolution_error = (out.value - std::max(left, right)) / out.value;
  }
  return out;
}

HeatIntegral heat_l2_impl(const std::vector<const ScalarField*>& comps) {
  const Grid& g = comps.front()->grid();
  const auto times = heat_time_grid(g);
  std::vector<double> f(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = heat_sup_norm(comps, times[i]);
    f[i] = s * s;
  }
  const double f0 = std::pow(heat_sup_norm(comps, 0.0), 2);

  // [0, t_0] by the trapezoid rule, then the trapezoid rule in log t.
  double integral = 0.5 * times.front() * (f0 + f.front());
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double du = std::log(times[i + 1] / times[i]);
    integral += 0.5 * du * (f[i] * times[i] + f[i + 1] * times[i + 1]);
  }

  // ||e^{t Delta} u||_{L^inf} <= sum_k |u(k)| e^{-t |k|^2} <= e^{-(t - T) k_min^2} W(T).
  double k_min2 = kInf;
  double wiener = 0.0;
  const double t_end = times.back();
  g.for_each_mode([&](std::size_t i, const spectral::Wavevector& k) {
    double amp2 = 0.0;
    for (const ScalarField* c : comps) amp2 += std::norm((*c)[i]);
    if (amp2 == 0.0) return;
    const double k2 = k.norm2();
    k_min2 = std::min(k_min2, k2);
    wiener += std::sqrt(amp2) * std::exp(-t_end * k2);
  });
  const double tail = k_min2 == kInf ? 0.0 : wiener * wiener / (2.0 * k_min2);
  return {integral, tail};
}

std::vector<const ScalarField*> pointers(const VectorField& v) { return {&v[0], &v[1], &v[2]}; }

}  // namespace

double hs_norm_3d(const ScalarField& a, double s) { return std::sqrt(Grid::volume() * weighted_sum(a, s)); }

double hs_norm_3d(const VectorField& v, double s) {
  return std::sqrt(Grid::volume() * (weighted_sum(v[0], s) + weighted_sum(v[1], s) + weighted_sum(v[2], s)));
}

std::vector<double> hs_slice_norms(const ScalarField& a, double s) {
  auto sums = slice_sums(a, s);
  for (double& v : sums) v = std::sqrt(v);
  return sums;
}

double hs_slice_norm(const ScalarField& a, double s, int slice) {
  if (slice < 0 || slice >= a.grid().n3()) throw std::out_of_range("slice index out of range");
  return hs_slice_norms(a, s)[static_cast<std::size_t>(slice)];
}

double hs_slice_sup(const ScalarField& a, double s) {
  const auto norms = hs_slice_norms(a, s);
  return *std::max_element(norms.begin(), norms.end());
}

std::vector<double> besov_h_slice_norms(const ScalarField& a, double s, double p, double q) {
  require_index(p, {2.0, kInf}, "Besov integrability p");
  require_index(q, {1.0, 2.0, kInf}, "Besov summability q");
  const Grid& g = a.grid();
  const auto [k_lo, k_hi] = lp::dyadic_range(g);
  // blocks[slice][k]
  std::vector<std::vector<double>> blocks(static_cast<std::size_t>(g.n3()));
  for (int k = k_lo; k <= k_hi; ++k) {
    const ScalarField block = lp::delta_h(a, k);
    std::vector<double> per_slice;
    if (p == 2.0) {
      per_slice = slice_l2_squared(block);
      for (double& v : per_slice) v = std::sqrt(v);
    } else {
      per_slice = slice_sup(g, spectral::to_physical(block));
    }
    const double weight = std::pow(2.0, k * s);
    for (int j = 0; j < g.n3(); ++j) blocks[static_cast<std::size_t>(j)].push_back(weight * per_slice[std::size_t(j)]);
  }
  std::vector<double> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(lq_aggregate(b, q));
  return out;
}

double besov_h_norm(const ScalarField& a, double s, double p, double q, VerticalNorm vertical) {
  return vertical_compose(a.grid(), besov_h_slice_norms(a, s, p, q), vertical);
}

double log_weighted_norm(const ScalarField& a, double E, const std::array<double, 3>& sigma) {
  if (!(E >= 0.0)) throw std::invalid_argument("log_weighted_norm requires E >= 0");
  const double len = std::sqrt(sigma[0] * sigma[0] + sigma[1] * sigma[1] + sigma[2] * sigma[2]);
  if (std::abs(len - 1.0) > 1e-12) throw std::invalid_argument("log_weighted_norm requires a unit direction");
  if (E == 0.0) return hs_norm_3d(a, 0.5);
  const Grid& g = a.grid();
  double sum = 0.0;
  g.for_each_mode([&](std::size_t i, const spectral::Wavevector& k) {
    if (a[i] == cplx{}) return;
    const double along = k.k1 * sigma[0] + k.k2 * sigma[1] + k.k3 * sigma[2];
    const double perp = std::sqrt(std::max(0.0, k.norm2() - along * along));
    double weight = std::sqrt(k.norm2());
    if (E > 0.0) weight *= std::log(perp * E + std::numbers::e);
    sum += weight * std::norm(a[i]);
  });
  return std::sqrt(Grid::volume() * sum);
}

double mixed_norm(const ScalarField& a, double vertical_p, double horizontal_q, MixedOrder order) {
  require_index(vertical_p, {2.0, kInf}, "vertical");
  require_index(horizontal_q, {2.0, 4.0, kInf}, "horizontal");
  const Grid& g = a.grid();
  const auto x = spectral::to_physical(a);
  const double dh = Grid::area() / static_cast<double>(g.slice_size());
  const double dv = Grid::period / g.n3();

  auto reduce = [](const std::vector<double>& vals, double power, double measure) {
    if (power == kInf) {
      double m = 0.0;
      for (double v : vals) m = std::max(m, std::abs(v));
      return m;
    }
    double sum = 0.0;
    for (double v : vals) sum += std::pow(std::abs(v), power);
    return std::pow(measure * sum, 1.0 / power);
  };

  if (order == MixedOrder::vertical_outer) {
    std::vector<double> per_slice(static_cast<std::size_t>(g.n3()));
    std::vector<double> slice(g.slice_size());
    for (int j = 0; j < g.n3(); ++j) {
      std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(std::size_t(j) * g.slice_size()), g.slice_size(),
                  slice.begin());
      per_slice[static_cast<std::size_t>(j)] = reduce(slice, horizontal_q, dh);
    }
    return reduce(per_slice, vertical_p, dv);
  }
  std::vector<double> per_column(g.slice_size());
  std::vector<double> column(static_cast<std::size_t>(g.n3()));
  for (std::size_t m = 0; m < g.slice_size(); ++m) {
    for (int j = 0; j < g.n3(); ++j) column[std::size_t(j)] = x[std::size_t(j) * g.slice_size() + m];
    per_column[m] = reduce(column, vertical_p, dv);
  }
  return reduce(per_column, horizontal_q, dh);
}

std::vector<double> heat_time_grid(const Grid& grid, int points) {
  const double k_max = grid.max_wavenumber();
  const double t_min = 0.01 / (k_max * k_max);
  const double t_max = 10.0;  // 10 / |k_min|^2 with |k_min| = 1 on the lattice
  std::vector<double> t(static_cast<std::size_t>(points));
  const double ratio = std::log(t_max / t_min);
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = t_min * std::exp(ratio * i / (points - 1));
  return t;
}

HeatSup heat_besov_sup(const ScalarField& u, double gamma) { return heat_sup_impl({&u}, gamma); }
HeatSup heat_besov_sup(const VectorField& v, double gamma) { return heat_sup_impl(pointers(v), gamma); }
HeatIntegral heat_besov_l2(const ScalarField& u) { return heat_l2_impl({&u}); }
HeatIntegral heat_besov_l2(const VectorField& v) { return heat_l2_impl(pointers(v)); }

// ---------------------------------------------------------------------------
// NormSpec

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::sobolev3d: return "sobolev3d";
    case NormKind::sobolev_slice: return "sobolev_slice";
    case NormKind::besov_h: return "besov_h";
    case NormKind::log_sobolev: return "log_sobolev";
    case NormKind::mixed: return "mixed";
    case NormKind::heat_sup: return "heat_sup";
    case NormKind::heat_l2: return "heat_l2";
  }
  return "unknown";
}

namespace {

NormKind kind_from_string(const std::string& s) {
  for (NormKind k : {NormKind::sobolev3d, NormKind::sobolev_slice, NormKind::besov_h, NormKind::log_sobolev,
                     NormKind::mixed, NormKind::heat_sup, NormKind::heat_l2}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown norm kind '" + s + "'");
}

double index_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    throw std::invalid_argument("index must be a number or \"inf\", got '" + s + "'");
  }
  return j.get<double>();
}

nlohmann::json index_to_json(double v) { return v == kInf ? nlohmann::json("inf") : nlohmann::json(v); }

}  // namespace

void NormSpec::validate() const {
  const double len = std::sqrt(sigma[0] * sigma[0] + sigma[1] * sigma[1] + sigma[2] * sigma[2]);
  switch (kind) {
    case NormKind::besov_h:
      require_index(p, {2.0, kInf}, "Besov integrability p");
      require_index(q, {1.0, 2.0, kInf}, "Besov summability q");
      break;
    case NormKind::log_sobolev:
      if (!(E >= 0.0)) throw std::invalid_argument("log_sobolev requires E >= 0");
      if (std::abs(len - 1.0) > 1e-12) throw std::invalid_argument("sigma must have unit length");
      break;
    case NormKind::mixed:
      require_index(p, {2.0, kInf}, "vertical");
      require_index(q, {2.0, 4.0, kInf}, "horizontal");
      break;
    case NormKind::heat_sup:
      if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("heat_sup requires 0 < gamma < 1/2");
      break;
    default:
      break;
  }
}

NormSpec norm_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("norm spec must be a JSON object");
  if (!j.contains("kind")) throw std::invalid_argument("norm spec is missing 'kind'");
  NormSpec spec;
  try {
    spec.kind = kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("s")) spec.s = j["s"].get<double>();
    if (j.contains("p")) spec.p = index_from_json(j["p"]);
    if (j.contains("q")) spec.q = index_from_json(j["q"]);
    if (j.contains("E")) spec.E = j["E"].get<double>();
    if (j.contains("gamma")) spec.gamma = j["gamma"].get<double>();
    if (j.contains("sigma")) spec.sigma = j["sigma"].get<std::array<double, 3>>();
    if (j.contains("vertical")) {
      const double v = index_from_json(j["vertical"]);
      require_index(v, {2.0, kInf}, "vertical");
      spec.vertical = v == kInf ? VerticalNorm::linf : VerticalNorm::l2;
    }
    if (j.contains("order")) {
      const auto o = j["order"].get<std::string>();
      if (o == "vertical_outer") spec.order = MixedOrder::vertical_outer;
      else if (o == "horizontal_outer") spec.order = MixedOrder::horizontal_outer;
      else throw std::invalid_argument("order must be vertical_outer or horizontal_outer");
    }
    if (j.contains("slice")) spec.slice = j["slice"].get<int>();
    if (j.contains("component")) spec.component = j["component"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed norm spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

nlohmann::json to_json(const NormSpec& spec) {
  nlohmann::json j = {{"kind", to_string(spec.kind)}};
  switch (spec.kind) {
    case NormKind::sobolev3d: j["s"] = spec.s; break;
    case NormKind::sobolev_slice:
      j["s"] = spec.s;
      if (spec.slice) j["slice"] = *spec.slice;
      break;
    case NormKind::besov_h:
      j["s"] = spec.s;
      j["p"] = index_to_json(spec.p);
      j["q"] = index_to_json(spec.q);
      j["vertical"] = index_to_json(spec.vertical == VerticalNorm::linf ? kInf : 2.0);
      break;
    case NormKind::log_sobolev:
      j["E"] = spec.E;
      j["sigma"] = spec.sigma;
      break;
    case NormKind::mixed:
      j["p"] = index_to_json(spec.p);
      j["q"] = index_to_json(spec.q);
      j["order"] = spec.order == MixedOrder::vertical_outer ? "vertical_outer" : "horizontal_outer";
      break;
    case NormKind::heat_sup: j["gamma"] = spec.gamma; break;
    case NormKind::heat_l2: break;
  }
  if (spec.component) j["component"] = *spec.component;
  return j;
}

NormValue evaluate(const NormSpec& spec, const ScalarField& a) {
  spec.validate();
  switch (spec.kind) {
    case NormKind::sobolev3d: return {hs_norm_3d(a, spec.s), 0.0};
    case NormKind::sobolev_slice:
      return {spec.slice ? hs_slice_norm(a, spec.s, *spec.slice) : hs_slice_sup(a, spec.s), 0.0};
    case NormKind::besov_h: return {besov_h_norm(a, spec.s, spec.p, spec.q, spec.vertical), 0.0};
    case NormKind::log_sobolev: return {log_weighted_norm(a, spec.E, spec.sigma), 0.0};
    case NormKind::mixed: return {mixed_norm(a, spec.p, spec.q, spec.order), 0.0};
    case NormKind::heat_sup: {
      const auto r = heat_besov_sup(a, spec.gamma);
      return {r.value, r.resolution_error};
    }
    case NormKind::heat_l2: {
      const auto r = heat_besov_l2(a);
      return {r.value, r.tail_bound};
    }
  }
  throw std::logic_error("unhandled norm kind");
}

NormValue evaluate(const NormSpec& spec, const std::vector<ScalarField>& components) {
  if (components.empty()) throw std::invalid_argument("no components to evaluate");
  if (spec.component) {
    if (*spec.component < 0 || *spec.component >= static_cast<int>(components.size())) {
      throw std::invalid_argument("component index out of range");
    }
    return evaluate(spec, components[static_cast<std::size_t>(*spec.component)]);
  }
  if (components.size() == 1) return evaluate(spec, components.front());
  spec.validate();

  auto l2_combine = [&](auto&& one) {
    double sum = 0.0;
    for (const auto& c : components) sum += std::pow(one(c), 2);
    return NormValue{std::sqrt(sum), 0.0};
  };
  std::vector<const ScalarField*> ptrs;
  for (const auto& c : components) ptrs.push_back(&c);

  switch (spec.kind) {
    case NormKind::sobolev3d: return l2_combine([&](const ScalarField& c) { return hs_norm_3d(c, spec.s); });
    case NormKind::log_sobolev:
      return l2_combine([&](const ScalarField& c) { return log_weighted_norm(c, spec.E, spec.sigma); });
    case NormKind::sobolev_slice: {
      std::vector<double> total(static_cast<std::size_t>(components.front().grid().n3()), 0.0);
      for (const auto& c : components) {
        const auto n = hs_slice_norms(c, spec.s);
        for (std::size_t j = 0; j < n.size(); ++j) total[j] += n[j] * n[j];
      }
      if (spec.slice) return {std::sqrt(total.at(static_cast<std::size_t>(*spec.slice))), 0.0};
      return {std::sqrt(*std::max_element(total.begin(), total.end())), 0.0};
    }
    case NormKind::heat_sup: {
      const auto r = heat_sup_impl(ptrs, spec.gamma);
      return {r.value, r.resolution_error};
    }
    case NormKind::heat_l2: {
      const auto r = heat_l2_impl(ptrs);
      return {r.value, r.tail_bound};
    }
    case NormKind::besov_h:
    case NormKind::mixed:
      throw std::invalid_argument(to_string(spec.kind) + " on a multi-component field requires 'component'");
  }
  throw std::logic_error("unhandled norm kind");
}

}  // namespace aniso::norms
