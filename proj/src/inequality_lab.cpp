#include "aniso/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "aniso/corpus.hpp"
#include "aniso/diagnostics.hpp"
#include "aniso/littlewood_paley.hpp"
#include "aniso/norms.hpp"
#include "aniso/spectral/ops.hpp"

namespace aniso::lab {

using spectral::cplx;
using spectral::Wavevector;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_index(int x, const char* what) {
  if (x != 1 && x != 2) throw std::out_of_range(std::string(what) + " must be 1 or 2");
}

// (2 pi)^3 sum_k w(k) sum_{c in comps} |v_c(k)|^2
template <typename W>
double weighted(const VectorField& v, std::initializer_list<int> comps, W&& w) {
  const Grid& g = v.grid();
  double sum = 0.0;
  g.for_each_mode([&](std::size_t n, const Wavevector& xi) {
    double amp = 0.0;
    for (int c : comps) amp += std::norm(v[c][n]);
    if (amp != 0.0) sum += w(xi) * amp;
  });
  return Grid::volume() * sum;
}

// Smallest C with lhs <= C * (absorbed + structure).
double implied(double lhs, double absorbed, double structure) {
  const double total = absorbed + structure;
  if (!(total > 0.0)) return lhs <= 1e-13 ? 0.0 : kInf;
  return lhs / total;
}

double logh_value(const LemmaIngredients& in, double E) {
  for (const auto& [e, value] : in.v3_logh)
    if (e == E) return value;
  throw std::invalid_argument("ingredients lack the log-weighted norm for this E");
}

std::vector<double> slice_lp(const Grid& g, const std::vector<double>& x, double p) {
  std::vector<double> out(static_cast<std::size_t>(g.n3()), 0.0);
  const double cell = Grid::area() / static_cast<double>(g.slice_size());
  for (int j = 0; j < g.n3(); ++j) {
    const std::size_t base = std::size_t(j) * g.slice_size();
    double acc = 0.0;
    for (std::size_t m = 0; m < g.slice_size(); ++m) {
      const double a = std::abs(x[base + m]);
      acc = p == kInf ? std::max(acc, a) : acc + std::pow(a, p);
    }
    out[std::size_t(j)] = p == kInf ? acc : std::pow(cell * acc, 1.0 / p);
  }
  return out;
}

bool x3_independent(const ScalarField& a) {
  const Grid& g = a.grid();
  for (std::size_t n = 0; n < g.size(); ++n)
    if (a[n] != cplx{} && g.wavevector(n).k3 != 0) return false;
  return true;
}

double physical_sup(const ScalarField& a) {
  double m = 0.0;
  for (double x : spectral::to_physical(a)) m = std::max(m, std::abs(x));
  return m;
}

std::string index_name(double p) {
  if (p == kInf) return "inf";
  std::ostringstream s;
  s << p;
  return s.str();
}

}  // namespace

double CheckReport::term(const std::string& key) const {
  for (const auto& [k, v] : rhs_terms)
    if (k == key) return v;
  throw std::out_of_range("report " + name + " has no term " + key);
}

nlohmann::json CheckReport::to_json() const {
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(x > 0 ? "inf" : "nan"); };
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [k, v] : rhs_terms) terms[k] = num(v);
  nlohmann::json j = {{"name", name}, {"lhs", num(lhs)}, {"rhs_terms", terms}, {"ratio", num(ratio)}};
  if (implied_constant) j["implied_constant"] = num(*implied_constant);
  if (pass) j["pass"] = *pass;
  return j;
}

double J_il(const VectorField& v, int i, int l) {
  require_index(i, "i");
  require_index(l, "l");
  return spectral::trilinear_integral(spectral::derivative(v[2], i), spectral::derivative(v[l - 1], 3),
                                      spectral::derivative(v[l - 1], i));
}

JBands j_band_components(const VectorField& v, int i, int l, double lambda, double Lambda) {
  require_index(i, "i");
  require_index(l, "l");
  const ScalarField div3 = spectral::derivative(v[2], i);
  const ScalarField dil = spectral::derivative(v[l - 1], i);
  const lp::BandTriple bands = lp::band_split(spectral::derivative(v[l - 1], 3), lambda, Lambda);
  JBands out;
  out.flat = spectral::trilinear_integral(div3, bands.flat, dil);
  out.natural = spectral::trilinear_integral(div3, bands.natural, dil);
  out.sharp = spectral::trilinear_integral(div3, bands.sharp, dil);
  out.total = J_il(v, i, l);
  const double scale = std::max({std::abs(out.total), std::abs(out.flat), std::abs(out.natural), std::abs(out.sharp)});
  const double diff = std::abs(out.flat + out.natural + out.sharp - out.total);
  out.residual = scale > 0.0 ? diff / scale : diff;
  return out;
}

JSharpBony j_sharp_bony(const VectorField& v, int i, int l, double E) {
  require_index(i, "i");
  require_index(l, "l");
  if (!(E > 0.0)) throw std::invalid_argument("j_sharp_bony requires E > 0");
  JSharpBony out;
  const ScalarField sharp = lp::band_split(spectral::derivative(v[l - 1], 3), 0.0, 1.0 / E).sharp;
  const ScalarField div3 = spectral::derivative(v[2], i);
  if (sharp.is_zero() || div3.is_zero()) return out;
  const ScalarField dil = spectral::derivative(v[l - 1], i);
  const lp::BonySplit split = lp::bony_split(sharp, dil);
  out.piece1 = spectral::inner_product(div3, split.high_low.field);
  out.piece2 = spectral::inner_product(div3, split.low_high.field);
  out.mean_piece = spectral::inner_product(div3, split.mean_mean.field);
  out.direct = spectral::trilinear_integral(div3, sharp, dil);
  out.residual = std::abs(out.piece1 + out.piece2 + out.mean_piece - out.direct);
  const double product_norm =
      std::sqrt(spectral::l2_norm_squared(split.product.field) +
                Grid::volume() * split.product.mean * split.product.mean);
  out.tail_bound = std::sqrt(spectral::l2_norm_squared(div3)) * split.unresolved_tail * product_norm;
  return out;
}

Cutoffs choose_cutoffs(double grad_h_sq, double E, double C) {
  if (!(E > 0.0) || !(C > 0.0)) throw std::invalid_argument("choose_cutoffs requires E > 0 and C > 0");
  Cutoffs c;
  c.Lambda = (50.0 * C) * (50.0 * C) * grad_h_sq + std::numbers::e / E;
  c.lambda = 1.0 / E;
  c.ordered = c.lambda <= c.Lambda;
  return c;
}

Cutoffs choose_cutoffs(const VectorField& v, double E, double C) {
  return choose_cutoffs(weighted(v, {0, 1, 2}, [](const Wavevector& k) { return k.horizontal_norm2(); }), E, C);
}

LemmaIngredients lemma_ingredients(const VectorField& v, const std::vector<double>& E_list) {
  LemmaIngredients in;
  const ScalarField d1v3 = spectral::derivative(v[2], 1);
  const ScalarField d2v3 = spectral::derivative(v[2], 2);
  if (!v[2].is_zero()) {
    for (int l = 1; l <= 2; ++l) {
      const ScalarField d3 = spectral::derivative(v[l - 1], 3);
      if (d3.is_zero()) continue;
      in.j_max = std::max(in.j_max, std::abs(spectral::trilinear_integral(d1v3, d3, spectral::derivative(v[l - 1], 1))));
      in.j_max = std::max(in.j_max, std::abs(spectral::trilinear_integral(d2v3, d3, spectral::derivative(v[l - 1], 2))));
    }
  }
  auto kh2 = [](const Wavevector& k) { return k.horizontal_norm2(); };
  in.gh_l2 = weighted(v, {0, 1, 2}, kh2);
  in.gh_h1 = weighted(v, {0, 1, 2}, [](const Wavevector& k) { return k.horizontal_norm2() * k.norm2(); });
  in.ghh_h1 = weighted(v, {0, 1}, [](const Wavevector& k) { return k.horizontal_norm2() * k.norm2(); });
  in.grad_sq = weighted(v, {0, 1, 2}, [](const Wavevector& k) { return k.norm2(); });
  in.d3_sq = weighted(v, {0, 1, 2}, [](const Wavevector& k) { return double(k.k3) * k.k3; });
  in.d3h_sq = weighted(v, {0, 1}, [](const Wavevector& k) { return double(k.k3) * k.k3; });
  in.v3_h12 = norms::hs_norm_3d(v[2], 0.5);
  in.v3_h32 = norms::hs_norm_3d(v[2], 1.5);
  for (double E : E_list) in.v3_logh.emplace_back(E, norms::log_weighted_norm(v[2], E));
  return in;
}

CheckReport check_lemma21(const LemmaIngredients& in, double E) {
  if (!(E > 0.0)) throw std::invalid_argument("check_lemma21 requires E > 0");
  CheckReport r;
  r.name = "lemma21";
  r.lhs = in.j_max;
  const double log_factor = std::log(in.gh_l2 * E + std::numbers::e);
  const double structure = (log_factor * in.v3_h32 * in.v3_h32 + in.grad_sq / E) * in.gh_l2;
  r.rhs_terms = {{"E", E},
                 {"gh_h1", in.gh_h1},
                 {"gh_l2", in.gh_l2},
                 {"log_factor", log_factor},
                 {"v3_h32_sq", in.v3_h32 * in.v3_h32},
                 {"grad_sq", in.grad_sq},
                 {"structure", structure}};
  const double full = in.gh_h1 + structure;
  r.ratio = full > 0.0 ? r.lhs / full : 0.0;
  r.implied_constant = implied(r.lhs, 0.1 * in.gh_h1, structure);
  return r;
}

CheckReport check_lemma21(const VectorField& v, double E) { return check_lemma21(lemma_ingredients(v), E); }

CheckReport check_lemma22(const LemmaIngredients& in, double E, double epsilon) {
  if (!(E > 0.0) || !(epsilon > 0.0)) throw std::invalid_argument("check_lemma22 requires E > 0 and epsilon > 0");
  CheckReport r;
  r.name = "lemma22";
  r.lhs = in.j_max;
  const double root_log = std::sqrt(std::log(std::numbers::e + E * in.gh_l2));
  const double structure = in.v3_h12 * root_log * in.gh_h1 + in.v3_h12 * in.v3_h12 * in.d3_sq / (E * E);
  r.rhs_terms = {{"E", E},
                 {"epsilon", epsilon},
                 {"gh_h1", in.gh_h1},
                 {"v3_h12", in.v3_h12},
                 {"root_log", root_log},
                 {"d3_sq", in.d3_sq},
                 {"structure", structure}};
  const double full = in.gh_h1 + structure;
  r.ratio = full > 0.0 ? r.lhs / full : 0.0;
  r.implied_constant = implied(r.lhs, epsilon * in.gh_h1, structure);
  return r;
}

CheckReport check_lemma22(const VectorField& v, double E, double epsilon) {
  return check_lemma22(lemma_ingredients(v), E, epsilon);
}

CheckReport check_lemma23(const LemmaIngredients& in, double E) {
  if (!(E >= 0.0)) throw std::invalid_argument("check_lemma23 requires E >= 0");
  CheckReport r;
  r.name = "lemma23";
  r.lhs = in.j_max;
  const double logh = logh_value(in, E);
  const double tail = in.d3h_sq == 0.0 ? 0.0 : in.v3_h12 * in.v3_h12 * in.d3h_sq / (E * E);
  const double structure = logh * in.ghh_h1 + tail;
  r.rhs_terms = {{"E", E},
                 {"ghh_h1", in.ghh_h1},
                 {"v3_logh", logh},
                 {"v3_h12", in.v3_h12},
                 {"d3h_sq", in.d3h_sq},
                 {"structure", structure}};
  const double full = in.ghh_h1 + structure;
  r.ratio = full > 0.0 && std::isfinite(full) ? r.lhs / full : 0.0;
  r.implied_constant = std::isfinite(structure) ? implied(r.lhs, 0.1 * in.ghh_h1, structure) : 0.0;
  return r;
}

CheckReport check_lemma23(const VectorField& v, double E) { return check_lemma23(lemma_ingredients(v, {E}), E); }

CheckReport check_bernstein(const ScalarField& a, int k, Support support, double p1, double p2,
                            std::pair<int, int> alpha) {
  const std::vector<std::pair<double, double>> allowed{{2, 2}, {4, 2}, {kInf, 2}, {kInf, kInf}};
  if (std::find(allowed.begin(), allowed.end(), std::make_pair(p1, p2)) == allowed.end()) {
    throw std::invalid_argument("unsupported (p1, p2) pair");
  }
  if (alpha.first < 0 || alpha.second < 0) throw std::invalid_argument("alpha must be nonnegative");
  const Grid& g = a.grid();
  const double scale = std::ldexp(1.0, k);
  g.for_each_mode([&](std::size_t n, const Wavevector& xi) {
    if (a[n] == cplx{}) return;
    const double kh = std::sqrt(xi.horizontal_norm2());
    const bool ok = support == Support::low
                        ? kh <= lp::DyadicPartition::chi_outer * scale * (1 + 1e-12)
                        : kh >= lp::DyadicPartition::phi_inner * scale * (1 - 1e-12) &&
                              kh <= lp::DyadicPartition::phi_outer * scale * (1 + 1e-12);
    if (!ok) throw std::invalid_argument("field is not supported in the declared dyadic region");
  });
  ScalarField d = a;
  for (int m = 0; m < alpha.first; ++m) d = spectral::derivative(d, 1);
  for (int m = 0; m < alpha.second; ++m) d = spectral::derivative(d, 2);
  const auto lhs = slice_lp(g, spectral::to_physical(d), p1);
  const auto rhs = slice_lp(g, spectral::to_physical(a), p2);
  const double inv = (p2 == kInf ? 0.0 : 1.0 / p2) - (p1 == kInf ? 0.0 : 1.0 / p1);
  const double factor = std::pow(scale, alpha.first + alpha.second + 2.0 * inv);

  CheckReport r;
  r.name = std::string("bernstein.") + (support == Support::low ? "low" : "ring") + ".p" + index_name(p1) + "_" +
           index_name(p2);
  double worst_l = 0.0, worst_r = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    if (rhs[j] == 0.0) continue;
    const double q = lhs[j] / (factor * rhs[j]);
    if (q >= r.ratio) {
      r.ratio = q;
      worst_l = lhs[j];
      worst_r = rhs[j];
    }
  }
  r.lhs = worst_l;
  r.rhs_terms = {{"k", double(k)}, {"scale", factor}, {"norm_p2", worst_r}};
  r.implied_constant = r.ratio;
  return r;
}

CheckReport check_ring_inverse(const ScalarField& a, int k) {
  const Grid& g = a.grid();
  const double scale = std::ldexp(1.0, k);
  g.for_each_mode([&](std::size_t n, const Wavevector& xi) {
    if (a[n] == cplx{}) return;
    const double kh = std::sqrt(xi.horizontal_norm2());
    if (kh < lp::DyadicPartition::phi_inner * scale * (1 - 1e-12) ||
        kh > lp::DyadicPartition::phi_outer * scale * (1 + 1e-12)) {
      throw std::invalid_argument("field is not supported in the declared ring");
    }
  });
  const auto l2 = norms::hs_slice_norms(a, 0.0);
  const auto grad = norms::hs_slice_norms(a, 1.0);
  CheckReport r;
  r.name = "bernstein.ring_inverse";
  for (std::size_t j = 0; j < l2.size(); ++j) {
    if (grad[j] == 0.0) continue;
    const double q = l2[j] / (grad[j] / scale);
    if (q >= r.ratio) {
      r.ratio = q;
      r.lhs = l2[j];
    }
  }
  r.rhs_terms = {{"k", double(k)}, {"constant", 4.0 / 3.0}};
  r.pass = r.ratio <= (4.0 / 3.0) * (1.0 + 1e-12);
  return r;
}

CheckReport check_trace(const ScalarField& a, double s) {
  if (!(s >= 0.5 && s < 1.0)) throw std::invalid_argument("check_trace requires 1/2 <= s < 1");
  CheckReport r;
  r.name = "trace";
  r.lhs = norms::hs_slice_sup(a, s);
  const double rhs = norms::hs_norm_3d(a, s + 0.5);
  r.rhs_terms = {{"s", s}, {"h_s_plus_half", rhs}, {"constant", kSqrt2}};
  r.ratio = rhs > 0.0 ? r.lhs / rhs : 0.0;
  r.pass = r.ratio <= kSqrt2 + 1e-9 && (rhs > 0.0 || r.lhs == 0.0);
  return r;
}

CheckReport check_product(const ScalarField& a, const ScalarField& b, ProductVariant variant) {
  spectral::require_same_grid(a.grid(), b.grid(), "check_product");
  if (!x3_independent(a) || !x3_independent(b)) throw std::invalid_argument("check_product needs x3-independent fields");
  CheckReport r;
  const double b_h12 = norms::hs_slice_norm(b, 0.5, 0);
  switch (variant) {
    case ProductVariant::bony_paraproducts: {
      r.name = "product.paraproduct";
      r.lhs = norms::hs_slice_norm(lp::bony_split(a, b).low_high.field, 0.5, 0);
      const double a_inf = physical_sup(a);
      r.rhs_terms = {{"a_linf", a_inf}, {"b_h12", b_h12}};
      const double rhs = a_inf * b_h12;
      r.ratio = rhs > 0.0 ? r.lhs / rhs : 0.0;
      break;
    }
    case ProductVariant::b21_law: {
      r.name = "product.b21";
      r.lhs = norms::hs_slice_norm(spectral::dealiased_product(a, b).field, 0.5, 0);
      const double a_b21 = norms::besov_h_slice_norms(a, 1.0, 2.0, 1.0)[0];
      r.rhs_terms = {{"a_b21", a_b21}, {"b_h12", b_h12}};
      const double rhs = a_b21 * b_h12;
      r.ratio = rhs > 0.0 ? r.lhs / rhs : 0.0;
      break;
    }
    case ProductVariant::full_law: {
      r.name = "product.full";
      r.lhs = norms::hs_slice_norm(spectral::dealiased_product(a, b).field, 0.5, 0);
      const double a_inf = physical_sup(a);
      const double a_h1 = norms::hs_slice_norm(a, 1.0, 0);
      r.rhs_terms = {{"a_linf", a_inf}, {"a_h1", a_h1}, {"b_h12", b_h12}};
      const double rhs = (a_inf + a_h1) * b_h12;
      r.ratio = rhs > 0.0 ? r.lhs / rhs : 0.0;
      break;
    }
  }
  r.implied_constant = r.ratio;
  return r;
}

VectorField ns_rescale(const VectorField& v, int lambda) {
  if (lambda < 1) throw std::invalid_argument("ns_rescale requires an integer lambda >= 1");
  const Grid& g = v.grid();
  std::array<std::vector<cplx>, 3> c;
  for (auto& comp : c) comp.assign(g.size(), cplx{});
  g.for_each_mode([&](std::size_t n, const Wavevector& k) {
    if (v[0][n] == cplx{} && v[1][n] == cplx{} && v[2][n] == cplx{}) return;
    const Wavevector s{lambda * k.k1, lambda * k.k2, lambda * k.k3};
    if (!g.in_dealias_set(s)) throw std::invalid_argument("rescaled field leaves the resolved set");
    const std::size_t m = g.index(g.storage_index(0, s.k1), g.storage_index(1, s.k2), g.storage_index(2, s.k3));
    for (int comp = 0; comp < 3; ++comp) c[std::size_t(comp)][m] = double(lambda) * v[comp][n];
  });
  return VectorField::certified(ScalarField::from_trusted(g, std::move(c[0])),
                                ScalarField::from_trusted(g, std::move(c[1])),
                                ScalarField::from_trusted(g, std::move(c[2])));
}

CheckReport lemma21_amplitude_scaling(const VectorField& v, double E, double alpha) {
  const double base = *check_lemma21(v, E).implied_constant;
  const double scaled = *check_lemma21(v * alpha, E / (alpha * alpha)).implied_constant;
  CheckReport r;
  r.name = "lemma21.amplitude_scaling";
  r.lhs = std::abs(scaled - base);
  r.rhs_terms = {{"alpha", alpha}, {"E", E}, {"C_base", base}, {"C_scaled", scaled}};
  r.ratio = base > 0.0 ? r.lhs / base : r.lhs;
  return r;
}

CheckReport lemma21_ns_scaling(const VectorField& v, double E, int lambda) {
  const double base = *check_lemma21(v, E).implied_constant;
  LemmaIngredients in = lemma_ingredients(ns_rescale(v, lambda));
  // One period cell of the rescaled field has volume (2 pi / lambda)^3.
  const double cell = 1.0 / std::pow(double(lambda), 3);
  for (double* q : {&in.j_max, &in.gh_l2, &in.gh_h1, &in.ghh_h1, &in.grad_sq, &in.d3_sq, &in.d3h_sq}) *q *= cell;
  in.v3_h32 *= std::sqrt(cell);
  in.v3_h12 *= std::sqrt(cell);
  const double scaled = *check_lemma21(in, E / lambda).implied_constant;
  CheckReport r;
  r.name = "lemma21.ns_scaling";
  r.lhs = std::abs(scaled - base);
  r.rhs_terms = {{"lambda", double(lambda)}, {"E", E}, {"C_base", base}, {"C_scaled", scaled}};
  r.ratio = base > 0.0 ? r.lhs / base : r.lhs;
  return r;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

using Reports = std::vector<CheckReport>;

std::uint64_t seed_of(const SuiteOptions& o) { return o.seed == 0 ? corpus::kDefaultSeed : o.seed; }

CheckReport identity_report(const std::string& name, const std::vector<double>& residuals, double tolerance) {
  CheckReport r;
  r.name = name;
  std::size_t worst = 0;
  for (std::size_t n = 0; n < residuals.size(); ++n)
    if (residuals[n] > r.lhs || std::isnan(residuals[n])) {
      r.lhs = residuals[n];
      worst = n;
    }
  r.rhs_terms = {{"tolerance", tolerance}, {"fields", double(residuals.size())}, {"worst_index", double(worst)}};
  r.ratio = r.lhs / tolerance;
  r.pass = r.lhs <= tolerance;
  return r;
}

CheckReport constant_report(const std::string& name, const std::vector<CheckReport>& per_field) {
  CheckReport r;
  r.name = name;
  double worst_c = 0.0, worst_ratio = 0.0;
  std::size_t worst = 0;
  for (std::size_t n = 0; n < per_field.size(); ++n) {
    const double c = per_field[n].implied_constant.value_or(0.0);
    if (c > worst_c || std::isnan(c)) {
      worst_c = c;
      worst = n;
    }
    worst_ratio = std::max(worst_ratio, per_field[n].ratio);
  }
  r.lhs = worst_c;
  r.implied_constant = worst_c;
  r.ratio = worst_ratio;
  r.rhs_terms = {{"fields", double(per_field.size())}, {"worst_index", double(worst)}};
  if (!per_field.empty())
    for (const auto& [k, v] : per_field.front().rhs_terms)
      if (k == "E" || k == "epsilon" || k == "k" || k == "s") r.rhs_terms.emplace_back(k, v);
  return r;
}

CheckReport hard_report(const std::string& name, const std::vector<CheckReport>& per_field, double bound) {
  CheckReport r;
  r.name = name;
  int violations = 0;
  for (const auto& f : per_field) {
    r.ratio = std::max(r.ratio, f.ratio);
    if (f.pass && !*f.pass) ++violations;
  }
  r.lhs = r.ratio;
  r.rhs_terms = {{"bound", bound}, {"checks", double(per_field.size())}, {"violations", double(violations)}};
  r.pass = violations == 0;
  return r;
}

std::vector<VectorField> build_corpus(const Grid& g, const SuiteOptions& o) {
  std::vector<std::optional<VectorField>> slots(static_cast<std::size_t>(o.corpus_size));
  corpus::parallel_for(o.corpus_size, o.threads,
                       [&](int i) { slots[std::size_t(i)] = corpus::field(g, corpus::member(i, seed_of(o)), o.shell_max); });
  std::vector<VectorField> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double relative_l2(const ScalarField& diff, const ScalarField& ref) {
  const double r = spectral::l2_norm_squared(ref);
  const double d = spectral::l2_norm_squared(diff);
  return r > 0.0 ? std::sqrt(d / r) : std::sqrt(d);
}

Reports suite_identities(const SuiteOptions& o) {
  const Grid g = Grid::cube(o.n);
  const auto fields = build_corpus(g, o);
  const std::size_t N = fields.size();
  std::vector<double> e1(N), div(N), band(N), blocks(N), bony(N), parseval(N);
  corpus::parallel_for(int(N), o.threads, [&](int idx) {
    const std::size_t n = std::size_t(idx);
    const VectorField& v = fields[n];
    e1[n] = diagnostics::e1_identity_residual(v).residual;
    div[n] = diagnostics::divfree_identity(v).residual;
    double b = 0.0;
    for (int i = 1; i <= 2; ++i)
      for (int l = 1; l <= 2; ++l) b = std::max(b, j_band_components(v, i, l, 2.0, 8.0).residual);
    band[n] = b;

    const ScalarField& a = v[idx % 3];
    const auto [k_lo, k_hi] = lp::dyadic_range(g);
    ScalarField sum = lp::horizontal_mean_part(a);
    for (int k = k_lo; k <= k_hi; ++k) sum = sum + lp::delta_h(a, k);
    blocks[n] = relative_l2(sum - a, a);

    bony[n] = lp::bony_split(v[0], v[1]).unresolved_tail;

    double worst = 0.0;
    for (int c = 0; c < 3; ++c) {
      const auto x = spectral::to_physical(v[c]);
      double s = 0.0;
      for (double y : x) s += y * y;
      const double physical = Grid::volume() * s / static_cast<double>(x.size());
      const double spectral_side = spectral::l2_norm_squared(v[c]);
      worst = std::max(worst, std::abs(physical - spectral_side) / spectral_side);
    }
    parseval[n] = worst;
  });
  return {identity_report("identity.e1_rewrite", e1, 1e-10),
          identity_report("identity.divfree_d3w3_divh", div, 1e-12),
          identity_report("identity.band_partition", band, 1e-12),
          identity_report("identity.dyadic_reconstruction", blocks, 1e-12),
          identity_report("identity.bony_sum", bony, 1e-12),
          identity_report("identity.parseval", parseval, 1e-12)};
}

Reports suite_trace(const SuiteOptions& o) {
  const Grid g = Grid::cube(o.n);
  const auto fields = build_corpus(g, o);
  Reports out;
  for (double s : {0.5, 0.75}) {
    std::vector<CheckReport> per(fields.size() * 3);
    corpus::parallel_for(int(fields.size()), o.threads, [&](int n) {
      for (int c = 0; c < 3; ++c) per[std::size_t(n) * 3 + std::size_t(c)] = check_trace(fields[std::size_t(n)][c], s);
    });
    CheckReport r = hard_report("trace.s" + index_name(s), per, kSqrt2);
    r.rhs_terms.emplace_back("s", s);
    out.push_back(std::move(r));
  }
  return out;
}

Reports suite_bernstein(const SuiteOptions& o) {
  const Grid g = Grid::cube(o.n);
  const auto fields = build_corpus(g, o);
  const int k_top = std::min(lp::dyadic_range(g).second, 3);
  const std::vector<std::pair<double, double>> pairs{{2, 2}, {4, 2}, {kInf, 2}, {kInf, kInf}};
  const std::vector<std::pair<int, int>> alphas{{0, 0}, {1, 0}, {0, 1}};
  const int K = k_top + 1;
  const std::size_t per_field = std::size_t(2 * K * pairs.size());
  std::vector<CheckReport> results(fields.size() * per_field);
  std::vector<CheckReport> inverse(fields.size() * std::size_t(K));
  corpus::parallel_for(int(fields.size()), o.threads, [&](int idx) {
    const ScalarField& a = fields[std::size_t(idx)][idx % 3];
    std::size_t slot = std::size_t(idx) * per_field;
    for (int k = 0; k <= k_top; ++k) {
      const ScalarField low = lp::s_h(a, k);
      const ScalarField ring = lp::delta_h(a, k);
      for (const Support sup : {Support::low, Support::ring}) {
        const ScalarField& f = sup == Support::low ? low : ring;
        for (const auto& [p1, p2] : pairs) {
          CheckReport best;
          for (const auto& alpha : alphas) {
            CheckReport r = check_bernstein(f, k, sup, p1, p2, alpha);
            if (r.ratio >= best.ratio) best = r;
          }
          results[slot++] = best;
        }
      }
      inverse[std::size_t(idx) * std::size_t(K) + std::size_t(k)] = check_ring_inverse(ring, k);
    }
  });
  Reports out;
  std::size_t slot = 0;
  for (int k = 0; k <= k_top; ++k) {
    for (int sup = 0; sup < 2; ++sup) {
      for (std::size_t p = 0; p < pairs.size(); ++p, ++slot) {
        std::vector<CheckReport> column;
        for (std::size_t n = 0; n < fields.size(); ++n) column.push_back(results[n * per_field + slot]);
        CheckReport r = constant_report(column.front().name + ".k" + std::to_string(k), column);
        out.push_back(std::move(r));
      }
    }
  }
  out.push_back(hard_report("bernstein.ring_inverse", inverse, 4.0 / 3.0));
  return out;
}

Reports suite_products(const SuiteOptions& o) {
  const Grid g(o.n, o.n, 8);
  const int pairs = std::max(1, o.corpus_size / 2);
  const double k_max = (o.shell_max ? std::min(*o.shell_max, double(g.dealias_cutoff(0))) : g.dealias_cutoff(0)) / 2;
  std::vector<CheckReport> para(static_cast<std::size_t>(pairs)), b21(static_cast<std::size_t>(pairs)), full(static_cast<std::size_t>(pairs));
  corpus::parallel_for(pairs, o.threads, [&](int i) {
    const ScalarField a = corpus::planar_field(g, corpus::member(2 * i, seed_of(o)), k_max);
    const ScalarField b = corpus::planar_field(g, corpus::member(2 * i + 1, seed_of(o)), k_max);
    para[std::size_t(i)] = check_product(a, b, ProductVariant::bony_paraproducts);
    b21[std::size_t(i)] = check_product(a, b, ProductVariant::b21_law);
    full[std::size_t(i)] = check_product(a, b, ProductVariant::full_law);
  });
  return {constant_report("product.paraproduct", para), constant_report("product.b21", b21),
          constant_report("product.full", full)};
}

Reports suite_lemmas(const SuiteOptions& o) {
  const Grid g = Grid::cube(o.n);
  const auto fields = build_corpus(g, o);
  std::vector<LemmaIngredients> ingr(fields.size());
  corpus::parallel_for(int(fields.size()), o.threads,
                       [&](int n) { ingr[std::size_t(n)] = lemma_ingredients(fields[std::size_t(n)], o.E_list); });
  Reports out;
  for (double E : o.E_list) {
    std::vector<CheckReport> l21, l22a, l22b, l23;
    for (const auto& in : ingr) {
      l21.push_back(check_lemma21(in, E));
      l22a.push_back(check_lemma22(in, E, 0.1));
      l22b.push_back(check_lemma22(in, E, 0.25));
      l23.push_back(check_lemma23(in, E));
    }
    const std::string tag = ".E" + index_name(E);
    out.push_back(constant_report("lemma21" + tag, l21));
    out.push_back(constant_report("lemma22.eps0.1" + tag, l22a));
    out.push_back(constant_report("lemma22.eps0.25" + tag, l22b));
    out.push_back(constant_report("lemma23" + tag, l23));
  }
  return out;
}

Reports suite_bands(const SuiteOptions& o) {
  const Grid g = Grid::cube(o.n);
  const auto fields = build_corpus(g, o);
  const std::size_t N = fields.size();
  std::vector<double> fixed(N), chosen(N), bony(N), natural_zero(N);
  corpus::parallel_for(int(N), o.threads, [&](int idx) {
    const std::size_t n = std::size_t(idx);
    const VectorField& v = fields[n];
    double f = 0.0, c = 0.0, b = 0.0, z = 0.0;
    const Cutoffs cut = choose_cutoffs(v, 1.0, 1.0);
    for (int i = 1; i <= 2; ++i) {
      for (int l = 1; l <= 2; ++l) {
        f = std::max(f, j_band_components(v, i, l, 2.0, 8.0).residual);
        c = std::max(c, j_band_components(v, i, l, cut.lambda, cut.Lambda).residual);
        const JBands degenerate = j_band_components(v, i, l, 3.0, 3.0);
        z = std::max(z, std::abs(degenerate.natural));
        const JSharpBony s = j_sharp_bony(v, i, l, 1.0);
        const double scale = std::max({std::abs(s.direct), std::abs(s.piece1), std::abs(s.piece2), 1e-300});
        b = std::max(b, std::max(0.0, s.residual - s.tail_bound) / scale);
      }
    }
    fixed[n] = f;
    chosen[n] = c;
    bony[n] = b;
    natural_zero[n] = z;
  });
  return {identity_report("bands.partition.lambda2_Lambda8", fixed, 1e-12),
          identity_report("bands.partition.chosen_cutoffs", chosen, 1e-12),
          identity_report("bands.degenerate_natural", natural_zero, 0.0),
          identity_report("bands.sharp_bony", bony, 1e-8)};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "bernstein", "trace", "products", "lemmas", "bands", "all"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  if (options.corpus_size < 1) throw std::invalid_argument("corpus size must be positive");
  SuiteResult result;
  auto append = [&](Reports r) {
    for (auto& x : r) result.reports.push_back(std::move(x));
  };
  const bool all = name == "all";
  bool known = all;
  if (all || name == "identities") known = true, append(suite_identities(options));
  if (all || name == "bernstein") known = true, append(suite_bernstein(options));
  if (all || name == "trace") known = true, append(suite_trace(options));
  if (all || name == "products") known = true, append(suite_products(options));
  if (all || name == "lemmas") known = true, append(suite_lemmas(options));
  if (all || name == "bands") known = true, append(suite_bands(options));
  if (!known) throw std::invalid_argument("unknown suite '" + name + "'");
  for (const auto& r : result.reports)
    if (r.pass && !*r.pass) ++result.hard_failures;
  return result;
}

}  // namespace aniso::lab
