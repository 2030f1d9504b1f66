#include "ep2d/initial_data.hpp"

#include <cmath>
#include <random>

#include "ep2d/field_io.hpp"

namespace ep2d {
namespace {

SpectralField physical_field(const GridPtr& g, auto&& f) {
  SpectralField out(g, Representation::physical);
  auto& v = out.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g->position(i));
  return out;
}

SpectralField clean(const SpectralField& f) {
  SpectralField out = dealias(to_frequency(f));
  out.mutable_values()[0] = 0.0;
  return out;
}

// real field with normal coefficients, Hermitian by construction
SpectralField random_real(const GridPtr& g, std::mt19937_64& rng, double width) {
  std::normal_distribution<double> nd(0.0, 1.0);
  SpectralField out(g, Representation::frequency);
  auto& v = out.mutable_values();
  const auto& mir = g->mirror();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double re = nd(rng), im = nd(rng);
    if (mir[i] < i) continue;
    const double k = g->kabs()[i];
    const double damp = std::exp(-0.5 * k * k * width * width);
    if (mir[i] == i) {
      v[i] = re * damp;
    } else {
      v[i] = cplx(re, im) * damp;
      v[mir[i]] = std::conj(v[i]);
    }
  }
  return clean(out);
}

}  // namespace

PerturbationState make_initial_state(const GridPtr& g, const InitRecipe& r) {
  const double A = r.amplitude, w = r.width;
  SpectralField zero(g, Representation::frequency);
  if (r.kind == "gaussian_rho") {
    if (!(w > 0.0)) throw InputError("init.width must be positive");
    auto rho = physical_field(g, [&](Vec2 x) {
      const double q = dot(x, x) / (2.0 * w * w);
      return cplx(A * (1.0 - q) * std::exp(-q));
    });
    return {clean(rho), zero, 0.0};
  }
  if (r.kind == "gaussian_h") {
    if (!(w > 0.0)) throw InputError("init.width must be positive");
    auto h = physical_field(g, [&](Vec2 x) { return cplx(A * std::exp(-dot(x, x) / (2.0 * w * w))); });
    return {zero, clean(h), 0.0};
  }
  if (r.kind == "mode_pair") {
    const Vec2 k{r.k_vector[0] * g->dk(), r.k_vector[1] * g->dk()};
    if (r.k_vector[0] == 0 && r.k_vector[1] == 0) throw InputError("init.k_vector must be nonzero");
    if (!g->in_band(r.k_vector[0], r.k_vector[1]))
      throw InputError("init.k_vector lies outside the dealiased band");
    auto rho = physical_field(g, [&](Vec2 x) { return cplx(A * std::cos(dot(k, x))); });
    return {clean(rho), zero, 0.0};
  }
  if (r.kind == "file" || r.kind == "random") return to_state(make_initial_unknown(g, r));
  throw InputError("init.kind: unknown recipe '" + r.kind + "'");
}

ComplexUnknown make_initial_unknown(const GridPtr& g, const InitRecipe& r) {
  if (r.kind == "file") {
    SpectralField f = read_field(r.path);
    const Grid& fg = f.grid();
    if (fg.n() != g->n() || fg.length() != g->length() || fg.a() != g->a() || fg.b() != g->b())
      throw InputError("init.path: dump grid does not match the configured grid");
    SpectralField u(g, f.representation(), f.values());
    return {clean(u)};
  }
  if (r.kind == "random") return random_unknown(g, r.seed, r.amplitude, r.width);
  return to_unknown(make_initial_state(g, r));
}

ComplexUnknown random_unknown(const GridPtr& g, std::uint64_t seed, double amplitude, double width) {
  std::mt19937_64 rng(seed);
  SpectralField rho = random_real(g, rng, width);
  SpectralField h = random_real(g, rng, width);
  ComplexUnknown U = to_unknown({rho, h, 0.0});
  const double n = l2_norm(U.u);
  if (n > 0.0) U.u = scaled(U.u, amplitude / n);
  return U;
}

}  // namespace ep2d
