#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/distributions/students_t.hpp>

#include "ep2d/dispersion.hpp"
#include "ep2d/dyadic.hpp"
#include "ep2d/verify.hpp"

namespace ep2d {

nlohmann::json DecayFit::to_json() const {
  return {{"observable", observable}, {"t0", t0},           {"t1", t1},
          {"exponent", exponent},     {"half_width", half_width},
          {"log_prefactor", log_prefactor}, {"samples", samples}};
}

DecayFit fit_decay(const std::string& name, const std::vector<double>& times,
                   const std::vector<double>& values, double t0, double t1) {
  if (times.size() != values.size()) throw InputError("fit_decay: times and values differ in length");
  if (!(t0 >= 1.0) || !(t1 > t0)) throw InputError("fit_decay: need t1 > t0 >= 1");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t0 || times[i] > t1) continue;
    if (!(values[i] > 0.0)) throw InputError("fit_decay: nonpositive value in '" + name + "'");
    x.push_back(std::log1p(times[i]));
    y.push_back(std::log(values[i]));
  }
  const double decades = std::log10((1.0 + t1) / (1.0 + t0));
  if (x.size() < 3 || static_cast<double>(x.size()) < 10.0 * decades)
    throw InputError("fit_decay: fewer than 10 samples per decade in the window");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  DecayFit f;
  f.observable = name;
  f.t0 = t0;
  f.t1 = t1;
  f.samples = x.size();
  f.exponent = sxy / sxx;
  f.log_prefactor = my - f.exponent * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.log_prefactor - f.exponent * x[i];
    sse += r * r;
  }
  const boost::math::students_t dist(n - 2.0);
  f.half_width = boost::math::quantile(dist, 0.975) * std::sqrt(sse / (n - 2.0) / sxx);
  return f;
}

std::vector<double> log_times(double t0, double t1, int n, bool with_zero) {
  if (!(t0 > 0.0) || !(t1 > t0) || n < 1) throw InputError("log_times: need 0 < t0 < t1 and n >= 1");
  std::vector<double> out;
  if (with_zero) out.push_back(0.0);
  for (int k = 0; k <= n; ++k) out.push_back(t0 * std::pow(t1 / t0, static_cast<double>(k) / n));
  return out;
}

namespace {

void check_times(const Grid& g, const std::vector<double>& times) {
  if (times.empty()) throw InputError("no sample times");
  const double tmax = *std::max_element(times.begin(), times.end());
  if (tmax > wraparound_horizon(g)) throw InputError("sample times exceed the wraparound horizon L/(4 sqrt a)");
  double tmin = tmax;
  for (double t : times)
    if (t > 0.0) tmin = std::min(tmin, t);
  if (!(tmin > 0.0) || std::log10(tmax / tmin) < 1.5) throw InputError("sample times must span 1.5 decades");
}

double sup_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

DispersiveDecay dispersive_decay_check(int l, const SpectralField& f, const std::vector<double>& times,
                                       double fit_t0, double fit_t1) {
  const Grid& g = f.grid();
  check_times(g, times);
  DispersiveDecay out;
  const SpectralField fp = to_physical(f);
  for (const cplx& z : fp.values()) out.l1 += std::abs(z);
  out.l1 *= g.cell();
  const BandProjection pb = lp_project(to_frequency(f), l);
  if (!pb.representable) throw InputError("band index is not representable on this grid");
  const double weight = 1.0 + std::exp2(2.0 * l);
  for (double t : times) {
    const SpectralField v = to_physical(propagate_linear(pb.field, t));
    const double s = sup_abs(v.values());
    out.times.push_back(t);
    out.sup.push_back(s);
    out.ratio.push_back(out.l1 > 0.0 ? s * (1.0 + t) / (weight * out.l1) : 0.0);
    out.max_ratio = std::max(out.max_ratio, out.ratio.back());
  }
  out.fit = fit_decay("band_sup", out.times, out.sup, fit_t0, fit_t1);
  return out;
}

ZDecay z_to_zprime_decay_check(const SpectralField& f, const std::vector<double>& times,
                               double fit_t0, double fit_t1, const NormWeights& w) {
  const Grid& g = f.grid();
  check_times(g, times);
  ZDecay out;
  const SpectralField fh = to_frequency(f);
  out.z_norm = z_norm(fh, w);
  for (double t : times) {
    const double zp = z_prime_norm(propagate_linear(fh, t), w);
    out.times.push_back(t);
    out.z_prime.push_back(zp);
    out.ratio.push_back(out.z_norm > 0.0 ? zp * (1.0 + t) / out.z_norm : 0.0);
    out.max_ratio = std::max(out.max_ratio, out.ratio.back());
  }
  out.fit = fit_decay("z_prime", out.times, out.z_prime, fit_t0, fit_t1);
  return out;
}

Observer trajectory_recorder(std::vector<TrajectorySample>& out, const RecorderConfig& cfg) {
  if (cfg.light_stride < 1 || cfg.heavy_stride < 1) throw InputError("recorder strides must be positive");
  auto calls = std::make_shared<long>(0);
  return [&out, cfg, calls](const Snapshot& s) {
    const long c = (*calls)++;
    if (c % cfg.light_stride != 0) return;
    const long light_index = c / cfg.light_stride;
    const PerturbationState st = to_state(s.U, s.time);
    const LinfObservables o = linf_observables(st);
    TrajectorySample row;
    row.t = s.time;
    row.linf_density = o.density;
    row.linf_gradv = o.gradv;
    row.e_physical = conserved_energy(st);
    row.diag = diagnostics(st);
    row.z_prime = z_prime_norm(s.U.u, cfg.weights);
    if (light_index % cfg.heavy_stride == 0)
      for (int sigma : cfg.sigma_list) row.e_sigma[sigma] = energy_sigma(s.U, sigma);
    out.push_back(std::move(row));
  };
}

NonlinearDecay nonlinear_decay_fit(const std::vector<TrajectorySample>& traj, double t0, double t1) {
  NonlinearDecay out;
  std::vector<double> t, dens, grad;
  bool zero_d = true, zero_g = true;
  for (const TrajectorySample& r : traj) {
    out.min_density = std::min(out.min_density, r.diag.min_density);
    t.push_back(r.t);
    dens.push_back(r.linf_density);
    grad.push_back(r.linf_gradv);
    if (r.t >= t0 && r.t <= t1) {
      zero_d = zero_d && r.linf_density == 0.0;
      zero_g = zero_g && r.linf_gradv == 0.0;
    }
  }
  out.shock_flag = out.min_density <= 0.0;
  if (!zero_d) out.density = fit_decay("density_sup", t, dens, t0, t1);
  if (!zero_g) out.gradv = fit_decay("gradv_sup", t, grad, t0, t1);
  return out;
}

NonlinearDecay nonlinear_decay_experiment(const NonlinearDecayConfig& cfg,
                                          std::vector<TrajectorySample>* traj) {
  const GridPtr g = Grid::make(cfg.n, cfg.length, cfg.a, cfg.b);
  if (cfg.stepper.horizon > wraparound_horizon(*g) * (1.0 + 1e-12))
    throw InputError("stepper.horizon exceeds the wraparound horizon L/(4 sqrt a)");
  const ComplexUnknown U0 = make_initial_unknown(g, cfg.init);
  std::vector<TrajectorySample> local;
  std::vector<TrajectorySample>& rows = traj ? *traj : local;
  RecorderConfig rc;
  rc.sigma_list.clear();
  const RunSummary s = run(U0, cfg.stepper, {trajectory_recorder(rows, rc)});
  if (s.aborted) throw std::runtime_error("nonlinear decay run aborted: " + s.abort_message);
  return nonlinear_decay_fit(rows, cfg.fit_t0, cfg.stepper.horizon);
}

nlohmann::json EnergyGrowth::to_json() const {
  return {{"sigma", sigma},
          {"min_constant", min_constant},
          {"delta_eff", delta_eff},
          {"delta_gronwall", delta_gronwall},
          {"samples", samples}};
}

EnergyGrowth energy_growth_monitor(const std::vector<TrajectorySample>& traj, int sigma) {
  std::vector<double> t, e, zp;
  for (const TrajectorySample& r : traj) {
    auto it = r.e_sigma.find(sigma);
    if (it == r.e_sigma.end()) continue;
    t.push_back(r.t);
    e.push_back(it->second);
    zp.push_back(r.z_prime);
  }
  EnergyGrowth out;
  out.sigma = sigma;
  out.samples = t.size();
  if (t.size() < 2) return out;
  std::vector<double> I(t.size(), 0.0);
  for (std::size_t k = 1; k < t.size(); ++k)
    I[k] = I[k - 1] + 0.5 * (t[k] - t[k - 1]) * (zp[k] * e[k] + zp[k - 1] * e[k - 1]);
  for (std::size_t s = 0; s < t.size(); ++s) {
    for (std::size_t k = s + 1; k < t.size(); ++k) {
      const double rise = e[k] - e[s];
      if (rise <= 0.0) continue;
      const double den = I[k] - I[s];
      out.min_constant = std::max(out.min_constant, den > 0.0 ? rise / den : std::numeric_limits<double>::infinity());
    }
  }
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double lt = std::log1p(t[k]);
    if (lt <= 0.0 || !(e[0] > 0.0)) continue;
    out.delta_eff = std::max(out.delta_eff, std::log(e[k] / e[0]) / lt);
    double zint = 0.0;
    for (std::size_t j = 1; j <= k; ++j) zint += 0.5 * (t[j] - t[j - 1]) * (zp[j] + zp[j - 1]);
    out.delta_gronwall = std::max(out.delta_gronwall, out.min_constant * zint / lt);
  }
  return out;
}

MultiplierReport multiplier_y_boundedness_check(const Multiplier& m, const GridPtr& g, int samples,
                                                std::uint64_t seed, int n0, const NormWeights& w) {
  if (samples < 1) throw InputError("multiplier check needs at least one sample");
  MultiplierReport out;
  out.name = m.name;
  const double env = g->length() / 16.0;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t fs = seed + static_cast<std::uint64_t>(s);
    std::mt19937_64 rng(fs);
    std::normal_distribution<double> nd;
    SpectralField f(g, Representation::frequency);
    auto& v = f.mutable_values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double k = g->kabs()[i];
      v[i] = cplx(nd(rng), nd(rng)) * std::exp(-0.5 * k * k);
    }
    // localize, keep it real and band limited
    SpectralField p = real_part(to_physical(f));
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2 x = g->position(i);
      p.mutable_values()[i] *= std::exp(-dot(x, x) / (2.0 * env * env));
    }
    const SpectralField fh = dealias(to_frequency(p));
    const double base = y_norm(fh, n0, w);
    if (base == 0.0) continue;
    const double r = y_norm(apply_multiplier(fh, m), n0, w) / base;
    ++out.samples;
    if (r > out.max_ratio) {
      out.max_ratio = r;
      out.witness_seed = fs;
    }
  }
  return out;
}

}  // namespace ep2d
