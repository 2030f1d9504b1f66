#include "ep2d/timestepper.hpp"

#include <cmath>
#include <sstream>

#include "ep2d/norms.hpp"
#include "ep2d/simd.hpp"

namespace ep2d {

IfRk4Stepper::IfRk4Stepper(GridPtr grid, double dt, double epsilon, bool nonlinear)
    : grid_(std::move(grid)), dt_(dt), nonlinear_(nonlinear), eval_(grid_) {
  if (!(epsilon >= 0.0)) throw InputError("stepper.epsilon must be nonnegative");
  if (dt == 0.0 || !std::isfinite(dt)) throw InputError("stepper.dt must be finite and nonzero");
  if (dt < 0.0 && epsilon > 0.0) throw InputError("backward steps need epsilon = 0");
  const Grid& g = *grid_;
  const std::size_t n = g.size();
  e_half_.resize(n);
  e_full_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k2 = g.kabs()[i] * g.kabs()[i];
    const double mask = (i == 0) ? 0.0 : g.band_mask()[i];
    e_half_[i] = mask * std::polar(std::exp(-0.5 * dt * epsilon * k2), -0.5 * dt * g.lambda()[i]);
    e_full_[i] = mask * std::polar(std::exp(-dt * epsilon * k2), -dt * g.lambda()[i]);
  }
  for (auto* v : {&k1_, &k2_, &k3_, &k4_, &tmp_, &eu_half_}) v->resize(n);
}

void IfRk4Stepper::step(std::vector<cplx>& u) {
  const auto& K = simd::kernels();
  const std::size_t n = u.size();
  if (!nonlinear_) {
    K.mul_complex(u.data(), e_full_.data(), n);
    return;
  }
  const double h = dt_;
  eval_(u.data(), k1_.data());

  tmp_ = u;
  K.axpy(tmp_.data(), 0.5 * h, k1_.data(), n);
  K.mul_complex(tmp_.data(), e_half_.data(), n);
  eval_(tmp_.data(), k2_.data());

  eu_half_ = u;
  K.mul_complex(eu_half_.data(), e_half_.data(), n);
  tmp_ = eu_half_;
  K.axpy(tmp_.data(), 0.5 * h, k2_.data(), n);
  eval_(tmp_.data(), k3_.data());

  tmp_ = eu_half_;
  K.axpy(tmp_.data(), h, k3_.data(), n);
  K.mul_complex(tmp_.data(), e_half_.data(), n);
  eval_(tmp_.data(), k4_.data());

  K.axpy(u.data(), h / 6.0, k1_.data(), n);
  K.mul_complex(u.data(), e_half_.data(), n);
  K.axpy(u.data(), h / 3.0, k2_.data(), n);
  K.axpy(u.data(), h / 3.0, k3_.data(), n);
  K.mul_complex(u.data(), e_half_.data(), n);
  K.axpy(u.data(), h / 6.0, k4_.data(), n);
  u[0] = 0.0;
}

ComplexUnknown step(const ComplexUnknown& U, const StepperConfig& cfg) {
  IfRk4Stepper s(U.u.grid_ptr(), cfg.dt, cfg.epsilon, cfg.nonlinear);
  SpectralField u = dealias(to_frequency(U.u));
  u.mutable_values()[0] = 0.0;
  s.step(u.mutable_values());
  return {u};
}

namespace {

std::size_t step_count(const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw InputError("stepper.dt must be positive");
  if (!(cfg.horizon >= 0.0)) throw InputError("stepper.horizon must be nonnegative");
  if (cfg.sample_stride < 1) throw InputError("stepper.sample_stride must be at least 1");
  const double q = cfg.horizon / cfg.dt;
  const auto n = static_cast<std::size_t>(std::llround(q));
  if (std::abs(q - static_cast<double>(n)) > 1e-6) throw InputError("stepper.horizon must be a multiple of stepper.dt");
  return n;
}

}  // namespace

RunSummary run(const ComplexUnknown& U0, const StepperConfig& cfg,
               const std::vector<Observer>& observers) {
  const std::size_t nsteps = step_count(cfg);
  const Grid& g = U0.grid();
  RunSummary out;
  out.beyond_horizon = cfg.horizon > wraparound_horizon(g) * (1.0 + 1e-12);

  SpectralField u = dealias(to_frequency(U0.u));
  u.mutable_values()[0] = 0.0;
  {
    // stability indicator
    SpectralField up = to_physical(u);
    double umax = 0.0;
    for (const cplx& z : up.values()) umax = std::max(umax, std::abs(z));
    const double kmax = g.band_limit() * g.dk() * std::sqrt(2.0);
    const double indicator = cfg.dt * kmax * umax;
    if (cfg.nonlinear && indicator > cfg.stability_budget) {
      std::ostringstream os;
      os << "dt*kmax*max|U| = " << indicator << " exceeds stability budget " << cfg.stability_budget;
      out.stability_warning = os.str();
    }
  }

  IfRk4Stepper stepper(u.grid_ptr(), cfg.dt, cfg.epsilon, cfg.nonlinear);
  ComplexUnknown state{u};
  auto notify = [&](std::size_t k) {
    const Snapshot snap{static_cast<double>(k) * cfg.dt, k, state};
    for (const Observer& ob : observers) ob(snap);
  };
  notify(0);
  std::vector<cplx> last;
  for (std::size_t k = 1; k <= nsteps; ++k) {
    last = state.u.values();
    stepper.step(state.u.mutable_values());
    const double mass = simd::kernels().weighted_norm_sq(state.u.values().data(), nullptr, state.u.size());
    if (!std::isfinite(mass)) {
      out.aborted = true;
      std::ostringstream os;
      os << "non-finite values at t = " << static_cast<double>(k) * cfg.dt;
      out.abort_message = os.str();
      state.u.mutable_values() = last;
      out.final_state = state;
      out.final_time = static_cast<double>(k - 1) * cfg.dt;
      out.steps = k - 1;
      return out;
    }
    if (k % static_cast<std::size_t>(cfg.sample_stride) == 0 || k == nsteps) notify(k);
  }
  out.final_state = state;
  out.final_time = static_cast<double>(nsteps) * cfg.dt;
  out.steps = nsteps;
  return out;
}

ConvergenceTable epsilon_convergence_study(const ComplexUnknown& U0,
                                           const std::vector<double>& eps_list,
                                           const StepperConfig& cfg, int sobolev_order) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] >= 0.0)) throw InputError("epsilon values must be nonnegative");
    if (i > 0 && !(eps_list[i] <= eps_list[i - 1])) throw InputError("epsilon list must be nonincreasing");
  }
  // matched sample times for every run
  std::vector<std::vector<SpectralField>> traj(eps_list.size());
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    StepperConfig c = cfg;
    c.epsilon = eps_list[i];
    auto& rec = traj[i];
    RunSummary s = run(U0, c, {[&rec](const Snapshot& sn) { rec.push_back(sn.U.u); }});
    if (s.aborted) throw std::runtime_error("epsilon study run aborted: " + s.abort_message);
  }
  ConvergenceTable table;
  table.sobolev_order = sobolev_order;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    for (std::size_t j = i + 1; j < eps_list.size(); ++j) {
      EpsilonPair p;
      p.eps_a = eps_list[i];
      p.eps_b = eps_list[j];
      for (std::size_t t = 0; t < traj[i].size(); ++t) {
        const double d = sobolev_norm(add(traj[i][t], traj[j][t], -1.0), sobolev_order);
        p.max_distance = std::max(p.max_distance, d);
        p.final_distance = d;
      }
      if (p.max_distance > 0.0 && p.eps_a + p.eps_b > 0.0) {
        lx.push_back(std::log(p.eps_a + p.eps_b));
        ly.push_back(std::log(p.max_distance));
      }
      table.pairs.push_back(p);
    }
  }
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    table.fitted_order = sxx > 0.0 ? sxy / sxx : std::nan("");
  } else {
    table.fitted_order = std::nan("");
  }
  return table;
}

}  // namespace ep2d
