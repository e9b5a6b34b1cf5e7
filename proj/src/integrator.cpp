#include "momentous/integrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace momentous {

namespace {

// Dormand-Prince 5(4) tableau. The flows are autonomous, so the nodes c_i are unused.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kFacMin = 1.0 / 10.0;  // largest growth 10x
constexpr double kFacMax = 1.0 / 0.2;   // largest shrink 5x
constexpr int kEventScan = 8;

bool all_finite(const PhaseVector& y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(y[i])) return false;
  return true;
}

struct EventValue {
  double g;  // min of active event functions; >= 0 means valid
  Termination tag;
};

class Stepper {
 public:
  Stepper(const Flow& flow, const IntegratorConfig& cfg)
      : flow_(flow), cfg_(cfg), n_(phase_dimension(flow.mode)) {}

  // Returns false when the vector field could not be evaluated.
  bool eval(const PhaseVector& y, PhaseVector& dy) const {
    try {
      flow_.derivative(y, dy);
    } catch (const std::domain_error&) {
      return false;
    }
    return all_finite(dy, n_);
  }

  EventValue events(const PhaseVector& y) const {
    EventValue ev{std::numeric_limits<double>::infinity(), Termination::completed};
    if (flow_.mode == Mode::sphere) {
      const double g = std::abs(std::sin(y[0])) - cfg_.sin_floor;
      if (g < ev.g) ev = {g, Termination::pole_singularity};
    }
    if (flow_.uncertainty_events) {
      const double floor = 0.25 * flow_.hbar * flow_.hbar - cfg_.uncertainty_margin;
      const auto st = MomentState::from_phase(y, flow_.mode);
      const double gt = uncertainty_theta(st) - floor;
      if (gt < ev.g) ev = {gt, Termination::uncertainty_violation};
      if (flow_.mode == Mode::sphere) {
        const double gp = uncertainty_phi(st) - floor;
        if (gp < ev.g) ev = {gp, Termination::uncertainty_violation};
      }
    }
    return ev;
  }

  double error_norm(const PhaseVector& y0, const PhaseVector& y1, const PhaseVector& err) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const double r = err[i] / sc;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(n_));
  }

  // Hairer's starting step heuristic.
  double initial_step(const PhaseVector& y0, const PhaseVector& f0, double span) const {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sk = cfg_.abs_tol + cfg_.rel_tol * std::abs(y0[i]);
      dnf += (f0[i] / sk) * (f0[i] / sk);
      dny += (y0[i] / sk) * (y0[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min({h, cfg_.max_step, span});
    PhaseVector y1{}, f1{};
    for (std::size_t i = 0; i < n_; ++i) y1[i] = y0[i] + h * f0[i];
    if (!eval(y1, f1)) return std::max(h * 1e-3, cfg_.min_step * 10);
    double der2 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sk = cfg_.abs_tol + cfg_.rel_tol * std::abs(y0[i]);
      const double d = (f1[i] - f0[i]) / sk;
      der2 += d * d;
    }
    der2 = std::sqrt(der2 / n_) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf / n_));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100 * h, h1, cfg_.max_step, span});
  }

  std::size_t dim() const { return n_; }

 private:
  const Flow& flow_;
  const IntegratorConfig& cfg_;
  std::size_t n_;
};

Sample make_sample(const Flow& flow, double t, const PhaseVector& y) {
  Sample s;
  s.t = t;
  s.state = MomentState::from_phase(y, flow.mode);
  s.dG_theta = uncertainty_theta(s.state);
  s.dG_phi = uncertainty_phi(s.state);
  try {
    s.energy = flow.energy ? flow.energy(y) : std::nan("");
  } catch (const std::domain_error&) {
    s.energy = std::nan("");
  }
  return s;
}

}  // namespace

void check_config(const IntegratorConfig& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(c.rel_tol, "rel_tol");
  positive(c.abs_tol, "abs_tol");
  positive(c.max_step, "max_step");
  positive(c.t_end, "t_end");
  positive(c.sample_dt, "sample_dt");
  positive(c.min_step, "min_step");
  positive(c.max_wall_seconds, "max_wall_seconds");
  positive(c.event_time_tol, "event_time_tol");
  if (!(c.uncertainty_margin >= 0.0)) throw std::invalid_argument("uncertainty_margin must be >= 0");
  if (!(c.sin_floor > 0.0 && c.sin_floor < 1.0))
    throw std::invalid_argument("sin_floor must lie in (0, 1)");
  if (c.max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
}

PhaseVector DenseSegment::operator()(double t) const {
  const double th = (t - t0) / h;
  const double th1 = 1.0 - th;
  PhaseVector y{};
  for (std::size_t i = 0; i < kMaxPhaseDim; ++i)
    y[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
  return y;
}

MomentState Trajectory::state_at(double t) const {
  if (samples.empty()) throw std::logic_error("state_at: empty trajectory");
  if (t < samples.front().t || t > samples.back().t)
    throw std::out_of_range("state_at: time outside trajectory");
  if (!dense.empty()) {
    auto it = std::upper_bound(dense.begin(), dense.end(), t,
                               [](double v, const DenseSegment& s) { return v < s.t0; });
    if (it != dense.begin()) --it;
    if (t <= it->t0 + it->h) return MomentState::from_phase((*it)(t), mode);
  }
  auto it = std::lower_bound(samples.begin(), samples.end(), t,
                             [](const Sample& s, double v) { return s.t < v; });
  if (it == samples.begin()) return it->state;
  if (it == samples.end()) return samples.back().state;
  const auto& b = *it;
  const auto& a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  const auto ya = a.state.to_phase(), yb = b.state.to_phase();
  PhaseVector y{};
  for (std::size_t i = 0; i < kMaxPhaseDim; ++i) y[i] = ya[i] + w * (yb[i] - ya[i]);
  return MomentState::from_phase(y, mode);
}

Flow make_flow(const SystemKind& kind, const SystemParams& params) {
  Flow f;
  f.mode = kind.mode();
  f.hbar = params.hbar;
  f.uncertainty_events = kind.policy == MomentPolicy::evolve;
  // The pole is handled as an event; the vector field itself is evaluated
  // unguarded so trial stages may overshoot the floor.
  f.derivative = [kind, params](const PhaseVector& y, PhaseVector& dy) {
    rhs_phase(kind, params, y, dy, 0.0);
  };
  f.energy = [kind, params](const PhaseVector& y) { return energy_phase(kind, params, y, 0.0); };
  return f;
}

Flow make_generic_flow(const HamiltonianModel& model, const ThetaPotential* potential,
                       const SystemParams& params, const BracketTable* table) {
  Flow f;
  f.mode = model.mode();
  f.hbar = params.hbar;
  const BracketTable* tab = table ? table : &default_table(model.mode());
  f.derivative = [model, potential, params, tab](const PhaseVector& y, PhaseVector& dy) {
    const auto st = MomentState::from_phase(y, model.mode());
    dy = generic_rhs(model, potential, st, params, *tab, 0.0).to_phase();
  };
  f.energy = [model, potential](const PhaseVector& y) {
    return effective_hamiltonian(model, potential, MomentState::from_phase(y, model.mode())).value;
  };
  return f;
}

Trajectory integrate_flow(const Flow& flow, const MomentState& state0,
                          const IntegratorConfig& cfg) {
  check_config(cfg);
  if (state0.mode != flow.mode) throw std::invalid_argument("integrate: state/flow mode mismatch");

  const auto wall_start = std::chrono::steady_clock::now();
  Stepper stepper(flow, cfg);
  const std::size_t n = stepper.dim();

  Trajectory traj;
  traj.mode = flow.mode;
  traj.config = cfg;

  PhaseVector y = state0.to_phase();
  if (!all_finite(y, n)) throw DomainError("initial state has non-finite entries");
  const EventValue ev0 = stepper.events(y);
  if (ev0.g < 0.0) {
    if (ev0.tag == Termination::pole_singularity)
      throw SingularityError(state0.classical.theta, cfg.sin_floor);
    throw DomainError("initial state violates the uncertainty floor");
  }

  // Sample grid t_k = k * sample_dt; the last point is always t_end, either
  // snapped onto a grid point within rounding or appended after the grid.
  const double ratio = cfg.t_end / cfg.sample_dt;
  long n_samples = static_cast<long>(std::floor(ratio + 1e-9));
  if (std::abs(ratio - std::round(ratio)) >= 1e-9 * std::max(1.0, ratio)) ++n_samples;
  auto sample_time = [&](long k) {
    return k == n_samples ? cfg.t_end : static_cast<double>(k) * cfg.sample_dt;
  };

  traj.samples.reserve(static_cast<std::size_t>(n_samples) + 2);
  traj.samples.push_back(make_sample(flow, 0.0, y));
  long next_k = 1;

  PhaseVector k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, ytmp{}, ynew{}, err{};
  if (!stepper.eval(y, k1)) throw DomainError("vector field not evaluable at the initial state");

  double t = 0.0;
  double h = stepper.initial_step(y, k1, cfg.t_end);
  double facold = 1e-4;
  bool last_rejected = false;
  long steps = 0;

  auto finish = [&](Termination tag, double time, std::string detail) {
    traj.status = {tag, time, std::move(detail)};
  };

  while (true) {
    if (t >= cfg.t_end) {
      finish(Termination::completed, t, "reached t_end");
      break;
    }
    if (++steps > cfg.max_steps) {
      finish(Termination::step_failure, t, "max_steps exceeded");
      break;
    }
    if ((steps & 63) == 0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
      if (elapsed > cfg.max_wall_seconds) {
        finish(Termination::step_failure, t, "wall-clock cap exceeded");
        break;
      }
    }
    if (h < cfg.min_step) {
      finish(Termination::step_failure, t, "step size underflow");
      break;
    }
    h = std::min(h, cfg.max_step);
    bool final_step = false;
    if (t + 1.01 * h >= cfg.t_end) {
      h = cfg.t_end - t;
      final_step = true;
    }

    bool ok = true;
    auto stage = [&](PhaseVector& out, auto&& combine) {
      if (!ok) return;
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * combine(i);
      ok = stepper.eval(ytmp, out);
    };
    stage(k2, [&](std::size_t i) { return a21 * k1[i]; });
    stage(k3, [&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
    stage(k4, [&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    stage(k5, [&](std::size_t i) {
      return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
    });
    stage(k6, [&](std::size_t i) {
      return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    if (ok) {
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      ok = all_finite(ynew, n) && stepper.eval(ynew, k7);
    }
    if (!ok) {
      h *= 0.5;
      last_rejected = true;
      ++traj.rejected_steps;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double e = stepper.error_norm(y, ynew, err);
    if (!std::isfinite(e)) {
      h *= 0.5;
      last_rejected = true;
      ++traj.rejected_steps;
      continue;
    }

    const double fac11 = std::pow(e, kExpo1);
    if (e > 1.0) {
      h /= std::min(kFacMax, fac11 / kSafety);
      last_rejected = true;
      ++traj.rejected_steps;
      continue;
    }

    // Accepted.
    ++traj.accepted_steps;
    DenseSegment seg;
    seg.t0 = t;
    seg.h = h;
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = ynew[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      seg.r[0][i] = y[i];
      seg.r[1][i] = ydiff;
      seg.r[2][i] = bspl;
      seg.r[3][i] = ydiff - h * k7[i] - bspl;
      seg.r[4][i] =
          h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    const double t_new = final_step ? cfg.t_end : t + h;

    // Scan the interpolant so an excursion inside the step is not missed.
    double t_stop = t_new;
    Termination stop_tag = Termination::completed;
    double lo = t, hi = t_new;
    EventValue ev{0.0, Termination::completed};
    const bool sphere = flow.mode == Mode::sphere;
    double sin_lo = std::sin(y[0]);
    for (int j = 1; j <= kEventScan; ++j) {
      const double tj = j == kEventScan ? t_new : t + (t_new - t) * j / kEventScan;
      const PhaseVector yj = j == kEventScan ? ynew : seg(tj);
      ev = stepper.events(yj);
      if (ev.g < 0.0) {
        hi = tj;
        break;
      }
      const double sin_j = std::sin(yj[0]);
      if (sphere && (sin_j > 0.0) != (sin_lo > 0.0)) {
        // Passed through a pole between samples: locate the crossing.
        double a = lo, b = tj;
        while (b - a > cfg.event_time_tol) {
          const double m = 0.5 * (a + b);
          ((std::sin(seg(m)[0]) > 0.0) == (sin_lo > 0.0) ? a : b) = m;
        }
        hi = b;
        ev = stepper.events(seg(b));
        break;
      }
      lo = tj;
      sin_lo = sin_j;
    }
    if (ev.g < 0.0) {
      // Bisection on the dense interpolant; lo stays on the valid side.
      Termination tag = ev.tag;
      while (hi - lo > cfg.event_time_tol) {
        const double mid = 0.5 * (lo + hi);
        const EventValue em = stepper.events(seg(mid));
        if (em.g < 0.0) {
          hi = mid;
          tag = em.tag;
        } else {
          lo = mid;
        }
      }
      t_stop = lo;
      stop_tag = tag;
    }

    while (next_k <= n_samples && sample_time(next_k) <= t_stop) {
      const double ts = sample_time(next_k);
      traj.samples.push_back(make_sample(flow, ts, ts == t_new ? ynew : seg(ts)));
      ++next_k;
    }
    seg.h = t_new - t;
    traj.dense.push_back(seg);

    if (stop_tag != Termination::completed) {
      if (t_stop > traj.samples.back().t) traj.samples.push_back(make_sample(flow, t_stop, seg(t_stop)));
      std::ostringstream os;
      os.precision(17);
      os << (stop_tag == Termination::pole_singularity ? "|sin(theta)| reached floor"
                                                       : "uncertainty product below hbar^2/4")
         << " at t=" << t_stop;
      finish(stop_tag, t_stop, os.str());
      break;
    }

    // PI step-size update.
    double fac = fac11 / std::pow(facold, kBeta);
    fac = std::max(kFacMin, std::min(kFacMax, fac / kSafety));
    double h_new = h / fac;
    facold = std::max(e, 1e-4);
    if (last_rejected) h_new = std::min(h_new, h);
    last_rejected = false;

    y = ynew;
    k1 = k7;
    t = t_new;
    h = h_new;
  }
  return traj;
}

Trajectory integrate(const SystemKind& kind, const MomentState& state0, const SystemParams& params,
                     const IntegratorConfig& config) {
  check_params(params);
  check_kind(kind, state0);
  MomentState s = state0;
  if (kind.policy == MomentPolicy::zeroed) s.moments.fill(0.0);
  Trajectory traj = integrate_flow(make_flow(kind, params), s, config);
  traj.kind = kind;
  traj.params = params;
  return traj;
}

ConvergenceReport convergence_check(const Flow& flow, const MomentState& state0,
                                    const std::vector<double>& tolerances, IntegratorConfig base) {
  if (tolerances.size() < 3) throw std::invalid_argument("convergence_check: need >= 3 tolerances");
  for (std::size_t i = 1; i < tolerances.size(); ++i)
    if (!(tolerances[i] < tolerances[i - 1]))
      throw std::invalid_argument("convergence_check: tolerances must decrease");

  ConvergenceReport r;
  r.tolerances = tolerances;
  const std::size_t n = phase_dimension(flow.mode);
  for (double tol : tolerances) {
    IntegratorConfig cfg = base;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-3;
    const Trajectory tr = integrate_flow(flow, state0, cfg);
    if (tr.status.tag != Termination::completed) {
      r.note = "run at tol " + std::to_string(tol) + " ended with " + to_string(tr.status.tag);
      return r;
    }
    r.finals.push_back(tr.back().state.to_phase());
  }
  for (std::size_t i = 1; i < r.finals.size(); ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(r.finals[i][j] - r.finals[i - 1][j]));
    r.deltas.push_back(d);
  }
  r.monotone = true;
  r.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < r.deltas.size(); ++i) {
    if (r.deltas[i] == 0.0 && r.deltas[i - 1] == 0.0) continue;
    if (!(r.deltas[i] < r.deltas[i - 1])) r.monotone = false;
    if (r.deltas[i] > 0.0) r.min_ratio = std::min(r.min_ratio, r.deltas[i - 1] / r.deltas[i]);
  }
  const double def = IntegratorConfig{}.rel_tol;
  r.default_in_regime = r.monotone && tolerances.back() <= def && def <= tolerances.front();
  r.note = r.monotone ? "successive differences decrease" : "non-monotone convergence";
  return r;
}

ConvergenceReport convergence_check(const SystemKind& kind, const MomentState& state0,
                                    const SystemParams& params,
                                    const std::vector<double>& tolerances, IntegratorConfig base) {
  check_kind(kind, state0);
  MomentState s = state0;
  if (kind.policy == MomentPolicy::zeroed) s.moments.fill(0.0);
  return convergence_check(make_flow(kind, params), s, tolerances, base);
}

}  // namespace momentous
