#include "momentous/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace momentous {

UncertaintySeries uncertainty_products(const Trajectory& traj) {
  UncertaintySeries u;
  u.min_theta = std::numeric_limits<double>::infinity();
  u.min_phi = std::numeric_limits<double>::infinity();
  for (const auto& s : traj.samples) {
    u.t.push_back(s.t);
    u.dG_theta.push_back(uncertainty_theta(s.state));
    u.dG_phi.push_back(uncertainty_phi(s.state));
    u.min_theta = std::min(u.min_theta, u.dG_theta.back());
    if (traj.mode == Mode::sphere) u.min_phi = std::min(u.min_phi, u.dG_phi.back());
  }
  if (traj.mode == Mode::circle) u.min_phi = std::nan("");
  return u;
}

PhaseShift phase_shift(const Trajectory& sc, const Trajectory& cl) {
  if (sc.samples.empty() || cl.samples.empty())
    throw std::invalid_argument("phase_shift: empty trajectory");
  if (sc.mode != cl.mode) throw std::invalid_argument("phase_shift: mode mismatch");
  if (sc.front().t != cl.front().t) throw std::invalid_argument("phase_shift: start times differ");
  const double t_max = std::min(sc.back().t, cl.back().t);
  PhaseShift p;
  for (const auto& s : sc.samples) {
    if (s.t > t_max) break;
    const MomentState c = cl.state_at(s.t);
    p.t.push_back(s.t);
    p.dtheta.push_back(s.state.classical.theta - c.classical.theta);
    p.dphi.push_back(s.state.classical.phi - c.classical.phi);
  }
  p.dtheta_end = p.dtheta.back();
  p.dphi_end = p.dphi.back();
  return p;
}

double predicted_phase_shift(const SystemParams& params, double p_phi, double G2000_0,
                             double G1100_0, double t) {
  const double k = params.inverse_inertia();
  return 2.0 * p_phi * k * (G2000_0 * t + 2.0 * G1100_0 * k * t * t);
}

double phase_shift_scaling(const SystemParams& params, double L, double dx0_squared, double t) {
  return L * dx0_squared * t / (params.hbar * params.radius * params.radius);
}

MetricSummary summarize(const std::vector<double>& v) {
  MetricSummary m;
  m.n = v.size();
  if (v.empty()) return m;
  double sum = 0.0;
  for (double x : v) sum += x;
  m.mean = sum / static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(var / static_cast<double>(v.size()));
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  m.min = *lo;
  m.max = *hi;
  return m;
}

std::string to_string(TerminationPolicy p) {
  return p == TerminationPolicy::last_valid_state ? "last_valid_state" : "exclude_terminated";
}

TerminationPolicy termination_policy_from_string(const std::string& name) {
  if (name == "last_valid_state") return TerminationPolicy::last_valid_state;
  if (name == "exclude_terminated") return TerminationPolicy::exclude_terminated;
  throw ConfigError("termination_policy: unknown value '" + name + "'");
}

std::optional<double> theta_at(const Trajectory& traj, double t_eval, TerminationPolicy policy) {
  if (traj.samples.empty()) return std::nullopt;
  if (traj.back().t >= t_eval) return traj.state_at(t_eval).classical.theta;
  if (policy == TerminationPolicy::exclude_terminated) return std::nullopt;
  return traj.back().state.classical.theta;
}

EnsembleSummary ensemble_stats(const EnsembleResult& ens, double t_eval) {
  std::vector<double> adt, adp, rdp, rdg;
  for (const auto& run : ens.runs) {
    if (!run.ok()) continue;
    if (!run.classical) throw std::invalid_argument("ensemble_stats: run without classical partner");
    const Trajectory& sc = run.semiclassical;
    const Trajectory& cl = *run.classical;
    const double ts = std::min(t_eval, sc.back().t);
    const double tc = std::min(t_eval, cl.back().t);
    const MomentState s = sc.state_at(ts);
    const MomentState c = cl.state_at(tc);
    const double dphi = s.classical.phi - c.classical.phi;
    adt.push_back(std::abs(s.classical.theta - c.classical.theta));
    adp.push_back(std::abs(dphi));
    rdp.push_back(c.classical.phi != 0.0 ? std::abs(dphi) / std::abs(c.classical.phi) : 0.0);
    const double g0 = sc.front().state.moments[0];
    rdg.push_back(g0 != 0.0 ? (s.moments[0] - g0) / g0 : 0.0);
  }
  EnsembleSummary sum;
  sum.t_eval = t_eval;
  sum.abs_dtheta = summarize(adt);
  sum.abs_dphi = summarize(adp);
  sum.rel_dphi = summarize(rdp);
  sum.rel_dG2000 = summarize(rdg);
  return sum;
}

HemisphereCount hemisphere_ratio(const EnsembleResult& ens, double t_eval,
                                 TerminationPolicy policy, double equator_tol) {
  HemisphereCount h;
  const double half = kPi / 2.0;
  for (const auto& run : ens.runs) {
    const auto th = run.ok() ? theta_at(run.semiclassical, t_eval, policy) : std::nullopt;
    if (!th) {
      ++h.excluded;
    } else if (*th > half + equator_tol) {
      ++h.south;
    } else if (*th < half - equator_tol) {
      ++h.north;
    } else {
      ++h.equator;
    }
  }
  h.ratio = h.north == 0 ? std::numeric_limits<double>::infinity()
                         : static_cast<double>(h.south) / static_cast<double>(h.north);
  return h;
}

std::optional<double> mean_theta(const EnsembleResult& ens, double t_eval,
                                 TerminationPolicy policy) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& run : ens.runs) {
    if (!run.ok()) continue;
    if (auto th = theta_at(run.semiclassical, t_eval, policy)) {
      sum += *th;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> time_to_theta(const Trajectory& traj, double theta_star) {
  if (!(theta_star > 0.0 && theta_star < kPi))
    throw std::invalid_argument("time_to_theta: theta_star must lie in (0, pi)");
  if (traj.samples.empty()) return std::nullopt;
  const double t_last = traj.back().t;
  const double f0 = traj.front().state.classical.theta - theta_star;
  if (f0 == 0.0) return traj.front().t;
  auto f = [&](double t) { return traj.state_at(t).classical.theta - theta_star; };

  // Bracket on step boundaries when dense output exists, else on samples.
  std::vector<double> grid;
  if (!traj.dense.empty()) {
    for (const auto& seg : traj.dense) grid.push_back(seg.t0);
    grid.push_back(t_last);
  } else {
    for (const auto& s : traj.samples) grid.push_back(s.t);
  }
  double prev_t = grid.front();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double t = std::min(grid[i], t_last);
    if (t <= prev_t) continue;
    if (std::signbit(f(t)) != std::signbit(f0) || f(t) == 0.0) {
      double lo = prev_t, hi = t;
      while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (std::signbit(f(mid)) == std::signbit(f0) && f(mid) != 0.0)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
    if (t >= t_last) break;
  }
  return std::nullopt;
}

}  // namespace momentous
