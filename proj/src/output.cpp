#include "momentous/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace momentous {

using nlohmann::json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<std::string> csv_columns(Mode mode) {
  std::vector<std::string> cols{"t", "theta", "p_theta"};
  if (mode == Mode::sphere) {
    cols.push_back("phi_unwrapped");
    cols.push_back("p_phi");
  }
  for (std::size_t s = 0; s < moment_count(mode); ++s) cols.push_back(moment_name(s, mode));
  cols.push_back("dG_theta");
  if (mode == Mode::sphere) cols.push_back("dG_phi");
  cols.push_back("energy");
  return cols;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const RunConfig& config) {
  out << "# " << kFormatVersion << ' ' << config.values.dump() << '\n';
  const auto cols = csv_columns(traj.mode);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  const bool sphere = traj.mode == Mode::sphere;
  for (const auto& s : traj.samples) {
    const auto& c = s.state.classical;
    out << format_number(s.t) << ',' << format_number(c.theta) << ',' << format_number(c.p_theta);
    if (sphere) {
      const double phi = config.wrap_phi() ? std::remainder(c.phi, 2.0 * kPi) : c.phi;
      out << ',' << format_number(phi) << ',' << format_number(c.p_phi);
    }
    for (std::size_t m = 0; m < moment_count(traj.mode); ++m)
      out << ',' << format_number(s.state.moments[m]);
    out << ',' << format_number(s.dG_theta);
    if (sphere) out << ',' << format_number(s.dG_phi);
    out << ',' << format_number(s.energy) << '\n';
  }
}

namespace {

json state_json(const MomentState& st) {
  json j;
  j["theta"] = st.classical.theta;
  j["p_theta"] = st.classical.p_theta;
  if (st.mode == Mode::sphere) {
    j["phi_unwrapped"] = st.classical.phi;
    j["p_phi"] = st.classical.p_phi;
  }
  for (std::size_t m = 0; m < moment_count(st.mode); ++m) j[moment_name(m, st.mode)] = st.moments[m];
  return j;
}

json status_json(const TerminationStatus& st) {
  return {{"status", to_string(st.tag)}, {"time", st.time}, {"detail", st.detail}};
}

}  // namespace

json trajectory_summary(const Trajectory& traj, const RunConfig& config) {
  json j;
  j["format"] = kFormatVersion;
  j["config"] = config.values;
  j["termination"] = status_json(traj.status);
  j["samples"] = traj.samples.size();
  j["accepted_steps"] = traj.accepted_steps;
  j["rejected_steps"] = traj.rejected_steps;
  if (traj.samples.empty()) return j;

  j["endpoint"] = state_json(traj.back().state);
  j["endpoint"]["t"] = traj.back().t;

  const auto u = uncertainty_products(traj);
  j["min_uncertainty"]["dG_theta"] = u.min_theta;
  if (traj.mode == Mode::sphere) j["min_uncertainty"]["dG_phi"] = u.min_phi;

  const double e0 = traj.front().energy;
  const double e1 = traj.back().energy;
  j["energy"] = {{"initial", e0},
                 {"final", e1},
                 {"drift", e1 - e0},
                 {"relative_drift", e0 != 0.0 ? (e1 - e0) / std::abs(e0) : 0.0}};
  return j;
}

json ensemble_summary(const EnsembleResult& result, const RunConfig& config) {
  json j;
  j["format"] = kFormatVersion;
  j["config"] = config.values;
  j["parameter"] = result.parameter;
  json runs = json::array();
  for (const auto& r : result.runs) {
    json e{{"value", r.value}};
    if (!r.ok()) {
      e["error"] = r.error;
      runs.push_back(e);
      continue;
    }
    e["semiclassical"] = status_json(r.semiclassical.status);
    e["semiclassical"]["endpoint"] = state_json(r.semiclassical.back().state);
    if (r.classical) {
      e["classical"] = status_json(r.classical->status);
      e["classical"]["endpoint"] = state_json(r.classical->back().state);
    }
    runs.push_back(e);
  }
  j["runs"] = runs;
  if (result.summary) {
    const auto& s = *result.summary;
    auto metric = [](const MetricSummary& m) {
      return json{{"mean", m.mean}, {"stddev", m.stddev}, {"min", m.min}, {"max", m.max}, {"n", m.n}};
    };
    j["summary"] = {{"t_eval", s.t_eval},
                    {"abs_dtheta", metric(s.abs_dtheta)},
                    {"abs_dphi", metric(s.abs_dphi)},
                    {"rel_dphi", metric(s.rel_dphi)},
                    {"rel_dG2000", metric(s.rel_dG2000)}};
  }
  if (result.parameter == "a" && config.kind().mode() == Mode::sphere) {
    const auto policy = config.termination_policy();
    const double t = config.integrator().t_end;
    const auto h = hemisphere_ratio(result, t, policy);
    j["hemisphere"] = {{"t_eval", t},
                       {"ratio", std::isinf(h.ratio) ? json("inf") : json(h.ratio)},
                       {"south", h.south},
                       {"north", h.north},
                       {"equator", h.equator},
                       {"excluded", h.excluded}};
  }
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

int exit_code(Termination tag) {
  switch (tag) {
    case Termination::completed: return 0;
    case Termination::uncertainty_violation: return 2;
    case Termination::pole_singularity: return 3;
    case Termination::step_failure: return 5;
  }
  return 5;
}

}  // namespace momentous
