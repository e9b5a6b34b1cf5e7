#include "momentous/ensemble.hpp"

#include <cmath>
#include <omp.h>

namespace momentous {

namespace {

EnsembleRun run_point(const SweepSpec& spec, double value) {
  EnsembleRun run;
  run.value = value;
  try {
    const PointSetup p = setup_point(spec, value);
    run.semiclassical = integrate(spec.kind, p.state0, p.params, spec.integrator);
    if (spec.paired_classical) {
      const SystemKind ck{spec.kind.tag, spec.classical_policy};
      run.classical = integrate(ck, p.state0, p.params, spec.integrator);
    }
  } catch (const std::exception& e) {
    run.error = e.what();
  }
  return run;
}

void finish(const SweepSpec& spec, EnsembleResult& r) {
  r.parameter = to_string(spec.parameter);
  if (!spec.paired_classical) return;
  try {
    r.summary = ensemble_stats(r, spec.integrator.t_end);
  } catch (const std::exception&) {
    r.summary.reset();
  }
}

}  // namespace

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::a: return "a";
    case SweepParameter::gamma: return "gamma";
    case SweepParameter::beta: return "beta";
    case SweepParameter::lambda: return "lambda";
    case SweepParameter::kappa: return "kappa";
  }
  return "a";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
  if (name == "a") return SweepParameter::a;
  if (name == "gamma") return SweepParameter::gamma;
  if (name == "beta") return SweepParameter::beta;
  if (name == "lambda") return SweepParameter::lambda;
  if (name == "kappa") return SweepParameter::kappa;
  throw ConfigError("sweep.parameter: unknown value '" + name + "'");
}

std::vector<double> grid_values(const SweepSpec& spec) {
  std::vector<double> v = spec.values;
  if (v.empty() && spec.range) {
    const auto& r = *spec.range;
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || !std::isfinite(r.step))
      throw ConfigError("sweep.range: non-finite bound");
    if (!(r.step > 0.0)) throw ConfigError("sweep.step must be positive");
    if (r.min > r.max) throw ConfigError("sweep.range: min > max gives an empty grid");
    const long n = static_cast<long>(std::floor((r.max - r.min) / r.step + 1e-9));
    for (long i = 0; i <= n; ++i) v.push_back(r.min + static_cast<double>(i) * r.step);
  }
  if (v.empty()) throw ConfigError("sweep: empty value list");
  for (double x : v)
    if (!std::isfinite(x)) throw ConfigError("sweep.values: non-finite entry");
  return v;
}

PointSetup setup_point(const SweepSpec& spec, double value) {
  PointSetup p{spec.params, {}};
  InitialConditions init = spec.initial;
  switch (spec.parameter) {
    case SweepParameter::a: init.gaussian.p_theta0 = value; break;
    case SweepParameter::gamma: p.params.gamma = value; break;
    case SweepParameter::beta: p.params.beta = value; break;
    case SweepParameter::lambda: init.gaussian.lambda = value; break;
    case SweepParameter::kappa:
      init.gaussian.kappa = value;
      init.kappa_target.reset();
      break;
  }
  p.state0 = make_initial_state(spec.kind.mode(), init, p.params);
  return p;
}

EnsembleResult run_sweep(const SweepSpec& spec) {
  const auto values = grid_values(spec);
  EnsembleResult r;
  r.runs.resize(values.size());
  const long n = static_cast<long>(values.size());
  const int threads = spec.threads > 0 ? spec.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < n; ++i) r.runs[static_cast<std::size_t>(i)] = run_point(spec, values[i]);
  finish(spec, r);
  return r;
}

EnsembleResult run_sweep_serial(const SweepSpec& spec) {
  const auto values = grid_values(spec);
  EnsembleResult r;
  r.runs.reserve(values.size());
  for (double v : values) r.runs.push_back(run_point(spec, v));
  finish(spec, r);
  return r;
}

}  // namespace momentous
