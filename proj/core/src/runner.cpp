#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spinbatt/errors.hpp"
#include "spinbatt/parallel.hpp"
#include "spinbatt/runner.hpp"

namespace spinbatt {

namespace {

ModelConfig base_model(const ScenarioConfig& cfg, int two_j, double gamma,
                       double phi, std::optional<double> beta) {
  ModelConfig m;
  m.kind = cfg.model;
  m.n_sites = cfg.n_sites;
  m.j = SpinQuantumNumber::from_two_j(two_j);
  m.gamma = gamma;
  m.phi = phi;
  m.h = cfg.h;
  m.omega = cfg.omega;
  m.omega_scope = cfg.omega_scope;
  m.beta = beta;
  m.thermal_on_raw = cfg.thermal_on_raw;
  m.dim_cap = cfg.dim_cap;
  return m;
}

std::vector<double> uniform_bonds(double lambda, int n_sites) {
  return std::vector<double>(static_cast<std::size_t>(n_sites - 1), lambda);
}

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kLambda: return "lambda";
    case SweepAxis::kGamma: return "gamma";
    case SweepAxis::kPhi: return "phi";
    case SweepAxis::kBeta: return "beta";
    case SweepAxis::kTime: return "t";
  }
  return "";
}

struct SweepItem {
  double axis_value = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
  double sigma = 0.0;
  std::optional<double> beta;
  double fixed_time = 0.0;
  int two_j = 1;
};

struct SweepLayout {
  std::vector<SweepItem> items;  // row order
  std::vector<std::string> columns;
  bool gamma_column = false;
  bool phi_column = false;
  bool sigma_column = false;
};

SweepLayout plan_sweep(const ScenarioConfig& cfg) {
  SweepLayout layout;
  const std::vector<double>& axis = [&]() -> const std::vector<double>& {
    switch (cfg.sweep) {
      case SweepAxis::kLambda: return cfg.lambda_values;
      case SweepAxis::kGamma: return cfg.gamma_values;
      case SweepAxis::kPhi: return cfg.phi_values;
      case SweepAxis::kBeta: return cfg.beta_values;
      case SweepAxis::kTime: return cfg.time_values;
    }
    return cfg.lambda_values;
  }();

  const bool xy = cfg.model == ModelKind::kXY;
  layout.gamma_column =
      xy && cfg.sweep != SweepAxis::kGamma && cfg.gamma_values.size() > 1;
  layout.phi_column =
      !xy && cfg.sweep != SweepAxis::kPhi && cfg.phi_values.size() > 1;
  layout.sigma_column = cfg.sigma_values.size() > 1;

  layout.columns.push_back(axis_name(cfg.sweep));
  layout.columns.push_back("j_times_2");
  if (layout.gamma_column) layout.columns.push_back("gamma");
  if (layout.phi_column) layout.columns.push_back("phi");
  if (layout.sigma_column) layout.columns.push_back("sigma");
  if (cfg.measure == Measure::kPMax) {
    if (cfg.disorder_active()) {
      layout.columns.insert(layout.columns.end(),
                            {"mean_pmax", "stderr", "realizations"});
    } else {
      layout.columns.insert(layout.columns.end(),
                            {"p_max", "t_star", "w_star"});
    }
  } else {
    layout.columns.insert(layout.columns.end(), {"w", "power"});
  }

  const std::vector<double> single{0.0};
  for (double a : axis) {
    const auto& gammas = !xy ? single
                         : cfg.sweep == SweepAxis::kGamma
                             ? std::vector<double>{a}
                             : cfg.gamma_values;
    for (double g : gammas) {
      const auto& phis = xy ? single
                        : cfg.sweep == SweepAxis::kPhi ? std::vector<double>{a}
                                                       : cfg.phi_values;
      for (double p : phis) {
        for (double s : cfg.sigma_values) {
          for (int tj : cfg.two_j_list) {
            SweepItem item;
            item.axis_value = a;
            item.two_j = tj;
            item.gamma = g;
            item.phi = p;
            item.sigma = s;
            item.lambda = cfg.sweep == SweepAxis::kLambda
                              ? a
                              : cfg.lambda_values.front();
            if (!cfg.beta_values.empty()) {
              item.beta = cfg.sweep == SweepAxis::kBeta
                              ? a
                              : cfg.beta_values.front();
            }
            if (cfg.measure == Measure::kWork) {
              item.fixed_time = cfg.sweep == SweepAxis::kTime
                                    ? a
                                    : cfg.time_values.front();
            }
            layout.items.push_back(item);
          }
        }
      }
    }
  }
  return layout;
}

std::vector<double> row_prefix(const SweepLayout& layout,
                               const SweepItem& item) {
  std::vector<double> row{item.axis_value, static_cast<double>(item.two_j)};
  if (layout.gamma_column) row.push_back(item.gamma);
  if (layout.phi_column) row.push_back(item.phi);
  if (layout.sigma_column) row.push_back(item.sigma);
  return row;
}

ScenarioRun run_sweep(const ScenarioConfig& cfg, int workers) {
  const SweepLayout layout = plan_sweep(cfg);
  const PowerSearchSettings settings = cfg.power_settings();
  const std::size_t n = layout.items.size();

  ScenarioRun run;
  run.table.columns = layout.columns;
  run.table.rows.resize(n);
  std::vector<std::string> item_warnings(n);

  if (cfg.disorder_active()) {
    // Realizations are the parallel work items; sweep points run in order.
    for (std::size_t i = 0; i < n; ++i) {
      const SweepItem& item = layout.items[i];
      const ModelConfig m =
          base_model(cfg, item.two_j, item.gamma, item.phi, item.beta);
      const DisorderSpec spec{item.lambda, item.sigma, cfg.realizations,
                              cfg.seed};
      const QuenchedResult q =
          quenched_average_pmax(m, spec, settings, workers);
      std::vector<double> row = row_prefix(layout, item);
      row.insert(row.end(), {q.mean_pmax, q.std_error,
                             static_cast<double>(q.realizations_used)});
      run.table.rows[i] = std::move(row);
      if (!q.converged) {
        std::ostringstream os;
        os << "row " << i << ": quenched mean not converged to 0.01 after "
           << q.realizations_used << " realizations";
        item_warnings[i] = os.str();
      }
    }
  } else if (cfg.sweep == SweepAxis::kTime || cfg.sweep == SweepAxis::kBeta) {
    // The Hamiltonian does not depend on the swept value here, so one
    // prepared system per (family, j) combination serves the whole axis.
    const std::size_t n_axis = cfg.sweep == SweepAxis::kTime
                                   ? cfg.time_values.size()
                                   : cfg.beta_values.size();
    const std::size_t per_axis = n / n_axis;
    parallel_for(per_axis, workers, [&](std::size_t c) {
      const SweepItem& first = layout.items[c];
      const ModelConfig m =
          base_model(cfg, first.two_j, first.gamma, first.phi, first.beta);
      const PreparedSystem system(m, uniform_bonds(first.lambda, cfg.n_sites));
      if (!m.beta && system.ground_degenerate()) {
        item_warnings[c] = "degenerate ground level for " +
                           system.hamiltonian().model_tag +
                           "; first eigenvector used";
      }
      std::optional<WorkEvaluator> time_evaluator;
      if (cfg.sweep == SweepAxis::kTime) time_evaluator = system.evaluator();
      for (std::size_t ai = 0; ai < n_axis; ++ai) {
        const std::size_t i = ai * per_axis + c;
        const SweepItem& item = layout.items[i];
        std::vector<double> row = row_prefix(layout, item);
        if (cfg.measure == Measure::kWork) {
          const double w = time_evaluator
                               ? time_evaluator->work_at(item.fixed_time)
                               : system.evaluator_at(*item.beta)
                                     .work_at(item.fixed_time);
          row.insert(row.end(),
                     {w, item.fixed_time == 0.0 ? 0.0 : w / item.fixed_time});
        } else {
          const PowerResult r = system.maximize_at(*item.beta, settings);
          if (r.at_window_boundary && item_warnings[i].empty()) {
            item_warnings[i] = "power maximum at the window boundary for " +
                               system.hamiltonian().model_tag + " beta=" +
                               std::to_string(*item.beta);
          }
          row.insert(row.end(), {r.p_max, r.t_star, r.w_at_tstar});
        }
        run.table.rows[i] = std::move(row);
      }
    });
  } else {
    parallel_for(n, workers, [&](std::size_t i) {
      const SweepItem& item = layout.items[i];
      const ModelConfig m =
          base_model(cfg, item.two_j, item.gamma, item.phi, item.beta);
      const PreparedSystem system(m, uniform_bonds(item.lambda, cfg.n_sites));
      std::string warning;
      if (!m.beta && system.ground_degenerate()) {
        warning = "degenerate ground level for " +
                  system.hamiltonian().model_tag + "; first eigenvector used";
      }
      std::vector<double> row = row_prefix(layout, item);
      if (cfg.measure == Measure::kPMax) {
        const PowerResult r = system.maximize(settings);
        if (r.at_window_boundary) {
          if (!warning.empty()) warning += "; ";
          warning += "power maximum at the window boundary for " +
                     system.hamiltonian().model_tag;
        }
        row.insert(row.end(), {r.p_max, r.t_star, r.w_at_tstar});
      } else {
        const double w = system.evaluator().work_at(item.fixed_time);
        row.insert(row.end(),
                   {w, item.fixed_time == 0.0 ? 0.0 : w / item.fixed_time});
      }
      run.table.rows[i] = std::move(row);
      if (!warning.empty()) item_warnings[i] = "row " + std::to_string(i) +
                                               ": " + warning;
    });
  }

  for (auto& w : item_warnings) {
    if (!w.empty()) run.warnings.push_back(std::move(w));
  }
  return run;
}

ScenarioRun run_lambda_max(const ScenarioConfig& cfg, int workers) {
  ScenarioRun run;
  const bool xy = cfg.model == ModelKind::kXY;
  run.table.columns = {"j_times_2", xy ? "gamma" : "phi", "lambda_max",
                       "p_max_at_peak"};
  const std::optional<double> beta =
      cfg.beta_values.empty() ? std::nullopt
                              : std::optional<double>(cfg.beta_values.front());
  const auto& families = xy ? cfg.gamma_values : cfg.phi_values;
  for (double fam : families) {
    for (int tj : cfg.two_j_list) {
      const ModelConfig m =
          base_model(cfg, tj, xy ? fam : 0.0, xy ? 0.0 : fam, beta);
      const DerivedQuantity dq = find_lambda_max(
          m, cfg.lambda_values, cfg.power_settings(), workers);
      run.table.rows.push_back(
          {static_cast<double>(tj), fam, dq.value, dq.peak_pmax});
      if (dq.at_grid_boundary) {
        run.warnings.push_back("lambda_max at the scanned grid boundary (" +
                               dq.inputs + ")");
      }
    }
  }
  return run;
}

ScenarioRun run_beta_critical(const ScenarioConfig& cfg, int workers) {
  ScenarioRun run;
  run.table.columns = {"j_times_2", "beta_critical", "found"};
  for (int tj : cfg.two_j_list) {
    const ModelConfig m = base_model(
        cfg, tj, cfg.gamma_values.front(), cfg.phi_values.front(),
        cfg.beta_values.front());
    const DerivedQuantity dq =
        find_beta_critical(m, cfg.lambda_values.front(), cfg.beta_values,
                           cfg.power_settings(), workers);
    run.table.rows.push_back(
        {static_cast<double>(tj),
         dq.found ? dq.value : std::numeric_limits<double>::quiet_NaN(),
         dq.found ? 1.0 : 0.0});
    if (!dq.found) {
      run.warnings.push_back("no dimensional-advantage crossing in range (" +
                             dq.inputs + ")");
    }
  }
  return run;
}

ScenarioRun run_gamma_critical(const ScenarioConfig& cfg, int workers) {
  ScenarioRun run;
  run.table.columns = {"lambda", "gamma_critical"};
  for (double lambda : cfg.lambda_values) {
    const ModelConfig m =
        base_model(cfg, cfg.two_j_list.front(), 0.0, 0.0, std::nullopt);
    const DerivedQuantity dq = find_gamma_critical(
        m, lambda, cfg.two_j_list, cfg.gamma_values, cfg.power_settings(),
        workers);
    run.table.rows.push_back({lambda, dq.value});
  }
  return run;
}

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& cfg, int workers) {
  // Fail fast on the dimension cap before any heavy work.
  checked_dimension(SpinQuantumNumber::from_two_j(cfg.two_j_list.back()),
                    cfg.n_sites, cfg.dim_cap);
  switch (cfg.kind) {
    case ScenarioKind::kSweep: return run_sweep(cfg, workers);
    case ScenarioKind::kLambdaMax: return run_lambda_max(cfg, workers);
    case ScenarioKind::kBetaCritical: return run_beta_critical(cfg, workers);
    case ScenarioKind::kGammaCritical: return run_gamma_critical(cfg, workers);
  }
  throw std::logic_error("unreachable scenario kind");
}

DerivedQuantity find_lambda_max(const ModelConfig& model,
                                const std::vector<double>& lambda_grid,
                                const PowerSearchSettings& s, int workers) {
  if (lambda_grid.empty() || lambda_grid.front() <= 0.0 ||
      lambda_grid.back() < 1.5 - 1e-9) {
    throw ConfigError("lambda", "lambda_max scan must span (0, 1.5]");
  }

  const auto pmax_at = [&](double lambda) {
    return compute_pmax(model, uniform_bonds(lambda, model.n_sites), s).p_max;
  };

  std::vector<double> coarse(lambda_grid.size());
  parallel_for(lambda_grid.size(), workers, [&](std::size_t i) {
    coarse[i] = pmax_at(lambda_grid[i]);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < coarse.size(); ++i) {
    if (coarse[i] > coarse[best]) best = i;
  }

  double best_lambda = lambda_grid[best];
  double best_pmax = coarse[best];

  // Local rescan at step 0.01 between the neighbouring grid points.
  constexpr double kFineStep = 0.01;
  const double lo = std::max(best > 0 ? lambda_grid[best - 1] : lambda_grid[0],
                             kFineStep * 1e-3);
  const double hi =
      best + 1 < lambda_grid.size() ? lambda_grid[best + 1] : lambda_grid[best];
  if (hi - lo > kFineStep * 1.1) {
    const auto count =
        static_cast<std::size_t>(std::floor((hi - lo) / kFineStep + 1e-9)) + 1;
    std::vector<double> fine_lambda(count);
    for (std::size_t i = 0; i < count; ++i) {
      fine_lambda[i] = std::min(lo + static_cast<double>(i) * kFineStep, hi);
    }
    std::vector<double> fine(count);
    parallel_for(count, workers,
                 [&](std::size_t i) { fine[i] = pmax_at(fine_lambda[i]); });
    for (std::size_t i = 0; i < count; ++i) {
      if (fine[i] > best_pmax) {
        best_pmax = fine[i];
        best_lambda = fine_lambda[i];
      }
    }
  }

  DerivedQuantity dq{DerivedQuantity::Kind::kLambdaMax, best_lambda};
  dq.peak_pmax = best_pmax;
  dq.at_grid_boundary = best_lambda <= lambda_grid.front() + 1e-12 ||
                        best_lambda >= lambda_grid.back() - 1e-12;
  std::ostringstream os;
  os << "two_j=" << model.j.two_j() << " n=" << model.n_sites
     << (model.kind == ModelKind::kXY ? " gamma=" : " phi=")
     << (model.kind == ModelKind::kXY ? model.gamma : model.phi);
  dq.inputs = os.str();
  return dq;
}

DerivedQuantity find_beta_critical(const ModelConfig& model, double lambda,
                                   const std::vector<double>& beta_grid,
                                   const PowerSearchSettings& s, int workers) {
  if (beta_grid.empty() || beta_grid.front() > 1.0 ||
      beta_grid.back() < 30.0 - 1e-9) {
    throw ConfigError("beta", "beta_critical scan must span [1, 30]");
  }

  ModelConfig lower = model;
  lower.beta = beta_grid.front();
  ModelConfig upper = lower;
  upper.j = SpinQuantumNumber::from_two_j(model.j.two_j() + 1);

  const auto bonds = uniform_bonds(lambda, model.n_sites);
  const PreparedSystem lower_system(lower, bonds);
  const PreparedSystem upper_system(upper, bonds);

  const std::size_t n = beta_grid.size();
  std::vector<double> p_lower(n);
  std::vector<double> p_upper(n);
  parallel_for(2 * n, workers, [&](std::size_t i) {
    const std::size_t k = i / 2;
    if (i % 2 == 0) {
      p_lower[k] = lower_system.maximize_at(beta_grid[k], s).p_max;
    } else {
      p_upper[k] = upper_system.maximize_at(beta_grid[k], s).p_max;
    }
  });

  const auto advantage = [&](std::size_t k) { return p_upper[k] > p_lower[k]; };

  // Smallest grid index from which the advantage persists to the end.
  std::size_t onset = n;
  for (std::size_t k = n; k-- > 0;) {
    if (advantage(k)) {
      onset = k;
    } else {
      break;
    }
  }

  DerivedQuantity dq{DerivedQuantity::Kind::kBetaCritical, 0.0};
  std::ostringstream os;
  os << "two_j=" << model.j.two_j() << " vs " << model.j.two_j() + 1
     << " n=" << model.n_sites << " lambda=" << lambda;
  dq.inputs = os.str();

  if (onset == n || onset == 0) {
    // Advantage never settles, or holds on the whole grid: no crossing in
    // range.
    dq.found = false;
    dq.value = std::numeric_limits<double>::quiet_NaN();
    return dq;
  }

  double lo = beta_grid[onset - 1];  // advantage absent
  double hi = beta_grid[onset];      // advantage present and persistent
  const auto advantage_at = [&](double beta) {
    return upper_system.maximize_at(beta, s).p_max >
           lower_system.maximize_at(beta, s).p_max;
  };
  while (hi - lo > 0.5) {
    const double mid = 0.5 * (lo + hi);
    if (advantage_at(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  dq.value = hi;
  return dq;
}

DerivedQuantity find_gamma_critical(const ModelConfig& model, double lambda,
                                    const std::vector<int>& two_j_range,
                                    const std::vector<double>& gamma_grid,
                                    const PowerSearchSettings& s, int workers) {
  if (model.kind != ModelKind::kXY) {
    throw ConfigError("model", "gamma_critical requires the xy model");
  }
  if (two_j_range.size() < 2) {
    throw ConfigError("two_j", "gamma_critical needs at least two spins");
  }
  for (double g : gamma_grid) {
    if (g < 0.0 || g > 1.0) {
      throw ConfigError("gamma", "gamma_critical grid must lie inside [0, 1]");
    }
  }

  const std::size_t n_gamma = gamma_grid.size();
  const std::size_t n_spins = two_j_range.size();
  std::vector<double> pmax(n_gamma * n_spins);
  const auto bonds = uniform_bonds(lambda, model.n_sites);
  parallel_for(pmax.size(), workers, [&](std::size_t i) {
    const std::size_t gi = i / n_spins;
    const std::size_t ji = i % n_spins;
    ModelConfig m = model;
    m.gamma = gamma_grid[gi];
    m.j = SpinQuantumNumber::from_two_j(two_j_range[ji]);
    pmax[i] = compute_pmax(m, bonds, s).p_max;
  });

  DerivedQuantity dq{DerivedQuantity::Kind::kGammaCritical, 0.0};
  for (std::size_t gi = n_gamma; gi-- > 0;) {
    bool increasing = true;
    for (std::size_t ji = 1; ji < n_spins; ++ji) {
      if (!(pmax[gi * n_spins + ji] > pmax[gi * n_spins + ji - 1])) {
        increasing = false;
        break;
      }
    }
    if (increasing) {
      dq.value = gamma_grid[gi];
      break;
    }
  }
  std::ostringstream os;
  os << "lambda=" << lambda << " n=" << model.n_sites << " two_j range "
     << two_j_range.front() << ".." << two_j_range.back();
  dq.inputs = os.str();
  return dq;
}

}  // namespace spinbatt
