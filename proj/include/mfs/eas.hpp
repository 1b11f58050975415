#pragma once

// Continuation over a decreasing sequence eps_k: each stage approximately
// minimizes sum_i phi_{eps_k}(d_i^2(x)) over C with spg_solve, warm-started
// at the previous stage's output.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "mfs/objective.hpp"
#include "mfs/penalty.hpp"
#include "mfs/spg.hpp"

namespace mfs {

struct EasConfig {
   double eps0 = 0.9;
   double decay = 0.1;
   double eps_stop = 1e-6;
   /// Stage k uses stop_tol = max(inner_tol0 * inner_tol_decay^{k-1}, inner_tol_floor).
   double inner_tol0 = 1e-5;
   double inner_tol_decay = 1.0 / 3.0;
   double inner_tol_floor = 1e-7;
   /// When set, the first stage with eps_k <= eps_stop is also run.
   bool run_terminal_stage = false;
   /// Guard against schedules that never reach eps_stop.
   std::size_t max_stages = 64;
   PenaltyKind penalty = PenaltyKind::LogEps;
   /// Feasibility threshold for the final subsystem; negative selects default_tau(n).
   double tau = -1.0;
   SpgConfig spg;

   void validate() const;
};

struct EasStage {
   std::size_t k = 0;
   double eps = 0.0;
   double inner_tol = 0.0;
   SolveReport report;
   std::size_t phi0 = 0;
   std::optional<double> eps_feas;
};

struct EasReport {
   std::vector<EasStage> stages;
   Vec x_start;  // x_init projected onto C
   Vec x_final;
   std::vector<std::size_t> subsystem;
   std::size_t phi0 = 0;
   std::size_t total_iterations = 0;
};

/// eps0 * decay^{k-1}, k >= 1.
double eps_schedule(std::size_t k, const EasConfig& config);

/// max(inner_tol0 * inner_tol_decay^{k-1}, inner_tol_floor), k >= 1.
double inner_tolerance(std::size_t k, const EasConfig& config);

/// Optional per-stage metric, e.g. eps-feasibility against instance data.
using StageMetric = std::function<double(ConstView)>;

/// Throws LinesearchUnderflow if a stage breaks down.
EasReport eas_run(const Problem& problem, const EasConfig& config, ConstView x_init,
                  const StageMetric& metric = {});

} // namespace mfs
