#pragma once

// Subgradient projection method with nonmonotone linesearch for
//
//    min_{x in C}  Psi(x) = sum_i psi(d_{D_i}^2(x)).
//
// Each iteration forms g = 2 sum_i psi'(d_i^2)(x - xi_i) from one projection
// pass, takes the trial point u = P_C(x - alpha g), and backtracks
// alpha <- eta * alpha until
//
//    Psi(u) - max_{[t-M]_+ <= i <= t} Psi(x^i) <= -(sigma / 2) ||u - x||^2.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mfs/linalg.hpp"
#include "mfs/objective.hpp"
#include "mfs/penalty.hpp"

namespace mfs {

struct SpgConfig {
   double alpha_min = 1e-10;
   double alpha_max = 1e10;
   double eta = 0.5;
   double sigma = 1e-4;
   std::size_t M = 9;
   std::size_t max_iter = 50000;
   /// Stop when ||x^t - x^{t-1}|| <= stop_tol * max(1, ||x^t||).
   double stop_tol = 1e-5;

   /// Barzilai-Borwein initial stepsizes; when off every iteration starts at alpha_init.
   bool bb_enabled = true;
   double alpha_init = 1.0;
   double bb_floor = 1e-10;
   double bb_cap = 1e10;
   double bb_curvature_threshold = 1e-12;

   /// Backtracking below this stepsize aborts the solve.
   double underflow_alpha = 1e-16;

   bool record_iterates = false;
   Exec exec = Exec::Parallel;

   void validate() const;
};

enum class SolveStatus { Converged, MaxIter, LinesearchUnderflow };

const char* to_string(SolveStatus status);

/// Per-run trace. Index t of the per-iteration vectors describes the step
/// x^t -> x^{t+1}; psi_trace and iterates additionally hold x^0.
struct SolveReport {
   Vec x_final;
   std::size_t iterations = 0;
   Vec psi_trace;
   Vec step_norms;
   Vec alpha_trace;
   Vec alpha0_trace;
   std::vector<std::size_t> backtrack_counts;
   Vec psi_prime_sum;  // sum_i psi'(d_i^2(x^t))
   Vec psi_prime_max;  // max_i psi'(d_i^2(x^t))
   std::vector<Vec> iterates;
   double max_iterate_norm = 0.0;
   double stationarity_residual = 0.0;
   SolveStatus status = SolveStatus::MaxIter;
};

class LinesearchUnderflow : public std::runtime_error {
public:
   using std::runtime_error::runtime_error;
};

/// P_C(x - alpha g), a minimizer of <g, u - x> + ||u - x||^2 / (2 alpha) over C.
Vec trial_point(const Problem& problem, ConstView x, ConstView g, double alpha);

/// Maximum of the Psi history window; throws on an empty window.
double nonmonotone_reference(std::span<const double> history);

struct LinesearchResult {
   Vec u;
   double alpha = 0.0;
   std::size_t backtracks = 0;
   Evaluation eval;  // at u
};

/// Backtracks from alpha0 until the nonmonotone acceptance test holds.
/// Throws LinesearchUnderflow once alpha drops below config.underflow_alpha.
LinesearchResult linesearch(const Problem& problem, const PenaltyFamily& family, ConstView x,
                            ConstView g, double psi_ref, double alpha0,
                            const SpgConfig& config);

/// Initial stepsize for iteration t. `prev_alpha0` is alpha^0_{t-1}.
double bb_initial_stepsize(ConstView x_t, ConstView x_prev, ConstView g_t, ConstView g_prev,
                           std::size_t t, double prev_alpha0, const SpgConfig& config);

SolveReport spg_solve(const Problem& problem, const PenaltyFamily& family, ConstView x0,
                      const SpgConfig& config);

/// ||x - P_C(x - g(x))||, a fixed-point residual of the projected step with unit stepsize.
double stationarity_residual(const Problem& problem, const PenaltyFamily& family, ConstView x);

/// x^{t+1} = (1/m) sum_i P_{D_i}(x^t), with the same stopping rule as spg_solve.
SolveReport averaged_projection_run(const std::vector<SetPtr>& sets, ConstView x0,
                                    std::size_t max_iter, double stop_tol,
                                    bool record_iterates = false);

/// SpgConfig under which spg_solve with C = R^n and psi(s) = s/m reproduces
/// averaged_projection_run.
SpgConfig averaged_projection_config(std::size_t max_iter, double stop_tol);

} // namespace mfs
