#include "mfs/spg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace mfs {

void SpgConfig::validate() const
{
   if (!(alpha_min > 0.0) || !(alpha_max > alpha_min)) {
      throw std::invalid_argument("SpgConfig: need alpha_max > alpha_min > 0");
   }
   if (!(eta > 0.0 && eta < 1.0)) {
      throw std::invalid_argument("SpgConfig: eta must lie in (0, 1)");
   }
   if (!(sigma > 0.0)) {
      throw std::invalid_argument("SpgConfig: sigma must be positive");
   }
   if (!(stop_tol > 0.0)) {
      throw std::invalid_argument("SpgConfig: stop_tol must be positive");
   }
   if (!(alpha_init > 0.0)) {
      throw std::invalid_argument("SpgConfig: alpha_init must be positive");
   }
   if (!(bb_floor > 0.0) || !(bb_cap >= bb_floor)) {
      throw std::invalid_argument("SpgConfig: need bb_cap >= bb_floor > 0");
   }
   if (!(underflow_alpha > 0.0)) {
      throw std::invalid_argument("SpgConfig: underflow_alpha must be positive");
   }
}

const char* to_string(SolveStatus status)
{
   switch (status) {
   case SolveStatus::Converged: return "converged";
   case SolveStatus::MaxIter: return "max_iter";
   case SolveStatus::LinesearchUnderflow: return "linesearch_underflow";
   }
   return "unknown";
}

namespace {

void trial_point_into(const Problem& problem, ConstView x, ConstView g, double alpha,
                      MutView shifted, MutView u)
{
   for (std::size_t j = 0; j < x.size(); ++j) {
      shifted[j] = x[j] - alpha * g[j];
   }
   problem.constraint().project_into(shifted, u);
}

struct Workspace {
   Vec shifted;
};

// Returns (alpha, backtracks); fills u and eval_u at the accepted point.
std::pair<double, std::size_t> run_linesearch(const Problem& problem,
                                              const PenaltyFamily& family, ConstView x,
                                              ConstView g, double psi_ref, double alpha0,
                                              const SpgConfig& config, Workspace& ws, MutView u,
                                              Evaluation& eval_u)
{
   double alpha = alpha0;
   std::size_t backtracks = 0;
   ws.shifted.resize(x.size());
   while (true) {
      trial_point_into(problem, x, g, alpha, ws.shifted, u);
      evaluate_into(problem, family, u, eval_u, config.exec);
      const double decrease = 0.5 * config.sigma * sq_diff(u, x);
      if (eval_u.value - psi_ref <= -decrease) {
         return {alpha, backtracks};
      }
      alpha *= config.eta;
      ++backtracks;
      if (alpha < config.underflow_alpha) {
         throw LinesearchUnderflow("linesearch: stepsize fell below " +
                                   std::to_string(config.underflow_alpha) + " after " +
                                   std::to_string(backtracks) + " backtracks (Psi(u) = " +
                                   std::to_string(eval_u.value) +
                                   ", reference = " + std::to_string(psi_ref) + ")");
      }
   }
}

// Ring buffer over the last M + 1 objective values.
class PsiWindow {
public:
   explicit PsiWindow(std::size_t capacity) : values_(capacity) {}

   void push(double v)
   {
      values_[head_] = v;
      head_ = (head_ + 1) % values_.size();
      size_ = std::min(size_ + 1, values_.size());
   }

   double max() const
   {
      return nonmonotone_reference(std::span<const double>(values_.data(), size_));
   }

private:
   std::vector<double> values_;
   std::size_t head_ = 0;
   std::size_t size_ = 0;
};

} // namespace

Vec trial_point(const Problem& problem, ConstView x, ConstView g, double alpha)
{
   require_dim(x.size(), problem.n(), "trial_point");
   require_dim(g.size(), problem.n(), "trial_point");
   if (!(alpha > 0.0)) {
      throw std::invalid_argument("trial_point: alpha must be positive");
   }
   Vec shifted(x.size());
   Vec u(x.size());
   trial_point_into(problem, x, g, alpha, shifted, u);
   return u;
}

double nonmonotone_reference(std::span<const double> history)
{
   if (history.empty()) {
      throw std::invalid_argument("nonmonotone_reference: empty history");
   }
   return *std::max_element(history.begin(), history.end());
}

LinesearchResult linesearch(const Problem& problem, const PenaltyFamily& family, ConstView x,
                            ConstView g, double psi_ref, double alpha0,
                            const SpgConfig& config)
{
   config.validate();
   require_dim(x.size(), problem.n(), "linesearch");
   require_dim(g.size(), problem.n(), "linesearch");
   if (!(alpha0 > 0.0)) {
      throw std::invalid_argument("linesearch: alpha0 must be positive");
   }
   LinesearchResult result;
   result.u.resize(x.size());
   Workspace ws;
   std::tie(result.alpha, result.backtracks) =
      run_linesearch(problem, family, x, g, psi_ref, alpha0, config, ws, result.u, result.eval);
   return result;
}

double bb_initial_stepsize(ConstView x_t, ConstView x_prev, ConstView g_t, ConstView g_prev,
                           std::size_t t, double prev_alpha0, const SpgConfig& config)
{
   if (t == 0) {
      return std::clamp(config.alpha_init, config.bb_floor, config.bb_cap);
   }
   double dx_sq = 0.0;
   double curvature = 0.0;
   for (std::size_t j = 0; j < x_t.size(); ++j) {
      const double dx = x_t[j] - x_prev[j];
      dx_sq += dx * dx;
      curvature += dx * (g_t[j] - g_prev[j]);
   }
   if (curvature > config.bb_curvature_threshold) {
      return std::clamp(dx_sq / curvature, config.bb_floor, config.bb_cap);
   }
   return std::clamp(2.0 * prev_alpha0, config.bb_floor, config.bb_cap);
}

SolveReport spg_solve(const Problem& problem, const PenaltyFamily& family, ConstView x0,
                      const SpgConfig& config)
{
   config.validate();
   const std::size_t n = problem.n();
   const std::size_t m = problem.m();
   require_dim(x0.size(), n, "spg_solve");
   if (!problem.constraint().contains(x0, 1e-12)) {
      throw std::invalid_argument("spg_solve: x0 must lie in C (project it first)");
   }

   SolveReport report;
   Vec x(x0.begin(), x0.end());
   Vec u(n);
   Vec g(n);
   Vec x_prev(n);
   Vec g_prev(n);
   Evaluation eval_x;
   Evaluation eval_u;
   Workspace ws;

   evaluate_into(problem, family, x, eval_x, config.exec);
   subgradient_into(problem, family, x, eval_x, g, config.exec);

   PsiWindow window(config.M + 1);
   window.push(eval_x.value);
   report.psi_trace.push_back(eval_x.value);
   report.max_iterate_norm = norm(x);
   if (config.record_iterates) {
      report.iterates.push_back(x);
   }

   double alpha0 = 0.0;
   report.status = SolveStatus::MaxIter;
   for (std::size_t t = 0; t < config.max_iter; ++t) {
      alpha0 = config.bb_enabled ? bb_initial_stepsize(x, x_prev, g, g_prev, t, alpha0, config)
                                 : config.alpha_init;
      alpha0 = std::clamp(alpha0, config.alpha_min, config.alpha_max);

      double prime_sum = 0.0;
      double prime_max = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
         const double p = family.psi_prime(eval_x.sq_dists[i]);
         prime_sum += p;
         prime_max = std::max(prime_max, p);
      }

      double alpha = 0.0;
      std::size_t backtracks = 0;
      try {
         std::tie(alpha, backtracks) = run_linesearch(problem, family, x, g, window.max(),
                                                      alpha0, config, ws, u, eval_u);
      } catch (const LinesearchUnderflow&) {
         report.status = SolveStatus::LinesearchUnderflow;
         break;
      }

      const double step = diff_norm(u, x);
      x_prev.swap(x);
      x.swap(u);
      g_prev.swap(g);
      std::swap(eval_x, eval_u);
      subgradient_into(problem, family, x, eval_x, g, config.exec);
      window.push(eval_x.value);

      const double x_norm = norm(x);
      report.psi_trace.push_back(eval_x.value);
      report.step_norms.push_back(step);
      report.alpha_trace.push_back(alpha);
      report.alpha0_trace.push_back(alpha0);
      report.backtrack_counts.push_back(backtracks);
      report.psi_prime_sum.push_back(prime_sum);
      report.psi_prime_max.push_back(prime_max);
      report.max_iterate_norm = std::max(report.max_iterate_norm, x_norm);
      if (config.record_iterates) {
         report.iterates.push_back(x);
      }
      report.iterations = t + 1;

      if (step <= config.stop_tol * std::max(1.0, x_norm)) {
         report.status = SolveStatus::Converged;
         break;
      }
   }

   Vec shifted(n);
   for (std::size_t j = 0; j < n; ++j) {
      shifted[j] = x[j] - g[j];
   }
   problem.constraint().project_into(shifted, u);
   report.stationarity_residual = diff_norm(x, u);
   report.x_final = std::move(x);
   return report;
}

double stationarity_residual(const Problem& problem, const PenaltyFamily& family, ConstView x)
{
   auto [g, eval] = subgradient(problem, family, x);
   Vec shifted(x.size());
   for (std::size_t j = 0; j < x.size(); ++j) {
      shifted[j] = x[j] - g[j];
   }
   return diff_norm(x, problem.constraint().project(shifted));
}

SolveReport averaged_projection_run(const std::vector<SetPtr>& sets, ConstView x0,
                                    std::size_t max_iter, double stop_tol,
                                    bool record_iterates)
{
   if (sets.empty()) {
      throw std::invalid_argument("averaged_projection_run: no sets");
   }
   const std::size_t n = x0.size();
   const std::size_t m = sets.size();
   for (const auto& s : sets) {
      require_dim(s->dim(), n, "averaged_projection_run");
   }
   const double inv_m = 1.0 / static_cast<double>(m);

   SolveReport report;
   Vec x(x0.begin(), x0.end());
   Vec next(n);
   Vec xi(n);

   const auto project_all = [&](ConstView at, MutView mean) {
      std::fill(mean.begin(), mean.end(), 0.0);
      double psi = 0.0;
      for (const auto& s : sets) {
         s->project_into(at, xi);
         psi += sq_diff(at, xi);
         for (std::size_t j = 0; j < n; ++j) {
            mean[j] += xi[j];
         }
      }
      for (double& v : mean) {
         v *= inv_m;
      }
      return psi * inv_m;
   };

   report.psi_trace.push_back(project_all(x, next));
   report.max_iterate_norm = norm(x);
   if (record_iterates) {
      report.iterates.push_back(x);
   }
   report.status = SolveStatus::MaxIter;
   for (std::size_t t = 0; t < max_iter; ++t) {
      const double step = diff_norm(next, x);
      x.swap(next);
      const double psi = project_all(x, next);
      const double x_norm = norm(x);
      report.psi_trace.push_back(psi);
      report.step_norms.push_back(step);
      report.alpha_trace.push_back(0.5);
      report.alpha0_trace.push_back(0.5);
      report.backtrack_counts.push_back(0);
      report.max_iterate_norm = std::max(report.max_iterate_norm, x_norm);
      if (record_iterates) {
         report.iterates.push_back(x);
      }
      report.iterations = t + 1;
      if (step <= stop_tol * std::max(1.0, x_norm)) {
         report.status = SolveStatus::Converged;
         break;
      }
   }
   // C = R^n, psi = s/m: x - g(x) = 2 mean - x
   report.stationarity_residual = 2.0 * diff_norm(x, next);
   report.x_final = std::move(x);
   return report;
}

SpgConfig averaged_projection_config(std::size_t max_iter, double stop_tol)
{
   SpgConfig config;
   config.bb_enabled = false;
   config.alpha_init = 0.5;
   config.sigma = 1.0;
   config.M = 0;
   config.max_iter = max_iter;
   config.stop_tol = stop_tol;
   return config;
}

} // namespace mfs
