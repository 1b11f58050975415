#include "mfs/eas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mfs {

void EasConfig::validate() const
{
   if (!(eps0 > 0.0)) {
      throw std::invalid_argument("EasConfig: eps0 must be positive");
   }
   if (penalty == PenaltyKind::LogEps && !(eps0 < 1.0)) {
      throw std::invalid_argument("EasConfig: log penalty requires eps0 < 1");
   }
   if (!(decay > 0.0 && decay < 1.0)) {
      throw std::invalid_argument("EasConfig: decay must lie in (0, 1)");
   }
   if (!(eps_stop > 0.0)) {
      throw std::invalid_argument("EasConfig: eps_stop must be positive");
   }
   if (!(inner_tol0 > 0.0) || !(inner_tol_floor > 0.0) ||
       !(inner_tol_decay > 0.0 && inner_tol_decay <= 1.0)) {
      throw std::invalid_argument("EasConfig: inner tolerances must be positive");
   }
   if (penalty == PenaltyKind::Linear) {
      throw std::invalid_argument("EasConfig: continuation needs an eps-dependent penalty");
   }
   spg.validate();
}

double eps_schedule(std::size_t k, const EasConfig& config)
{
   if (k < 1) {
      throw std::invalid_argument("eps_schedule: k must be >= 1");
   }
   return config.eps0 * std::pow(config.decay, static_cast<double>(k - 1));
}

double inner_tolerance(std::size_t k, const EasConfig& config)
{
   if (k < 1) {
      throw std::invalid_argument("inner_tolerance: k must be >= 1");
   }
   return std::max(config.inner_tol0 * std::pow(config.inner_tol_decay, static_cast<double>(k - 1)),
                   config.inner_tol_floor);
}

EasReport eas_run(const Problem& problem, const EasConfig& config, ConstView x_init,
                  const StageMetric& metric)
{
   config.validate();
   require_dim(x_init.size(), problem.n(), "eas_run");
   const double tau = config.tau >= 0.0 ? config.tau : default_tau(problem.n());

   EasReport out;
   out.x_start = problem.constraint().project(x_init);
   Vec x = out.x_start;

   for (std::size_t k = 1; k <= config.max_stages; ++k) {
      const double eps = eps_schedule(k, config);
      const bool terminal = eps <= config.eps_stop;
      if (terminal && !config.run_terminal_stage) {
         break;
      }

      SpgConfig spg = config.spg;
      spg.stop_tol = inner_tolerance(k, config);
      const PenaltyFamily family = PenaltyFamily::make(config.penalty, eps, problem.m());

      EasStage stage;
      stage.k = k;
      stage.eps = eps;
      stage.inner_tol = spg.stop_tol;
      stage.report = spg_solve(problem, family, x, spg);
      if (stage.report.status == SolveStatus::LinesearchUnderflow) {
         throw LinesearchUnderflow("eas_run: stage " + std::to_string(k) + " (eps = " +
                                   std::to_string(eps) + ") hit linesearch underflow");
      }
      x = stage.report.x_final;
      stage.phi0 = eval_phi0(problem, x, tau);
      if (metric) {
         stage.eps_feas = metric(x);
      }
      out.total_iterations += stage.report.iterations;
      out.stages.push_back(std::move(stage));

      if (terminal) {
         break;
      }
   }

   out.x_final = std::move(x);
   out.subsystem = extract_subsystem(problem, out.x_final, tau);
   out.phi0 = problem.m() - out.subsystem.size();
   return out;
}

} // namespace mfs
