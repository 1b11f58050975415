#include "mfs/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace mfs {

namespace {

// Below this much work (m * n) a parallel region costs more than it saves.
constexpr std::size_t kParallelWorkThreshold = 1u << 15;

// Column block handled by one thread in the gradient accumulation.
constexpr std::size_t kColumnBlock = 64;

bool go_parallel(Exec exec, std::size_t m, std::size_t n)
{
   return exec == Exec::Parallel && m * n >= kParallelWorkThreshold && !omp_in_parallel();
}

} // namespace

Problem::Problem(SetPtr constraint, std::vector<SetPtr> targets)
   : c_(std::move(constraint)), d_(std::move(targets))
{
   if (!c_) {
      throw std::invalid_argument("Problem: null constraint set");
   }
   if (d_.empty()) {
      throw std::invalid_argument("Problem: needs at least one target set");
   }
   n_ = c_->dim();
   for (const auto& d : d_) {
      if (!d) {
         throw std::invalid_argument("Problem: null target set");
      }
      require_dim(d->dim(), n_, "Problem");
   }
}

bool Problem::targets_convex() const
{
   return std::all_of(d_.begin(), d_.end(), [](const SetPtr& d) { return d->is_convex(); });
}

void evaluate_into(const Problem& problem, const PenaltyFamily& family, ConstView x,
                   Evaluation& out, Exec exec)
{
   const std::size_t m = problem.m();
   const std::size_t n = problem.n();
   require_dim(x.size(), n, "evaluate");
   out.sq_dists.resize(m);
   out.projections.resize(m * n);

   const auto project_one = [&](std::size_t i) {
      MutView xi = MutView(out.projections).subspan(i * n, n);
      problem.target(i).project_into(x, xi);
      out.sq_dists[i] = sq_diff(x, xi);
   };

   if (go_parallel(exec, m, n)) {
      const auto mm = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < mm; ++i) {
         project_one(static_cast<std::size_t>(i));
      }
   } else {
      for (std::size_t i = 0; i < m; ++i) {
         project_one(i);
      }
   }

   // fixed summation order regardless of exec
   double value = 0.0;
   for (std::size_t i = 0; i < m; ++i) {
      value += family.psi(out.sq_dists[i]);
   }
   out.value = value;
}

void subgradient_into(const Problem& problem, const PenaltyFamily& family, ConstView x,
                      const Evaluation& eval, MutView g, Exec exec)
{
   const std::size_t m = problem.m();
   const std::size_t n = problem.n();
   require_dim(x.size(), n, "subgradient");
   require_dim(g.size(), n, "subgradient");
   require_dim(eval.sq_dists.size(), m, "subgradient");

   Vec weight(m);
   for (std::size_t i = 0; i < m; ++i) {
      weight[i] = eval.sq_dists[i] > 0.0 ? 2.0 * family.psi_prime(eval.sq_dists[i]) : 0.0;
   }

   // Each g_j is accumulated over i in ascending order on both paths.
   const auto accumulate_block = [&](std::size_t j0, std::size_t j1) {
      for (std::size_t j = j0; j < j1; ++j) {
         g[j] = 0.0;
      }
      for (std::size_t i = 0; i < m; ++i) {
         if (weight[i] == 0.0) {
            continue;
         }
         const double* xi = eval.projections.data() + i * n;
         for (std::size_t j = j0; j < j1; ++j) {
            g[j] += weight[i] * (x[j] - xi[j]);
         }
      }
   };

   if (go_parallel(exec, m, n)) {
      const auto blocks = static_cast<std::ptrdiff_t>((n + kColumnBlock - 1) / kColumnBlock);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t b = 0; b < blocks; ++b) {
         const std::size_t j0 = static_cast<std::size_t>(b) * kColumnBlock;
         accumulate_block(j0, std::min(n, j0 + kColumnBlock));
      }
   } else {
      accumulate_block(0, n);
   }
}

Evaluation eval_psi_sum(const Problem& problem, const PenaltyFamily& family, ConstView x)
{
   Evaluation eval;
   evaluate_into(problem, family, x, eval);
   return eval;
}

std::pair<Vec, Evaluation> subgradient(const Problem& problem, const PenaltyFamily& family,
                                       ConstView x)
{
   Evaluation eval = eval_psi_sum(problem, family, x);
   Vec g(problem.n());
   subgradient_into(problem, family, x, eval, g);
   return {std::move(g), std::move(eval)};
}

double default_tau(std::size_t n) { return 1e-8 * std::sqrt(static_cast<double>(n)); }

std::size_t eval_phi0(const Problem& problem, ConstView x, double tau)
{
   if (!(tau >= 0.0)) {
      throw std::invalid_argument("eval_phi0: tau must be nonnegative");
   }
   require_dim(x.size(), problem.n(), "eval_phi0");
   const double tau_sq = tau * tau;
   std::size_t count = 0;
   for (const auto& d : problem.targets()) {
      if (d->sq_dist(x) > tau_sq) {
         ++count;
      }
   }
   return count;
}

std::vector<std::size_t> extract_subsystem(const Problem& problem, ConstView x, double tau)
{
   if (!(tau >= 0.0)) {
      throw std::invalid_argument("extract_subsystem: tau must be nonnegative");
   }
   require_dim(x.size(), problem.n(), "extract_subsystem");
   const double tau_sq = tau * tau;
   std::vector<std::size_t> kept;
   for (std::size_t i = 0; i < problem.m(); ++i) {
      if (problem.target(i).sq_dist(x) <= tau_sq) {
         kept.push_back(i);
      }
   }
   return kept;
}

} // namespace mfs
