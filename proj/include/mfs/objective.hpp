#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mfs/linalg.hpp"
#include "mfs/penalty.hpp"
#include "mfs/sets.hpp"

namespace mfs {

/// One constraint set C and the ordered sets D_1..D_m.
class Problem {
public:
   Problem(SetPtr constraint, std::vector<SetPtr> targets);

   const SetOracle& constraint() const { return *c_; }
   const SetPtr& constraint_ptr() const { return c_; }
   const std::vector<SetPtr>& targets() const { return d_; }
   const SetOracle& target(std::size_t i) const { return *d_[i]; }

   std::size_t m() const { return d_.size(); }
   std::size_t n() const { return n_; }
   bool targets_convex() const;

private:
   SetPtr c_;
   std::vector<SetPtr> d_;
   std::size_t n_;
};

/// Psi(x) = sum_i psi(d_i^2(x)) together with the projections it was built from.
struct Evaluation {
   double value = 0.0;
   Vec sq_dists;     // m entries, sq_dists[i] = ||x - xi_i||^2
   Vec projections;  // m x n, row-major; row i is xi_i

   ConstView projection(std::size_t i, std::size_t n) const
   {
      return ConstView(projections).subspan(i * n, n);
   }
};

/// Kernel execution policy. `Serial` is the reference path; `Parallel`
/// distributes the per-set work with OpenMP and produces bitwise-identical
/// results.
enum class Exec { Serial, Parallel };

/// Fills `out` (resized as needed) with one projection pass at x.
void evaluate_into(const Problem& problem, const PenaltyFamily& family, ConstView x,
                   Evaluation& out, Exec exec = Exec::Parallel);

/// g = 2 sum_i psi'(d_i^2) (x - xi_i) using the projections stored in `eval`.
void subgradient_into(const Problem& problem, const PenaltyFamily& family, ConstView x,
                      const Evaluation& eval, MutView g, Exec exec = Exec::Parallel);

Evaluation eval_psi_sum(const Problem& problem, const PenaltyFamily& family, ConstView x);

std::pair<Vec, Evaluation> subgradient(const Problem& problem, const PenaltyFamily& family,
                                       ConstView x);

/// Default feasibility threshold on distances: 1e-8 * sqrt(n).
double default_tau(std::size_t n);

/// Number of i with d_{D_i}(x) > tau.
std::size_t eval_phi0(const Problem& problem, ConstView x, double tau);

/// Zero-based indices i with d_{D_i}(x) <= tau, ascending.
std::vector<std::size_t> extract_subsystem(const Problem& problem, ConstView x, double tau);

} // namespace mfs
