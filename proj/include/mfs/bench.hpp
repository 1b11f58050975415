#pragma once

// Random MFS_C instances, feasibility metrics and the experiment driver.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfs/eas.hpp"
#include "mfs/linalg.hpp"
#include "mfs/objective.hpp"

namespace mfs {

enum class InstanceKind { Halfspaces, UnionOfTwoHalfspaces };

const char* to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(const std::string& name);

struct InstanceSpec {
   std::size_t m = 0;
   std::size_t n = 0;
   std::size_t s = 0;
   double pbar = 0.5;
   double r = 1e8;
   InstanceKind kind = InstanceKind::Halfspaces;
   std::uint64_t seed = 0;
   /// When false every b_i takes the +0.01 eps_i branch, so w lies in all D_i.
   bool plant_violations = true;

   /// n = m / 5, s = n / 5 (both at least 1), r = 1e8.
   static InstanceSpec with_defaults(std::size_t m, double pbar, InstanceKind kind,
                                     std::uint64_t seed);

   void validate() const;

   /// ceil(pbar * m): the leading rows that contain the planted point.
   std::size_t planted_count() const;
};

class GeneratedInstance {
public:
   GeneratedInstance(InstanceSpec spec, std::vector<Vec> a_rows, Vec b,
                     std::vector<Vec> p_rows, Vec q, Vec w);

   const InstanceSpec& spec() const { return spec_; }
   const std::vector<Vec>& a_rows() const { return a_; }
   const Vec& b() const { return b_; }
   const std::vector<Vec>& p_rows() const { return p_; }  // union kind only
   const Vec& q() const { return q_; }                    // union kind only
   const Vec& w() const { return w_; }
   const Problem& problem() const { return problem_; }

private:
   InstanceSpec spec_;
   std::vector<Vec> a_;
   Vec b_;
   std::vector<Vec> p_;
   Vec q_;
   Vec w_;
   Problem problem_;
};

/// Deterministic in spec.seed. Draw order from the InstanceData stream:
/// A row-major, P row-major (union kind), the s support positions (partial
/// Fisher-Yates), the s Gaussian entries of w~, eps_1..eps_m, iota_1..iota_m
/// (union kind).
GeneratedInstance generate(const InstanceSpec& spec);

/// Fraction of D_i containing x (boundary counts as inside).
double feas(const Problem& problem, ConstView x);

/// Fraction of rows with residual strictly below 1e-5 * m / 4; for the union
/// kind the residual is the smaller of the two halfspace residuals.
double eps_feas(const GeneratedInstance& instance, ConstView x);

double eps_feas_slack(std::size_t m);

/// Projection onto C of a standard Gaussian vector from the given start stream.
Vec random_start(const Problem& problem, std::uint64_t seed, std::uint64_t start_index);

struct GridSpec {
   std::vector<InstanceKind> kinds{InstanceKind::Halfspaces};
   std::vector<std::size_t> ms{300};
   std::vector<double> pbars{0.5, 0.6, 0.7};
   std::size_t instances = 5;
   std::size_t starts = 5;
   std::uint64_t seed = 1;
   /// 0 selects the defaults n = m / 5, s = n / 5.
   std::size_t n = 0;
   std::size_t s = 0;
   double r = 1e8;
   bool plant_violations = true;

   void validate() const;
   InstanceSpec instance_spec(InstanceKind kind, std::size_t m, double pbar,
                              std::size_t instance) const;
};

struct RunRecord {
   InstanceKind kind = InstanceKind::Halfspaces;
   std::size_t m = 0;
   double pbar = 0.0;
   std::size_t instance = 0;
   std::size_t start = 0;
   std::uint64_t instance_seed = 0;
   std::size_t iterations = 0;
   double seconds = 0.0;
   double feas0 = 0.0;
   double epsfeas0 = 0.0;
   double feas_star = 0.0;
   double epsfeas_star = 0.0;
   std::size_t phi0 = 0;
};

/// One aggregate per (kind, m, pbar): metrics are maxima over starts averaged
/// over instances; iter and cpu_s are averages over all runs.
struct ExperimentRow {
   InstanceKind kind = InstanceKind::Halfspaces;
   std::size_t m = 0;
   std::size_t n = 0;
   std::size_t s = 0;
   double pbar = 0.0;
   std::size_t instances = 0;
   std::size_t starts = 0;
   std::uint64_t seed = 0;
   double iter = 0.0;
   double cpu_s = 0.0;
   double feas0 = 0.0;
   double epsfeas0 = 0.0;
   double feas_star = 0.0;
   double epsfeas_star = 0.0;
};

struct ExperimentResult {
   std::vector<ExperimentRow> rows;
   std::vector<RunRecord> runs;
};

/// Runs every (instance, start) pair of the grid, dispatching independent runs
/// to up to `threads` OpenMP workers (0 = worker_threads()).
ExperimentResult run_experiment(const GridSpec& grid, const EasConfig& config,
                                std::size_t threads = 0);

/// Worker cap: MFS_THREADS if set to a positive integer, else the OpenMP default.
std::size_t worker_threads();

void write_results_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);
void write_runs_csv(std::ostream& os, const std::vector<RunRecord>& runs);

} // namespace mfs
