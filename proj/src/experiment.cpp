#include "mfs/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <ostream>
#include <stdexcept>

#include <omp.h>

#include "mfs/rng.hpp"

namespace mfs {

void GridSpec::validate() const
{
   if (kinds.empty() || ms.empty() || pbars.empty()) {
      throw std::invalid_argument("GridSpec: kinds, m and pbar must be nonempty");
   }
   if (instances < 1 || starts < 1) {
      throw std::invalid_argument("GridSpec: instances and starts must be >= 1");
   }
}

InstanceSpec GridSpec::instance_spec(InstanceKind kind, std::size_t m, double pbar,
                                     std::size_t instance) const
{
   std::uint64_t key = derive_seed(seed, static_cast<std::uint64_t>(kind));
   key = derive_seed(key, m);
   key = derive_seed(key, std::bit_cast<std::uint64_t>(pbar));
   key = derive_seed(key, instance);

   InstanceSpec spec = InstanceSpec::with_defaults(m, pbar, kind, key);
   if (n > 0) {
      spec.n = n;
      spec.s = std::max<std::size_t>(1, n / 5);
   }
   if (s > 0) {
      spec.s = s;
   }
   spec.r = r;
   spec.plant_violations = plant_violations;
   spec.validate();
   return spec;
}

std::size_t worker_threads()
{
   if (const char* env = std::getenv("MFS_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) {
         return static_cast<std::size_t>(v);
      }
   }
   return static_cast<std::size_t>(omp_get_max_threads());
}

ExperimentResult run_experiment(const GridSpec& grid, const EasConfig& config,
                                std::size_t threads)
{
   grid.validate();
   config.validate();
   if (threads == 0) {
      threads = worker_threads();
   }

   struct Cell {
      InstanceKind kind;
      std::size_t m;
      double pbar;
   };
   std::vector<Cell> cells;
   for (const InstanceKind kind : grid.kinds) {
      for (const std::size_t m : grid.ms) {
         for (const double pbar : grid.pbars) {
            cells.push_back({kind, m, pbar});
         }
      }
   }

   std::vector<GeneratedInstance> instances;
   instances.reserve(cells.size() * grid.instances);
   for (const Cell& cell : cells) {
      for (std::size_t j = 0; j < grid.instances; ++j) {
         instances.push_back(generate(grid.instance_spec(cell.kind, cell.m, cell.pbar, j)));
      }
   }

   const std::size_t jobs = instances.size() * grid.starts;
   std::vector<RunRecord> runs(jobs);
   std::vector<std::exception_ptr> errors(jobs);

   // Each job writes only its own slot; aggregation below is serial, so the
   // result does not depend on scheduling.
   const auto njobs = static_cast<std::ptrdiff_t>(jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(threads))
   for (std::ptrdiff_t job = 0; job < njobs; ++job) {
      const auto idx = static_cast<std::size_t>(job);
      try {
         const std::size_t inst_idx = idx / grid.starts;
         const std::size_t start = idx % grid.starts;
         const GeneratedInstance& inst = instances[inst_idx];
         const Cell& cell = cells[inst_idx / grid.instances];

         RunRecord rec;
         rec.kind = cell.kind;
         rec.m = cell.m;
         rec.pbar = cell.pbar;
         rec.instance = inst_idx % grid.instances;
         rec.start = start;
         rec.instance_seed = inst.spec().seed;

         const Vec x0 = random_start(inst.problem(), inst.spec().seed, start);
         const auto t0 = std::chrono::steady_clock::now();
         const EasReport report = eas_run(inst.problem(), config, x0);
         const auto t1 = std::chrono::steady_clock::now();

         rec.iterations = report.total_iterations;
         rec.seconds = std::chrono::duration<double>(t1 - t0).count();
         rec.feas0 = feas(inst.problem(), report.x_start);
         rec.epsfeas0 = eps_feas(inst, report.x_start);
         rec.feas_star = feas(inst.problem(), report.x_final);
         rec.epsfeas_star = eps_feas(inst, report.x_final);
         rec.phi0 = report.phi0;
         runs[idx] = rec;
      } catch (...) {
         errors[idx] = std::current_exception();
      }
   }
   for (const auto& e : errors) {
      if (e) {
         std::rethrow_exception(e);
      }
   }

   ExperimentResult result;
   result.runs = runs;
   for (std::size_t c = 0; c < cells.size(); ++c) {
      const InstanceSpec& spec = instances[c * grid.instances].spec();
      ExperimentRow row;
      row.kind = cells[c].kind;
      row.m = cells[c].m;
      row.n = spec.n;
      row.s = spec.s;
      row.pbar = cells[c].pbar;
      row.instances = grid.instances;
      row.starts = grid.starts;
      row.seed = grid.seed;
      for (std::size_t j = 0; j < grid.instances; ++j) {
         double f0 = 0.0, e0 = 0.0, fs = 0.0, es = 0.0;
         for (std::size_t st = 0; st < grid.starts; ++st) {
            const RunRecord& rec = runs[(c * grid.instances + j) * grid.starts + st];
            f0 = std::max(f0, rec.feas0);
            e0 = std::max(e0, rec.epsfeas0);
            fs = std::max(fs, rec.feas_star);
            es = std::max(es, rec.epsfeas_star);
            row.iter += static_cast<double>(rec.iterations);
            row.cpu_s += rec.seconds;
         }
         row.feas0 += f0;
         row.epsfeas0 += e0;
         row.feas_star += fs;
         row.epsfeas_star += es;
      }
      const auto ni = static_cast<double>(grid.instances);
      const auto nr = static_cast<double>(grid.instances * grid.starts);
      row.iter /= nr;
      row.cpu_s /= nr;
      row.feas0 /= ni;
      row.epsfeas0 /= ni;
      row.feas_star /= ni;
      row.epsfeas_star /= ni;
      result.rows.push_back(row);
   }
   return result;
}

namespace {

std::string fmt(const char* format, double v)
{
   char buf[64];
   std::snprintf(buf, sizeof buf, format, v);
   return buf;
}

} // namespace

void write_results_csv(std::ostream& os, const std::vector<ExperimentRow>& rows)
{
   os << "kind,m,pbar,iter,cpu_s,feas0,epsfeas0,feas_star,epsfeas_star,n,s,instances,starts,seed\n";
   for (const auto& r : rows) {
      os << to_string(r.kind) << ',' << r.m << ',' << fmt("%.4f", r.pbar) << ','
         << fmt("%.1f", r.iter) << ',' << fmt("%.3f", r.cpu_s) << ','
         << fmt("%.6f", r.feas0) << ',' << fmt("%.6f", r.epsfeas0) << ','
         << fmt("%.6f", r.feas_star) << ',' << fmt("%.6f", r.epsfeas_star) << ',' << r.n << ','
         << r.s << ',' << r.instances << ',' << r.starts << ',' << r.seed << '\n';
   }
}

void write_runs_csv(std::ostream& os, const std::vector<RunRecord>& runs)
{
   os << "kind,m,pbar,instance,start,instance_seed,iter,cpu_s,feas0,epsfeas0,feas_star,"
         "epsfeas_star,phi0\n";
   for (const auto& r : runs) {
      os << to_string(r.kind) << ',' << r.m << ',' << fmt("%.4f", r.pbar) << ',' << r.instance
         << ',' << r.start << ',' << r.instance_seed << ',' << r.iterations << ','
         << fmt("%.3f", r.seconds) << ',' << fmt("%.6f", r.feas0) << ','
         << fmt("%.6f", r.epsfeas0) << ',' << fmt("%.6f", r.feas_star) << ','
         << fmt("%.6f", r.epsfeas_star) << ',' << r.phi0 << '\n';
   }
}

} // namespace mfs
