// mfs: command-line front end.
//
//   mfs gen     --m 300 --pbar 0.7 --kind halfspaces --seed 1 --out inst.json
//   mfs solve   --instance inst.json [--penalty log|frac|linear] [--eps E] ...
//   mfs bench   --grid grid.json --starts 5 --out results.csv
//   mfs avgproj --instance inst.json

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "mfs/bench.hpp"
#include "mfs/eas.hpp"
#include "mfs/instance_io.hpp"
#include "mfs/rng.hpp"
#include "mfs/spg.hpp"

namespace {

using namespace mfs;

void emit(const Json& doc, const std::string& path)
{
   if (path.empty() || path == "-") {
      std::cout << doc.dump(2) << '\n';
      return;
   }
   std::ofstream out(path);
   if (!out) {
      throw std::runtime_error("cannot write '" + path + "'");
   }
   out << doc.dump(2) << '\n';
}

// "random:<seed>" or a JSON vector file.
struct StartSource {
   std::optional<std::uint64_t> seed;
   std::string file;
};

StartSource parse_start(const std::string& text)
{
   const std::string prefix = "random:";
   if (text.rfind(prefix, 0) == 0) {
      return {std::stoull(text.substr(prefix.size())), {}};
   }
   return {std::nullopt, text};
}

struct SolveOptions {
   std::string instance;
   std::string penalty = "log";
   std::optional<double> eps;
   std::size_t M = 9;
   double sigma = 1e-4;
   double eta = 0.5;
   double alpha_min = 1e-10;
   double alpha_max = 1e10;
   std::size_t max_iter = 50000;
   double tol = 1e-5;
   std::string x0 = "random:0";
   double eps0 = 0.9;
   double eps_decay = 0.1;
   double eps_stop = 1e-6;
   std::size_t starts = 1;
   bool record_iterates = false;
   std::string out;
};

SpgConfig spg_config(const SolveOptions& o)
{
   SpgConfig c;
   c.M = o.M;
   c.sigma = o.sigma;
   c.eta = o.eta;
   c.alpha_min = o.alpha_min;
   c.alpha_max = o.alpha_max;
   c.max_iter = o.max_iter;
   c.stop_tol = o.tol;
   c.record_iterates = o.record_iterates;
   return c;
}

int run_solve(const SolveOptions& o)
{
   const GeneratedInstance inst = load_instance(o.instance);
   const Problem& problem = inst.problem();
   const PenaltyKind kind = penalty_kind_from_string(o.penalty.c_str());
   const bool single = kind == PenaltyKind::Linear || o.eps.has_value();
   const StartSource source = parse_start(o.x0);

   EasConfig eas;
   eas.eps0 = o.eps0;
   eas.decay = o.eps_decay;
   eas.eps_stop = o.eps_stop;
   eas.penalty = kind;
   eas.spg = spg_config(o);

   Json runs = Json::array();
   for (std::size_t start = 0; start < o.starts; ++start) {
      Vec x0 = source.seed ? random_start(problem, *source.seed, start)
                           : problem.constraint().project(load_vector(source.file));
      Json run{{"start", start},
               {"feas0", feas(problem, x0)},
               {"epsfeas0", eps_feas(inst, x0)}};
      Vec x_final;
      if (single) {
         const PenaltyFamily family = PenaltyFamily::make(kind, o.eps.value_or(0.5), problem.m());
         SolveReport report = spg_solve(problem, family, x0, spg_config(o));
         x_final = report.x_final;
         run["report"] = report_to_json(report);
      } else {
         EasReport report =
            eas_run(problem, eas, x0, [&](ConstView x) { return eps_feas(inst, x); });
         x_final = report.x_final;
         run["report"] = eas_report_to_json(report);
      }
      const double tau = default_tau(problem.n());
      run["feas"] = feas(problem, x_final);
      run["epsfeas"] = eps_feas(inst, x_final);
      run["phi0"] = eval_phi0(problem, x_final, tau);
      run["subsystem"] = extract_subsystem(problem, x_final, tau);
      runs.push_back(std::move(run));
   }
   emit(Json{{"instance", o.instance},
             {"mode", single ? "spg" : "eas"},
             {"penalty", to_string(kind)},
             {"runs", runs}},
        o.out);
   return 0;
}

} // namespace

int main(int argc, char** argv)
{
   CLI::App app{"Maximum feasible subsystem solver"};
   app.require_subcommand(1);

   // gen
   auto* gen = app.add_subcommand("gen", "Generate a random instance");
   std::size_t gen_m = 300;
   double gen_pbar = 0.7;
   std::string gen_kind = "halfspaces";
   std::uint64_t gen_seed = 1;
   std::size_t gen_n = 0;
   std::size_t gen_s = 0;
   double gen_r = 1e8;
   bool gen_no_violations = false;
   std::string gen_out;
   gen->add_option("--m", gen_m, "Number of sets D_i")->check(CLI::PositiveNumber);
   gen->add_option("--pbar", gen_pbar, "Planted feasible fraction")->check(CLI::Range(0.0, 1.0));
   gen->add_option("--kind", gen_kind, "halfspaces | union");
   gen->add_option("--seed", gen_seed, "Instance seed");
   gen->add_option("--n", gen_n, "Dimension (default m/5)");
   gen->add_option("--s", gen_s, "Sparsity budget (default n/5)");
   gen->add_option("--r", gen_r, "Box radius");
   gen->add_flag("--no-violations", gen_no_violations, "Disable the -50 eps branch");
   gen->add_option("--out", gen_out, "Output file")->required();

   // solve
   auto* solve = app.add_subcommand("solve", "Solve an instance with EAS or a single SPG run");
   SolveOptions so;
   solve->add_option("--instance", so.instance)->required()->check(CLI::ExistingFile);
   solve->add_option("--penalty", so.penalty, "log | frac | linear")
      ->check(CLI::IsMember({"log", "frac", "linear"}));
   solve->add_option("--eps", so.eps, "Fixed eps: run a single SPG solve instead of EAS");
   solve->add_option("--M", so.M, "Nonmonotone window");
   solve->add_option("--sigma", so.sigma);
   solve->add_option("--eta", so.eta);
   solve->add_option("--alpha-min", so.alpha_min);
   solve->add_option("--alpha-max", so.alpha_max);
   solve->add_option("--max-iter", so.max_iter, "SPG iteration cap per solve");
   solve->add_option("--tol", so.tol, "Relative step tolerance (single SPG mode)");
   solve->add_option("--x0", so.x0, "random:<seed> or a JSON vector file");
   solve->add_option("--eps0", so.eps0);
   solve->add_option("--eps-decay", so.eps_decay);
   solve->add_option("--eps-stop", so.eps_stop);
   solve->add_option("--starts", so.starts)->check(CLI::PositiveNumber);
   solve->add_flag("--record-iterates", so.record_iterates);
   solve->add_option("--out", so.out, "Report file (default stdout)");

   // bench
   auto* bench = app.add_subcommand("bench", "Run an experiment grid");
   std::string grid_path;
   std::optional<std::size_t> bench_starts;
   std::string bench_out;
   std::string bench_detail;
   std::size_t bench_threads = 0;
   double bench_eps0 = 0.9, bench_decay = 0.1, bench_eps_stop = 1e-6;
   std::size_t bench_max_iter = 50000;
   bench->add_option("--grid", grid_path)->required()->check(CLI::ExistingFile);
   bench->add_option("--starts", bench_starts, "Random starts per instance");
   bench->add_option("--out", bench_out, "Aggregate CSV")->required();
   bench->add_option("--detail", bench_detail, "Per-run CSV");
   bench->add_option("--threads", bench_threads, "Workers (default MFS_THREADS or all)");
   bench->add_option("--eps0", bench_eps0);
   bench->add_option("--eps-decay", bench_decay);
   bench->add_option("--eps-stop", bench_eps_stop);
   bench->add_option("--max-iter", bench_max_iter);

   // avgproj
   auto* avg = app.add_subcommand("avgproj", "Averaged projections onto the instance's D_i");
   std::string avg_instance;
   std::size_t avg_max_iter = 10000;
   double avg_tol = 1e-8;
   std::string avg_x0 = "random:0";
   std::string avg_out;
   avg->add_option("--instance", avg_instance)->required()->check(CLI::ExistingFile);
   avg->add_option("--max-iter", avg_max_iter);
   avg->add_option("--tol", avg_tol);
   avg->add_option("--x0", avg_x0, "random:<seed> (Gaussian) or a JSON vector file");
   avg->add_option("--out", avg_out);

   CLI11_PARSE(app, argc, argv);

   try {
      if (*gen) {
         InstanceSpec spec = InstanceSpec::with_defaults(
            gen_m, gen_pbar, instance_kind_from_string(gen_kind), gen_seed);
         if (gen_n > 0) {
            spec.n = gen_n;
            spec.s = std::max<std::size_t>(1, gen_n / 5);
         }
         if (gen_s > 0) {
            spec.s = gen_s;
         }
         spec.r = gen_r;
         spec.plant_violations = !gen_no_violations;
         save_instance(generate(spec), gen_out);
         return 0;
      }
      if (*solve) {
         return run_solve(so);
      }
      if (*bench) {
         GridSpec grid = load_grid(grid_path);
         if (bench_starts) {
            grid.starts = *bench_starts;
         }
         EasConfig config;
         config.eps0 = bench_eps0;
         config.decay = bench_decay;
         config.eps_stop = bench_eps_stop;
         config.spg.max_iter = bench_max_iter;
         const ExperimentResult result = run_experiment(grid, config, bench_threads);
         std::ofstream out(bench_out);
         if (!out) {
            throw std::runtime_error("cannot write '" + bench_out + "'");
         }
         write_results_csv(out, result.rows);
         if (!bench_detail.empty()) {
            std::ofstream detail(bench_detail);
            write_runs_csv(detail, result.runs);
         }
         return 0;
      }
      if (*avg) {
         const GeneratedInstance inst = load_instance(avg_instance);
         const Problem& problem = inst.problem();
         const StartSource source = parse_start(avg_x0);
         Vec x0;
         if (source.seed) {
            CounterRng rng = make_rng(*source.seed, RngStream::Start);
            x0.resize(problem.n());
            for (double& v : x0) {
               v = rng.normal();
            }
         } else {
            x0 = load_vector(source.file);
         }
         const SolveReport report =
            averaged_projection_run(problem.targets(), x0, avg_max_iter, avg_tol);
         emit(Json{{"instance", avg_instance},
                   {"feas", feas(problem, report.x_final)},
                   {"epsfeas", eps_feas(inst, report.x_final)},
                   {"report", report_to_json(report)}},
              avg_out);
         return 0;
      }
   } catch (const std::exception& e) {
      std::cerr << "mfs: " << e.what() << '\n';
      return 1;
   }
   return 0;
}
