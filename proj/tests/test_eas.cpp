#include "doctest.h"

#include <cmath>

#include "mfs/bench.hpp"
#include "mfs/eas.hpp"

using namespace mfs;

TEST_CASE("continuation schedules")
{
   const EasConfig cfg;
   CHECK(eps_schedule(1, cfg) == 0.9);
   CHECK(eps_schedule(3, cfg) == doctest::Approx(0.009).epsilon(1e-14));
   std::size_t k = 1;
   while (eps_schedule(k, cfg) > 1e-6) {
      ++k;
   }
   CHECK(k == 7);
   CHECK(eps_schedule(7, cfg) == doctest::Approx(9e-7).epsilon(1e-12));

   CHECK(inner_tolerance(1, cfg) == 1e-5);
   CHECK(inner_tolerance(5, cfg) == doctest::Approx(1e-5 / 81.0).epsilon(1e-14));
   CHECK(inner_tolerance(40, cfg) == 1e-7);
   CHECK_THROWS_AS(eps_schedule(0, cfg), std::invalid_argument);
   CHECK_THROWS_AS(inner_tolerance(0, cfg), std::invalid_argument);
}

TEST_CASE("eas on a fully feasible instance")
{
   InstanceSpec spec = InstanceSpec::with_defaults(100, 1.0, InstanceKind::Halfspaces, 5);
   spec.plant_violations = false;
   const GeneratedInstance inst = generate(spec);
   const Problem& p = inst.problem();

   const EasConfig cfg;
   const EasReport r = eas_run(p, cfg, inst.w());
   REQUIRE(r.stages.size() == 6);
   CHECK(r.phi0 == 0);
   CHECK(r.subsystem.size() == p.m());
   for (std::size_t k = 0; k < r.stages.size(); ++k) {
      CHECK(r.stages[k].k == k + 1);
      CHECK(r.stages[k].eps == eps_schedule(k + 1, cfg));
      if (k > 0) {
         CHECK(r.stages[k].eps < r.stages[k - 1].eps);
      }
   }
}

TEST_CASE("eas stage gating and warm starts")
{
   const GeneratedInstance inst =
      generate(InstanceSpec::with_defaults(60, 0.6, InstanceKind::Halfspaces, 9));
   const Problem& p = inst.problem();
   const Vec x0 = random_start(p, 9, 0);

   EasConfig one = EasConfig{};
   one.eps_stop = 0.5;
   CHECK(eas_run(p, one, x0).stages.size() == 1);

   EasConfig terminal = EasConfig{};
   terminal.eps_stop = 0.5;
   terminal.run_terminal_stage = true;
   CHECK(eas_run(p, terminal, x0).stages.size() == 2);

   EasConfig cfg;
   cfg.spg.record_iterates = true;
   const EasReport r = eas_run(p, cfg, x0, [&](ConstView x) { return eps_feas(inst, x); });
   REQUIRE(r.stages.size() == 6);
   CHECK(r.stages[0].report.iterates.front() == r.x_start);
   for (std::size_t k = 1; k < r.stages.size(); ++k) {
      CHECK(r.stages[k].report.iterates.front() == r.stages[k - 1].report.x_final);
      CHECK(r.stages[k].inner_tol == inner_tolerance(k + 1, cfg));
      CHECK(r.stages[k].eps_feas.has_value());
   }
   CHECK(r.x_final == r.stages.back().report.x_final);
   std::size_t total = 0;
   for (const auto& st : r.stages) {
      total += st.report.iterations;
   }
   CHECK(total == r.total_iterations);
   CHECK(r.phi0 + r.subsystem.size() == p.m());
}

TEST_CASE("eas config validation")
{
   const Problem p(make_full_space(1), {make_halfspace({1.0}, 0.0)});
   EasConfig bad;
   bad.penalty = PenaltyKind::Linear;
   CHECK_THROWS_AS(eas_run(p, bad, Vec{1.0}), std::invalid_argument);
   EasConfig bad_eps;
   bad_eps.eps0 = 1.5;
   CHECK_THROWS_AS(eas_run(p, bad_eps, Vec{1.0}), std::invalid_argument);

   EasConfig frac;
   frac.penalty = PenaltyKind::FracEps;
   const EasReport r = eas_run(p, frac, Vec{1.0});
   CHECK(r.phi0 == 0);
}
