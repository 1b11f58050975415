#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "mfs/instance_io.hpp"

using namespace mfs;

TEST_CASE("instance documents round-trip exactly")
{
   for (const InstanceKind kind : {InstanceKind::Halfspaces, InstanceKind::UnionOfTwoHalfspaces}) {
      const GeneratedInstance inst = generate(InstanceSpec::with_defaults(40, 0.6, kind, 17));
      const Json doc = instance_to_json(inst);
      CHECK(doc.at("format") == kInstanceFormat);
      CHECK(doc.contains("P") == (kind == InstanceKind::UnionOfTwoHalfspaces));

      const auto path = std::filesystem::temp_directory_path() / "mfs_io_test.json";
      save_instance(inst, path.string());
      const GeneratedInstance back = load_instance(path.string());
      std::filesystem::remove(path);
      CHECK(back.a_rows() == inst.a_rows());
      CHECK(back.b() == inst.b());
      CHECK(back.p_rows() == inst.p_rows());
      CHECK(back.q() == inst.q());
      CHECK(back.w() == inst.w());
      CHECK(back.spec().seed == inst.spec().seed);
      CHECK(feas(back.problem(), inst.w()) == feas(inst.problem(), inst.w()));
   }
   Json bad = instance_to_json(generate(InstanceSpec::with_defaults(10, 0.5, InstanceKind::Halfspaces, 1)));
   bad["format"] = "something-else";
   CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);
}

TEST_CASE("set descriptions round-trip")
{
   const SetPtr nested = make_union(
      {make_halfspace({1.0, 2.0}, 0.5), make_sparse_box(2, 3.0, 1),
       make_finite_points({{1.0, 1.0}, {0.0, -2.0}}), make_full_space(2)});
   const SetPtr back = set_from_json(set_to_json(*nested));
   CHECK(set_to_json(*back) == set_to_json(*nested));
   const Vec x{4.0, -1.0};
   CHECK(project(*back, x) == project(*nested, x));
   CHECK_THROWS_AS(set_from_json(Json{{"type", "cone"}}), std::invalid_argument);
}

TEST_CASE("grid documents")
{
   const Json doc = Json::parse(R"({"format":"mfs-grid/1","kinds":["halfspaces","union"],
      "m":[300],"pbar":[0.5,0.7],"instances":2,"starts":3,"seed":9})");
   const GridSpec g = grid_from_json(doc);
   CHECK(g.kinds.size() == 2);
   CHECK(g.pbars == std::vector<double>{0.5, 0.7});
   CHECK(g.instances == 2);
   CHECK(g.starts == 3);
   CHECK(g.seed == 9);
   CHECK_THROWS_AS(grid_from_json(Json::parse(R"({"kinds":["cones"]})")), std::invalid_argument);
   CHECK_THROWS_AS(grid_from_json(Json::parse(R"({"starts":0})")), std::invalid_argument);
}

TEST_CASE("report serialization carries every trace")
{
   const Problem p(make_full_space(2), {make_halfspace({1.0, 0.0}, 0.0)});
   const SolveReport r = spg_solve(p, PenaltyFamily::linear(1), Vec{1.0, 0.0}, SpgConfig{});
   const Json j = report_to_json(r);
   for (const char* key : {"x_final", "iterations", "psi_trace", "step_norms", "alpha_trace",
                           "backtrack_counts", "stationarity_residual", "status"}) {
      CHECK(j.contains(key));
   }
   CHECK(j.at("status") == "converged");
   CHECK(j.at("psi_trace").size() == r.iterations + 1);
}
