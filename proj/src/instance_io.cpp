#include "mfs/instance_io.hpp"

#include <fstream>
#include <stdexcept>

namespace mfs {

namespace {

Json spec_to_json(const InstanceSpec& spec)
{
   return Json{{"m", spec.m},
               {"n", spec.n},
               {"s", spec.s},
               {"pbar", spec.pbar},
               {"r", spec.r},
               {"kind", to_string(spec.kind)},
               {"seed", spec.seed},
               {"plant_violations", spec.plant_violations}};
}

InstanceSpec spec_from_json(const Json& j)
{
   InstanceSpec spec;
   spec.m = j.at("m").get<std::size_t>();
   spec.n = j.at("n").get<std::size_t>();
   spec.s = j.at("s").get<std::size_t>();
   spec.pbar = j.at("pbar").get<double>();
   spec.r = j.at("r").get<double>();
   spec.kind = instance_kind_from_string(j.at("kind").get<std::string>());
   spec.seed = j.at("seed").get<std::uint64_t>();
   spec.plant_violations = j.value("plant_violations", true);
   return spec;
}

} // namespace

Json instance_to_json(const GeneratedInstance& instance)
{
   Json doc{{"format", kInstanceFormat},
            {"spec", spec_to_json(instance.spec())},
            {"A", instance.a_rows()},
            {"b", instance.b()},
            {"w", instance.w()},
            {"seed", instance.spec().seed}};
   if (instance.spec().kind == InstanceKind::UnionOfTwoHalfspaces) {
      doc["P"] = instance.p_rows();
      doc["q"] = instance.q();
   }
   return doc;
}

GeneratedInstance instance_from_json(const Json& doc)
{
   if (doc.value("format", std::string{}) != kInstanceFormat) {
      throw std::invalid_argument(std::string("instance document: expected format ") +
                                  kInstanceFormat);
   }
   InstanceSpec spec = spec_from_json(doc.at("spec"));
   auto a = doc.at("A").get<std::vector<Vec>>();
   auto b = doc.at("b").get<Vec>();
   auto w = doc.at("w").get<Vec>();
   std::vector<Vec> p;
   Vec q;
   if (spec.kind == InstanceKind::UnionOfTwoHalfspaces) {
      p = doc.at("P").get<std::vector<Vec>>();
      q = doc.at("q").get<Vec>();
   }
   for (const auto& row : a) {
      require_dim(row.size(), spec.n, "instance document A");
   }
   for (const auto& row : p) {
      require_dim(row.size(), spec.n, "instance document P");
   }
   return GeneratedInstance(spec, std::move(a), std::move(b), std::move(p), std::move(q),
                            std::move(w));
}

Json read_json_file(const std::string& path)
{
   std::ifstream in(path);
   if (!in) {
      throw std::runtime_error("cannot open '" + path + "'");
   }
   return Json::parse(in);
}

void save_instance(const GeneratedInstance& instance, const std::string& path)
{
   std::ofstream out(path);
   if (!out) {
      throw std::runtime_error("cannot write '" + path + "'");
   }
   out << instance_to_json(instance).dump() << '\n';
}

GeneratedInstance load_instance(const std::string& path)
{
   return instance_from_json(read_json_file(path));
}

Json set_to_json(const SetOracle& set)
{
   switch (set.kind()) {
   case SetKind::Halfspace: {
      const auto& h = static_cast<const Halfspace&>(set);
      return {{"type", "halfspace"}, {"a", h.normal()}, {"b", h.offset()}};
   }
   case SetKind::SparseBox: {
      const auto& box = static_cast<const SparseBox&>(set);
      return {{"type", "sparse_box"}, {"n", box.dim()}, {"r", box.radius()},
              {"s", box.sparsity()}};
   }
   case SetKind::Union: {
      Json members = Json::array();
      for (const auto& member : static_cast<const UnionSet&>(set).members()) {
         members.push_back(set_to_json(*member));
      }
      return {{"type", "union"}, {"members", members}};
   }
   case SetKind::FullSpace:
      return {{"type", "full_space"}, {"n", set.dim()}};
   case SetKind::FinitePoints:
      return {{"type", "finite_points"},
              {"points", static_cast<const FinitePointSet&>(set).points()}};
   }
   throw std::logic_error("set_to_json: unknown set kind");
}

SetPtr set_from_json(const Json& doc)
{
   const auto type = doc.at("type").get<std::string>();
   if (type == "halfspace") {
      return make_halfspace(doc.at("a").get<Vec>(), doc.at("b").get<double>());
   }
   if (type == "sparse_box") {
      return make_sparse_box(doc.at("n").get<std::size_t>(), doc.at("r").get<double>(),
                             doc.at("s").get<std::size_t>());
   }
   if (type == "union") {
      std::vector<SetPtr> members;
      for (const auto& m : doc.at("members")) {
         members.push_back(set_from_json(m));
      }
      return make_union(std::move(members));
   }
   if (type == "full_space") {
      return make_full_space(doc.at("n").get<std::size_t>());
   }
   if (type == "finite_points") {
      return make_finite_points(doc.at("points").get<std::vector<Vec>>());
   }
   throw std::invalid_argument("set_from_json: unknown type '" + type + "'");
}

GridSpec grid_from_json(const Json& doc)
{
   if (doc.contains("format") && doc.at("format").get<std::string>() != kGridFormat) {
      throw std::invalid_argument(std::string("grid document: expected format ") + kGridFormat);
   }
   GridSpec grid;
   if (doc.contains("kinds")) {
      grid.kinds.clear();
      for (const auto& k : doc.at("kinds")) {
         grid.kinds.push_back(instance_kind_from_string(k.get<std::string>()));
      }
   }
   if (doc.contains("m")) grid.ms = doc.at("m").get<std::vector<std::size_t>>();
   if (doc.contains("pbar")) grid.pbars = doc.at("pbar").get<std::vector<double>>();
   grid.instances = doc.value("instances", grid.instances);
   grid.starts = doc.value("starts", grid.starts);
   grid.seed = doc.value("seed", grid.seed);
   grid.n = doc.value("n", grid.n);
   grid.s = doc.value("s", grid.s);
   grid.r = doc.value("r", grid.r);
   grid.plant_violations = doc.value("plant_violations", grid.plant_violations);
   grid.validate();
   return grid;
}

GridSpec load_grid(const std::string& path) { return grid_from_json(read_json_file(path)); }

Json report_to_json(const SolveReport& report)
{
   Json doc{{"status", to_string(report.status)},
            {"iterations", report.iterations},
            {"x_final", report.x_final},
            {"psi_trace", report.psi_trace},
            {"step_norms", report.step_norms},
            {"alpha_trace", report.alpha_trace},
            {"alpha0_trace", report.alpha0_trace},
            {"backtrack_counts", report.backtrack_counts},
            {"psi_prime_sum", report.psi_prime_sum},
            {"psi_prime_max", report.psi_prime_max},
            {"max_iterate_norm", report.max_iterate_norm},
            {"stationarity_residual", report.stationarity_residual}};
   if (!report.iterates.empty()) {
      doc["iterates"] = report.iterates;
   }
   return doc;
}

Json eas_report_to_json(const EasReport& report)
{
   Json stages = Json::array();
   for (const auto& st : report.stages) {
      Json s{{"k", st.k},
             {"eps", st.eps},
             {"inner_tol", st.inner_tol},
             {"phi0", st.phi0},
             {"report", report_to_json(st.report)}};
      if (st.eps_feas) {
         s["eps_feas"] = *st.eps_feas;
      }
      stages.push_back(std::move(s));
   }
   return Json{{"stages", stages},
               {"x_start", report.x_start},
               {"x_final", report.x_final},
               {"subsystem", report.subsystem},
               {"phi0", report.phi0},
               {"total_iterations", report.total_iterations}};
}

Vec load_vector(const std::string& path)
{
   const Json doc = read_json_file(path);
   if (!doc.is_array()) {
      throw std::invalid_argument("'" + path + "': expected a JSON array of numbers");
   }
   return doc.get<Vec>();
}

} // namespace mfs
