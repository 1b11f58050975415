#include "mfs/bench.hpp"

#include <algorithm>

#include "mfs/rng.hpp"

namespace mfs {

double feas(const Problem& problem, ConstView x)
{
   require_dim(x.size(), problem.n(), "feas");
   std::size_t inside = 0;
   for (const auto& d : problem.targets()) {
      if (d->contains(x)) {
         ++inside;
      }
   }
   return static_cast<double>(inside) / static_cast<double>(problem.m());
}

double eps_feas_slack(std::size_t m) { return 1e-5 * static_cast<double>(m) / 4.0; }

double eps_feas(const GeneratedInstance& instance, ConstView x)
{
   const InstanceSpec& spec = instance.spec();
   require_dim(x.size(), spec.n, "eps_feas");
   const double slack = eps_feas_slack(spec.m);
   const bool is_union = spec.kind == InstanceKind::UnionOfTwoHalfspaces;
   std::size_t count = 0;
   for (std::size_t i = 0; i < spec.m; ++i) {
      double res = dot(instance.a_rows()[i], x) - instance.b()[i];
      if (is_union) {
         res = std::min(res, dot(instance.p_rows()[i], x) - instance.q()[i]);
      }
      if (res < slack) {
         ++count;
      }
   }
   return static_cast<double>(count) / static_cast<double>(spec.m);
}

Vec random_start(const Problem& problem, std::uint64_t seed, std::uint64_t start_index)
{
   CounterRng rng = make_rng(seed, RngStream::Start, start_index);
   Vec z(problem.n());
   for (double& v : z) {
      v = rng.normal();
   }
   return problem.constraint().project(z);
}

} // namespace mfs
