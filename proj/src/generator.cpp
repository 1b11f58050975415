#include "mfs/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mfs/rng.hpp"

namespace mfs {

const char* to_string(InstanceKind kind)
{
   switch (kind) {
   case InstanceKind::Halfspaces: return "halfspaces";
   case InstanceKind::UnionOfTwoHalfspaces: return "union";
   }
   return "unknown";
}

InstanceKind instance_kind_from_string(const std::string& name)
{
   if (name == "halfspaces" || name == "convex") return InstanceKind::Halfspaces;
   if (name == "union" || name == "nonconvex") return InstanceKind::UnionOfTwoHalfspaces;
   throw std::invalid_argument("unknown instance kind '" + name + "'");
}

InstanceSpec InstanceSpec::with_defaults(std::size_t m, double pbar, InstanceKind kind,
                                         std::uint64_t seed)
{
   InstanceSpec spec;
   spec.m = m;
   spec.n = std::max<std::size_t>(1, m / 5);
   spec.s = std::max<std::size_t>(1, spec.n / 5);
   spec.pbar = pbar;
   spec.kind = kind;
   spec.seed = seed;
   return spec;
}

void InstanceSpec::validate() const
{
   if (m < 1) {
      throw std::invalid_argument("InstanceSpec: m must be >= 1");
   }
   if (n < 1) {
      throw std::invalid_argument("InstanceSpec: n must be >= 1");
   }
   if (s < 1 || s > n) {
      throw std::invalid_argument("InstanceSpec: s must lie in [1, n]");
   }
   if (!(pbar >= 0.0 && pbar <= 1.0)) {
      throw std::invalid_argument("InstanceSpec: pbar must lie in [0, 1]");
   }
   if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("InstanceSpec: r must be positive and finite");
   }
}

std::size_t InstanceSpec::planted_count() const
{
   // pbar * m within rounding of an integer counts as that integer
   const double v = pbar * static_cast<double>(m);
   const double nearest = std::round(v);
   if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, v)) {
      return static_cast<std::size_t>(nearest);
   }
   return std::min(m, static_cast<std::size_t>(std::ceil(v)));
}

namespace {

Problem build_problem(const InstanceSpec& spec, const std::vector<Vec>& a, const Vec& b,
                      const std::vector<Vec>& p, const Vec& q)
{
   std::vector<SetPtr> targets;
   targets.reserve(spec.m);
   for (std::size_t i = 0; i < spec.m; ++i) {
      SetPtr h = make_halfspace(a[i], b[i]);
      if (spec.kind == InstanceKind::UnionOfTwoHalfspaces) {
         targets.push_back(make_union({std::move(h), make_halfspace(p[i], q[i])}));
      } else {
         targets.push_back(std::move(h));
      }
   }
   return Problem(make_sparse_box(spec.n, spec.r, spec.s), std::move(targets));
}

} // namespace

GeneratedInstance::GeneratedInstance(InstanceSpec spec, std::vector<Vec> a_rows, Vec b,
                                     std::vector<Vec> p_rows, Vec q, Vec w)
   : spec_((spec.validate(), std::move(spec))),
     a_(std::move(a_rows)),
     b_(std::move(b)),
     p_(std::move(p_rows)),
     q_(std::move(q)),
     w_(std::move(w)),
     problem_(build_problem(spec_, a_, b_, p_, q_))
{
   require_dim(a_.size(), spec_.m, "GeneratedInstance A rows");
   require_dim(b_.size(), spec_.m, "GeneratedInstance b");
   require_dim(w_.size(), spec_.n, "GeneratedInstance w");
   if (spec_.kind == InstanceKind::UnionOfTwoHalfspaces) {
      require_dim(p_.size(), spec_.m, "GeneratedInstance P rows");
      require_dim(q_.size(), spec_.m, "GeneratedInstance q");
   }
}

GeneratedInstance generate(const InstanceSpec& spec)
{
   spec.validate();
   const std::size_t m = spec.m;
   const std::size_t n = spec.n;
   const bool is_union = spec.kind == InstanceKind::UnionOfTwoHalfspaces;
   CounterRng rng = make_rng(spec.seed, RngStream::InstanceData);

   const auto gaussian_rows = [&] {
      std::vector<Vec> rows(m, Vec(n));
      for (auto& row : rows) {
         for (double& v : row) {
            v = rng.normal();
         }
      }
      return rows;
   };
   std::vector<Vec> a = gaussian_rows();
   std::vector<Vec> p;
   if (is_union) {
      p = gaussian_rows();
   }

   std::vector<std::size_t> positions(n);
   std::iota(positions.begin(), positions.end(), std::size_t{0});
   for (std::size_t k = 0; k < spec.s; ++k) {
      const auto pick = k + static_cast<std::size_t>(rng.below(n - k));
      std::swap(positions[k], positions[pick]);
   }
   Vec w(n, 0.0);
   for (std::size_t k = 0; k < spec.s; ++k) {
      w[positions[k]] = std::clamp(rng.normal(), -spec.r, spec.r);
   }

   const std::size_t planted = spec.planted_count();
   Vec b(m);
   for (std::size_t i = 0; i < m; ++i) {
      const double noise = rng.uniform();
      const double exact = dot(a[i], w);
      b[i] = (i < planted || !spec.plant_violations) ? exact + 0.01 * noise
                                                     : exact - 50.0 * noise;
   }
   Vec q;
   if (is_union) {
      q.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
         q[i] = dot(p[i], w) - 50.0 * rng.uniform();
      }
   }
   return GeneratedInstance(spec, std::move(a), std::move(b), std::move(p), std::move(q),
                            std::move(w));
}

} // namespace mfs
