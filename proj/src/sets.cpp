#include "mfs/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mfs {

const char* to_string(SetKind kind)
{
   switch (kind) {
   case SetKind::Halfspace: return "halfspace";
   case SetKind::SparseBox: return "sparse_box";
   case SetKind::Union: return "union";
   case SetKind::FullSpace: return "full_space";
   case SetKind::FinitePoints: return "finite_points";
   }
   return "unknown";
}

double SetOracle::sq_dist(ConstView x) const
{
   Vec p(dim());
   project_into(x, p);
   return sq_diff(x, p);
}

Vec SetOracle::project(ConstView x) const
{
   Vec p(dim());
   project_into(x, p);
   return p;
}

// Halfspace

Halfspace::Halfspace(Vec normal, double offset)
   : a_(std::move(normal)), b_(offset), a_sq_(sq_norm(a_))
{
   if (a_.empty()) {
      throw std::invalid_argument("Halfspace: empty normal");
   }
   if (!(a_sq_ > 0.0) || !std::isfinite(a_sq_)) {
      throw std::invalid_argument("Halfspace: normal must be finite and nonzero");
   }
   if (!std::isfinite(b_)) {
      throw std::invalid_argument("Halfspace: offset must be finite");
   }
}

double Halfspace::residual(ConstView x) const { return dot(a_, x) - b_; }

void Halfspace::project_into(ConstView x, MutView out) const
{
   const double res = residual(x);
   if (res <= snap_tolerance()) {
      std::copy(x.begin(), x.end(), out.begin());
      return;
   }
   const double t = res / a_sq_;
   for (std::size_t j = 0; j < a_.size(); ++j) {
      out[j] = x[j] - t * a_[j];
   }
}

double Halfspace::sq_dist(ConstView x) const
{
   const double res = residual(x);
   if (res <= snap_tolerance()) {
      return 0.0;
   }
   return res * res / a_sq_;
}

bool Halfspace::contains(ConstView x, double tol) const
{
   return residual(x) <= tol * (1.0 + std::abs(b_));
}

// SparseBox

SparseBox::SparseBox(std::size_t n, double radius, std::size_t sparsity)
   : n_(n), r_(radius), s_(sparsity)
{
   if (n_ == 0) {
      throw std::invalid_argument("SparseBox: n must be positive");
   }
   if (!(r_ > 0.0)) {
      throw std::invalid_argument("SparseBox: radius must be positive");
   }
   if (s_ < 1 || s_ > n_) {
      throw std::invalid_argument("SparseBox: sparsity must lie in [1, n]");
   }
}

std::vector<std::size_t> SparseBox::kept_indices(ConstView x) const
{
   std::vector<std::size_t> idx(n_);
   std::iota(idx.begin(), idx.end(), std::size_t{0});
   if (s_ >= n_) {
      return idx;
   }
   auto larger = [&x](std::size_t i, std::size_t j) {
      const double ai = std::abs(x[i]);
      const double aj = std::abs(x[j]);
      return ai > aj || (ai == aj && i < j);
   };
   std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s_), idx.end(),
                    larger);
   idx.resize(s_);
   return idx;
}

void SparseBox::project_into(ConstView x, MutView out) const
{
   std::fill(out.begin(), out.end(), 0.0);
   for (const std::size_t j : kept_indices(x)) {
      out[j] = std::clamp(x[j], -r_, r_);
   }
}

double SparseBox::sq_dist(ConstView x) const
{
   std::vector<char> kept(n_, 0);
   for (const std::size_t j : kept_indices(x)) {
      kept[j] = 1;
   }
   double d = 0.0;
   for (std::size_t j = 0; j < n_; ++j) {
      const double diff = kept[j] ? x[j] - std::clamp(x[j], -r_, r_) : x[j];
      d += diff * diff;
   }
   return d;
}

bool SparseBox::contains(ConstView x, double tol) const
{
   std::size_t nnz = 0;
   for (const double v : x) {
      if (v != 0.0) {
         ++nnz;
      }
      if (std::abs(v) > r_ + tol * (1.0 + r_)) {
         return false;
      }
   }
   return nnz <= s_;
}

// UnionSet

UnionSet::UnionSet(std::vector<SetPtr> members) : members_(std::move(members))
{
   if (members_.empty()) {
      throw std::invalid_argument("UnionSet: needs at least one member");
   }
   n_ = members_.front()->dim();
   for (const auto& member : members_) {
      if (!member) {
         throw std::invalid_argument("UnionSet: null member");
      }
      require_dim(member->dim(), n_, "UnionSet");
   }
}

bool UnionSet::is_convex() const
{
   return members_.size() == 1 && members_.front()->is_convex();
}

std::size_t UnionSet::nearest_member(ConstView x) const
{
   std::size_t best = 0;
   double best_d = std::numeric_limits<double>::infinity();
   for (std::size_t k = 0; k < members_.size(); ++k) {
      const double d = members_[k]->sq_dist(x);
      if (d < best_d) {
         best_d = d;
         best = k;
      }
   }
   return best;
}

void UnionSet::project_into(ConstView x, MutView out) const
{
   members_[nearest_member(x)]->project_into(x, out);
}

double UnionSet::sq_dist(ConstView x) const
{
   double best = std::numeric_limits<double>::infinity();
   for (const auto& member : members_) {
      best = std::min(best, member->sq_dist(x));
   }
   return best;
}

bool UnionSet::contains(ConstView x, double tol) const
{
   return std::any_of(members_.begin(), members_.end(),
                      [&](const SetPtr& member) { return member->contains(x, tol); });
}

// FullSpace

void FullSpace::project_into(ConstView x, MutView out) const
{
   std::copy(x.begin(), x.end(), out.begin());
}

double FullSpace::sq_dist(ConstView) const { return 0.0; }

bool FullSpace::contains(ConstView, double) const { return true; }

// FinitePointSet

FinitePointSet::FinitePointSet(std::vector<Vec> points) : points_(std::move(points))
{
   if (points_.empty()) {
      throw std::invalid_argument("FinitePointSet: needs at least one point");
   }
   n_ = points_.front().size();
   if (n_ == 0) {
      throw std::invalid_argument("FinitePointSet: zero-dimensional points");
   }
   for (const auto& p : points_) {
      require_dim(p.size(), n_, "FinitePointSet");
   }
}

void FinitePointSet::project_into(ConstView x, MutView out) const
{
   std::size_t best = 0;
   double best_d = std::numeric_limits<double>::infinity();
   for (std::size_t k = 0; k < points_.size(); ++k) {
      const double d = sq_diff(x, points_[k]);
      if (d < best_d) {
         best_d = d;
         best = k;
      }
   }
   std::copy(points_[best].begin(), points_[best].end(), out.begin());
}

bool FinitePointSet::contains(ConstView x, double tol) const
{
   return std::any_of(points_.begin(), points_.end(), [&](const Vec& p) {
      double worst = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
         worst = std::max(worst, std::abs(x[j] - p[j]) / (1.0 + std::abs(p[j])));
      }
      return worst <= tol;
   });
}

// Factories and checked entry points

SetPtr make_halfspace(Vec normal, double offset)
{
   return std::make_shared<Halfspace>(std::move(normal), offset);
}

SetPtr make_sparse_box(std::size_t n, double radius, std::size_t sparsity)
{
   return std::make_shared<SparseBox>(n, radius, sparsity);
}

SetPtr make_union(std::vector<SetPtr> members)
{
   return std::make_shared<UnionSet>(std::move(members));
}

SetPtr make_full_space(std::size_t n) { return std::make_shared<FullSpace>(n); }

SetPtr make_finite_points(std::vector<Vec> points)
{
   return std::make_shared<FinitePointSet>(std::move(points));
}

Vec project(const SetOracle& set, ConstView x)
{
   require_dim(x.size(), set.dim(), "project");
   return set.project(x);
}

double sq_dist(const SetOracle& set, ConstView x)
{
   require_dim(x.size(), set.dim(), "sq_dist");
   return set.sq_dist(x);
}

namespace {

Vec brute_force_sparse_box(const SparseBox& box, ConstView x)
{
   const std::size_t n = box.dim();
   if (n > kBruteForceMaxDim) {
      throw std::invalid_argument("brute_force_project: SparseBox too large to enumerate");
   }
   const std::size_t s = box.sparsity();
   const double r = box.radius();

   // Supports of size exactly s suffice: enlarging a support never increases
   // the distance. Combinations are visited in lexicographic order.
   std::vector<std::size_t> support(s);
   std::iota(support.begin(), support.end(), std::size_t{0});
   Vec best(n, 0.0);
   double best_d = std::numeric_limits<double>::infinity();
   Vec candidate(n);
   while (true) {
      std::fill(candidate.begin(), candidate.end(), 0.0);
      for (const std::size_t j : support) {
         candidate[j] = std::min(std::max(x[j], -r), r);
      }
      const double d = sq_diff(x, candidate);
      if (d < best_d) {
         best_d = d;
         best = candidate;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && support[k - 1] == n - s + (k - 1)) {
         --k;
      }
      if (k == 0) {
         break;
      }
      ++support[k - 1];
      for (std::size_t l = k; l < s; ++l) {
         support[l] = support[l - 1] + 1;
      }
   }
   return best;
}

} // namespace

Vec brute_force_project(const SetOracle& set, ConstView x)
{
   require_dim(x.size(), set.dim(), "brute_force_project");
   switch (set.kind()) {
   case SetKind::SparseBox:
      return brute_force_sparse_box(static_cast<const SparseBox&>(set), x);
   case SetKind::FinitePoints: {
      const auto& pts = static_cast<const FinitePointSet&>(set).points();
      const Vec* best = &pts.front();
      double best_d = std::numeric_limits<double>::infinity();
      for (const auto& p : pts) {
         const double d = sq_diff(x, p);
         if (d < best_d) {
            best_d = d;
            best = &p;
         }
      }
      return *best;
   }
   case SetKind::Union: {
      Vec best;
      double best_d = std::numeric_limits<double>::infinity();
      for (const auto& member : static_cast<const UnionSet&>(set).members()) {
         const bool enumerable = member->kind() == SetKind::SparseBox ||
                                 member->kind() == SetKind::FinitePoints ||
                                 member->kind() == SetKind::Union;
         Vec p = enumerable ? brute_force_project(*member, x) : member->project(x);
         const double d = sq_diff(x, p);
         if (d < best_d) {
            best_d = d;
            best = std::move(p);
         }
      }
      return best;
   }
   default:
      throw std::invalid_argument(std::string("brute_force_project: unsupported set kind ") +
                                  to_string(set.kind()));
   }
}

} // namespace mfs
