#pragma once

// Closed sets with deterministic projection and squared-distance oracles.
//
// Every oracle is immutable after construction, so a single instance may be
// shared between any number of threads. Whenever the projection is
// multivalued, the returned point is fixed by a documented tie-break rule so
// that repeated solves are reproducible.

#include <cstddef>
#include <memory>
#include <vector>

#include "mfs/linalg.hpp"

namespace mfs {

enum class SetKind { Halfspace, SparseBox, Union, FullSpace, FinitePoints };

const char* to_string(SetKind kind);

class SetOracle {
public:
   virtual ~SetOracle() = default;

   virtual SetKind kind() const = 0;
   virtual std::size_t dim() const = 0;
   virtual bool is_convex() const = 0;

   /// Writes a nearest point of the set to `out`. `x` and `out` must not alias.
   virtual void project_into(ConstView x, MutView out) const = 0;

   /// Squared distance; agrees with ||x - project(x)||^2.
   virtual double sq_dist(ConstView x) const;

   /// Membership with slack `tol`; `tol == 0` is the exact test (boundary inside).
   virtual bool contains(ConstView x, double tol = 0.0) const = 0;

   Vec project(ConstView x) const;
};

using SetPtr = std::shared_ptr<const SetOracle>;

/// {x : <a, x> <= b}.
class Halfspace final : public SetOracle {
public:
   Halfspace(Vec normal, double offset);

   SetKind kind() const override { return SetKind::Halfspace; }
   std::size_t dim() const override { return a_.size(); }
   bool is_convex() const override { return true; }
   void project_into(ConstView x, MutView out) const override;
   double sq_dist(ConstView x) const override;
   bool contains(ConstView x, double tol = 0.0) const override;

   /// <a, x> - b
   double residual(ConstView x) const;

   const Vec& normal() const { return a_; }
   double offset() const { return b_; }

   /// Points with residual at most this value are treated as members by the
   /// projection, which keeps projection idempotent in floating point.
   double snap_tolerance() const { return 1e-12 * (1.0 + std::abs(b_)); }

private:
   Vec a_;
   double b_;
   double a_sq_;
};

/// {x in [-r, r]^n : ||x||_0 <= s}.
///
/// Projection keeps the s entries of largest magnitude (ties go to the lowest
/// index), zeroes the rest and clamps the kept entries to [-r, r]. The saving
/// from keeping entry j is x_j^2 - (|x_j| - r)_+^2, which is strictly
/// increasing in |x_j|, so this selection is optimal.
class SparseBox final : public SetOracle {
public:
   SparseBox(std::size_t n, double radius, std::size_t sparsity);

   SetKind kind() const override { return SetKind::SparseBox; }
   std::size_t dim() const override { return n_; }
   bool is_convex() const override { return s_ >= n_; }
   void project_into(ConstView x, MutView out) const override;
   double sq_dist(ConstView x) const override;
   bool contains(ConstView x, double tol = 0.0) const override;

   double radius() const { return r_; }
   std::size_t sparsity() const { return s_; }

private:
   std::vector<std::size_t> kept_indices(ConstView x) const;

   std::size_t n_;
   double r_;
   std::size_t s_;
};

/// Finite union of member sets. The projection is taken from the nearest
/// member; equidistant members resolve to the lowest index.
class UnionSet final : public SetOracle {
public:
   explicit UnionSet(std::vector<SetPtr> members);

   SetKind kind() const override { return SetKind::Union; }
   std::size_t dim() const override { return n_; }
   bool is_convex() const override;
   void project_into(ConstView x, MutView out) const override;
   double sq_dist(ConstView x) const override;
   bool contains(ConstView x, double tol = 0.0) const override;

   const std::vector<SetPtr>& members() const { return members_; }

   /// Index of the member the projection is taken from.
   std::size_t nearest_member(ConstView x) const;

private:
   std::vector<SetPtr> members_;
   std::size_t n_;
};

class FullSpace final : public SetOracle {
public:
   explicit FullSpace(std::size_t n) : n_(n) {}

   SetKind kind() const override { return SetKind::FullSpace; }
   std::size_t dim() const override { return n_; }
   bool is_convex() const override { return true; }
   void project_into(ConstView x, MutView out) const override;
   double sq_dist(ConstView x) const override;
   bool contains(ConstView x, double tol = 0.0) const override;

private:
   std::size_t n_;
};

/// Nonempty finite point cloud; ties go to the lowest-index point.
class FinitePointSet final : public SetOracle {
public:
   explicit FinitePointSet(std::vector<Vec> points);

   SetKind kind() const override { return SetKind::FinitePoints; }
   std::size_t dim() const override { return n_; }
   bool is_convex() const override { return points_.size() == 1; }
   void project_into(ConstView x, MutView out) const override;
   bool contains(ConstView x, double tol = 0.0) const override;

   const std::vector<Vec>& points() const { return points_; }

private:
   std::vector<Vec> points_;
   std::size_t n_;
};

SetPtr make_halfspace(Vec normal, double offset);
SetPtr make_sparse_box(std::size_t n, double radius, std::size_t sparsity);
SetPtr make_union(std::vector<SetPtr> members);
SetPtr make_full_space(std::size_t n);
SetPtr make_finite_points(std::vector<Vec> points);

/// Checked entry points; throw std::invalid_argument on dimension mismatch.
Vec project(const SetOracle& set, ConstView x);
double sq_dist(const SetOracle& set, ConstView x);

/// Exact projection by exhaustive enumeration: every support of size s for a
/// SparseBox (n <= 12), every member of a UnionSet, every point of a
/// FinitePointSet. Ties go to the first candidate in enumeration order, which
/// reproduces the tie-break of `project`. Meant as a test oracle.
Vec brute_force_project(const SetOracle& set, ConstView x);

inline constexpr std::size_t kBruteForceMaxDim = 12;

} // namespace mfs
