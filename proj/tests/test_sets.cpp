#include "doctest.h"

#include <random>

#include "mfs/sets.hpp"
#include "test_support.hpp"

using namespace mfs;
using mfs::test::gaussian_vec;

TEST_CASE("halfspace projection")
{
   const auto h = make_halfspace({1.0, 0.0}, 0.0);
   CHECK(project(*h, Vec{2.0, 3.0}) == Vec{0.0, 3.0});
   CHECK(project(*h, Vec{-1.0, 5.0}) == Vec{-1.0, 5.0});
   CHECK(sq_dist(*h, Vec{2.0, 3.0}) == doctest::Approx(4.0));
   CHECK(sq_dist(*h, Vec{-1.0, 5.0}) == 0.0);
   // boundary counts as inside
   CHECK(h->contains(Vec{0.0, 1.0}));
   CHECK_THROWS_AS(project(*h, Vec{1.0}), std::invalid_argument);
   CHECK_THROWS_AS(make_halfspace({0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("sparse box projection matches enumeration")
{
   const auto box = make_sparse_box(3, 10.0, 2);
   const Vec x{3.0, -1.0, 2.0};
   CHECK(brute_force_project(*box, x) == Vec{3.0, 0.0, 2.0});
   CHECK(project(*box, x) == Vec{3.0, 0.0, 2.0});
   CHECK(sq_dist(*box, x) == doctest::Approx(1.0));

   const auto tight = make_sparse_box(3, 2.5, 2);
   CHECK(brute_force_project(*tight, x) == Vec{2.5, 0.0, 2.0});
   CHECK(project(*tight, x) == Vec{2.5, 0.0, 2.0});

   // equal magnitudes: lowest indices kept
   const auto one = make_sparse_box(3, 10.0, 1);
   CHECK(project(*one, Vec{-2.0, 2.0, 2.0}) == Vec{-2.0, 0.0, 0.0});
   CHECK(brute_force_project(*one, Vec{-2.0, 2.0, 2.0}) == Vec{-2.0, 0.0, 0.0});

   CHECK_THROWS_AS(make_sparse_box(3, 1.0, 0), std::invalid_argument);
   CHECK_THROWS_AS(make_sparse_box(3, 1.0, 4), std::invalid_argument);
   CHECK_THROWS_AS(make_sparse_box(3, 0.0, 1), std::invalid_argument);
   CHECK_THROWS_AS(brute_force_project(*make_sparse_box(13, 1.0, 2), Vec(13, 0.0)),
                   std::invalid_argument);
}

TEST_CASE("union and finite point sets")
{
   const auto u = make_union({make_halfspace({1.0, 0.0}, 0.0), make_halfspace({0.0, 1.0}, 0.0)});
   CHECK(project(*u, Vec{1.0, 3.0}) == Vec{0.0, 3.0});
   CHECK(brute_force_project(*u, Vec{1.0, 3.0}) == Vec{0.0, 3.0});
   // equidistant members resolve to the first
   CHECK(project(*u, Vec{1.0, 1.0}) == Vec{0.0, 1.0});
   CHECK_FALSE(u->is_convex());

   const auto pts = make_finite_points({{0.0, 0.0}, {2.0, 0.0}});
   CHECK(brute_force_project(*pts, Vec{0.9, 0.0}) == Vec{0.0, 0.0});
   CHECK(brute_force_project(*pts, Vec{1.0, 0.0}) == Vec{0.0, 0.0});
   CHECK(project(*pts, Vec{1.0, 0.0}) == Vec{0.0, 0.0});
   CHECK(project(*pts, Vec{1.1, 0.0}) == Vec{2.0, 0.0});

   CHECK_THROWS_AS(make_union({}), std::invalid_argument);
   CHECK_THROWS_AS(make_finite_points({}), std::invalid_argument);
   CHECK_THROWS_AS(brute_force_project(*make_full_space(2), Vec{0.0, 0.0}),
                   std::invalid_argument);
}

TEST_CASE("projection properties on random inputs")
{
   std::mt19937_64 rng(12345);
   const std::size_t n = 8;
   std::vector<SetPtr> sets{
      mfs::test::random_halfspace(rng, n),
      make_sparse_box(n, 1.5, 3),
      make_union({mfs::test::random_halfspace(rng, n), mfs::test::random_halfspace(rng, n),
                  make_sparse_box(n, 0.5, 2)}),
      make_full_space(n),
      mfs::test::random_finite_points(rng, n, 7),
   };
   for (const auto& set : sets) {
      CAPTURE(to_string(set->kind()));
      for (int trial = 0; trial < 1000; ++trial) {
         const Vec x = gaussian_vec(rng, n, 3.0);
         const Vec p = project(*set, x);
         const double d = sq_dist(*set, x);
         CHECK(std::abs(sq_diff(x, p) - d) <= 1e-12 * std::max(1.0, d));
         CHECK(set->contains(p, 1e-12));
         const Vec pp = project(*set, p);
         if (set->kind() == SetKind::Halfspace || set->kind() == SetKind::FullSpace) {
            CHECK(pp == p);
         } else {
            CHECK(mfs::test::max_abs_diff(pp, p) <= 1e-12);
         }
      }
   }
}

TEST_CASE("convex projections are nonexpansive")
{
   std::mt19937_64 rng(99);
   const std::size_t n = 5;
   for (int trial = 0; trial < 500; ++trial) {
      const auto h = mfs::test::random_halfspace(rng, n);
      const auto f = make_full_space(n);
      const Vec x = gaussian_vec(rng, n, 2.0);
      const Vec y = gaussian_vec(rng, n, 2.0);
      for (const auto& set : {h, f}) {
         CHECK(diff_norm(project(*set, x), project(*set, y)) <= diff_norm(x, y) + 1e-12);
      }
   }
}

TEST_CASE("sparse box is optimal against enumeration")
{
   std::mt19937_64 rng(7);
   for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng() % 10;
      const std::size_t s = 1 + rng() % n;
      const double r = 0.25 + 2.0 * std::uniform_real_distribution<double>()(rng);
      const auto box = make_sparse_box(n, r, s);
      const Vec x = gaussian_vec(rng, n, 2.0);
      const Vec p = project(*box, x);
      const Vec q = brute_force_project(*box, x);
      CHECK(std::abs(diff_norm(x, p) - diff_norm(x, q)) <= 1e-12);
   }
}
