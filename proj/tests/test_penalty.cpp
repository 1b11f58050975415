#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mfs/penalty.hpp"

using namespace mfs;

namespace {

std::vector<PenaltyFamily> families()
{
   return {PenaltyFamily::log_eps(0.5), PenaltyFamily::log_eps(1e-3),
           PenaltyFamily::frac_eps(0.1), PenaltyFamily::frac_eps(2.0),
           PenaltyFamily::linear(4)};
}

} // namespace

TEST_CASE("psi values")
{
   // reference values from 40-digit evaluation
   const auto log_half = PenaltyFamily::log_eps(0.5);
   CHECK(log_half.psi(0.0) == 0.0);
   CHECK(log_half.psi(0.5) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
   CHECK(PenaltyFamily::frac_eps(0.1).psi(1.0) ==
         doctest::Approx(1.009090909090909).epsilon(1e-15));
   CHECK(PenaltyFamily::linear(4).psi(2.0) == 0.5);
   CHECK_THROWS_AS(log_half.psi(-1e-3), std::domain_error);
}

TEST_CASE("psi derivative and Lipschitz constants")
{
   CHECK(PenaltyFamily::log_eps(0.5).psi_prime(0.0) == 2.0);
   CHECK(PenaltyFamily::frac_eps(0.1).psi_prime(0.0) == doctest::Approx(10.1).epsilon(1e-15));
   CHECK(PenaltyFamily::linear(4).psi_prime(0.0) == 0.25);
   CHECK(PenaltyFamily::linear(4).psi_prime(123.0) == 0.25);
   CHECK(PenaltyFamily::log_eps(0.5).psi_prime_lipschitz() == 4.0);
   CHECK(PenaltyFamily::linear(3).psi_prime_lipschitz() == 0.0);
   CHECK(PenaltyFamily::frac_eps(1.0).psi_prime_lipschitz() == 2.0);
   CHECK_THROWS_AS(PenaltyFamily::linear(4).psi_prime(-1.0), std::domain_error);

   // sup of |psi'(s1) - psi'(s2)| / |s1 - s2| over a fine grid near 0
   for (const auto& f : {PenaltyFamily::log_eps(0.5), PenaltyFamily::frac_eps(1.0)}) {
      double worst = 0.0;
      for (int k = 0; k < 2000; ++k) {
         const double s = 1e-4 * k;
         worst = std::max(worst, std::abs(f.psi_prime(s + 1e-6) - f.psi_prime(s)) / 1e-6);
      }
      CHECK(worst <= f.psi_prime_lipschitz());
      CHECK(worst >= 0.99 * f.psi_prime_lipschitz());
   }
}

TEST_CASE("parameter ranges")
{
   CHECK_THROWS_AS(PenaltyFamily::log_eps(0.0), std::invalid_argument);
   CHECK_THROWS_AS(PenaltyFamily::log_eps(1.0), std::invalid_argument);
   CHECK_THROWS_AS(PenaltyFamily::frac_eps(0.0), std::invalid_argument);
   CHECK_THROWS_AS(PenaltyFamily::linear(0), std::invalid_argument);
   CHECK(penalty_kind_from_string("frac") == PenaltyKind::FracEps);
   CHECK_THROWS_AS(penalty_kind_from_string("tanh"), std::invalid_argument);
}

TEST_CASE("outer surrogate phi")
{
   CHECK(PenaltyFamily::log_eps(0.9).phi(0.0) == 0.0);
   CHECK(PenaltyFamily::log_eps(1e-6).phi(1.0) ==
         doctest::Approx(1.0000000723823775).epsilon(1e-15));
   CHECK(PenaltyFamily::frac_eps(1e-6).phi(1.0) ==
         doctest::Approx(1.000000000001).epsilon(1e-15));
   CHECK_THROWS_AS(PenaltyFamily::linear(2).phi(1.0), std::logic_error);

   // frac family is within 0.1 of |s|_0 at eps = 1e-6 on every probe
   const auto frac = PenaltyFamily::frac_eps(1e-6);
   for (const double s : {0.01, 0.1, 1.0, 10.0}) {
      CHECK(std::abs(frac.phi(s) - 1.0) < 0.1);
   }
   // log family converges like |log s| / |log eps|: monotone in eps, slow away from s = 1
   for (const double s : {0.01, 0.1, 10.0}) {
      double prev = std::abs(PenaltyFamily::log_eps(0.5).phi(s) - 1.0);
      for (const double eps : {1e-2, 1e-4, 1e-6, 1e-12}) {
         const double gap = std::abs(PenaltyFamily::log_eps(eps).phi(s) - 1.0);
         CHECK(gap < prev);
         prev = gap;
      }
      CHECK(std::abs(PenaltyFamily::log_eps(1e-6).phi(s) - 1.0) ==
            doctest::Approx(std::abs(std::log(s)) / std::abs(std::log(1e-6))).epsilon(1e-4));
   }
}

TEST_CASE("concavity, monotone derivative and derivative consistency")
{
   std::mt19937_64 rng(3);
   std::uniform_real_distribution<double> unif(0.0, 5.0);
   for (const auto& f : families()) {
      CAPTURE(to_string(f.kind()));
      for (int k = 0; k < 1000; ++k) {
         const double s1 = unif(rng);
         const double s2 = unif(rng);
         CHECK(f.psi(0.5 * (s1 + s2)) >= 0.5 * (f.psi(s1) + f.psi(s2)) - 1e-12);
         const double lo = std::min(s1, s2);
         const double hi = std::max(s1, s2);
         CHECK(f.psi_prime(lo) > 0.0);
         CHECK(f.psi_prime(hi) <= f.psi_prime(lo));
         CHECK(std::abs(f.psi_prime(s1) - f.psi_prime(s2)) <=
               f.psi_prime_lipschitz() * std::abs(s1 - s2) + 1e-12);
      }
      const double h = 1e-6;
      for (int k = 0; k < 100; ++k) {
         const double s = unif(rng);
         const double fd = (f.psi(s + h) - f.psi(s)) / h;
         // truncation bound L h plus rounding of the difference quotient
         CHECK(std::abs(fd - f.psi_prime(s)) <=
               f.psi_prime_lipschitz() * h + 1e-9 * (1.0 + f.psi(s)));
      }
   }
}

TEST_CASE("log surrogate is an affine image of psi")
{
   std::mt19937_64 rng(11);
   std::uniform_real_distribution<double> unif(0.0, 3.0);
   for (const double eps : {0.9, 0.09, 1e-3, 1e-6}) {
      const auto f = PenaltyFamily::log_eps(eps);
      for (int k = 0; k < 100; ++k) {
         double phi_sum = 0.0;
         double psi_sum = 0.0;
         for (int i = 0; i < 10; ++i) {
            const double s = unif(rng);
            phi_sum += f.phi(s);
            psi_sum += f.psi(s);
         }
         const double scaled = -psi_sum / std::log(eps);
         CHECK(std::abs(phi_sum - scaled) <= 1e-10 * std::abs(phi_sum));
      }
   }
}
