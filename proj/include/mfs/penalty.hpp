#pragma once

#include <cstddef>

namespace mfs {

enum class PenaltyKind { LogEps, FracEps, Linear };

const char* to_string(PenaltyKind kind);
PenaltyKind penalty_kind_from_string(const char* name);

/// A concave penalty psi applied to squared distances, together with the
/// matching outer l0 surrogate phi_eps where one exists.
///
///   LogEps  psi(s) = log(s + eps) - log(eps),   phi(s) = 1 - log(s + eps) / log(eps),  eps in (0, 1)
///   FracEps psi(s) = s / (s + eps) + eps * s,   phi(s) = psi(s),                        eps > 0
///   Linear  psi(s) = s / m                      (no outer surrogate)
///
/// All functions are defined on s >= 0 and throw std::domain_error otherwise.
class PenaltyFamily {
public:
   static PenaltyFamily log_eps(double eps);
   static PenaltyFamily frac_eps(double eps);
   static PenaltyFamily linear(std::size_t m);
   static PenaltyFamily make(PenaltyKind kind, double eps, std::size_t m = 1);

   PenaltyKind kind() const { return kind_; }
   double eps() const { return eps_; }
   std::size_t linear_m() const { return m_; }

   double psi(double s) const;

   /// Right derivative; at s = 0 this is the closed-form limit.
   double psi_prime(double s) const;

   /// L with |psi'(s1) - psi'(s2)| <= L |s1 - s2| on s >= 0.
   double psi_prime_lipschitz() const;

   /// Outer surrogate phi_eps(s); throws std::logic_error for Linear.
   double phi(double s) const;

private:
   PenaltyFamily(PenaltyKind kind, double eps, std::size_t m) : kind_(kind), eps_(eps), m_(m) {}

   PenaltyKind kind_;
   double eps_;
   std::size_t m_;
};

} // namespace mfs
