#include "mfs/penalty.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mfs {

const char* to_string(PenaltyKind kind)
{
   switch (kind) {
   case PenaltyKind::LogEps: return "log";
   case PenaltyKind::FracEps: return "frac";
   case PenaltyKind::Linear: return "linear";
   }
   return "unknown";
}

PenaltyKind penalty_kind_from_string(const char* name)
{
   const std::string s(name);
   if (s == "log") return PenaltyKind::LogEps;
   if (s == "frac") return PenaltyKind::FracEps;
   if (s == "linear") return PenaltyKind::Linear;
   throw std::invalid_argument("unknown penalty kind '" + s + "'");
}

PenaltyFamily PenaltyFamily::log_eps(double eps)
{
   if (!(eps > 0.0 && eps < 1.0)) {
      throw std::invalid_argument("log penalty requires eps in (0, 1)");
   }
   return {PenaltyKind::LogEps, eps, 0};
}

PenaltyFamily PenaltyFamily::frac_eps(double eps)
{
   if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw std::invalid_argument("frac penalty requires eps > 0");
   }
   return {PenaltyKind::FracEps, eps, 0};
}

PenaltyFamily PenaltyFamily::linear(std::size_t m)
{
   if (m == 0) {
      throw std::invalid_argument("linear penalty requires m >= 1");
   }
   return {PenaltyKind::Linear, 0.0, m};
}

PenaltyFamily PenaltyFamily::make(PenaltyKind kind, double eps, std::size_t m)
{
   switch (kind) {
   case PenaltyKind::LogEps: return log_eps(eps);
   case PenaltyKind::FracEps: return frac_eps(eps);
   case PenaltyKind::Linear: return linear(m);
   }
   throw std::invalid_argument("unknown penalty kind");
}

namespace {

void check_arg(double s)
{
   if (!(s >= 0.0)) {
      throw std::domain_error("penalty argument must be nonnegative");
   }
}

} // namespace

double PenaltyFamily::psi(double s) const
{
   check_arg(s);
   switch (kind_) {
   case PenaltyKind::LogEps:
      // log1p keeps full relative accuracy when s << eps
      return std::log1p(s / eps_);
   case PenaltyKind::FracEps: {
      const double se = s + eps_;
      return s / se + eps_ * s;
   }
   case PenaltyKind::Linear:
      return s / static_cast<double>(m_);
   }
   return 0.0;
}

double PenaltyFamily::psi_prime(double s) const
{
   check_arg(s);
   switch (kind_) {
   case PenaltyKind::LogEps:
      return 1.0 / (s + eps_);
   case PenaltyKind::FracEps: {
      const double se = s + eps_;
      return eps_ / (se * se) + eps_;
   }
   case PenaltyKind::Linear:
      return 1.0 / static_cast<double>(m_);
   }
   return 0.0;
}

double PenaltyFamily::psi_prime_lipschitz() const
{
   switch (kind_) {
   case PenaltyKind::LogEps: return 1.0 / (eps_ * eps_);
   case PenaltyKind::FracEps: return 2.0 / (eps_ * eps_);
   case PenaltyKind::Linear: return 0.0;
   }
   return 0.0;
}

double PenaltyFamily::phi(double s) const
{
   check_arg(s);
   switch (kind_) {
   case PenaltyKind::LogEps:
      return 1.0 - std::log(s + eps_) / std::log(eps_);
   case PenaltyKind::FracEps:
      return psi(s);
   case PenaltyKind::Linear:
      break;
   }
   throw std::logic_error("linear penalty has no outer l0 surrogate");
}

} // namespace mfs
