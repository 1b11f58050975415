#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfs {

using Vec = std::vector<double>;
using ConstView = std::span<const double>;
using MutView = std::span<double>;

inline double dot(ConstView a, ConstView b)
{
   double s = 0.0;
   for (std::size_t j = 0; j < a.size(); ++j) {
      s += a[j] * b[j];
   }
   return s;
}

inline double sq_norm(ConstView a) { return dot(a, a); }

inline double norm(ConstView a) { return std::sqrt(sq_norm(a)); }

inline double sq_diff(ConstView a, ConstView b)
{
   double s = 0.0;
   for (std::size_t j = 0; j < a.size(); ++j) {
      const double d = a[j] - b[j];
      s += d * d;
   }
   return s;
}

inline double diff_norm(ConstView a, ConstView b) { return std::sqrt(sq_diff(a, b)); }

inline void require_dim(std::size_t got, std::size_t want, const char* where)
{
   if (got != want) {
      throw std::invalid_argument(std::string(where) + ": dimension mismatch (got " +
                                  std::to_string(got) + ", expected " +
                                  std::to_string(want) + ")");
   }
}

} // namespace mfs
