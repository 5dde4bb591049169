#include "stpaprio/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace stpaprio {

double triangular_quantile(double lower, double mode, double upper, double u) {
  if (lower == upper) return mode;
  const double width = upper - lower;
  const double split = (mode - lower) / width;
  const double x = u < split ? lower + std::sqrt(u * width * (mode - lower))
                             : upper - std::sqrt((1.0 - u) * width * (upper - mode));
  return std::clamp(x, lower, upper);
}

}  // namespace stpaprio
