#include <cmath>

#include "zmeta/errors.hpp"
#include "zmeta/specfun.hpp"

namespace zmeta {

ComplexPoint::ComplexPoint(double re, double im) : z_(re, im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw DomainError("complex point must have finite components");
  }
}

}  // namespace zmeta
