#include "sipcone/errors.hpp"

namespace sipcone {

TangencyFailure::TangencyFailure(const std::string& what, double sweep_angle)
    : GeometryError(what + " (sweep angle " + std::to_string(sweep_angle) + ")"),
      sweep_angle_(sweep_angle) {}

}  // namespace sipcone
