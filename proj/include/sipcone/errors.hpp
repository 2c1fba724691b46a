#pragma once

#include <stdexcept>
#include <string>

namespace sipcone {

/// Base class for every failure raised by the library.
class GeometryError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

/// Reflection direction (nearly) parallel to its mirror.
class DegenerateReflection : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

/// Point set spans too few dimensions for a hyperplane fit.
class RankDeficiency : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

class PointNotOnSurface : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

class PointNotOnBoundary : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

/// A body that should sit strictly inside another one does not.
class ContainmentViolation : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

/// Support cone requested from an apex that is not exterior to the body.
class ApexInsideBody : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

class CollinearityViolation : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

/// Tangent search failed in a sweep plane; carries the sweep angle.
class TangencyFailure : public GeometryError {
 public:
    TangencyFailure(const std::string& what, double sweep_angle);
    double sweep_angle() const noexcept { return sweep_angle_; }

 private:
    double sweep_angle_;
};

class InsufficientSamples : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

class PreconditionViolation : public GeometryError {
 public:
    using GeometryError::GeometryError;
};

}  // namespace sipcone
