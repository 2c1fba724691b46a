#pragma once

#include "sipcone/bodies.hpp"
#include "sipcone/sampling.hpp"
#include "sipcone/star_surface.hpp"

#include <cstdint>
#include <optional>

namespace sipcone {

/// Haar-distributed rotation (QR of a Gaussian matrix with sign fix).
Mat random_rotation(Rng& rng, int n);

/// Origin-centered ellipsoid with shape Q^T D Q; the eigenvalues of D are
/// log-uniform in [1, condition_cap]. A cap of 1 gives the unit ball.
Ellipsoid random_ellipsoid(std::uint64_t seed, int n, double condition_cap);

/// Randomly rotated origin-centered superellipsoid.
BodyPtr perturbed_superellipsoid(std::uint64_t seed, double exponent, const Vec& semi_axes);

/// Star surface with r in [base - amplitude, base + amplitude]: `terms`
/// random monomials of degree 1..3 whose coefficients have |c| summing to
/// amplitude. At least one term has odd degree, so the surface is not
/// O-symmetric when amplitude > 0.
StarSurface random_star_surface(std::uint64_t seed, int n, double base, double amplitude, int terms = 8);

/// Same, then checks that `inner` (seen from o) lies strictly inside.
/// Throws ContainmentViolation otherwise.
StarSurface random_star_surface(std::uint64_t seed, int n, double base, double amplitude,
                                const SupportBody& inner, const Vec& o, int terms = 8);

/// conv{±1}^n.
Polytope cube(int n);
/// conv{±e_i}.
Polytope cross_polytope(int n);
/// Regular simplex with centroid at the origin and circumradius 1.
Polytope regular_simplex(int n);
/// Hull of `count` seeded points near the unit sphere.
Polytope random_polytope(std::uint64_t seed, int n, int count);

}  // namespace sipcone
