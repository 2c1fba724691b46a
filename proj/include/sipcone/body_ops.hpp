#pragma once

#include "sipcone/bodies.hpp"

#include <span>

namespace sipcone {

/// max_{|u| = 1} <u, z> - h(u): the Euclidean distance to K outside K and
/// minus the distance to bd K inside. Exact for ellipsoids and polytopes
/// outside; sampled and then refined by projected gradient otherwise.
double signed_distance(const SupportBody& body, const Vec& z);

bool contains(const SupportBody& body, const Vec& z, double tol = kDefaultTol);

/// from + t * dir on bd K, for interior `from`.
Vec boundary_point(const SupportBody& body, const Vec& from, const Vec& dir);

/// K ∩ H for H through the origin, in orthonormal_basis(H) coordinates.
BodyPtr section_through_origin(const BodyPtr& body, const Hyperplane& h);

/// {M z + b : z in K}; stays in closed form for ellipsoids and polytopes.
BodyPtr affine_image(const BodyPtr& body, const Mat& linear, const Vec& translation);
BodyPtr translated(const BodyPtr& body, const Vec& offset);

struct ChordResult {
    Vec p;
    Vec q;
    /// Distance of the origin from conv(N_p ∪ N_q) for unit normal
    /// generators; zero iff some u in N_p has -u in N_q.
    double defect;
    bool diametral;
};

ChordResult diametral_chord(const SupportBody& body, const Vec& direction, const Vec& o, double tol = kDefaultTol);
bool diametral_chord_test(const SupportBody& body, const Vec& direction, const Vec& o, double tol = kDefaultTol);

/// Nearest point to the origin in the convex hull of `points`.
Vec min_norm_point(std::span<const Vec> points);

/// Checks the support-oracle contract on `samples` directions: h(u) =
/// <u, s(u)>, sublinearity, and a strictly interior interior_point.
/// Throws InvalidArgument naming the first failure.
void validate_body(const SupportBody& body, int samples = 1000, double tol = 1e-10);

}  // namespace sipcone
