#pragma once

#include "sipcone/bodies.hpp"
#include "sipcone/star_surface.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace sipcone {

// ---------------------------------------------------------------------------
// Intersection planes

struct IntersectionPlane {
    std::vector<Vec> points;
    Hyperplane plane;
    /// max |<n, z - o>| (or distance to the free plane) over the points.
    double max_residual;
    double rms_residual;
};

/// Samples S(K, x) ∩ S(K, y) and fits a hyperplane to them, through o by
/// default or with a free offset.
IntersectionPlane intersection_plane(const SupportBody& k, const Vec& x, const Vec& y, const Vec& o, int planes,
                                     bool through_origin = true);

// ---------------------------------------------------------------------------
// Homothetic ellipsoids

enum class E3Regime { equal, e3_inside_e2, e2_inside_e3 };
std::string to_string(E3Regime regime);

struct E3Result {
    Ellipsoid e3;
    double mu;
    E3Regime regime;
};

/// mu(lambda) = lambda / sqrt(lambda^2 - 1).
double e3_ratio(double lambda);

/// E3 = mu(lambda) E1 for E2 = lambda E1. E1 must be origin-centered
/// (PreconditionViolation) and lambda > 1 (InvalidArgument).
E3Result construct_e3(const Ellipsoid& e1, double lambda);

struct E3Certificate {
    /// max |gauge_{E3}(z) - 1| over the sampled intersection points.
    double e3_defect;
    /// Same against E2 = lambda E1.
    double e2_defect;
    std::size_t points;
};

/// Samples S(E1, x) ∩ S(E1, -x) for x on bd(lambda E1) and measures how far
/// the points are from bd E3 and bd E2.
E3Certificate certify_e3(const Ellipsoid& e1, double lambda, int samples, int planes = 32, std::uint64_t seed = 1);

struct Theorem1Report {
    /// max over x of the through-origin residual, over circumradius.
    double max_residual;
    /// Same with a free-offset plane.
    double max_affine_residual;
    std::size_t samples;
    std::vector<double> residuals;
    std::vector<double> affine_residuals;
    bool verdict;
};

/// For an origin-centered ellipsoid and a star surface around it: is each
/// S(E, x) ∩ S(E, φ(x)) contained in a plane through the origin?
Theorem1Report verify_theorem1(const Ellipsoid& e, const StarSurface& s, int samples, int planes = 32,
                               double tol = 1e-8, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Strong intersection property

struct SipScene {
    BodyPtr k;
    Enclosure s;
    BodyPtr g;
    Vec origin;
};

/// o ∈ int K and K ⊂ int G ⊂ int S on the probe sample; throws
/// ContainmentViolation / PreconditionViolation with the failing pair.
void validate_scene(const SipScene& scene);

struct SipOptions {
    int samples = 24;
    int planes = 64;
    double tol = 1e-8;
    /// Take x on bd G and match against S instead.
    bool swapped = false;
    std::uint64_t seed = 1;
};

struct SipRecord {
    Vec x;
    Vec y;
    Hyperplane plane;
    double coplanarity;
    double g_forward;
    double g_reverse;
    double g_match;
};

struct SipReport {
    std::vector<SipRecord> records;
    double scale;
    double max_coplanarity;
    double mean_coplanarity;
    double max_g_match;
    double mean_g_match;
    bool swapped;
    bool verdict;
};

SipReport sip_check(const SipScene& scene, const SipOptions& options = {});

struct DeviationResult {
    double value;
    Vec worst_x;
    std::vector<double> residuals;
};

/// max over sampled x in S of the coplanarity residual of
/// S(K, x) ∩ S(K, φ(x)), divided by the circumradius of K about o.
DeviationResult deviation_metric(const SupportBody& k, const Enclosure& s, const Vec& o, int samples, int planes = 32,
                                 bool through_origin = true, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Central symmetry

struct HammerResult {
    bool symmetric;
    Vec worst_direction;
    double worst_defect;
};

/// Every sampled chord through o is diametral.
HammerResult hammer_test(const SupportBody& k, const Vec& o, int directions = 200, double tol = 1e-7);

struct SymmetryResult {
    bool symmetric;
    double defect;
    Vec worst_direction;
};

/// max_u |(h(u) - <u, o>) - (h(-u) + <u, o>)| on the probe sample.
SymmetryResult central_symmetry_check(const SupportBody& k, const Vec& o, double tol = 1e-7);

struct ConvexityResult {
    bool strictly_convex;
    /// Smallest 1 - gauge at the midpoint of two well separated support
    /// points of nearby directions; zero when bd K contains that segment.
    double flatness;
    Vec p;
    Vec q;
};

/// Looks for a boundary segment between support points s(u) and s(u') of
/// perturbed probe directions.
ConvexityResult strict_convexity_check(const SupportBody& k, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Shadow boundaries

struct ShadowResult {
    bool on_shadow_boundary;
    /// min |<u, l>| over unit outer normals u at z.
    double defect;
};

/// Throws PointNotOnBoundary when z is farther than tol from bd K.
ShadowResult shadow_boundary_test(const SupportBody& k, const Vec& line_direction, const Vec& z, double tol = 1e-9);

struct OmegaReport {
    /// max |shadow defect| at points z whose plane contains L(u).
    double forward_max;
    /// max |<n_z, u>| at shadow-boundary points z.
    double reverse_max;
    std::vector<Vec> forward_points;
    bool holds;
};

/// Both inclusions of the identity between the set of z in bd S whose
/// intersection plane contains L(u) and the shadow boundary of S along u.
/// The scene's S must be a body.
OmegaReport omega_identity_check(const SipScene& scene, const Vec& u, int samples = 12, double tol = 1e-8,
                                 int planes = 32);

struct KakutaniPlane {
    Vec normal;
    Vec line;
    double defect;
    bool converged;
};

struct KakutaniReport {
    bool passes;
    double worst_defect;
    std::vector<KakutaniPlane> planes;
};

/// For sampled hyperplanes Λ through o, searches a line direction l making
/// Λ ∩ bd K a subset of the shadow boundary along l.
KakutaniReport kakutani_test(const SupportBody& k, const Vec& o, int planes = 10, double tol = 1e-6,
                             int section_samples = 32, std::uint64_t seed = 7);

/// The best line for one plane; exposed for tests.
KakutaniPlane kakutani_plane(const SupportBody& k, const Vec& o, const Vec& normal, int section_samples = 32);

// ---------------------------------------------------------------------------
// Affine reflections

struct ReflectionReport {
    Hyperplane lambda;
    Hyperplane h;
    /// max membership residual of R(Σ(K, p)) in Σ(K, q) and back, over the
    /// circumradius of K.
    double defect_i;
    /// max distance of p and q from H, over the circumradius.
    double defect_ii;
    bool passes_i;
    bool passes_ii;
};

/// Throws PreconditionViolation unless o lies on L(p, q) and L(x, y) and
/// L(x, y) ⊂ Λ to tol.
ReflectionReport reflection_conjugacy_check(const SupportBody& k, const Vec& o, const Vec& p, const Vec& q,
                                            const Vec& x, const Vec& y, double tol = 1e-8, int graze_count = 48,
                                            int planes = 48);

}  // namespace sipcone
