#pragma once

#include "sipcone/bodies.hpp"

#include <array>
#include <optional>

namespace sipcone {

/// C(K, x) for an apex x outside K; its boundary is S(K, x).
class SupportCone {
 public:
    /// Throws ApexInsideBody unless the apex is strictly outside.
    SupportCone(BodyPtr body, Vec apex);

    const SupportBody& body() const { return *body_; }
    const BodyPtr& body_ptr() const { return body_; }
    const Vec& apex() const { return apex_; }

 private:
    BodyPtr body_;
    Vec apex_;
};

/// Whether the ray from the apex through z meets K (within tol). Ellipsoids
/// use the tangent quadric, polytopes the exact facet interval test.
bool cone_contains(const SupportCone& cone, const Vec& z, double tol = kDefaultTol);

/// min over the ray from the apex through z of the signed distance to K.
/// Zero on S(K, x), negative inside the cone, positive outside.
double cone_boundary_defect(const SupportCone& cone, const Vec& z);

struct GrazeSet {
    std::vector<Vec> points;
    std::optional<Hyperplane> carrier;
    double carrier_residual = 0.0;
};

/// `count` points of Σ(K, x) = S(K, x) ∩ bd K, one per direction e in the
/// complement of the central normal c: the support point s(u) of the
/// supporting direction u = cos(t) c + sin(t) e whose hyperplane passes
/// through the apex, located by bisection on t.
GrazeSet graze_sample(const SupportCone& cone, int count);

struct PolarPlane {
    Hyperplane plane;
    bool pole_inside;
};

/// {z : <z - c, A (x - c)> = 1}; for an origin-centered E this is the polar
/// hyperplane Γ_x.
PolarPlane polar_hyperplane(const Ellipsoid& e, const Vec& x);

/// Unit normals of the two tangent lines from `apex` to a planar section;
/// each line is {w : <nu, w> = <nu, apex>}. `plus` is reached by turning the
/// exit normal toward rot90(apex - interior).
struct TangentLines {
    Eigen::Vector2d plus;
    Eigen::Vector2d minus;
};
TangentLines tangent_lines(const PlanarSection& section, const Eigen::Vector2d& apex,
                           const Eigen::Vector2d& interior, double sweep_angle = 0.0);

/// The two points of S(K, x) ∩ S(K, y) in the plane spanned by the axis
/// L(x, y) and `side`; element 0 lies on the `side` half-plane.
std::array<Vec, 2> cone_pair_point(const SupportBody& k, const Vec& x, const Vec& y, const Vec& o, const Vec& side,
                                   double sweep_angle = 0.0);

/// Samples of S(K, x) ∩ S(K, y) from an axial sweep of `planes` planes
/// through L(x, y). Returns the points of the +e2 half-planes in sweep order
/// followed by those of the -e2 half-planes, so consecutive points trace a
/// closed curve. Throws CollinearityViolation unless o lies on [x, y].
std::vector<Vec> cone_pair_intersection(const SupportBody& k, const Vec& x, const Vec& y, const Vec& o, int planes,
                                        double tol = kDefaultTol);

struct QuadricFit {
    bool ellipsoidal;
    bool definite;
    /// max |sqrt((q - c)^T S (q - c)) - 1| over the samples.
    double residual;
    std::size_t samples;
};

/// Fits a general quadric to the boundary of C(K, x) ∩ cut in the cut
/// plane's coordinates. The cut must meet every generator of the cone
/// (PreconditionViolation otherwise), so the section is bounded.
QuadricFit fit_cone_section(const SupportCone& cone, const Hyperplane& cut, int directions = 48);

/// fit_cone_section(...).ellipsoidal with residual <= tol.
bool is_ellipsoidal_cone(const SupportCone& cone, const Hyperplane& cut, double tol = 1e-8, int directions = 48);

}  // namespace sipcone
