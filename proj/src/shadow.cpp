#include "sipcone/body_ops.hpp"
#include "sipcone/characterize.hpp"
#include "sipcone/cones.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <cmath>
#include <numbers>

namespace sipcone {

namespace {

// min |<u, l>| over unit vectors u in the cone spanned by `gens`. The
// linear form changes sign inside the cone iff it does on the generators.
double orthogonality_defect(const std::vector<Vec>& gens, const Vec& l) {
    if (gens.empty()) return INFINITY;
    bool positive = false;
    bool negative = false;
    double least = INFINITY;
    for (const Vec& g : gens) {
        const double v = g.normalized().dot(l);
        positive = positive || v >= 0.0;
        negative = negative || v <= 0.0;
        least = std::min(least, std::abs(v));
    }
    return positive && negative ? 0.0 : least;
}

Vec oriented_plane_normal(const SupportBody& k, const Enclosure& s, const Vec& o, const Vec& z, int planes) {
    const Vec y = s.antipode(o, z);
    Vec n = intersection_plane(k, z, y, o, planes).plane.normal();
    if (n.dot(z - o) < 0.0) n = -n;
    return n;
}

std::vector<Vec> normals_near(const SupportBody& k, const Vec& z) {
    std::vector<Vec> gens = k.normal_cone(z, 1e-9);
    if (gens.empty()) {
        const Vec ip = k.interior_point();
        gens = k.normal_cone(boundary_point(k, ip, z - ip), 1e-9);
    }
    return gens;
}

}  // namespace

ShadowResult shadow_boundary_test(const SupportBody& k, const Vec& line_direction, const Vec& z, double tol) {
    if (!(line_direction.norm() > 0.0)) throw InvalidArgument("line direction is zero");
    const double off = std::abs(signed_distance(k, z));
    if (off > std::max(tol, 1e-9) * std::max(1.0, z.norm())) throw PointNotOnBoundary("point is not on the body boundary");
    const double defect = orthogonality_defect(k.normal_cone(z, std::max(tol, 1e-9)), line_direction.normalized());
    return ShadowResult{defect <= tol, defect};
}

OmegaReport omega_identity_check(const SipScene& scene, const Vec& u, int samples, double tol, int planes) {
    validate_scene(scene);
    const BodyPtr s_body = scene.s.body();
    if (!s_body) throw PreconditionViolation("the identity check needs S given as a convex body");
    if (!(u.norm() > 0.0)) throw InvalidArgument("direction is zero");
    const Vec axis = u.normalized();
    const Vec& o = scene.origin;
    const SupportBody& k = *scene.k;
    const Mat perp = orthogonal_complement(axis);

    OmegaReport out{0.0, 0.0, {}, false};
    for (const Vec& v : span_directions(perp, samples)) {
        auto meridian = [&](double a) { return scene.s.point(o, std::cos(a) * axis + std::sin(a) * v); };
        auto f = [&](double a) { return oriented_plane_normal(k, scene.s, o, meridian(a), planes).dot(axis); };
        const double a = bisect_root(f, 0.0, std::numbers::pi, 50);
        const Vec z = meridian(a);
        const double defect = orthogonality_defect(s_body->normal_cone(z, 1e-9), axis);
        out.forward_max = std::max(out.forward_max, defect);
        out.forward_points.push_back(z);
    }
    for (const Vec& v : span_directions(perp, samples, 0x0e1a)) {
        const Vec z = s_body->support_point(v);
        const Vec n = oriented_plane_normal(k, scene.s, o, z, planes);
        out.reverse_max = std::max(out.reverse_max, std::abs(n.dot(axis)));
    }
    out.holds = out.forward_max <= tol && out.reverse_max <= tol;
    return out;
}

KakutaniPlane kakutani_plane(const SupportBody& k, const Vec& o, const Vec& normal, int section_samples) {
    const int n = k.dimension();
    const Vec w = normal.normalized();
    const Hyperplane plane(w, w.dot(o));
    std::vector<std::vector<Vec>> cones;
    for (const Vec& d : span_directions(orthonormal_basis(plane), section_samples)) {
        cones.push_back(k.normal_cone(boundary_point(k, o, d), 1e-9));
    }
    auto objective = [&](const Vec& l) {
        const double len = l.norm();
        if (!(len > 1e-12)) return 1.0;
        const Vec dir = l / len;
        double worst = 0.0;
        for (const auto& gens : cones) worst = std::max(worst, orthogonality_defect(gens, dir));
        return worst;
    };
    std::vector<Vec> starts;
    if (const auto* e = dynamic_cast<const Ellipsoid*>(&k)) starts.push_back((e->inverse_shape() * w).normalized());
    for (Vec& s : sphere_directions(n, 16, 0x16)) starts.push_back(std::move(s));
    KakutaniPlane best{w, starts.front(), INFINITY, false};
    for (const Vec& s : starts) {
        const SimplexResult r = nelder_mead(objective, s, 0.1, 1500, 1e-15);
        if (r.value < best.defect) {
            best.defect = r.value;
            best.line = r.argmin.normalized();
            best.converged = r.converged;
        }
        if (best.defect == 0.0) break;
    }
    return best;
}

KakutaniReport kakutani_test(const SupportBody& k, const Vec& o, int planes, double tol, int section_samples,
                             std::uint64_t seed) {
    if (!(k.gauge(o) < 1.0)) throw PreconditionViolation("o is not interior to the body");
    KakutaniReport out{true, 0.0, {}};
    for (const Vec& w : sphere_directions(k.dimension(), planes, seed)) {
        KakutaniPlane p = kakutani_plane(k, o, w, section_samples);
        out.worst_defect = std::max(out.worst_defect, p.defect);
        out.passes = out.passes && p.defect <= tol;
        out.planes.push_back(std::move(p));
    }
    return out;
}

ReflectionReport reflection_conjugacy_check(const SupportBody& k, const Vec& o, const Vec& p, const Vec& q,
                                            const Vec& x, const Vec& y, double tol, int graze_count, int planes) {
    const double scale = k.circumradius(o);
    const Hyperplane lambda = intersection_plane(k, p, q, o, planes).plane;
    const Hyperplane h = intersection_plane(k, x, y, o, planes).plane;
    const double slack = std::max(tol, 1e-9) * scale;
    if (std::abs(lambda.signed_distance(x)) > slack || std::abs(lambda.signed_distance(y)) > slack) {
        throw PreconditionViolation("L(x, y) is not contained in the plane of p and q");
    }
    const AffineReflection r(lambda, (p - q).normalized());
    // A null deleter lets the cone refer to the caller's body.
    const BodyPtr body(&k, [](const SupportBody*) {});
    const GrazeSet at_p = graze_sample(SupportCone(body, p), graze_count);
    const GrazeSet at_q = graze_sample(SupportCone(body, q), graze_count);
    auto membership = [&](const Vec& w, const Vec& apex) {
        return std::abs(signed_distance(k, w)) + orthogonality_defect(normals_near(k, w), w - apex);
    };
    double worst = 0.0;
    for (const Vec& w : at_p.points) worst = std::max(worst, membership(r(w), q));
    for (const Vec& w : at_q.points) worst = std::max(worst, membership(r(w), p));
    ReflectionReport out{lambda, h, worst / scale, 0.0, false, false};
    out.defect_ii = std::max(std::abs(h.signed_distance(p)), std::abs(h.signed_distance(q))) / scale;
    out.passes_i = out.defect_i <= tol;
    out.passes_ii = out.defect_ii <= tol;
    return out;
}

}  // namespace sipcone
