#include "sipcone/body_ops.hpp"
#include "sipcone/characterize.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <cmath>

namespace sipcone {

HammerResult hammer_test(const SupportBody& k, const Vec& o, int directions, double tol) {
    const int n = k.dimension();
    if (!(k.gauge(o) < 1.0)) throw PreconditionViolation("o is not interior to the body");
    std::vector<Vec> dirs = axis_directions(n);
    for (Vec& v : sphere_directions(n, directions, 0x4a33e5)) dirs.push_back(std::move(v));
    HammerResult out{true, dirs.front(), 0.0};
    for (const Vec& d : dirs) {
        const ChordResult c = diametral_chord(k, d, o, tol);
        if (c.defect > out.worst_defect) {
            out.worst_defect = c.defect;
            out.worst_direction = d;
        }
    }
    out.symmetric = out.worst_defect <= tol;
    return out;
}

SymmetryResult central_symmetry_check(const SupportBody& k, const Vec& o, double tol) {
    const int n = k.dimension();
    if (!(k.gauge(o) < 1.0)) throw PreconditionViolation("o is not interior to the body");
    SymmetryResult out{true, 0.0, Vec::Zero(n)};
    for (const Vec& u : probe_directions(n)) {
        const double defect = std::abs((k.support(u) - u.dot(o)) - (k.support(-u) + u.dot(o)));
        if (defect > out.defect) {
            out.defect = defect;
            out.worst_direction = u;
        }
    }
    out.symmetric = out.defect <= tol;
    return out;
}

ConvexityResult strict_convexity_check(const SupportBody& k, double tol) {
    const int n = k.dimension();
    const double scale = k.circumradius(k.interior_point());
    ConvexityResult out{true, 1.0, Vec::Zero(n), Vec::Zero(n)};
    for (const Vec& u : probe_directions(n)) {
        const Mat side = orthogonal_complement(u);
        for (int j = 0; j < side.cols(); ++j) {
            const Vec p = k.support_point(u + 0.2 * side.col(j));
            const Vec q = k.support_point(u - 0.2 * side.col(j));
            if ((p - q).norm() < 1e-3 * scale) continue;
            const double flat = 1.0 - k.gauge(0.5 * (p + q));
            if (flat < out.flatness) out = ConvexityResult{true, flat, p, q};
        }
    }
    out.strictly_convex = out.flatness > tol;
    return out;
}

}  // namespace sipcone
