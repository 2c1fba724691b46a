#include "sipcone/characterize.hpp"

#include "sipcone/body_ops.hpp"
#include "sipcone/cones.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sipcone {

IntersectionPlane intersection_plane(const SupportBody& k, const Vec& x, const Vec& y, const Vec& o, int planes,
                                     bool through_origin) {
    std::vector<Vec> pts = cone_pair_intersection(k, x, y, o, planes);
    if (through_origin) {
        std::vector<Vec> rel;
        rel.reserve(pts.size());
        for (const Vec& p : pts) rel.push_back(p - o);
        const PlaneFit fit = fit_hyperplane_through_origin(rel);
        const Vec& n = fit.plane.normal();
        double worst = 0.0;
        for (const Vec& r : rel) worst = std::max(worst, std::abs(n.dot(r)));
        return IntersectionPlane{std::move(pts), Hyperplane(n, n.dot(o)), worst, fit.residual};
    }
    const PlaneFit fit = fit_hyperplane(pts);
    double worst = 0.0;
    for (const Vec& p : pts) worst = std::max(worst, std::abs(fit.plane.signed_distance(p)));
    return IntersectionPlane{std::move(pts), fit.plane, worst, fit.residual};
}

std::string to_string(E3Regime regime) {
    switch (regime) {
        case E3Regime::equal: return "equal";
        case E3Regime::e3_inside_e2: return "E3-inside-E2";
        case E3Regime::e2_inside_e3: return "E2-inside-E3";
    }
    return "equal";
}

double e3_ratio(double lambda) {
    if (!(lambda > 1.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be a finite number above 1");
    return lambda / std::sqrt(lambda * lambda - 1.0);
}

E3Result construct_e3(const Ellipsoid& e1, double lambda) {
    const double mu = e3_ratio(lambda);
    if (e1.center().norm() > 1e-12) throw PreconditionViolation("E1 must be centered at the origin");
    E3Regime regime = E3Regime::equal;
    if (std::abs(lambda - std::numbers::sqrt2) > 1e-12) {
        regime = lambda > std::numbers::sqrt2 ? E3Regime::e3_inside_e2 : E3Regime::e2_inside_e3;
    }
    return E3Result{e1.scaled(mu), mu, regime};
}

E3Certificate certify_e3(const Ellipsoid& e1, double lambda, int samples, int planes, std::uint64_t seed) {
    const E3Result e3 = construct_e3(e1, lambda);
    const Ellipsoid e2 = e1.scaled(lambda);
    const int n = e1.dimension();
    const Vec o = Vec::Zero(n);
    E3Certificate out{0.0, 0.0, 0};
    for (const Vec& u : sphere_directions(n, samples, seed)) {
        const Vec x = boundary_point(e2, o, u);
        for (const Vec& z : cone_pair_intersection(e1, x, -x, o, planes)) {
            out.e3_defect = std::max(out.e3_defect, std::abs(e3.e3.gauge(z) - 1.0));
            out.e2_defect = std::max(out.e2_defect, std::abs(e2.gauge(z) - 1.0));
            ++out.points;
        }
    }
    return out;
}

Theorem1Report verify_theorem1(const Ellipsoid& e, const StarSurface& s, int samples, int planes, double tol,
                               std::uint64_t seed) {
    const int n = e.dimension();
    if (s.dimension() != n) throw InvalidArgument("star surface has wrong dimension");
    if (e.center().norm() > 1e-12) throw PreconditionViolation("ellipsoid must be centered at the origin");
    const Vec o = Vec::Zero(n);
    const Enclosure enclosure(s);
    require_enclosed(e, enclosure, o, 0.0, "star surface does not enclose the ellipsoid");
    const double radius = e.circumradius(o);
    Theorem1Report report{0.0, 0.0, 0, {}, {}, false};
    for (const Vec& u : sphere_directions(n, samples, seed)) {
        const Vec x = s.point(u);
        const Vec y = s.antipode(x);
        const IntersectionPlane through = intersection_plane(e, x, y, o, planes, true);
        const IntersectionPlane free = intersection_plane(e, x, y, o, planes, false);
        report.residuals.push_back(through.max_residual / radius);
        report.affine_residuals.push_back(free.max_residual / radius);
        report.max_residual = std::max(report.max_residual, report.residuals.back());
        report.max_affine_residual = std::max(report.max_affine_residual, report.affine_residuals.back());
        ++report.samples;
    }
    report.verdict = report.max_residual <= tol;
    return report;
}

void validate_scene(const SipScene& scene) {
    if (!scene.k || !scene.g) throw InvalidArgument("scene bodies must be set");
    const int n = scene.k->dimension();
    if (scene.g->dimension() != n || scene.s.dimension() != n || scene.origin.size() != n) {
        throw InvalidArgument("scene members have different dimensions");
    }
    if (!(scene.k->gauge(scene.origin) < 1.0)) throw PreconditionViolation("origin is not interior to K");
    double gap = -INFINITY;
    for (const Vec& u : probe_directions(n)) gap = std::max(gap, scene.k->support(u) - scene.g->support(u));
    if (!(gap < 0.0)) {
        std::ostringstream os;
        os << "K is not interior to G (support gap " << gap << ")";
        throw ContainmentViolation(os.str());
    }
    require_enclosed(*scene.g, scene.s, scene.origin, 0.0, "G is not interior to S");
}

SipReport sip_check(const SipScene& scene, const SipOptions& options) {
    validate_scene(scene);
    if (options.samples < 1 || options.planes < 4) throw InvalidArgument("sip_check needs samples >= 1 and planes >= 4");
    const int n = scene.k->dimension();
    const Vec& o = scene.origin;
    const Enclosure g_surface(scene.g);
    const Enclosure& source = options.swapped ? g_surface : scene.s;
    const Enclosure& target = options.swapped ? scene.s : g_surface;

    SipReport report{};
    report.swapped = options.swapped;
    report.scale = scene.k->circumradius(o);
    double sum_cop = 0.0;
    double sum_match = 0.0;
    for (const Vec& u : sphere_directions(n, options.samples, options.seed)) {
        const Vec x = source.point(o, u);
        const Vec y = source.antipode(o, x);
        IntersectionPlane ip = intersection_plane(*scene.k, x, y, o, options.planes, true);
        double forward = 0.0;
        for (const Vec& z : ip.points) forward = std::max(forward, std::abs(target.defect(o, z)));
        const Vec axis = (x - y).normalized();
        double reverse = 0.0;
        for (const Vec& dir : span_directions(orthonormal_basis(ip.plane), options.planes)) {
            const Vec w = target.point(o, dir);
            const Vec side = w - o;
            if ((side - side.dot(axis) * axis).norm() <= 1e-9 * side.norm()) continue;
            const Vec z = cone_pair_point(*scene.k, x, y, o, side)[0];
            reverse = std::max(reverse, (w - z).norm());
        }
        SipRecord rec{x, y, ip.plane, ip.max_residual, forward, reverse, std::max(forward, reverse)};
        report.max_coplanarity = std::max(report.max_coplanarity, rec.coplanarity);
        report.max_g_match = std::max(report.max_g_match, rec.g_match);
        sum_cop += rec.coplanarity;
        sum_match += rec.g_match;
        report.records.push_back(std::move(rec));
    }
    const double count = static_cast<double>(report.records.size());
    report.mean_coplanarity = sum_cop / count;
    report.mean_g_match = sum_match / count;
    const double limit = options.tol * report.scale;
    report.verdict = report.max_coplanarity <= limit && report.max_g_match <= limit;
    return report;
}

DeviationResult deviation_metric(const SupportBody& k, const Enclosure& s, const Vec& o, int samples, int planes,
                                 bool through_origin, std::uint64_t seed) {
    const int n = k.dimension();
    if (!(k.gauge(o) < 1.0)) throw PreconditionViolation("origin is not interior to K");
    require_enclosed(k, s, o, 0.0, "surface does not enclose K");
    const double radius = k.circumradius(o);
    DeviationResult out{0.0, Vec(), {}};
    for (const Vec& u : sphere_directions(n, samples, seed)) {
        const Vec x = s.point(o, u);
        const Vec y = s.antipode(o, x);
        const double r = intersection_plane(k, x, y, o, planes, through_origin).max_residual / radius;
        out.residuals.push_back(r);
        if (out.worst_x.size() == 0 || r > out.value) {
            out.value = r;
            out.worst_x = x;
        }
    }
    return out;
}

}  // namespace sipcone
