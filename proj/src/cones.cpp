#include "sipcone/cones.hpp"

#include "sipcone/body_ops.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sipcone {

namespace {

constexpr int kTangencyIterations = 80;

// Radius of a box around the interior point that contains the body.
double box_radius(const SupportBody& k, const Vec& ip) {
    double r2 = 0.0;
    for (int i = 0; i < k.dimension(); ++i) {
        Vec e = Vec::Zero(k.dimension());
        e(i) = 1.0;
        const double w = std::max(k.support(e) - ip(i), k.support(-e) + ip(i));
        r2 += w * w;
    }
    return std::sqrt(r2);
}

Eigen::Vector2d rotate(const Eigen::Vector2d& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v(0) - s * v(1), s * v(0) + c * v(1)};
}

std::vector<Vec> sweep_directions(const Mat& basis, int count) {
    // Half-circle (or half-sphere-like sample) of unit vectors in span(basis).
    std::vector<Vec> out;
    const auto m = basis.cols();
    if (m == 1) {
        out.push_back(basis.col(0));
        return out;
    }
    if (m == 2) {
        for (int i = 0; i < count; ++i) {
            const double a = std::numbers::pi * i / count;
            out.push_back(std::cos(a) * basis.col(0) + std::sin(a) * basis.col(1));
        }
        return out;
    }
    for (const Vec& v : sphere_directions(static_cast<int>(m), count, 0x5a3e9)) out.push_back(basis * v);
    return out;
}

}  // namespace

SupportCone::SupportCone(BodyPtr body, Vec apex) : body_(std::move(body)), apex_(std::move(apex)) {
    if (!body_) throw InvalidArgument("cone body is null");
    if (apex_.size() != body_->dimension()) throw InvalidArgument("apex has wrong dimension");
    check_finite(apex_, "cone apex");
    if (!(body_->gauge(apex_) > 1.0 + 1e-12)) throw ApexInsideBody("cone apex is not outside the body");
}

bool cone_contains(const SupportCone& cone, const Vec& z, double tol) {
    const SupportBody& k = cone.body();
    const Vec& x = cone.apex();
    if (z.size() != x.size()) throw InvalidArgument("point has wrong dimension");
    const Vec d = z - x;
    if (d.norm() == 0.0) return true;
    if (const auto* e = dynamic_cast<const Ellipsoid*>(&k)) {
        const Vec xc = x - e->center();
        const Vec zc = z - e->center();
        const double kx = xc.dot(e->shape() * xc);
        const double lz = zc.dot(e->shape() * xc);
        const double gz = zc.dot(e->shape() * zc);
        if (lz > kx + tol * std::max(1.0, kx)) return false;
        const double q = e->cone_quadric(x, z);
        const double scale = (lz - 1.0) * (lz - 1.0) + (kx - 1.0) * std::abs(gz - 1.0) + 1.0;
        return q >= -tol * scale;
    }
    if (const auto* p = dynamic_cast<const Polytope*>(&k)) {
        double lo = 0.0;
        double hi = INFINITY;
        for (const Facet& f : p->facets()) {
            const double a = f.normal.dot(d);
            const double slack = f.offset + tol - f.normal.dot(x);
            if (a > 0.0) {
                hi = std::min(hi, slack / a);
            } else if (a < 0.0) {
                lo = std::max(lo, slack / a);
            } else if (slack < 0.0) {
                return false;
            }
        }
        return lo <= hi;
    }
    const Vec ip = k.interior_point();
    const double reach = (ip - x).norm() + 2.0 * box_radius(k, ip);
    const Vec u = d / d.norm();
    const LineMinimum m = minimize_on_interval([&](double t) { return k.gauge(x + t * u); }, 0.0, reach);
    return m.value <= 1.0 + tol;
}

double cone_boundary_defect(const SupportCone& cone, const Vec& z) {
    const SupportBody& k = cone.body();
    const Vec& x = cone.apex();
    const Vec d = z - x;
    if (!(d.norm() > 0.0)) throw InvalidArgument("point coincides with the apex");
    const Vec u = d / d.norm();
    const Vec ip = k.interior_point();
    const double reach = (ip - x).norm() + 2.0 * box_radius(k, ip);
    auto f = [&](double t) { return signed_distance(k, x + t * u); };
    const LineMinimum m = minimize_on_interval(f, 0.0, reach);
    // Brent stops at half precision in t; the signed distance is convex, so
    // a golden-section pass around its answer recovers the kinks of
    // polyhedral bodies.
    double lo = std::max(0.0, m.argmin - 1e-6 * reach);
    double hi = std::min(reach, m.argmin + 1e-6 * reach);
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - ratio * (hi - lo);
    double b = lo + ratio * (hi - lo);
    double fa = f(a);
    double fb = f(b);
    for (int i = 0; i < 40; ++i) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = f(b);
        }
    }
    return std::min({m.value, fa, fb});
}

GrazeSet graze_sample(const SupportCone& cone, int count) {
    if (count < 1) throw InvalidArgument("graze sample count must be positive");
    const SupportBody& k = cone.body();
    const Vec& x = cone.apex();
    const int n = k.dimension();
    const Vec ip = k.interior_point();
    const Vec ahat = (x - ip).normalized();
    const Vec exit = boundary_point(k, ip, ahat);
    Vec c = Vec::Zero(n);
    for (const Vec& g : k.normal_cone(exit, 1e-9)) c += g;
    if (c.dot(ahat) <= 0.0) c = ahat;
    c.normalize();
    auto g = [&](const Vec& u) { return u.dot(x) - k.support(u); };
    if (!(g(c) > 0.0)) throw TangencyFailure("central normal does not separate the apex", 0.0);

    const Mat perp = orthogonal_complement(c);
    std::vector<Vec> dirs;
    if (n == 2) {
        dirs = {Vec(perp.col(0)), Vec(-perp.col(0))};
    } else if (n == 3) {
        for (int i = 0; i < count; ++i) {
            const double a = 2.0 * std::numbers::pi * i / count;
            dirs.push_back(std::cos(a) * perp.col(0) + std::sin(a) * perp.col(1));
        }
    } else {
        for (const Vec& v : sphere_directions(n - 1, count, 0x67a2e)) dirs.push_back(perp * v);
    }

    GrazeSet out;
    for (const Vec& e : dirs) {
        auto along = [&](double t) { return Vec(std::cos(t) * c + std::sin(t) * e); };
        const double t = bisect_root([&](double s) { return g(along(s)); }, 0.0, std::numbers::pi, kTangencyIterations);
        out.points.push_back(k.support_point(along(t)));
    }
    try {
        const PlaneFit fit = fit_hyperplane(out.points);
        double scale = 0.0;
        for (const Vec& p : out.points) scale = std::max(scale, (p - ip).norm());
        out.carrier_residual = fit.residual;
        if (fit.residual <= 1e-9 * std::max(1.0, scale)) out.carrier = fit.plane;
    } catch (const GeometryError&) {
        out.carrier_residual = INFINITY;
    }
    return out;
}

PolarPlane polar_hyperplane(const Ellipsoid& e, const Vec& x) {
    const Vec xc = x - e.center();
    const Vec normal = e.shape() * xc;
    if (!(normal.norm() > 0.0)) throw InvalidArgument("pole at the center has no polar hyperplane");
    return PolarPlane{Hyperplane(normal, 1.0 + normal.dot(e.center())), xc.dot(normal) <= 1.0};
}

TangentLines tangent_lines(const PlanarSection& section, const Eigen::Vector2d& apex, const Eigen::Vector2d& interior,
                           double sweep_angle) {
    const Eigen::Vector2d offset = apex - interior;
    const double dist = offset.norm();
    if (!(dist > 0.0)) throw TangencyFailure("apex coincides with the interior point", sweep_angle);
    const Eigen::Vector2d a = offset / dist;
    const Eigen::Vector2d perp(-a(1), a(0));
    const LineMinimum exit = minimize_convex_line(
        [&](double s) {
            const Eigen::Vector2d nu = a + s * perp;
            return section.support(nu) - nu.dot(interior);
        },
        1.0);
    const Eigen::Vector2d nu0 = (a + exit.argmin * perp).normalized();
    auto g = [&](double psi) {
        const Eigen::Vector2d nu = rotate(nu0, psi);
        return nu.dot(apex) - section.support(nu);
    };
    if (!(g(0.0) > 0.0)) throw TangencyFailure("apex is not outside the planar section", sweep_angle);
    if (!(g(std::numbers::pi) < 0.0)) throw TangencyFailure("no tangent bracket in the planar section", sweep_angle);
    const double plus = bisect_root(g, 0.0, std::numbers::pi, kTangencyIterations);
    const double minus = bisect_root(g, 0.0, -std::numbers::pi, kTangencyIterations);
    return TangentLines{rotate(nu0, plus), rotate(nu0, minus)};
}

namespace {

Eigen::Vector2d meet(const Eigen::Vector2d& n1, double c1, const Eigen::Vector2d& n2, double c2, double sweep_angle) {
    Eigen::Matrix2d m;
    m << n1(0), n1(1), n2(0), n2(1);
    const double det = m.determinant();
    if (std::abs(det) <= 1e-14) throw TangencyFailure("tangent lines are parallel", sweep_angle);
    return m.inverse() * Eigen::Vector2d(c1, c2);
}

void check_pair(const SupportBody& k, const Vec& x, const Vec& y, const Vec& o, double tol) {
    const int n = k.dimension();
    if (x.size() != n || y.size() != n || o.size() != n) throw InvalidArgument("point has wrong dimension");
    if (!(k.gauge(x) > 1.0)) throw ApexInsideBody("x is not outside the body");
    if (!(k.gauge(y) > 1.0)) throw ApexInsideBody("y is not outside the body");
    if (!(k.gauge(o) < 1.0)) throw PreconditionViolation("o is not interior to the body");
    const Vec d = x - y;
    const double len = d.norm();
    const double t = (o - y).dot(d) / (len * len);
    const double off = (o - y - t * d).norm();
    if (off > tol * std::max(1.0, len) || t <= 0.0 || t >= 1.0) {
        std::ostringstream os;
        os << "o is not on the segment [x, y] (offset " << off << ", parameter " << t << ")";
        throw CollinearityViolation(os.str());
    }
}

std::array<Vec, 2> pair_in_plane(const SupportBody& k, const Vec& x, const Vec& y, const PlaneFrame& frame,
                                 double sweep_angle) {
    const auto section = k.planar_section(frame);
    const Eigen::Vector2d origin(0.0, 0.0);
    const Eigen::Vector2d xl = frame.local(x);
    const Eigen::Vector2d yl = frame.local(y);
    const TangentLines tx = tangent_lines(*section, xl, origin, sweep_angle);
    const TangentLines ty = tangent_lines(*section, yl, origin, sweep_angle);
    const Eigen::Vector2d upper = meet(tx.plus, tx.plus.dot(xl), ty.minus, ty.minus.dot(yl), sweep_angle);
    const Eigen::Vector2d lower = meet(tx.minus, tx.minus.dot(xl), ty.plus, ty.plus.dot(yl), sweep_angle);
    return {frame.lift(upper), frame.lift(lower)};
}

}  // namespace

std::array<Vec, 2> cone_pair_point(const SupportBody& k, const Vec& x, const Vec& y, const Vec& o, const Vec& side,
                                   double sweep_angle) {
    const Vec d = (x - y).normalized();
    Vec e2 = side - side.dot(d) * d;
    if (!(e2.norm() > 1e-12 * std::max(1.0, side.norm()))) throw InvalidArgument("side direction is parallel to the axis");
    e2.normalize();
    return pair_in_plane(k, x, y, PlaneFrame{o, d, e2}, sweep_angle);
}

std::vector<Vec> cone_pair_intersection(const SupportBody& k, const Vec& x, const Vec& y, const Vec& o, int planes,
                                        double tol) {
    if (planes < 1) throw InvalidArgument("plane count must be positive");
    check_pair(k, x, y, o, tol);
    const Vec d = (x - y).normalized();
    const Mat perp = orthogonal_complement(d);
    const std::vector<Vec> sides = sweep_directions(perp, planes);
    std::vector<Vec> upper;
    std::vector<Vec> lower;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const double angle = std::numbers::pi * static_cast<double>(i) / static_cast<double>(sides.size());
        auto pts = pair_in_plane(k, x, y, PlaneFrame{o, d, sides[i]}, angle);
        for (int j = 0; j < 2; ++j) {
            if (!(k.gauge(pts[static_cast<std::size_t>(j)]) > 1.0)) {
                throw TangencyFailure("cone pair point is not outside the body", angle);
            }
        }
        upper.push_back(std::move(pts[0]));
        lower.push_back(std::move(pts[1]));
    }
    for (Vec& p : lower) upper.push_back(std::move(p));
    return upper;
}

QuadricFit fit_cone_section(const SupportCone& cone, const Hyperplane& cut, int directions) {
    const SupportBody& k = cone.body();
    const Vec& x = cone.apex();
    const int n = k.dimension();
    const Vec& nc = cut.normal();
    const double apex_side = cut.signed_distance(x);
    if (apex_side == 0.0) throw PreconditionViolation("cut plane passes through the apex");
    // Every generator must cross the cut: K lies strictly beyond the plane
    // through the apex parallel to the cut.
    const Vec toward_apex = apex_side > 0.0 ? Vec(nc) : Vec(-nc);
    if (!(k.support(toward_apex) < toward_apex.dot(x))) {
        throw PreconditionViolation("cut plane does not meet every generator of the cone");
    }
    const Vec ip = k.interior_point();
    const Vec e1 = (x - ip).normalized();
    const double t = (cut.offset() - nc.dot(ip)) / nc.dot(e1);
    const Vec m = ip + t * e1;
    const Mat basis = orthonormal_basis(cut);

    std::vector<Vec> local;
    const std::vector<Vec> dirs = sweep_directions(basis, directions);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double angle = std::numbers::pi * static_cast<double>(i) / static_cast<double>(dirs.size());
        Vec e2 = dirs[i] - dirs[i].dot(e1) * e1;
        if (!(e2.norm() > 1e-9)) continue;
        e2.normalize();
        const PlaneFrame frame{ip, e1, e2};
        const auto section = k.planar_section(frame);
        const Eigen::Vector2d xl = frame.local(x);
        const TangentLines tl = tangent_lines(*section, xl, Eigen::Vector2d::Zero(), angle);
        const Eigen::Vector2d cut_normal(nc.dot(e1), nc.dot(e2));
        const double cut_offset = cut.offset() - nc.dot(ip);
        for (const Eigen::Vector2d& nu : {tl.plus, tl.minus}) {
            const Eigen::Vector2d w = meet(nu, nu.dot(xl), cut_normal, cut_offset, angle);
            local.push_back(basis.transpose() * (frame.lift(w) - m));
        }
    }

    const int dim = n - 1;
    const int features = dim * (dim + 1) / 2 + dim + 1;
    if (static_cast<int>(local.size()) < features + 1) throw InsufficientSamples("too few cone section samples for a quadric fit");
    double rms = 0.0;
    for (const Vec& q : local) rms += q.squaredNorm();
    rms = std::sqrt(rms / static_cast<double>(local.size()));
    if (!(rms > 0.0)) throw InsufficientSamples("cone section samples are degenerate");

    Mat design(static_cast<Eigen::Index>(local.size()), features);
    for (std::size_t r = 0; r < local.size(); ++r) {
        const Vec q = local[r] / rms;
        int col = 0;
        for (int i = 0; i < dim; ++i) {
            for (int j = i; j < dim; ++j) design(static_cast<Eigen::Index>(r), col++) = q(i) * q(j);
        }
        for (int i = 0; i < dim; ++i) design(static_cast<Eigen::Index>(r), col++) = q(i);
        design(static_cast<Eigen::Index>(r), col) = 1.0;
    }
    Eigen::JacobiSVD<Mat> svd(design, Eigen::ComputeThinV);
    const Vec coef = svd.matrixV().col(features - 1);
    Mat quad = Mat::Zero(dim, dim);
    Vec lin(dim);
    int col = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            const double c = coef(col++);
            if (i == j) {
                quad(i, i) = c;
            } else {
                quad(i, j) = 0.5 * c;
                quad(j, i) = 0.5 * c;
            }
        }
    }
    for (int i = 0; i < dim; ++i) lin(i) = coef(col++);
    double constant = coef(col);

    QuadricFit fit{false, false, INFINITY, local.size()};
    Eigen::SelfAdjointEigenSolver<Mat> eig(quad);
    double lo = eig.eigenvalues().minCoeff();
    double hi = eig.eigenvalues().maxCoeff();
    if (hi <= 0.0) {
        quad = -quad;
        lin = -lin;
        constant = -constant;
        std::swap(lo, hi);
        lo = -lo;
        hi = -hi;
    }
    fit.definite = lo > 1e-9 * hi;
    if (!fit.definite) return fit;
    const Vec center = -0.5 * quad.ldlt().solve(lin);
    const double rho = center.dot(quad * center) - constant;
    if (!(rho > 0.0)) {
        fit.definite = false;
        return fit;
    }
    const Mat shape = quad / rho;
    double worst = 0.0;
    for (const Vec& q : local) {
        const Vec r = q / rms - center;
        worst = std::max(worst, std::abs(std::sqrt(r.dot(shape * r)) - 1.0));
    }
    fit.residual = worst;
    fit.ellipsoidal = true;
    return fit;
}

bool is_ellipsoidal_cone(const SupportCone& cone, const Hyperplane& cut, double tol, int directions) {
    const QuadricFit fit = fit_cone_section(cone, cut, directions);
    return fit.ellipsoidal && fit.residual <= tol;
}

}  // namespace sipcone
