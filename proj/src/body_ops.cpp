#include "sipcone/body_ops.hpp"

#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace sipcone {

namespace {

double ellipsoid_signed_distance(const Ellipsoid& e, const Vec& z) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(e.shape());
    const Vec lam = eig.eigenvalues();
    const Vec y = eig.eigenvectors().transpose() * (z - e.center());
    const auto n = y.size();
    // Nearest boundary point x_i = y_i / (1 + t lam_i) with sum lam_i x_i^2 = 1.
    auto phi = [&](double t) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double xi = y(i) / (1.0 + t * lam(i));
            s += lam(i) * xi * xi;
        }
        return s - 1.0;
    };
    const double lmax = lam.maxCoeff();
    auto distance_at = [&](double t) {
        double d = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double xi = y(i) / (1.0 + t * lam(i));
            d += (y(i) - xi) * (y(i) - xi);
        }
        return std::sqrt(d);
    };
    const double g = phi(0.0);
    if (g == 0.0) return 0.0;
    if (g > 0.0) {
        double hi = 1.0 / lam.minCoeff();
        while (phi(hi) > 0.0) hi *= 2.0;
        return distance_at(bisect_root(phi, 0.0, hi, 200));
    }
    const double pole = -1.0 / lmax;
    double lo = pole * (1.0 - 1e-15);
    if (phi(lo) > 0.0) {
        double a = pole;
        double b = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (a + b);
            if (m == a || m == b) break;
            if (phi(m) > 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        return -distance_at(0.5 * (a + b));
    }
    // The nearest point leaves the longest-normal axis plane: t sits at the pole.
    double rest = 0.0;
    double d2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lam(i) >= lmax * (1.0 - 1e-14)) continue;
        const double xi = y(i) / (1.0 - lam(i) / lmax);
        rest += lam(i) * xi * xi;
        d2 += (y(i) - xi) * (y(i) - xi);
    }
    double top = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lam(i) >= lmax * (1.0 - 1e-14)) top += y(i) * y(i);
    }
    const double reach = std::sqrt(std::max(0.0, (1.0 - rest) / lmax));
    d2 += (reach - std::sqrt(top)) * (reach - std::sqrt(top));
    return -std::sqrt(d2);
}

double polytope_signed_distance(const Polytope& p, const Vec& z) {
    double worst = -INFINITY;
    for (const Facet& f : p.facets()) worst = std::max(worst, f.normal.dot(z) - f.offset);
    if (worst <= 0.0) return worst;
    std::vector<Vec> shifted;
    shifted.reserve(p.vertices().size());
    for (const Vec& v : p.vertices()) shifted.push_back(v - z);
    return min_norm_point(shifted).norm();
}

double generic_signed_distance(const SupportBody& body, const Vec& z) {
    auto value = [&](const Vec& u) { return u.dot(z) - body.support(u); };
    Vec u;
    double best = -INFINITY;
    for (const Vec& d : probe_directions(body.dimension())) {
        const double v = value(d);
        if (v > best) {
            best = v;
            u = d;
        }
    }
    double step = 1.0;
    for (int it = 0; it < 500 && step > 1e-14; ++it) {
        Vec grad = z - body.support_point(u);
        grad -= grad.dot(u) * u;
        if (grad.norm() <= 1e-15 * (1.0 + z.norm())) break;
        bool improved = false;
        while (step > 1e-14) {
            const Vec cand = (u + step * grad).normalized();
            const double v = value(cand);
            if (v > best) {
                best = v;
                u = cand;
                improved = true;
                step = std::min(1.0, step * 2.0);
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    // The ascent stalls where h is nearly nonsmooth (flat parts of bd K), so
    // refine the nearest boundary point directly, starting from s(u).
    const Vec c = body.interior_point();
    Vec v0 = body.support_point(u) - c;
    if (!(v0.norm() > 0.0)) return best;
    v0.normalize();
    const Mat side = orthogonal_complement(v0);
    auto distance = [&](const Vec& theta) {
        const Vec dir = v0 + side * theta;
        return (boundary_point(body, c, dir) - z).norm();
    };
    const double primal = nelder_mead(distance, Vec::Zero(side.cols()), 0.05, 4000, 1e-16).value;
    if (body.gauge(z) > 1.0) return std::max(best, primal);
    return std::max(best, -primal);
}

}  // namespace

double signed_distance(const SupportBody& body, const Vec& z) {
    if (const auto* e = dynamic_cast<const Ellipsoid*>(&body)) return ellipsoid_signed_distance(*e, z);
    if (const auto* p = dynamic_cast<const Polytope*>(&body)) return polytope_signed_distance(*p, z);
    return generic_signed_distance(body, z);
}

bool contains(const SupportBody& body, const Vec& z, double tol) {
    if (const auto* p = dynamic_cast<const Polytope*>(&body)) {
        for (const Facet& f : p->facets()) {
            if (f.normal.dot(z) - f.offset > tol) return false;
        }
        return true;
    }
    return signed_distance(body, z) <= tol;
}

Vec boundary_point(const SupportBody& body, const Vec& from, const Vec& dir) {
    return from + body.exit_distance(from, dir) * dir;
}

BodyPtr section_through_origin(const BodyPtr& body, const Hyperplane& h) {
    if (std::abs(h.offset()) > 1e-12) throw InvalidArgument("section plane must pass through the origin");
    const int n = body->dimension();
    if (n < 3) throw InvalidArgument("sections need dimension at least 3");
    if (h.dimension() != n) throw InvalidArgument("section plane has wrong dimension");
    if (body->gauge(Vec::Zero(n)) >= 1.0) throw PreconditionViolation("origin is not interior to the body");
    const Mat basis = orthonormal_basis(h);
    if (const auto* e = dynamic_cast<const Ellipsoid*>(body.get())) {
        const Mat m = basis.transpose() * e->shape() * basis;
        const Vec g = basis.transpose() * e->shape() * e->center();
        const Vec v0 = m.ldlt().solve(g);
        const double rho = 1.0 - e->center().dot(e->shape() * e->center()) + v0.dot(m * v0);
        Mat shape = m / rho;
        shape = 0.5 * (shape + shape.transpose());
        return std::make_shared<Ellipsoid>(v0, shape);
    }
    if (const auto* p = dynamic_cast<const Polytope*>(body.get())) {
        const auto& verts = p->vertices();
        std::vector<double> side(verts.size());
        double scale = 0.0;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            side[i] = h.signed_distance(verts[i]);
            scale = std::max(scale, verts[i].norm());
        }
        const double tol = 1e-12 * std::max(1.0, scale);
        std::vector<Vec> cuts;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (std::abs(side[i]) <= tol) cuts.push_back(basis.transpose() * verts[i]);
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                if ((side[i] < -tol && side[j] > tol) || (side[i] > tol && side[j] < -tol)) {
                    const double t = side[i] / (side[i] - side[j]);
                    cuts.push_back(basis.transpose() * (verts[i] + t * (verts[j] - verts[i])));
                }
            }
        }
        return std::make_shared<Polytope>(std::move(cuts));
    }
    return std::make_shared<SectionBody>(body, h);
}

BodyPtr affine_image(const BodyPtr& body, const Mat& linear, const Vec& translation) {
    const int n = body->dimension();
    if (linear.rows() != n || linear.cols() != n || translation.size() != n) {
        throw InvalidArgument("affine map has wrong size");
    }
    Eigen::FullPivLU<Mat> lu(linear);
    if (!lu.isInvertible()) throw InvalidArgument("affine map is singular");
    if (const auto* e = dynamic_cast<const Ellipsoid*>(body.get())) {
        const Mat inv = lu.inverse();
        Mat shape = inv.transpose() * e->shape() * inv;
        shape = 0.5 * (shape + shape.transpose());
        return std::make_shared<Ellipsoid>(linear * e->center() + translation, shape);
    }
    if (const auto* p = dynamic_cast<const Polytope*>(body.get())) {
        std::vector<Vec> pts;
        for (const Vec& v : p->vertices()) pts.push_back(linear * v + translation);
        return std::make_shared<Polytope>(std::move(pts));
    }
    if (const auto* a = dynamic_cast<const AffineImage*>(body.get())) {
        return std::make_shared<AffineImage>(a->base_ptr(), linear * a->linear(), linear * a->translation() + translation);
    }
    return std::make_shared<AffineImage>(body, linear, translation);
}

BodyPtr translated(const BodyPtr& body, const Vec& offset) {
    const int n = body->dimension();
    return affine_image(body, Mat::Identity(n, n), offset);
}

ChordResult diametral_chord(const SupportBody& body, const Vec& direction, const Vec& o, double tol) {
    const Vec d = direction.normalized();
    ChordResult r;
    r.p = boundary_point(body, o, d);
    r.q = boundary_point(body, o, -d);
    std::vector<Vec> gens = body.normal_cone(r.p, tol);
    for (Vec& v : body.normal_cone(r.q, tol)) gens.push_back(std::move(v));
    r.defect = min_norm_point(gens).norm();
    r.diametral = r.defect <= tol;
    return r;
}

bool diametral_chord_test(const SupportBody& body, const Vec& direction, const Vec& o, double tol) {
    return diametral_chord(body, direction, o, tol).diametral;
}

Vec min_norm_point(std::span<const Vec> points) {
    if (points.empty()) throw InvalidArgument("min_norm_point of an empty set");
    // Wolfe's algorithm: maintain a corral S with positive weights whose
    // affine min-norm point is x.
    const auto n = points.front().size();
    double scale = 0.0;
    std::size_t first = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        scale = std::max(scale, points[i].squaredNorm());
        if (points[i].squaredNorm() < points[first].squaredNorm()) first = i;
    }
    if (scale == 0.0) return Vec::Zero(n);
    std::vector<std::size_t> corral{first};
    std::vector<double> weight{1.0};
    Vec x = points[first];
    for (int major = 0; major < 1000; ++major) {
        std::size_t j = 0;
        double lowest = INFINITY;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double v = x.dot(points[i]);
            if (v < lowest) {
                lowest = v;
                j = i;
            }
        }
        if (x.squaredNorm() - lowest <= 1e-14 * scale) break;
        if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
        corral.push_back(j);
        weight.push_back(0.0);
        for (int minor = 0; minor < 1000; ++minor) {
            const auto k = static_cast<Eigen::Index>(corral.size());
            Mat kkt = Mat::Zero(k + 1, k + 1);
            Vec rhs = Vec::Zero(k + 1);
            for (Eigen::Index a = 0; a < k; ++a) {
                for (Eigen::Index b = 0; b < k; ++b) {
                    kkt(a, b) = points[corral[static_cast<std::size_t>(a)]].dot(points[corral[static_cast<std::size_t>(b)]]);
                }
                kkt(a, k) = 1.0;
                kkt(k, a) = 1.0;
            }
            rhs(k) = 1.0;
            const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
            const Vec alpha = sol.head(k);
            if ((alpha.array() > 1e-15).all()) {
                for (Eigen::Index a = 0; a < k; ++a) weight[static_cast<std::size_t>(a)] = alpha(a);
                break;
            }
            double theta = 1.0;
            for (Eigen::Index a = 0; a < k; ++a) {
                const double w = weight[static_cast<std::size_t>(a)];
                if (alpha(a) <= 1e-15 && w - alpha(a) > 0.0) theta = std::min(theta, w / (w - alpha(a)));
            }
            std::vector<std::size_t> next_corral;
            std::vector<double> next_weight;
            for (Eigen::Index a = 0; a < k; ++a) {
                const double w = weight[static_cast<std::size_t>(a)] + theta * (alpha(a) - weight[static_cast<std::size_t>(a)]);
                if (w > 1e-15) {
                    next_corral.push_back(corral[static_cast<std::size_t>(a)]);
                    next_weight.push_back(w);
                }
            }
            if (next_corral.empty()) {
                next_corral.push_back(corral.back());
                next_weight.push_back(1.0);
            }
            corral = std::move(next_corral);
            weight = std::move(next_weight);
        }
        double total = 0.0;
        for (double w : weight) total += w;
        x = Vec::Zero(n);
        for (std::size_t a = 0; a < corral.size(); ++a) x += (weight[a] / total) * points[corral[a]];
    }
    return x;
}

void validate_body(const SupportBody& body, int samples, double tol) {
    const int n = body.dimension();
    check_dimension(n);
    const auto dirs = sphere_directions(n, samples, 0x0ddba11);
    double scale = 0.0;
    for (const Vec& u : dirs) scale = std::max(scale, std::abs(body.support(u)));
    const double t = tol * std::max(1.0, scale);
    for (const Vec& u : dirs) {
        const double h = body.support(u);
        if (!std::isfinite(h)) throw InvalidArgument("support function is not finite");
        if (std::abs(h - u.dot(body.support_point(u))) > t) {
            throw InvalidArgument("support point does not attain the support function");
        }
    }
    for (std::size_t i = 0; i + 1 < dirs.size(); i += 2) {
        const Vec& u = dirs[i];
        const Vec& v = dirs[i + 1];
        if (body.support(u + v) > body.support(u) + body.support(v) + t) {
            throw InvalidArgument("support function is not sublinear");
        }
    }
    const Vec ip = body.interior_point();
    double margin = INFINITY;
    for (const Vec& u : dirs) margin = std::min(margin, body.support(u) - u.dot(ip));
    if (!(margin > t)) throw InvalidArgument("interior point is not strictly interior");
}

}  // namespace sipcone
