#include "sipcone/bodies.hpp"
#include "sipcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace sipcone {

namespace {

double binomial(int m, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
}

// Visits every k-subset of {0..m-1} in lexicographic order.
void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

std::vector<Facet> enumerate_facets(const std::vector<Vec>& pts, int n, double tol) {
    const int m = static_cast<int>(pts.size());
    if (binomial(m, n) > 5e6) throw InvalidArgument("polytope too large for brute-force facet enumeration");
    std::vector<Facet> facets;
    Mat diffs(n - 1, n);
    for_each_subset(m, n, [&](const std::vector<int>& idx) {
        const Vec& base = pts[static_cast<std::size_t>(idx[0])];
        for (int r = 1; r < n; ++r) diffs.row(r - 1) = (pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])] - base).transpose();
        Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeFullV);
        const Vec& sv = svd.singularValues();
        if (sv(n - 2) <= 1e-9 * std::max(1.0, sv(0))) return;
        Vec normal = svd.matrixV().col(n - 1);
        double offset = normal.dot(base);
        double above = -INFINITY;
        double below = INFINITY;
        for (const Vec& p : pts) {
            const double s = normal.dot(p) - offset;
            above = std::max(above, s);
            below = std::min(below, s);
        }
        if (above > tol && below < -tol) return;
        if (above > tol) {
            normal = -normal;
            offset = -offset;
        }
        for (const Facet& f : facets) {
            if (f.normal.dot(normal) > 1.0 - 1e-9 && std::abs(f.offset - offset) <= tol) return;
        }
        facets.push_back(Facet{normal, offset});
    });
    return facets;
}

}  // namespace

Polytope::Polytope(std::vector<Vec> points) {
    if (points.empty()) throw InvalidArgument("polytope needs vertices");
    dimension_ = static_cast<int>(points.front().size());
    check_dimension(dimension_);
    for (const Vec& p : points) {
        if (p.size() != dimension_) throw InvalidArgument("polytope vertices have mixed dimensions");
        check_finite(p, "polytope vertex");
    }
    Vec mean = Vec::Zero(dimension_);
    for (const Vec& p : points) mean += p;
    mean /= static_cast<double>(points.size());
    double spread = 0.0;
    for (const Vec& p : points) spread = std::max(spread, (p - mean).norm());
    const double tol = 1e-10 * std::max(1.0, spread);

    std::vector<Vec> unique;
    for (Vec& p : points) {
        const bool dup = std::any_of(unique.begin(), unique.end(), [&](const Vec& q) { return (q - p).norm() <= tol; });
        if (!dup) unique.push_back(std::move(p));
    }
    if (static_cast<int>(unique.size()) <= dimension_) throw InvalidArgument("polytope is not full-dimensional");
    Mat centered(static_cast<Eigen::Index>(unique.size()), dimension_);
    for (std::size_t i = 0; i < unique.size(); ++i) centered.row(static_cast<Eigen::Index>(i)) = (unique[i] - mean).transpose();
    Eigen::JacobiSVD<Mat> rank_check(centered);
    if (rank_check.singularValues()(dimension_ - 1) <= 1e-9 * std::max(1.0, rank_check.singularValues()(0))) {
        throw InvalidArgument("polytope is not full-dimensional");
    }

    facets_ = enumerate_facets(unique, dimension_, tol);
    // Keep only extreme points: a vertex lies on facets whose normals span R^n.
    for (const Vec& p : unique) {
        std::vector<Vec> active;
        for (const Facet& f : facets_) {
            if (std::abs(f.normal.dot(p) - f.offset) <= tol) active.push_back(f.normal);
        }
        if (static_cast<int>(active.size()) < dimension_) continue;
        Mat a(static_cast<Eigen::Index>(active.size()), dimension_);
        for (std::size_t i = 0; i < active.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = active[i].transpose();
        Eigen::FullPivLU<Mat> lu(a);
        lu.setThreshold(1e-9);
        if (lu.rank() == dimension_) vertices_.push_back(p);
    }
    centroid_ = Vec::Zero(dimension_);
    for (const Vec& v : vertices_) centroid_ += v;
    centroid_ /= static_cast<double>(vertices_.size());
    scale_ = 0.0;
    for (const Vec& v : vertices_) scale_ = std::max(scale_, (v - centroid_).norm());
}

double Polytope::support(const Vec& u) const {
    double best = -INFINITY;
    for (const Vec& v : vertices_) best = std::max(best, u.dot(v));
    return best;
}

Vec Polytope::support_point(const Vec& u) const {
    std::size_t best = 0;
    double value = -INFINITY;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const double s = u.dot(vertices_[i]);
        if (s > value) {
            value = s;
            best = i;
        }
    }
    return vertices_[best];
}

double Polytope::gauge(const Vec& z) const {
    double g = -INFINITY;
    for (const Facet& f : facets_) {
        g = std::max(g, f.normal.dot(z - centroid_) / (f.offset - f.normal.dot(centroid_)));
    }
    return std::max(g, 0.0);
}

std::vector<Vec> Polytope::normal_cone(const Vec& boundary_point, double tol) const {
    std::vector<Vec> out;
    const double t = tol * std::max(1.0, scale_);
    for (const Facet& f : facets_) {
        if (std::abs(f.normal.dot(boundary_point) - f.offset) <= t) out.push_back(f.normal);
    }
    return out;
}

std::unique_ptr<PlanarSection> Polytope::planar_section(const PlaneFrame& frame) const {
    if (dimension_ != 3) return SupportBody::planar_section(frame);
    const Eigen::Vector3d e1 = frame.e1;
    const Eigen::Vector3d e2 = frame.e2;
    const Vec normal = Eigen::Vector3d(e1.cross(e2)).normalized();
    const double offset = normal.dot(frame.origin);
    const double tol = 1e-12 * std::max(1.0, scale_);
    std::vector<double> side(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) side[i] = normal.dot(vertices_[i]) - offset;
    std::vector<Eigen::Vector2d> pts;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (std::abs(side[i]) <= tol) pts.push_back(frame.local(vertices_[i]));
        for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
            if ((side[i] < -tol && side[j] > tol) || (side[i] > tol && side[j] < -tol)) {
                const double t = side[i] / (side[i] - side[j]);
                pts.push_back(frame.local(vertices_[i] + t * (vertices_[j] - vertices_[i])));
            }
        }
    }
    if (pts.size() < 3) throw PreconditionViolation("plane does not meet the polytope interior");
    return make_point_hull_section(std::move(pts));
}

double Polytope::circumradius(const Vec& about) const {
    double r = 0.0;
    for (const Vec& v : vertices_) r = std::max(r, (v - about).norm());
    return r;
}

std::string Polytope::describe() const {
    std::ostringstream os;
    os << "polytope(n=" << dimension_ << ", vertices=" << vertices_.size() << ", facets=" << facets_.size() << ")";
    return os.str();
}

}  // namespace sipcone
