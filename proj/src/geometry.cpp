#include "sipcone/geometry.hpp"

#include "sipcone/errors.hpp"

#include <cmath>
#include <string>

namespace sipcone {

void check_dimension(int n) {
    if (n < kMinDimension || n > kMaxDimension) {
        throw InvalidArgument("dimension " + std::to_string(n) + " outside [2, 8]");
    }
}

void check_finite(const Vec& v, const char* what) {
    if (!v.allFinite()) {
        throw InvalidArgument(std::string(what) + " has non-finite coordinates");
    }
}

Hyperplane::Hyperplane(const Vec& normal, double offset) {
    check_finite(normal, "hyperplane normal");
    const double len = normal.norm();
    if (!(len > 0.0) || !std::isfinite(offset)) {
        throw InvalidArgument("hyperplane needs a nonzero normal and finite offset");
    }
    normal_ = normal / len;
    offset_ = offset / len;
}

Hyperplane Hyperplane::through(const Vec& point, const Vec& normal) {
    return Hyperplane(normal, normal.dot(point));
}

bool Hyperplane::contains(const Vec& z, double tol) const {
    return std::abs(signed_distance(z)) <= tol;
}

bool Hyperplane::equals(const Hyperplane& other, double tol) const {
    if (other.dimension() != dimension()) return false;
    const double c = normal_.dot(other.normal_);
    if (std::abs(c) < 1.0 - tol) return false;
    const double sign = c >= 0.0 ? 1.0 : -1.0;
    return std::abs(offset_ - sign * other.offset_) <= tol;
}

AffineReflection::AffineReflection(Hyperplane mirror, const Vec& direction)
    : mirror_(std::move(mirror)) {
    if (direction.size() != mirror_.dimension()) {
        throw InvalidArgument("reflection direction has wrong dimension");
    }
    const double len = direction.norm();
    if (!(len > 0.0)) throw DegenerateReflection("zero reflection direction");
    direction_ = direction / len;
    if (std::abs(mirror_.normal().dot(direction_)) <= 1e-10) {
        throw DegenerateReflection("reflection direction parallel to its mirror");
    }
}

Vec AffineReflection::operator()(const Vec& z) const {
    const double step = mirror_.signed_distance(z) / mirror_.normal().dot(direction_);
    return z - 2.0 * step * direction_;
}

Vec reflect(const AffineReflection& r, const Vec& z) { return r(z); }

namespace {

PlaneFit fit_rows(const Mat& rows, const Vec& centroid, double tol) {
    const Eigen::Index m = rows.rows();
    const Eigen::Index n = rows.cols();
    Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
    const Vec& sv = svd.singularValues();
    // Singular values come sorted descending; with m < n the missing ones are zero.
    auto sigma = [&](Eigen::Index i) { return i < sv.size() ? sv(i) : 0.0; };
    const double top = sigma(0);
    if (!(top > 0.0)) throw RankDeficiency("all points coincide with the origin");
    if (n >= 2 && sigma(n - 2) <= tol * top) {
        throw RankDeficiency("points span fewer than n-1 dimensions");
    }
    Vec normal = svd.matrixV().col(n - 1);
    const double residual = sigma(n - 1) / std::sqrt(static_cast<double>(m));
    return PlaneFit{Hyperplane(normal, normal.dot(centroid)), residual};
}

Mat stack(std::span<const Vec> points) {
    if (points.empty()) throw InsufficientSamples("no points to fit");
    const Eigen::Index n = points.front().size();
    Mat rows(static_cast<Eigen::Index>(points.size()), n);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != n) throw InvalidArgument("mixed point dimensions");
        rows.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    }
    return rows;
}

}  // namespace

PlaneFit fit_hyperplane_through_origin(std::span<const Vec> points, double tol) {
    Mat rows = stack(points);
    if (rows.rows() < rows.cols() - 1) {
        throw InsufficientSamples("need at least n-1 points");
    }
    return fit_rows(rows, Vec::Zero(rows.cols()), tol);
}

PlaneFit fit_hyperplane(std::span<const Vec> points, double tol) {
    Mat rows = stack(points);
    if (rows.rows() < rows.cols()) throw InsufficientSamples("need at least n points");
    const Vec centroid = rows.colwise().mean().transpose();
    rows.rowwise() -= centroid.transpose();
    // Coincident points leave nothing to fit; report them as an exact plane.
    if (rows.norm() == 0.0) throw RankDeficiency("all points coincide");
    return fit_rows(rows, centroid, tol);
}

Mat orthogonal_complement(const Vec& v) {
    const Eigen::Index n = v.size();
    const double len = v.norm();
    if (!(len > 0.0)) throw InvalidArgument("zero vector has no complement");
    const Vec u = v / len;
    // Householder H = I - 2 w w^T / (w^T w) maps e_n to -u (or u); its first
    // n-1 columns are orthonormal and orthogonal to u.
    Vec w = u;
    if (u(n - 1) >= 0.0) {
        w(n - 1) += 1.0;
    } else {
        w(n - 1) -= 1.0;
    }
    const double ww = w.squaredNorm();
    Mat h = Mat::Identity(n, n) - (2.0 / ww) * w * w.transpose();
    Mat basis = h.leftCols(n - 1);
    // Flip signs so the basis matches e_1..e_{n-1} when u = +-e_n.
    for (Eigen::Index j = 0; j < n - 1; ++j) {
        if (basis(j, j) < 0.0) basis.col(j) *= -1.0;
    }
    return basis;
}

Mat orthonormal_basis(const Hyperplane& h) { return orthogonal_complement(h.normal()); }

}  // namespace sipcone
