#include "sipcone/bodies.hpp"

#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sipcone {

std::string to_string(BodyKind kind) {
    switch (kind) {
        case BodyKind::ellipsoid: return "ellipsoid";
        case BodyKind::polytope: return "polytope";
        case BodyKind::superellipsoid: return "superellipsoid";
        case BodyKind::custom: return "custom";
    }
    return "custom";
}

std::unique_ptr<PlanarSection> SupportBody::planar_section(const PlaneFrame& frame) const {
    return make_generic_section(*this, frame);
}

double SupportBody::exit_distance(const Vec& from, const Vec& dir) const {
    const double len = dir.norm();
    if (!(len > 0.0)) throw InvalidArgument("ray direction is zero");
    if (gauge(from) >= 1.0) throw PreconditionViolation("ray origin is not interior to the body");
    double hi = 1.0 / len;
    for (int i = 0; i < 200 && gauge(from + hi * dir) <= 1.0; ++i) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (gauge(from + mid * dir) <= 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double SupportBody::circumradius(const Vec& about) const {
    // max_{z in K} |z - a| = max_u h(u) - <u, a>; refine the best probe with
    // the farthest-point iteration u <- (s(u) - a) / |s(u) - a|.
    double best = -1.0;
    Vec best_u;
    for (const Vec& u : probe_directions(dimension())) {
        const double v = support(u) - u.dot(about);
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    for (int i = 0; i < 100; ++i) {
        const Vec d = support_point(best_u) - about;
        const double len = d.norm();
        if (len <= best * (1.0 + 1e-15)) break;
        best = len;
        best_u = d / len;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(Vec center, Mat shape) : center_(std::move(center)), shape_(std::move(shape)) {
    const auto n = center_.size();
    check_dimension(static_cast<int>(n));
    check_finite(center_, "ellipsoid center");
    if (shape_.rows() != n || shape_.cols() != n) throw InvalidArgument("ellipsoid shape has wrong size");
    if (!shape_.allFinite()) throw InvalidArgument("ellipsoid shape has non-finite entries");
    const double scale = shape_.cwiseAbs().maxCoeff();
    if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale)) {
        throw InvalidArgument("ellipsoid shape is not symmetric");
    }
    shape_ = 0.5 * (shape_ + shape_.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> eig(shape_);
    if (eig.eigenvalues().minCoeff() <= 0.0) throw InvalidArgument("ellipsoid shape is not positive definite");
    inverse_ = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    inverse_ = 0.5 * (inverse_ + inverse_.transpose());
}

Ellipsoid Ellipsoid::ball(const Vec& center, double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
    const auto n = center.size();
    return Ellipsoid(center, Mat::Identity(n, n) / (radius * radius));
}

Ellipsoid Ellipsoid::scaled(double factor) const {
    if (!(factor > 0.0)) throw InvalidArgument("homothety factor must be positive");
    return Ellipsoid(factor * center_, shape_ / (factor * factor));
}

double Ellipsoid::support(const Vec& u) const {
    return u.dot(center_) + std::sqrt(u.dot(inverse_ * u));
}

Vec Ellipsoid::support_point(const Vec& u) const {
    const Vec w = inverse_ * u;
    return center_ + w / std::sqrt(u.dot(w));
}

double Ellipsoid::gauge(const Vec& z) const {
    const Vec d = z - center_;
    return std::sqrt(std::max(0.0, d.dot(shape_ * d)));
}

std::vector<Vec> Ellipsoid::normal_cone(const Vec& boundary_point, double) const {
    const Vec g = shape_ * (boundary_point - center_);
    const double len = g.norm();
    if (!(len > 0.0)) return {};
    return {g / len};
}

std::unique_ptr<PlanarSection> Ellipsoid::planar_section(const PlaneFrame& frame) const {
    Eigen::Matrix<double, Eigen::Dynamic, 2> e(dimension(), 2);
    e.col(0) = frame.e1;
    e.col(1) = frame.e2;
    const Vec r0 = frame.origin - center_;
    const Eigen::Matrix2d m = e.transpose() * shape_ * e;
    const Eigen::Vector2d g = e.transpose() * (shape_ * r0);
    const double k = r0.dot(shape_ * r0);
    const Eigen::Vector2d w0 = -m.ldlt().solve(g);
    const double rho = 1.0 - k - g.dot(w0);
    if (!(rho > 0.0)) throw PreconditionViolation("plane does not meet the ellipsoid interior");
    return make_ellipse_section(m / rho, w0);
}

double Ellipsoid::exit_distance(const Vec& from, const Vec& dir) const {
    const Vec f = from - center_;
    const Vec ad = shape_ * dir;
    const double a = dir.dot(ad);
    const double b = f.dot(ad);
    const double c = f.dot(shape_ * f) - 1.0;
    if (!(a > 0.0)) throw InvalidArgument("ray direction is zero");
    if (c >= 0.0) throw PreconditionViolation("ray origin is not interior to the ellipsoid");
    const double disc = std::sqrt(b * b - a * c);
    return b > 0.0 ? -c / (b + disc) : (disc - b) / a;
}

double Ellipsoid::circumradius(const Vec& about) const {
    if ((about - center_).norm() == 0.0) {
        Eigen::SelfAdjointEigenSolver<Mat> eig(inverse_);
        return std::sqrt(eig.eigenvalues().maxCoeff());
    }
    return SupportBody::circumradius(about);
}

std::string Ellipsoid::describe() const {
    std::ostringstream os;
    os << "ellipsoid(n=" << dimension() << ")";
    return os.str();
}

double Ellipsoid::cone_quadric(const Vec& apex, const Vec& z) const {
    const Vec xa = shape_ * (apex - center_);
    const Vec zc = z - center_;
    const double cross = zc.dot(xa) - 1.0;
    const double apex_level = (apex - center_).dot(xa) - 1.0;
    const double z_level = zc.dot(shape_ * zc) - 1.0;
    return cross * cross - apex_level * z_level;
}

// ---------------------------------------------------------------------------
// Superellipsoid

Superellipsoid::Superellipsoid(double exponent, Vec semi_axes) : exponent_(exponent), axes_(std::move(semi_axes)) {
    check_dimension(static_cast<int>(axes_.size()));
    if (!std::isfinite(exponent_) || exponent_ < 2.0) throw InvalidArgument("superellipsoid exponent must be finite and >= 2");
    if (!axes_.allFinite() || axes_.minCoeff() <= 0.0) throw InvalidArgument("superellipsoid semi-axes must be positive");
    dual_ = exponent_ / (exponent_ - 1.0);
}

double Superellipsoid::support(const Vec& u) const {
    const Vec w = axes_.cwiseProduct(u).cwiseAbs();
    const double top = w.maxCoeff();
    if (top == 0.0) return 0.0;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) sum += std::pow(w(i) / top, dual_);
    return top * std::pow(sum, 1.0 / dual_);
}

Vec Superellipsoid::support_point(const Vec& u) const {
    const Vec w = axes_.cwiseProduct(u);
    const double norm = support(u);
    Vec s(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const double r = std::abs(w(i)) / norm;
        s(i) = axes_(i) * std::copysign(std::pow(r, dual_ - 1.0), w(i));
    }
    return s;
}

double Superellipsoid::gauge(const Vec& z) const {
    const Vec w = z.cwiseQuotient(axes_).cwiseAbs();
    const double top = w.maxCoeff();
    if (top == 0.0) return 0.0;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) sum += std::pow(w(i) / top, exponent_);
    return top * std::pow(sum, 1.0 / exponent_);
}

std::vector<Vec> Superellipsoid::normal_cone(const Vec& boundary_point, double) const {
    const double scale = gauge(boundary_point);
    if (!(scale > 0.0)) return {};
    Vec g(axes_.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const double r = boundary_point(i) / (scale * axes_(i));
        g(i) = std::copysign(std::pow(std::abs(r), exponent_ - 1.0), r) / axes_(i);
    }
    return {g.normalized()};
}

std::string Superellipsoid::describe() const {
    std::ostringstream os;
    os << "superellipsoid(n=" << dimension() << ", p=" << exponent_ << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Affine image

AffineImage::AffineImage(BodyPtr base, Mat linear, Vec translation)
    : base_(std::move(base)), linear_(std::move(linear)), translation_(std::move(translation)) {
    if (!base_) throw InvalidArgument("affine image of a null body");
    const auto n = base_->dimension();
    if (linear_.rows() != n || linear_.cols() != n || translation_.size() != n) {
        throw InvalidArgument("affine map has wrong dimensions");
    }
    Eigen::FullPivLU<Mat> lu(linear_);
    if (!lu.isInvertible()) throw InvalidArgument("affine map is singular");
    inverse_ = lu.inverse();
}

double AffineImage::support(const Vec& u) const {
    return base_->support(linear_.transpose() * u) + u.dot(translation_);
}

Vec AffineImage::support_point(const Vec& u) const {
    return linear_ * base_->support_point(linear_.transpose() * u) + translation_;
}

Vec AffineImage::interior_point() const { return linear_ * base_->interior_point() + translation_; }

double AffineImage::gauge(const Vec& z) const { return base_->gauge(inverse_ * (z - translation_)); }

std::vector<Vec> AffineImage::normal_cone(const Vec& boundary_point, double tol) const {
    std::vector<Vec> out;
    for (const Vec& g : base_->normal_cone(inverse_ * (boundary_point - translation_), tol)) {
        out.push_back((inverse_.transpose() * g).normalized());
    }
    return out;
}

namespace {

class LinearImageSection final : public PlanarSection {
 public:
    LinearImageSection(std::unique_ptr<PlanarSection> inner, const Eigen::Matrix2d& linear)
        : inner_(std::move(inner)), transpose_(linear.transpose()) {}
    double support(const Eigen::Vector2d& nu) const override { return inner_->support(transpose_ * nu); }

 private:
    std::unique_ptr<PlanarSection> inner_;
    Eigen::Matrix2d transpose_;
};

}  // namespace

std::unique_ptr<PlanarSection> AffineImage::planar_section(const PlaneFrame& frame) const {
    const auto n = dimension();
    Mat dirs(n, 2);
    dirs.col(0) = inverse_ * frame.e1;
    dirs.col(1) = inverse_ * frame.e2;
    Eigen::HouseholderQR<Mat> qr(dirs);
    const Mat q = qr.householderQ() * Mat::Identity(n, 2);
    const Eigen::Matrix2d r = qr.matrixQR().topLeftCorner(2, 2).triangularView<Eigen::Upper>();
    PlaneFrame pre{inverse_ * (frame.origin - translation_), q.col(0), q.col(1)};
    // Image-local w corresponds to preimage-local r * w.
    return std::make_unique<LinearImageSection>(base_->planar_section(pre), r.inverse());
}

std::string AffineImage::describe() const { return "affine(" + base_->describe() + ")"; }

// ---------------------------------------------------------------------------
// Section through the origin

SectionBody::SectionBody(BodyPtr parent, const Hyperplane& plane) : parent_(std::move(parent)), plane_(plane) {
    if (!parent_) throw InvalidArgument("section of a null body");
    if (parent_->dimension() != plane.dimension()) throw InvalidArgument("section plane has wrong dimension");
    if (parent_->dimension() < 3) throw InvalidArgument("section of a planar body would be one-dimensional");
    if (std::abs(plane.offset()) > 1e-12) throw InvalidArgument("section plane must pass through the origin");
    if (parent_->gauge(Vec::Zero(parent_->dimension())) >= 1.0) {
        throw PreconditionViolation("origin is not interior to the body");
    }
    basis_ = orthonormal_basis(plane_);
}

double SectionBody::optimal_shift(const Vec& lifted) const {
    const Vec& n = plane_.normal();
    auto f = [&](double t) { return parent_->support(lifted + t * n); };
    const double scale = std::max(lifted.norm(), 1e-300);
    double t = minimize_convex_line(f, scale).argmin;
    // The value above is accurate; the argmin only to sqrt(eps). Polish it
    // on the derivative <n, s(w + t n)>, which is monotone in t.
    auto slope = [&](double s) { return n.dot(parent_->support_point(lifted + s * n)); };
    double width = 1e-6 * scale;
    for (int i = 0; i < 60; ++i) {
        const double lo = slope(t - width);
        const double hi = slope(t + width);
        if (lo <= 0.0 && hi >= 0.0) {
            if (lo < 0.0 && hi > 0.0) t = bisect_root(slope, t - width, t + width, 200);
            return t;
        }
        width *= 4.0;
    }
    return t;
}

double SectionBody::support(const Vec& u) const {
    const Vec lifted = basis_ * u;
    const double t = optimal_shift(lifted);
    return parent_->support(lifted + t * plane_.normal());
}

Vec SectionBody::support_point(const Vec& u) const {
    const Vec lifted = basis_ * u;
    const double t = optimal_shift(lifted);
    return basis_.transpose() * parent_->support_point(lifted + t * plane_.normal());
}

double SectionBody::gauge(const Vec& z) const { return parent_->gauge(basis_ * z); }

std::vector<Vec> SectionBody::normal_cone(const Vec& boundary_point, double tol) const {
    std::vector<Vec> out;
    for (const Vec& g : parent_->normal_cone(basis_ * boundary_point, tol)) {
        const Vec p = basis_.transpose() * g;
        if (p.norm() > 1e-12) out.push_back(p.normalized());
    }
    return out;
}

std::unique_ptr<PlanarSection> SectionBody::planar_section(const PlaneFrame& frame) const {
    return parent_->planar_section(PlaneFrame{basis_ * frame.origin, basis_ * frame.e1, basis_ * frame.e2});
}

std::string SectionBody::describe() const { return "section(" + parent_->describe() + ")"; }

}  // namespace sipcone
