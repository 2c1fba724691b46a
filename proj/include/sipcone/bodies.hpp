#pragma once

#include "sipcone/geometry.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sipcone {

enum class BodyKind { ellipsoid, polytope, superellipsoid, custom };

std::string to_string(BodyKind kind);

/// Affine 2-plane {origin + w1 e1 + w2 e2} with orthonormal e1, e2.
struct PlaneFrame {
    Vec origin;
    Vec e1;
    Vec e2;

    Vec lift(const Eigen::Vector2d& w) const { return origin + w(0) * e1 + w(1) * e2; }
    Vec lift_direction(const Eigen::Vector2d& w) const { return w(0) * e1 + w(1) * e2; }
    Eigen::Vector2d local(const Vec& z) const {
        const Vec d = z - origin;
        return {e1.dot(d), e2.dot(d)};
    }
};

/// A body cut by a 2-plane, seen in the plane's own coordinates. Only the
/// support function is exposed; it is positively homogeneous.
class PlanarSection {
 public:
    virtual ~PlanarSection() = default;
    virtual double support(const Eigen::Vector2d& nu) const = 0;
};

/// Convex body given by its support function h(u) = max_{z in K} <u, z>.
///
/// Every oracle accepts any nonzero direction (h is extended
/// homogeneously), so callers need not normalize. Besides h and its
/// maximizer s(u), bodies expose a convex "gauge" with K = {gauge <= 1}
/// and bd K = {gauge = 1}; it is only used for membership and ray casts.
class SupportBody {
 public:
    virtual ~SupportBody() = default;

    virtual BodyKind kind() const = 0;
    virtual int dimension() const = 0;

    virtual double support(const Vec& u) const = 0;
    virtual Vec support_point(const Vec& u) const = 0;
    virtual Vec interior_point() const = 0;
    virtual double gauge(const Vec& z) const = 0;

    /// Unit generators of the outer normal cone at a boundary point.
    /// Smooth bodies return one vector; polytopes their active facets.
    virtual std::vector<Vec> normal_cone(const Vec& boundary_point, double tol = kDefaultTol) const = 0;

    /// Section by the affine 2-plane `frame`. The frame must pass through
    /// the interior of the body. The result may refer to *this.
    virtual std::unique_ptr<PlanarSection> planar_section(const PlaneFrame& frame) const;

    /// t > 0 with from + t * dir on the boundary; `from` must be interior.
    virtual double exit_distance(const Vec& from, const Vec& dir) const;

    /// max_{z in K} |z - about|.
    virtual double circumradius(const Vec& about) const;

    virtual std::string describe() const = 0;
};

using BodyPtr = std::shared_ptr<const SupportBody>;

/// Solid ellipsoid {z : (z - c)^T A (z - c) <= 1}.
class Ellipsoid final : public SupportBody {
 public:
    /// Throws InvalidArgument unless A is symmetric (1e-12 relative) and
    /// positive definite.
    Ellipsoid(Vec center, Mat shape);

    static Ellipsoid ball(const Vec& center, double radius);

    const Vec& center() const { return center_; }
    const Mat& shape() const { return shape_; }
    const Mat& inverse_shape() const { return inverse_; }

    /// The image {factor * z : z in E} (homothety about the origin).
    Ellipsoid scaled(double factor) const;

    BodyKind kind() const override { return BodyKind::ellipsoid; }
    int dimension() const override { return static_cast<int>(center_.size()); }
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    Vec interior_point() const override { return center_; }
    double gauge(const Vec& z) const override;
    std::vector<Vec> normal_cone(const Vec& boundary_point, double tol = kDefaultTol) const override;
    std::unique_ptr<PlanarSection> planar_section(const PlaneFrame& frame) const override;
    double exit_distance(const Vec& from, const Vec& dir) const override;
    double circumradius(const Vec& about) const override;
    std::string describe() const override;

    /// Tangent-cone quadric of the apex x:
    /// Q_x(z) = (<z-c, A(x-c)> - 1)^2 - ((x-c)^T A (x-c) - 1)((z-c)^T A (z-c) - 1).
    /// The cone C(E, x) is {Q_x >= 0} on the body's side of the plane through
    /// x parallel to the polar plane.
    double cone_quadric(const Vec& apex, const Vec& z) const;

 private:
    Vec center_;
    Mat shape_;
    Mat inverse_;
};

struct Facet {
    Vec normal;  // unit outer normal
    double offset;
};

/// Convex hull of finitely many points, reduced to its extreme points.
/// Facets are found by brute force over n-subsets, so this is intended
/// for small polytopes (a few dozen vertices in low dimension).
class Polytope final : public SupportBody {
 public:
    /// Throws InvalidArgument if the hull is not full-dimensional.
    explicit Polytope(std::vector<Vec> points);

    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    BodyKind kind() const override { return BodyKind::polytope; }
    int dimension() const override { return dimension_; }
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    Vec interior_point() const override { return centroid_; }
    double gauge(const Vec& z) const override;
    std::vector<Vec> normal_cone(const Vec& boundary_point, double tol = kDefaultTol) const override;
    std::unique_ptr<PlanarSection> planar_section(const PlaneFrame& frame) const override;
    double circumradius(const Vec& about) const override;
    std::string describe() const override;

 private:
    int dimension_;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
    Vec centroid_;
    double scale_;
};

/// Origin-centered superellipsoid {z : sum |z_i / a_i|^p <= 1}, p >= 2.
/// The support function is the dual q-norm of (a_i u_i), 1/p + 1/q = 1.
class Superellipsoid final : public SupportBody {
 public:
    Superellipsoid(double exponent, Vec semi_axes);

    double exponent() const { return exponent_; }
    const Vec& semi_axes() const { return axes_; }

    BodyKind kind() const override { return BodyKind::superellipsoid; }
    int dimension() const override { return static_cast<int>(axes_.size()); }
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    Vec interior_point() const override { return Vec::Zero(axes_.size()); }
    double gauge(const Vec& z) const override;
    std::vector<Vec> normal_cone(const Vec& boundary_point, double tol = kDefaultTol) const override;
    std::string describe() const override;

 private:
    double exponent_;
    double dual_;
    Vec axes_;
};

/// The image {M z + b : z in base} for invertible M.
class AffineImage final : public SupportBody {
 public:
    AffineImage(BodyPtr base, Mat linear, Vec translation);

    const SupportBody& base() const { return *base_; }
    const BodyPtr& base_ptr() const { return base_; }
    const Mat& linear() const { return linear_; }
    const Vec& translation() const { return translation_; }

    BodyKind kind() const override { return BodyKind::custom; }
    int dimension() const override { return base_->dimension(); }
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    Vec interior_point() const override;
    double gauge(const Vec& z) const override;
    std::vector<Vec> normal_cone(const Vec& boundary_point, double tol = kDefaultTol) const override;
    std::unique_ptr<PlanarSection> planar_section(const PlaneFrame& frame) const override;
    std::string describe() const override;

 private:
    BodyPtr base_;
    Mat linear_;
    Mat inverse_;
    Vec translation_;
};

/// K ∩ H for a hyperplane H through the origin (which must be interior to
/// K), in the coordinates of orthonormal_basis(H). Its support function is
/// the one-dimensional minimization h(v) = min_t h_K(B v + t n).
class SectionBody final : public SupportBody {
 public:
    SectionBody(BodyPtr parent, const Hyperplane& plane);

    const Mat& basis() const { return basis_; }
    const Hyperplane& plane() const { return plane_; }

    BodyKind kind() const override { return BodyKind::custom; }
    int dimension() const override { return static_cast<int>(basis_.cols()); }
    double support(const Vec& u) const override;
    Vec support_point(const Vec& u) const override;
    Vec interior_point() const override { return Vec::Zero(basis_.cols()); }
    double gauge(const Vec& z) const override;
    std::vector<Vec> normal_cone(const Vec& boundary_point, double tol = kDefaultTol) const override;
    std::unique_ptr<PlanarSection> planar_section(const PlaneFrame& frame) const override;
    std::string describe() const override;

 private:
    double optimal_shift(const Vec& lifted) const;

    BodyPtr parent_;
    Hyperplane plane_;
    Mat basis_;
};

/// Planar section of an ellipse {(w - c)^T S (w - c) <= 1}.
std::unique_ptr<PlanarSection> make_ellipse_section(const Eigen::Matrix2d& shape, const Eigen::Vector2d& center);
/// Convex hull of a finite point set in the plane.
std::unique_ptr<PlanarSection> make_point_hull_section(std::vector<Eigen::Vector2d> points);
/// Section computed from the body's support function by minimizing over
/// the directions orthogonal to the plane.
std::unique_ptr<PlanarSection> make_generic_section(const SupportBody& body, const PlaneFrame& frame);

}  // namespace sipcone
