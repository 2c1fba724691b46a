#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace sipcone {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 8;

/// Absolute tolerance for geometric predicates on unit-scale bodies.
inline constexpr double kDefaultTol = 1e-9;

/// Throws InvalidArgument unless 2 <= n <= 8.
void check_dimension(int n);

/// Throws InvalidArgument if any coordinate is NaN or infinite.
void check_finite(const Vec& v, const char* what);

/// Hyperplane {z : <normal, z> = offset} with a unit normal.
///
/// Normals are only defined up to sign, so equality compares the
/// sign-matched pair (normal, offset).
class Hyperplane {
 public:
    /// Normalizes `normal` and scales `offset` accordingly.
    Hyperplane(const Vec& normal, double offset);

    /// Plane through `point` with the given normal direction.
    static Hyperplane through(const Vec& point, const Vec& normal);

    const Vec& normal() const { return normal_; }
    double offset() const { return offset_; }
    int dimension() const { return static_cast<int>(normal_.size()); }

    double signed_distance(const Vec& z) const { return normal_.dot(z) - offset_; }
    bool contains(const Vec& z, double tol = kDefaultTol) const;
    Vec project(const Vec& z) const { return z - signed_distance(z) * normal_; }

    /// Same plane up to the sign of the normal, within `tol`.
    bool equals(const Hyperplane& other, double tol = kDefaultTol) const;

 private:
    Vec normal_;
    double offset_;
};

/// Involutive affine map fixing `mirror` pointwise and moving points
/// parallel to `direction`.
class AffineReflection {
 public:
    /// Throws DegenerateReflection when |<normal, direction>| <= 1e-10.
    AffineReflection(Hyperplane mirror, const Vec& direction);

    const Hyperplane& mirror() const { return mirror_; }
    const Vec& direction() const { return direction_; }

    Vec operator()(const Vec& z) const;

 private:
    Hyperplane mirror_;
    Vec direction_;
};

Vec reflect(const AffineReflection& r, const Vec& z);

struct PlaneFit {
    Hyperplane plane;
    /// Root-mean-square orthogonal distance of the points to `plane`.
    double residual;
};

/// Total-least-squares hyperplane through the origin: the smallest right
/// singular vector of the raw point matrix. Throws RankDeficiency when the
/// points span fewer than n-1 dimensions.
PlaneFit fit_hyperplane_through_origin(std::span<const Vec> points, double tol = kDefaultTol);

/// Same fit with a free offset (points centered at their centroid first).
PlaneFit fit_hyperplane(std::span<const Vec> points, double tol = kDefaultTol);

/// n-1 orthonormal vectors spanning the plane's direction space, as the
/// columns of an n x (n-1) matrix. Deterministic for a fixed normal
/// (Householder reflection of the standard basis); e_n maps to {e_1..e_{n-1}}.
Mat orthonormal_basis(const Hyperplane& h);

/// Same basis for the orthogonal complement of a (not necessarily unit) vector.
Mat orthogonal_complement(const Vec& v);

}  // namespace sipcone
