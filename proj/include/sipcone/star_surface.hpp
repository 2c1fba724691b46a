#pragma once

#include "sipcone/bodies.hpp"

#include <variant>

namespace sipcone {

/// One monomial c * prod u_i^{e_i} of the radial function.
struct StarTerm {
    std::vector<int> exponents;
    double coefficient;
};

/// Surface {o + r(u) u : |u| = 1} with r(u) = base + sum of terms, radial
/// about the scene origin o. At most 16 terms; the table is kept exactly
/// as given so descriptors round-trip.
class StarSurface {
 public:
    static constexpr std::size_t kMaxTerms = 16;

    /// Throws InvalidArgument unless base > sum |c| (so r > 0 everywhere),
    /// exponents are nonnegative and have the right length.
    StarSurface(int dimension, double base, std::vector<StarTerm> terms);

    static StarSurface sphere(int dimension, double radius);

    int dimension() const { return dimension_; }
    double base() const { return base_; }
    const std::vector<StarTerm>& terms() const { return terms_; }

    /// r(u/|u|).
    double radius(const Vec& u) const;
    /// r(u) u, relative to the origin.
    Vec point(const Vec& u) const;

    /// Guaranteed bounds base -/+ sum |c| on r.
    double min_radius() const;
    double max_radius() const;

    /// True when every term has even total degree, so r(-u) = r(u).
    bool symmetric() const;

    /// r(-u) (-u) for x = r(u) u. Throws PointNotOnSurface when |x| differs
    /// from r(x/|x|) by more than tol.
    Vec antipode(const Vec& x, double tol = kDefaultTol) const;

    std::string describe() const;

 private:
    int dimension_;
    double base_;
    std::vector<StarTerm> terms_;
};

/// The outer surface of a scene: a star surface or the boundary of a body,
/// both seen radially from the scene origin.
class Enclosure {
 public:
    explicit Enclosure(StarSurface star) : shape_(std::move(star)) {}
    explicit Enclosure(BodyPtr body);

    int dimension() const;
    bool is_star() const { return std::holds_alternative<StarSurface>(shape_); }
    const StarSurface* star() const { return std::get_if<StarSurface>(&shape_); }
    BodyPtr body() const;

    /// The surface point on the ray from o along u.
    Vec point(const Vec& o, const Vec& u) const;
    /// The surface point on the ray from o opposite to x.
    Vec antipode(const Vec& o, const Vec& x) const;
    /// Signed defect of z against the surface: radial for star surfaces,
    /// Euclidean signed distance for bodies.
    double defect(const Vec& o, const Vec& z) const;
    /// Smallest sampled clearance between the surface and bd K along rays
    /// from o (positive iff K lies strictly inside on the sample).
    double clearance(const SupportBody& k, const Vec& o) const;
    /// O-symmetry about o on the probe sample (exact flag for star tables).
    bool symmetric_about(const Vec& o, double tol = 1e-9) const;

    std::string describe() const;

 private:
    std::variant<StarSurface, BodyPtr> shape_;
};

/// Throws ContainmentViolation unless clearance(k, o) > margin.
void require_enclosed(const SupportBody& k, const Enclosure& s, const Vec& o, double margin, const char* what);

}  // namespace sipcone
