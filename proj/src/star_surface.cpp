#include "sipcone/star_surface.hpp"

#include "sipcone/body_ops.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <cmath>
#include <sstream>

namespace sipcone {

StarSurface::StarSurface(int dimension, double base, std::vector<StarTerm> terms)
    : dimension_(dimension), base_(base), terms_(std::move(terms)) {
    check_dimension(dimension_);
    if (terms_.size() > kMaxTerms) throw InvalidArgument("star surface has more than 16 terms");
    if (!std::isfinite(base_)) throw InvalidArgument("star surface base radius is not finite");
    for (const StarTerm& t : terms_) {
        if (static_cast<int>(t.exponents.size()) != dimension_) throw InvalidArgument("star term has wrong exponent count");
        for (int e : t.exponents) {
            if (e < 0) throw InvalidArgument("star term exponent is negative");
        }
        if (!std::isfinite(t.coefficient)) throw InvalidArgument("star term coefficient is not finite");
    }
    if (!(min_radius() > 0.0)) throw InvalidArgument("star surface radius is not bounded away from zero");
}

StarSurface StarSurface::sphere(int dimension, double radius) { return StarSurface(dimension, radius, {}); }

double StarSurface::radius(const Vec& u) const {
    if (u.size() != dimension_) throw InvalidArgument("direction has wrong dimension");
    const Vec v = u.normalized();
    double r = base_;
    for (const StarTerm& t : terms_) {
        double m = t.coefficient;
        for (int i = 0; i < dimension_; ++i) m *= std::pow(v(i), t.exponents[static_cast<std::size_t>(i)]);
        r += m;
    }
    return r;
}

Vec StarSurface::point(const Vec& u) const {
    const Vec v = u.normalized();
    return radius(v) * v;
}

double StarSurface::min_radius() const {
    double amp = 0.0;
    for (const StarTerm& t : terms_) amp += std::abs(t.coefficient);
    return base_ - amp;
}

double StarSurface::max_radius() const { return 2.0 * base_ - min_radius(); }

bool StarSurface::symmetric() const {
    for (const StarTerm& t : terms_) {
        int degree = 0;
        for (int e : t.exponents) degree += e;
        if (degree % 2 != 0 && t.coefficient != 0.0) return false;
    }
    return true;
}

Vec StarSurface::antipode(const Vec& x, double tol) const {
    const double len = x.norm();
    if (!(len > 0.0)) throw PointNotOnSurface("the origin is not on a star surface");
    const Vec u = x / len;
    if (std::abs(len - radius(u)) > tol * std::max(1.0, len)) throw PointNotOnSurface("point is not on the star surface");
    return point(-u);
}

std::string StarSurface::describe() const {
    std::ostringstream os;
    os << "star(n=" << dimension_ << ", base=" << base_ << ", terms=" << terms_.size() << ")";
    return os.str();
}

Enclosure::Enclosure(BodyPtr body) : shape_(std::move(body)) {
    if (!std::get<BodyPtr>(shape_)) throw InvalidArgument("enclosure body is null");
}

int Enclosure::dimension() const {
    if (const auto* s = star()) return s->dimension();
    return std::get<BodyPtr>(shape_)->dimension();
}

BodyPtr Enclosure::body() const {
    if (const auto* b = std::get_if<BodyPtr>(&shape_)) return *b;
    return nullptr;
}

Vec Enclosure::point(const Vec& o, const Vec& u) const {
    if (const auto* s = star()) return o + s->point(u);
    return boundary_point(*std::get<BodyPtr>(shape_), o, u.normalized());
}

Vec Enclosure::antipode(const Vec& o, const Vec& x) const {
    const Vec d = x - o;
    if (const auto* s = star()) return o + s->antipode(d, 1e-9);
    return point(o, -d);
}

double Enclosure::defect(const Vec& o, const Vec& z) const {
    if (const auto* s = star()) {
        const Vec d = z - o;
        return d.norm() - s->radius(d);
    }
    return signed_distance(*std::get<BodyPtr>(shape_), z);
}

double Enclosure::clearance(const SupportBody& k, const Vec& o) const {
    double least = INFINITY;
    for (const Vec& u : probe_directions(k.dimension())) {
        const double inner = k.exit_distance(o, u);
        const double outer = (point(o, u) - o).norm();
        least = std::min(least, outer - inner);
    }
    return least;
}

bool Enclosure::symmetric_about(const Vec& o, double tol) const {
    if (const auto* s = star()) return s->symmetric();
    const SupportBody& b = *std::get<BodyPtr>(shape_);
    for (const Vec& u : probe_directions(b.dimension())) {
        if (std::abs(b.support(u) - u.dot(o) - b.support(-u) - u.dot(o)) > tol) return false;
    }
    return true;
}

std::string Enclosure::describe() const {
    if (const auto* s = star()) return s->describe();
    return std::get<BodyPtr>(shape_)->describe();
}

void require_enclosed(const SupportBody& k, const Enclosure& s, const Vec& o, double margin, const char* what) {
    const double c = s.clearance(k, o);
    if (!(c > margin)) {
        std::ostringstream os;
        os << what << ": clearance " << c << " is not above " << margin;
        throw ContainmentViolation(os.str());
    }
}

}  // namespace sipcone
