#include "sipcone/body_ops.hpp"
#include "sipcone/cones.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/generators.hpp"
#include "sipcone/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sipcone;

namespace {

Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

Vec random_vec(Rng& rng, int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal_variate(rng);
    return v;
}

BodyPtr unit_ball() { return std::make_shared<Ellipsoid>(Ellipsoid::ball(Vec::Zero(3), 1.0)); }

// Ray test for a ball: z is in the cone from x iff the angle between z - x
// and c - x is at most asin(r / |c - x|).
bool ball_cone_oracle(const Vec& c, double r, const Vec& x, const Vec& z) {
    const Vec a = c - x;
    const Vec w = z - x;
    if (w.norm() == 0.0) return true;
    const double cosang = a.dot(w) / (a.norm() * w.norm());
    return cosang >= std::cos(std::asin(r / a.norm()));
}

Eigen::Vector2d meet(const Eigen::Vector2d& n1, double c1, const Eigen::Vector2d& n2, double c2) {
    Eigen::Matrix2d m;
    m << n1(0), n1(1), n2(0), n2(1);
    return m.inverse() * Eigen::Vector2d(c1, c2);
}

}  // namespace

TEST_CASE("membership examples for the cone over the unit ball") {
    const SupportCone cone(unit_ball(), v3(2, 0, 0));
    CHECK(cone_contains(cone, v3(0, 0, 0)));
    CHECK_FALSE(cone_contains(cone, v3(2, 0, 1)));
    const Vec graze = v3(0.5, std::sqrt(3.0) / 2.0, 0);
    CHECK(cone_contains(cone, graze));
    CHECK(std::abs(cone_boundary_defect(cone, graze)) < 1e-9);
    CHECK(cone_boundary_defect(cone, v3(0, 0, 0)) < -0.5);
    CHECK(cone_boundary_defect(cone, v3(0, 2, 0)) > 0.1);
}

TEST_CASE("apex must be outside") {
    CHECK_THROWS_AS(SupportCone(unit_ball(), v3(0.5, 0, 0)), ApexInsideBody);
    CHECK_THROWS_AS(SupportCone(unit_ball(), v3(1, 0, 0)), ApexInsideBody);
    CHECK_THROWS_AS(SupportCone(std::make_shared<Polytope>(cube(3)), v3(1, 1, 1)), ApexInsideBody);
}

TEST_CASE("ball cones agree with the angle oracle") {
    Rng rng(1);
    const Vec c = v3(0.2, -0.1, 0.3);
    const BodyPtr ball = std::make_shared<Ellipsoid>(Ellipsoid::ball(c, 0.8));
    for (int trial = 0; trial < 5; ++trial) {
        const Vec x = c + (1.5 + trial) * random_vec(rng, 3).normalized();
        const SupportCone cone(ball, x);
        int disagreements = 0;
        for (int i = 0; i < 2000; ++i) {
            const Vec z = c + 3.0 * random_vec(rng, 3);
            const bool oracle = ball_cone_oracle(c, 0.8, x, z);
            // Skip points within rounding distance of the cone surface.
            if (std::abs(cone_boundary_defect(cone, z)) < 1e-9) continue;
            disagreements += cone_contains(cone, z) == oracle ? 0 : 1;
        }
        CHECK(disagreements == 0);
    }
}

TEST_CASE("tangent-cone quadric sign agrees with ray membership") {
    Rng rng(2);
    const Ellipsoid e = random_ellipsoid(12, 3, 8.0);
    const BodyPtr body = std::make_shared<Ellipsoid>(e);
    const Vec x = 2.5 * random_vec(rng, 3).normalized();
    const SupportCone cone(body, x);
    int checked = 0;
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        const Vec z = 3.0 * random_vec(rng, 3);
        const double q = e.cone_quadric(x, z);
        // The quadric covers both nappes; keep the body's half-space.
        if ((z - x).dot(e.center() - x) <= 0.0 || std::abs(q) < 1e-9) continue;
        ++checked;
        disagreements += (q >= 0.0) == cone_contains(cone, z) ? 0 : 1;
    }
    CHECK(checked > 1000);
    CHECK(disagreements == 0);
}

TEST_CASE("polytope cone membership agrees with dense ray sampling") {
    Rng rng(3);
    const BodyPtr c = std::make_shared<Polytope>(cube(3));
    const Vec x = v3(3.0, 0.5, -0.2);
    const SupportCone cone(c, x);
    for (int i = 0; i < 300; ++i) {
        const Vec z = x + 4.0 * random_vec(rng, 3);
        if (std::abs(cone_boundary_defect(cone, z)) < 1e-6) continue;
        bool hit = false;
        for (int s = 1; s <= 4000 && !hit; ++s) hit = c->gauge(x + (s / 400.0) * (z - x)) <= 1.0;
        CHECK(cone_contains(cone, z) == hit);
    }
}

TEST_CASE("grazes of the unit ball lie on the polar plane") {
    const SupportCone cone(unit_ball(), v3(2, 0, 0));
    const GrazeSet g = graze_sample(cone, 40);
    REQUIRE(g.points.size() == 40);
    for (const Vec& z : g.points) {
        CHECK(std::abs(z(0) - 0.5) <= 1e-10);
        CHECK(std::abs(z.norm() - 1.0) <= 1e-10);
    }
    REQUIRE(g.carrier.has_value());
    CHECK(g.carrier->equals(Hyperplane(v3(1, 0, 0), 0.5), 1e-10));
}

TEST_CASE("ellipsoid grazes lie on the polar hyperplane") {
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 4;
        const Ellipsoid e = random_ellipsoid(50 + trial, n, 10.0);
        const Vec x = (1.5 + trial * 0.3) * random_vec(rng, n).normalized() / std::sqrt(e.shape().diagonal().minCoeff());
        const SupportCone cone(std::make_shared<Ellipsoid>(e), x);
        const PolarPlane polar = polar_hyperplane(e, x);
        CHECK_FALSE(polar.pole_inside);
        for (const Vec& z : graze_sample(cone, 24).points) {
            CHECK(std::abs(polar.plane.signed_distance(z)) <= 1e-10);
            CHECK(std::abs(e.gauge(z) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("graze consistency on non-ellipsoidal bodies") {
    Rng rng(5);
    std::vector<BodyPtr> bodies{std::make_shared<Superellipsoid>(4.0, v3(1, 2, 1)),
                                perturbed_superellipsoid(3, 3.0, v3(1, 1.5, 0.7))};
    for (const BodyPtr& b : bodies) {
        const Vec x = 3.0 * random_vec(rng, 3).normalized();
        const SupportCone cone(b, x);
        for (const Vec& z : graze_sample(cone, 32).points) {
            CHECK(std::abs(b->gauge(z) - 1.0) <= 1e-9);
            const std::vector<Vec> normals = b->normal_cone(z);
            REQUIRE_FALSE(normals.empty());
            // The supporting plane at z passes through the apex.
            CHECK(std::abs(normals.front().dot(x - z)) <= 1e-8);
        }
    }
}

TEST_CASE("cube grazes from a face-on apex lie on the rim of the facing face") {
    const SupportCone cone(std::make_shared<Polytope>(cube(3)), v3(3, 0, 0));
    for (const Vec& z : graze_sample(cone, 36).points) {
        CHECK(std::abs(z(0) - 1.0) <= 1e-10);
        CHECK(std::abs(std::max(std::abs(z(1)), std::abs(z(2))) - 1.0) <= 1e-10);
    }
}

TEST_CASE("polar hyperplane examples") {
    const Ellipsoid ball = Ellipsoid::ball(Vec::Zero(3), 1.0);
    CHECK(polar_hyperplane(ball, v3(2, 0, 0)).plane.equals(Hyperplane(v3(1, 0, 0), 0.5)));
    Mat d = Mat::Zero(3, 3);
    d.diagonal() << 1, 4, 9;
    const Ellipsoid e(Vec::Zero(3), d);
    CHECK(polar_hyperplane(e, v3(2, 0, 0)).plane.equals(Hyperplane(v3(1, 0, 0), 0.5)));
    CHECK(polar_hyperplane(ball, v3(0.5, 0, 0)).pole_inside);
}

TEST_CASE("tangent lines from an external point to the unit circle") {
    auto circle = make_ellipse_section(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero());
    const Eigen::Vector2d apex(2.0, 0.0);
    const TangentLines t = tangent_lines(*circle, apex, Eigen::Vector2d::Zero());
    for (const Eigen::Vector2d& nu : {t.plus, t.minus}) {
        CHECK(std::abs(nu.norm() - 1.0) < 1e-14);
        CHECK(std::abs(nu(0) - 0.5) < 1e-12);
        CHECK(std::abs(std::abs(nu(1)) - std::sqrt(3.0) / 2.0) < 1e-12);
        CHECK(std::abs(nu.dot(apex) - circle->support(nu)) < 1e-12);
    }
    CHECK(t.plus(1) * t.minus(1) < 0.0);
    CHECK_THROWS_AS(tangent_lines(*circle, Eigen::Vector2d(0.5, 0.0), Eigen::Vector2d::Zero()), TangencyFailure);
}

TEST_CASE("cone pair intersection for the unit ball") {
    const BodyPtr ball = unit_ball();
    const auto pts = cone_pair_intersection(*ball, v3(2, 0, 0), v3(-2, 0, 0), Vec::Zero(3), 32);
    CHECK(pts.size() == 64);
    for (const Vec& z : pts) {
        CHECK(std::abs(z.norm() - 2.0 / std::sqrt(3.0)) <= 1e-9);
        CHECK(std::abs(z(0)) <= 1e-9);
    }
    const double r2 = std::numbers::sqrt2;
    for (const Vec& z : cone_pair_intersection(*ball, v3(r2, 0, 0), v3(-r2, 0, 0), Vec::Zero(3), 16)) {
        CHECK(std::abs(z.norm() - r2) <= 1e-9);
        CHECK(std::abs(z(0)) <= 1e-9);
    }
}

TEST_CASE("cone pair points trace a closed curve") {
    const BodyPtr ball = unit_ball();
    const auto pts = cone_pair_intersection(*ball, v3(2, 0, 0), v3(-2, 0, 0), Vec::Zero(3), 40);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, (pts[(i + 1) % pts.size()] - pts[i]).norm());
    // 80 points on a circle of radius 2/sqrt3: steps of 2 pi r / 80.
    CHECK(worst == doctest::Approx(2.0 * std::numbers::pi * (2.0 / std::sqrt(3.0)) / 80.0).epsilon(1e-3));
}

TEST_CASE("every cone pair point is on both cone boundaries") {
    Rng rng(6);
    std::vector<BodyPtr> bodies{std::make_shared<Ellipsoid>(random_ellipsoid(9, 3, 10.0)),
                                std::make_shared<Superellipsoid>(4.0, v3(1, 1, 1)),
                                std::make_shared<Polytope>(random_polytope(2, 3, 14)),
                                std::make_shared<Ellipsoid>(random_ellipsoid(10, 4, 5.0))};
    for (const BodyPtr& k : bodies) {
        const int n = k->dimension();
        const Vec dir = random_vec(rng, n).normalized();
        const Vec o = 0.1 * k->interior_point();
        const Vec x = o + 2.5 * k->circumradius(o) * dir;
        const Vec y = o - 1.7 * k->circumradius(o) * dir;
        const SupportCone cx(k, x);
        const SupportCone cy(k, y);
        for (const Vec& z : cone_pair_intersection(*k, x, y, o, 24)) {
            CAPTURE(k->describe());
            CHECK(std::abs(cone_boundary_defect(cx, z)) <= 1e-8);
            CHECK(std::abs(cone_boundary_defect(cy, z)) <= 1e-8);
        }
        const auto two = cone_pair_point(*k, x, y, o, orthogonal_complement(dir).col(0));
        CHECK((two[0] - o).dot(orthogonal_complement(dir).col(0)) > 0.0);
        CHECK((two[1] - o).dot(orthogonal_complement(dir).col(0)) < 0.0);
    }
}

TEST_CASE("p = 4 superellipsoid cone pair is not planar along a generic axis") {
    const Superellipsoid s(4.0, v3(1, 1, 1));
    const Vec x = 2.0 * v3(1, 1, 1).normalized();
    const auto pts = cone_pair_intersection(s, x, -x, Vec::Zero(3), 64);
    CHECK(fit_hyperplane(pts).residual > 1e-3);
    CHECK(fit_hyperplane_through_origin(pts).residual > 1e-3);
}

TEST_CASE("cone pair preconditions") {
    const BodyPtr ball = unit_ball();
    CHECK_THROWS_AS(cone_pair_intersection(*ball, v3(2, 0, 0), v3(0, 2, 0), Vec::Zero(3), 8), CollinearityViolation);
    CHECK_THROWS_AS(cone_pair_intersection(*ball, v3(2, 0, 0), v3(3, 0, 0), Vec::Zero(3), 8), CollinearityViolation);
    CHECK_THROWS_AS(cone_pair_intersection(*ball, v3(0.5, 0, 0), v3(-2, 0, 0), Vec::Zero(3), 8), ApexInsideBody);
}

TEST_CASE("homothetic ellipsoid cones meet in a hyperplane") {
    // Two different bodies G1 and G2 = t G1 seen from collinear apexes; each
    // plane through the axis gives four tangent lines that meet in pairs.
    Rng rng(7);
    for (int n : {3, 4}) {
        for (int trial = 0; trial < 4; ++trial) {
            const Ellipsoid g1 = random_ellipsoid(300 + trial, n, 6.0);
            const Ellipsoid g2 = g1.scaled(1.3 + 0.2 * trial);
            const Vec dir = random_vec(rng, n).normalized();
            const Vec x = 3.5 * dir;
            const Vec y = -(4.0 + trial) * dir;
            std::vector<Vec> pts;
            for (const Vec& side : span_directions(orthogonal_complement(dir), 24)) {
                const PlaneFrame frame{Vec::Zero(n), dir, side};
                const auto s1 = g1.planar_section(frame);
                const auto s2 = g2.planar_section(frame);
                const Eigen::Vector2d xl = frame.local(x);
                const Eigen::Vector2d yl = frame.local(y);
                const TangentLines tx = tangent_lines(*s1, xl, Eigen::Vector2d::Zero());
                const TangentLines ty = tangent_lines(*s2, yl, Eigen::Vector2d::Zero());
                pts.push_back(frame.lift(meet(tx.plus, tx.plus.dot(xl), ty.minus, ty.minus.dot(yl))));
            }
            const double scale = g2.circumradius(Vec::Zero(n));
            CHECK(fit_hyperplane(pts).residual <= 1e-8 * scale);
        }
    }
}

TEST_CASE("ellipsoidal cone criterion") {
    const SupportCone ball_cone(unit_ball(), v3(2, 0, 0));
    const Hyperplane cut(v3(1, 0, 0), 0.0);
    const QuadricFit fit = fit_cone_section(ball_cone, cut);
    CHECK(fit.ellipsoidal);
    CHECK(fit.residual < 1e-9);
    CHECK(is_ellipsoidal_cone(ball_cone, cut));

    const SupportCone cube_cone(std::make_shared<Polytope>(cube(3)), v3(3, 0, 0));
    CHECK_FALSE(is_ellipsoidal_cone(cube_cone, cut));

    Rng rng(8);
    for (int trial = 0; trial < 8; ++trial) {
        const Ellipsoid e(random_vec(rng, 3) * 0.3, random_ellipsoid(70 + trial, 3, 10.0).shape());
        const Vec x = e.center() + 3.0 * random_vec(rng, 3).normalized();
        const Vec axis = (x - e.center()).normalized();
        const SupportCone cone(std::make_shared<Ellipsoid>(e), x);
        CHECK(is_ellipsoidal_cone(cone, Hyperplane::through(e.center(), axis + 0.2 * random_vec(rng, 3))));
    }

    CHECK_THROWS_AS(fit_cone_section(ball_cone, Hyperplane(v3(0, 0, 1), 0.0)), PreconditionViolation);
    CHECK_THROWS_AS(fit_cone_section(ball_cone, Hyperplane(v3(1, 0, 0), 2.0)), PreconditionViolation);
}
