#include "sipcone/body_ops.hpp"
#include "sipcone/characterize.hpp"
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

BodyPtr ball(double r, const Vec& c = Vec::Zero(3)) { return std::make_shared<Ellipsoid>(Ellipsoid::ball(c, r)); }

SipScene sphere_scene(double g_radius) {
    return SipScene{ball(1.0), Enclosure(StarSurface::sphere(3, 2.0)), ball(g_radius), Vec::Zero(3)};
}

// Radius of the circle where the tangent cones of the unit sphere from
// x = R e1 and -x meet: the right triangle gives R r / sqrt(R^2 - r^2).
double sphere_pair_radius(double big_r) { return big_r / std::sqrt(big_r * big_r - 1.0); }

}  // namespace

TEST_CASE("homothety ratio and regimes") {
    CHECK(e3_ratio(std::numbers::sqrt2) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
    CHECK(e3_ratio(2.0) == doctest::Approx(1.154700538).epsilon(1e-9));
    CHECK(e3_ratio(1.2) == doctest::Approx(1.809068067).epsilon(1e-9));

    const Ellipsoid e1 = random_ellipsoid(1, 3, 5.0);
    const E3Result eq = construct_e3(e1, std::numbers::sqrt2);
    CHECK(eq.regime == E3Regime::equal);
    CHECK((eq.e3.shape() - e1.scaled(std::numbers::sqrt2).shape()).norm() < 1e-12);
    CHECK(construct_e3(e1, 2.0).regime == E3Regime::e3_inside_e2);
    CHECK(construct_e3(e1, 1.2).regime == E3Regime::e2_inside_e3);
    CHECK(to_string(E3Regime::equal) == "equal");
    CHECK(to_string(E3Regime::e3_inside_e2) == "E3-inside-E2");
    CHECK(to_string(E3Regime::e2_inside_e3) == "E2-inside-E3");

    CHECK_THROWS_AS(construct_e3(e1, 1.0), InvalidArgument);
    CHECK_THROWS_AS(construct_e3(Ellipsoid::ball(v3(0.1, 0, 0), 1.0), 2.0), PreconditionViolation);
}

TEST_CASE("the homothety ratio is certified by sphere cone pairs") {
    const BodyPtr k = ball(1.0);
    for (double lambda : {1.05, 1.2, std::numbers::sqrt2, 2.0, 3.0, 7.5}) {
        const Vec x = v3(lambda, 0, 0);
        for (const Vec& z : cone_pair_intersection(*k, x, -x, Vec::Zero(3), 16)) {
            CHECK(std::abs(z.norm() - sphere_pair_radius(lambda)) <= 1e-9);
            CHECK(std::abs(z.norm() - e3_ratio(lambda)) <= 1e-9);
        }
    }
}

TEST_CASE("E3 certificates") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Ellipsoid e1 = random_ellipsoid(seed, 3, 10.0);
        for (double lambda : {1.2, std::numbers::sqrt2, 2.0, 3.0}) {
            const E3Certificate c = certify_e3(e1, lambda, 4, 16, seed);
            CHECK(c.points > 0);
            CHECK(c.e3_defect <= 1e-7);
            if (lambda == std::numbers::sqrt2) CHECK(c.e2_defect <= 1e-7);
            else CHECK(c.e2_defect > 1e-3);
        }
    }
}

TEST_CASE("intersection planes of the sphere and its offset") {
    const BodyPtr k = ball(1.0);
    const IntersectionPlane sym = intersection_plane(*k, v3(2, 0, 0), v3(-2, 0, 0), Vec::Zero(3), 32);
    CHECK(sym.max_residual <= 1e-12);
    CHECK(sym.plane.equals(Hyperplane(v3(1, 0, 0), 0.0), 1e-12));

    // x = 2 e1, y = -3 e1: in a meridian plane the tangent lines are
    // w1/2 + c1 w2 = 1 and -w1/3 + c2 w2 = 1.
    const double c1 = std::sqrt(1.0 - 0.25);
    const double c2 = std::sqrt(1.0 - 1.0 / 9.0);
    const double w1 = (1.0 - c1 / c2) / (0.5 + c1 / (3.0 * c2));
    const IntersectionPlane offset = intersection_plane(*k, v3(2, 0, 0), v3(-3, 0, 0), Vec::Zero(3), 32, false);
    CHECK(offset.max_residual <= 1e-12);
    CHECK(std::abs(std::abs(offset.plane.offset()) - w1) <= 1e-10);
    CHECK(w1 == doctest::Approx(0.10102).epsilon(1e-4));
    const IntersectionPlane forced = intersection_plane(*k, v3(2, 0, 0), v3(-3, 0, 0), Vec::Zero(3), 32, true);
    CHECK(forced.max_residual > 0.05);
}

TEST_CASE("coplanarity for symmetric and non-symmetric star surfaces") {
    const Ellipsoid e = random_ellipsoid(4, 3, 10.0);
    const StarSurface even(3, 2.5, {StarTerm{{2, 0, 0}, 0.3}, StarTerm{{0, 1, 1}, -0.2}});
    const Theorem1Report sym = verify_theorem1(e, even, 20, 32);
    CHECK(sym.verdict);
    CHECK(sym.max_residual <= 1e-8);

    const StarSurface odd = random_star_surface(7, 3, 3.0, 0.5, e, Vec::Zero(3));
    const Theorem1Report asym = verify_theorem1(e, odd, 20, 32);
    CHECK(asym.samples == 20);
    CHECK(asym.residuals.size() == 20);
    // The intersection is always planar; the plane need not pass through O.
    CHECK(asym.max_affine_residual <= 1e-8);
    CHECK(asym.max_residual > 1e-6);
}

TEST_CASE("SIP verdicts on the sphere scenes") {
    const SipReport good = sip_check(sphere_scene(2.0 / std::sqrt(3.0)));
    CHECK(good.verdict);
    CHECK(good.max_coplanarity < 1e-9);
    CHECK(good.max_g_match < 1e-9);

    const SipReport bad = sip_check(sphere_scene(1.5));
    CHECK_FALSE(bad.verdict);
    CHECK(std::abs(bad.max_g_match - (1.5 - 2.0 / std::sqrt(3.0))) <= 1e-6);

    SipOptions swapped;
    swapped.swapped = true;
    CHECK(sip_check(sphere_scene(2.0 / std::sqrt(3.0)), swapped).verdict);
}

TEST_CASE("SIP verdicts are affine covariant") {
    Mat m(3, 3);
    m << 1.5, 0.2, 0.0, 0.1, 0.8, -0.3, 0.0, 0.4, 1.1;
    const Vec b = v3(0.3, -0.2, 0.5);
    for (double g : {2.0 / std::sqrt(3.0), 1.5}) {
        const SipScene base{ball(1.0), Enclosure(ball(2.0)), ball(g), Vec::Zero(3)};
        const SipScene image{affine_image(base.k, m, b), Enclosure(affine_image(ball(2.0), m, b)),
                             affine_image(base.g, m, b), b};
        SipOptions opt;
        opt.samples = 8;
        CHECK(sip_check(base, opt).verdict == sip_check(image, opt).verdict);
    }
}

TEST_CASE("SIP holds for a random ellipsoid and its homothets") {
    const Ellipsoid e1 = random_ellipsoid(5, 3, 6.0);
    const BodyPtr k = std::make_shared<Ellipsoid>(e1);
    const SipScene scene{k, Enclosure(BodyPtr(std::make_shared<Ellipsoid>(e1.scaled(3.0)))),
                         std::make_shared<Ellipsoid>(e1.scaled(e3_ratio(3.0))), Vec::Zero(3)};
    SipOptions opt;
    opt.samples = 10;
    CHECK(sip_check(scene, opt).verdict);
}

TEST_CASE("scene validation") {
    CHECK_THROWS_AS(validate_scene(sphere_scene(2.5)), ContainmentViolation);
    CHECK_THROWS_AS(validate_scene(sphere_scene(0.9)), ContainmentViolation);
    SipScene off = sphere_scene(1.2);
    off.origin = v3(1.5, 0, 0);
    CHECK_THROWS_AS(validate_scene(off), PreconditionViolation);
}

TEST_CASE("deviation metric separates ellipsoids from the p = 4 control") {
    const Enclosure s(StarSurface::sphere(3, 3.0));
    const Ellipsoid e = random_ellipsoid(6, 3, 10.0);
    CHECK(deviation_metric(e, s, Vec::Zero(3), 12).value <= 1e-8);
    const DeviationResult d = deviation_metric(Superellipsoid(4.0, v3(1, 1, 1)), s, Vec::Zero(3), 12);
    CHECK(d.value >= 1e-3);
    CHECK(d.residuals.size() == 12);
}

TEST_CASE("Hammer test and central symmetry") {
    const Vec o = Vec::Zero(3);
    const BodyPtr shifted = ball(1.0, v3(0.3, 0, 0));
    for (const BodyPtr& b : std::vector<BodyPtr>{std::make_shared<Ellipsoid>(random_ellipsoid(2, 3, 10.0)),
                                                 std::make_shared<Polytope>(cross_polytope(3)),
                                                 std::make_shared<Superellipsoid>(4.0, v3(1, 2, 3))}) {
        CHECK(hammer_test(*b, o).symmetric);
        CHECK(central_symmetry_check(*b, o).symmetric);
    }
    const HammerResult h = hammer_test(*shifted, o);
    CHECK_FALSE(h.symmetric);
    CHECK(std::abs(h.worst_direction(0)) < 0.99);
    const SymmetryResult s = central_symmetry_check(*shifted, o);
    CHECK_FALSE(s.symmetric);
    CHECK(s.defect == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(std::abs(std::abs(s.worst_direction(0)) - 1.0) < 1e-12);
    CHECK(central_symmetry_check(*shifted, v3(0.3, 0, 0)).symmetric);
    CHECK_FALSE(hammer_test(regular_simplex(3), o).symmetric);
}

TEST_CASE("strict convexity") {
    CHECK(strict_convexity_check(random_ellipsoid(3, 3, 10.0)).strictly_convex);
    CHECK(strict_convexity_check(Superellipsoid(4.0, v3(1, 1, 1))).strictly_convex);
    const ConvexityResult c = strict_convexity_check(cube(3));
    CHECK_FALSE(c.strictly_convex);
    CHECK(c.flatness <= 1e-12);
    CHECK((c.p - c.q).norm() > 0.1);
}

TEST_CASE("shadow boundary examples") {
    const Ellipsoid sphere = Ellipsoid::ball(Vec::Zero(3), 1.0);
    CHECK(shadow_boundary_test(sphere, v3(1, 0, 0), v3(0, 1, 0)).on_shadow_boundary);
    const ShadowResult pole = shadow_boundary_test(sphere, v3(1, 0, 0), v3(1, 0, 0));
    CHECK_FALSE(pole.on_shadow_boundary);
    CHECK(pole.defect == doctest::Approx(1.0));
    CHECK(shadow_boundary_test(cube(3), v3(0, 0, 1), v3(1, 0.2, 0.3)).on_shadow_boundary);
    CHECK_THROWS_AS(shadow_boundary_test(sphere, v3(1, 0, 0), v3(0, 0.5, 0)), PointNotOnBoundary);
}

TEST_CASE("shadow identity on sphere and ellipsoid scenes") {
    const double g = 2.0 / std::sqrt(3.0);
    const SipScene spheres{ball(1.0), Enclosure(ball(2.0)), ball(g), Vec::Zero(3)};
    const OmegaReport r = omega_identity_check(spheres, v3(0, 0, 1));
    CHECK(r.holds);
    CHECK(r.forward_max <= 1e-8);
    for (const Vec& z : r.forward_points) CHECK(std::abs(z(2)) <= 1e-8);

    Mat m(3, 3);
    m << 1.2, 0.3, 0.0, 0.0, 0.9, 0.2, 0.1, 0.0, 1.4;
    const Vec b = v3(0.2, 0.1, -0.3);
    const SipScene image{affine_image(spheres.k, m, b), Enclosure(affine_image(ball(2.0), m, b)),
                         affine_image(spheres.g, m, b), b};
    CHECK(omega_identity_check(image, m * v3(0, 0, 1), 8, 1e-7).holds);

    const Ellipsoid e1 = random_ellipsoid(9, 3, 5.0);
    const SipScene ell{std::make_shared<Ellipsoid>(e1), Enclosure(BodyPtr(std::make_shared<Ellipsoid>(e1.scaled(2.0)))),
                       std::make_shared<Ellipsoid>(e1.scaled(e3_ratio(2.0))), Vec::Zero(3)};
    Rng rng(3);
    for (int i = 0; i < 5; ++i) CHECK(omega_identity_check(ell, random_vec(rng, 3), 8, 1e-7).holds);

    const SipScene star_scene = sphere_scene(g);
    CHECK_THROWS_AS(omega_identity_check(star_scene, v3(0, 0, 1)), PreconditionViolation);
}

TEST_CASE("Kakutani planes") {
    const Vec o = Vec::Zero(3);
    const KakutaniPlane sp = kakutani_plane(Ellipsoid::ball(o, 1.0), o, v3(1, 2, 2));
    CHECK(sp.defect <= 1e-9);
    CHECK(std::abs(sp.line.normalized().dot(v3(1, 2, 2).normalized())) == doctest::Approx(1.0).epsilon(1e-9));

    const Ellipsoid e = random_ellipsoid(11, 3, 8.0);
    const Vec w = v3(0.3, -1.0, 0.5);
    const KakutaniPlane ep = kakutani_plane(e, o, w);
    CHECK(ep.defect <= 1e-6);
    const Vec conj = e.inverse_shape() * w;
    CHECK(std::abs(ep.line.normalized().dot(conj.normalized())) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(kakutani_test(e, o, 10).passes);

    const KakutaniReport cube_report = kakutani_test(cube(3), o, 10);
    CHECK_FALSE(cube_report.passes);
    CHECK(cube_report.worst_defect >= 1e-2);
    const KakutaniPlane tilted = kakutani_plane(cube(3), o, v3(0.05, 0.03, 1.0));
    // a small tilt only meets the four vertical faces, all parallel to e3
    CHECK(tilted.defect <= 1e-9);
    CHECK(std::abs(tilted.line.normalized()(2)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_FALSE(kakutani_test(Superellipsoid(4.0, v3(1, 1, 1)), o, 10).passes);
}

TEST_CASE("reflection conjugacy on the sphere configuration and its images") {
    const Vec o = Vec::Zero(3);
    const Vec p = v3(0, 0, 2);
    const Vec x = v3(2, 0, 0);
    const ReflectionReport r = reflection_conjugacy_check(*ball(1.0), o, p, -p, x, -x);
    CHECK(r.passes_i);
    CHECK(r.passes_ii);
    CHECK(r.defect_i <= 1e-9);
    CHECK(r.defect_ii <= 1e-9);

    Rng rng(4);
    for (int trial = 0; trial < 3; ++trial) {
        Mat m = Mat::Identity(3, 3) + 0.3 * Mat::NullaryExpr(3, 3, [&] { return normal_variate(rng); });
        const Vec b = 0.2 * random_vec(rng, 3);
        const BodyPtr k = affine_image(ball(1.0), m, b);
        const Vec mp = m * p + b;
        const Vec mq = -m * p + b;
        const Vec mx = m * x + b;
        const Vec my = -m * x + b;
        const ReflectionReport a = reflection_conjugacy_check(*k, b, mp, mq, mx, my);
        CHECK(a.passes_i);
        CHECK(a.passes_ii);
    }

    CHECK_THROWS_AS(reflection_conjugacy_check(*ball(1.0), o, p, -p, v3(2, 0, 1), v3(-2, 0, -1)),
                    PreconditionViolation);
}

TEST_CASE("reflection conjugacy fails on the p = 4 control") {
    const Vec o = Vec::Zero(3);
    const Superellipsoid se(4.0, v3(1, 1, 1));
    const Enclosure s(StarSurface::sphere(3, 3.0));
    const Vec p = s.point(o, v3(1, 0.4, 0.2));
    const Vec q = s.antipode(o, p);
    const Hyperplane lam = intersection_plane(se, p, q, o, 48).plane;
    const Vec x = s.point(o, orthonormal_basis(lam).col(0));
    const ReflectionReport r = reflection_conjugacy_check(se, o, p, q, x, s.antipode(o, x));
    CHECK_FALSE(r.passes_i);
    CHECK(r.defect_i >= 1e-3);
}
