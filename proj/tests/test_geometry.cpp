#include "sipcone/errors.hpp"
#include "sipcone/geometry.hpp"
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

}  // namespace

TEST_CASE("hyperplane normalizes and compares up to sign") {
    const Hyperplane h(v3(0, 0, 2), 4.0);
    CHECK(h.normal().isApprox(v3(0, 0, 1)));
    CHECK(h.offset() == doctest::Approx(2.0));
    CHECK(h.equals(Hyperplane(v3(0, 0, -1), -2.0)));
    CHECK_FALSE(h.equals(Hyperplane(v3(0, 0, -1), 2.0)));
    CHECK(h.contains(v3(5, -1, 2)));
    CHECK((h.project(v3(1, 1, 7)) - v3(1, 1, 2)).norm() < 1e-15);
    CHECK_THROWS_AS(Hyperplane(Vec::Zero(3), 1.0), InvalidArgument);
}

TEST_CASE("affine reflection examples") {
    const Hyperplane mirror(v3(1, 0, 0), 0.0);
    const AffineReflection orth(mirror, v3(1, 0, 0));
    CHECK((orth(v3(1, 2, 3)) - v3(-1, 2, 3)).norm() < 1e-15);

    const AffineReflection slanted(mirror, v3(1, 1, 0) / std::sqrt(2.0));
    const Vec out = reflect(slanted, v3(1, 0, 0));
    CHECK((out - v3(-1, -2, 0)).norm() < 1e-14);
    CHECK(out(0) == doctest::Approx(-1.0));
    CHECK((slanted(out) - v3(1, 0, 0)).norm() < 1e-14);

    CHECK((slanted(v3(0, 4, -2)) - v3(0, 4, -2)).norm() < 1e-15);
    CHECK_THROWS_AS(AffineReflection(mirror, v3(0, 1, 0)), DegenerateReflection);
}

TEST_CASE("reflections are involutions fixing their mirror") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 5;
        const Vec normal = random_vec(rng, n);
        Vec dir = random_vec(rng, n);
        if (std::abs(normal.normalized().dot(dir.normalized())) < 0.05) dir += normal;
        const AffineReflection r(Hyperplane(normal, normal_variate(rng)), dir);
        const Vec z = 3.0 * random_vec(rng, n);
        CHECK((r(r(z)) - z).norm() <= 1e-10);
        const Vec on = r.mirror().project(z);
        CHECK((r(on) - on).norm() <= 1e-12);
    }
}

TEST_CASE("through-origin fit on coplanar points") {
    std::vector<Vec> pts{v3(1, 0, 0), v3(0, 1, 0), v3(-1, 0, 0)};
    const PlaneFit fit = fit_hyperplane_through_origin(pts);
    CHECK(std::abs(std::abs(fit.plane.normal()(2)) - 1.0) < 1e-12);
    CHECK(fit.residual <= 1e-12);
    CHECK(fit.plane.offset() == 0.0);
}

TEST_CASE("through-origin fit residual matches a brute-force normal grid") {
    std::vector<Vec> pts;
    for (int i = 0; i < 40; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 40.0;
        pts.push_back(v3(2.0 * std::cos(t), 2.0 * std::sin(t), i % 2 == 0 ? 0.1 : 0.0));
    }
    const PlaneFit fit = fit_hyperplane_through_origin(pts);

    // Oracle: minimize the RMS distance over a grid of unit normals.
    double best = 1e300;
    for (int a = 0; a <= 400; ++a) {
        for (int b = 0; b < 80; ++b) {
            const double th = 0.05 * a / 400.0;
            const double ph = 2.0 * std::numbers::pi * b / 80.0;
            const Vec nrm = v3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
            double s = 0.0;
            for (const Vec& p : pts) s += std::pow(nrm.dot(p), 2);
            best = std::min(best, std::sqrt(s / pts.size()));
        }
    }
    CHECK(fit.residual == doctest::Approx(best).epsilon(1e-4));
    CHECK(fit.residual == doctest::Approx(0.0707).epsilon(1e-2));
    CHECK(std::abs(fit.plane.normal()(2)) > 0.999);
}

TEST_CASE("through-origin fit residual is rotation invariant") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec> pts;
        for (int i = 0; i < 30; ++i) pts.push_back(random_vec(rng, 4));
        const Mat q = Eigen::HouseholderQR<Mat>(Mat::NullaryExpr(4, 4, [&] { return normal_variate(rng); }))
                          .householderQ();
        std::vector<Vec> turned;
        for (const Vec& p : pts) turned.push_back(q * p);
        CHECK(fit_hyperplane_through_origin(pts).residual ==
              doctest::Approx(fit_hyperplane_through_origin(turned).residual).epsilon(1e-10));
    }
}

TEST_CASE("fits reject rank-deficient input") {
    std::vector<Vec> collinear{v3(1, 1, 1), v3(2, 2, 2), v3(-1, -1, -1)};
    CHECK_THROWS_AS(fit_hyperplane_through_origin(collinear), RankDeficiency);
    std::vector<Vec> two{v3(1, 0, 0), v3(0, 1, 0)};
    CHECK_THROWS_AS(fit_hyperplane(two), InsufficientSamples);
    CHECK_THROWS_AS(fit_hyperplane(collinear), RankDeficiency);
}

TEST_CASE("free-offset fit recovers an affine plane") {
    std::vector<Vec> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(v3(std::cos(i), std::sin(3.0 * i), 0.7));
    const PlaneFit fit = fit_hyperplane(pts);
    CHECK(fit.residual < 1e-12);
    CHECK(fit.plane.equals(Hyperplane(v3(0, 0, 1), 0.7), 1e-12));
}

TEST_CASE("orthonormal basis examples and contract") {
    const Mat b3 = orthonormal_basis(Hyperplane(v3(0, 0, 1), 0.0));
    CHECK(b3.cols() == 2);
    CHECK(std::abs(b3.col(0).dot(v3(1, 0, 0))) == doctest::Approx(1.0));
    CHECK(std::abs(b3.col(1).dot(v3(0, 1, 0))) == doctest::Approx(1.0));

    Vec e2(2);
    e2 << 0, 1;
    const Mat b2 = orthonormal_basis(Hyperplane(e2, 0.0));
    CHECK(b2.cols() == 1);
    CHECK(std::abs(std::abs(b2(0, 0)) - 1.0) < 1e-15);

    Rng rng(5);
    std::vector<Vec> normals{v3(1, 1, 1) / std::sqrt(3.0)};
    for (int i = 0; i < 100; ++i) normals.push_back(random_vec(rng, 2 + i % 7));
    for (const Vec& nrm : normals) {
        const Hyperplane h(nrm, 0.3);
        const Mat b = orthonormal_basis(h);
        const int n = h.dimension();
        CHECK((b.transpose() * b - Mat::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((b.transpose() * h.normal()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((orthonormal_basis(h) - b).norm() == 0.0);
    }
}

TEST_CASE("dimension limits") {
    CHECK_THROWS_AS(check_dimension(1), InvalidArgument);
    CHECK_THROWS_AS(check_dimension(9), InvalidArgument);
    CHECK_NOTHROW(check_dimension(8));
    Vec bad = v3(0, std::nan(""), 0);
    CHECK_THROWS_AS(check_finite(bad, "z"), InvalidArgument);
}

TEST_CASE("direction samplers are unit and deterministic") {
    for (int n = 2; n <= 6; ++n) {
        const auto a = sphere_directions(n, 50, 9);
        const auto b = sphere_directions(n, 50, 9);
        REQUIRE(a.size() == 50);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a[i].norm() - 1.0) < 1e-12);
            CHECK((a[i] - b[i]).norm() == 0.0);
        }
        CHECK(axis_directions(n).size() == static_cast<std::size_t>(2 * n));
    }
    const auto c = sphere_directions(3, 50, 10);
    CHECK((c[0] - sphere_directions(3, 50, 9)[0]).norm() > 1e-6);

    const Mat basis = orthonormal_basis(Hyperplane(v3(1, 2, 3), 0.0));
    for (const Vec& d : span_directions(basis, 12)) {
        CHECK(std::abs(d.norm() - 1.0) < 1e-12);
        CHECK(std::abs(d.dot(v3(1, 2, 3))) < 1e-12);
    }
}

TEST_CASE("seeded variates reproduce") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(normal_variate(a) == normal_variate(b));
        const double u = uniform_variate(a);
        CHECK(u == uniform_variate(b));
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("one-dimensional solvers") {
    const LineMinimum m = minimize_convex_line([](double t) { return (t - 30.0) * (t - 30.0) + 1.0; }, 1.0);
    CHECK(m.argmin == doctest::Approx(30.0).epsilon(1e-6));
    CHECK(m.value == doctest::Approx(1.0));

    const LineMinimum b = minimize_on_interval([](double t) { return std::cos(t); }, 2.0, 4.0);
    CHECK(b.argmin == doctest::Approx(std::numbers::pi).epsilon(1e-7));

    const double r = bisect_root([](double t) { return t * t - 2.0; }, 0.0, 2.0);
    CHECK(std::abs(r - std::numbers::sqrt2) < 1e-14);

    Vec start = v3(3, -2, 1);
    const SimplexResult s = nelder_mead(
        [](const Vec& z) { return std::pow(z(0) - 1.0, 2) + 2.0 * std::pow(z(1) + 0.5, 2) + std::pow(z(2), 2); },
        start, 0.5);
    CHECK(s.value < 1e-12);
    CHECK(std::abs(s.argmin(1) + 0.5) < 1e-6);
}
