#include "sipcone/generators.hpp"

#include "sipcone/errors.hpp"

#include <cmath>

namespace sipcone {

Mat random_rotation(Rng& rng, int n) {
    Mat g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = normal_variate(rng);
    }
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q;
}

Ellipsoid random_ellipsoid(std::uint64_t seed, int n, double condition_cap) {
    check_dimension(n);
    if (!(condition_cap >= 1.0)) throw InvalidArgument("condition cap must be at least 1");
    Rng rng(seed);
    const Mat q = random_rotation(rng, n);
    Vec d(n);
    for (int i = 0; i < n; ++i) d(i) = std::exp(uniform_variate(rng) * std::log(condition_cap));
    Mat shape = q.transpose() * d.asDiagonal() * q;
    shape = 0.5 * (shape + shape.transpose());
    return Ellipsoid(Vec::Zero(n), shape);
}

BodyPtr perturbed_superellipsoid(std::uint64_t seed, double exponent, const Vec& semi_axes) {
    const int n = static_cast<int>(semi_axes.size());
    check_dimension(n);
    Rng rng(seed);
    const Mat q = random_rotation(rng, n);
    auto base = std::make_shared<Superellipsoid>(exponent, semi_axes);
    return std::make_shared<AffineImage>(base, q, Vec::Zero(n));
}

StarSurface random_star_surface(std::uint64_t seed, int n, double base, double amplitude, int terms) {
    check_dimension(n);
    if (terms < 1 || terms > static_cast<int>(StarSurface::kMaxTerms)) throw InvalidArgument("star term count must be in 1..16");
    if (!(amplitude >= 0.0) || !(amplitude < base)) throw InvalidArgument("star amplitude must be in [0, base)");
    Rng rng(seed);
    std::vector<StarTerm> table;
    std::vector<double> raw;
    for (int k = 0; k < terms; ++k) {
        int degree = 1 + static_cast<int>(uniform_variate(rng) * 3.0);
        if (k == 0) degree = 1;
        StarTerm t{std::vector<int>(static_cast<std::size_t>(n), 0), 0.0};
        for (int d = 0; d < degree; ++d) {
            const auto i = static_cast<std::size_t>(uniform_variate(rng) * n);
            ++t.exponents[i];
        }
        raw.push_back(normal_variate(rng));
        table.push_back(std::move(t));
    }
    double total = 0.0;
    for (double c : raw) total += std::abs(c);
    for (std::size_t k = 0; k < table.size(); ++k) table[k].coefficient = total > 0.0 ? amplitude * raw[k] / total : 0.0;
    return StarSurface(n, base, std::move(table));
}

StarSurface random_star_surface(std::uint64_t seed, int n, double base, double amplitude,
                                const SupportBody& inner, const Vec& o, int terms) {
    StarSurface s = random_star_surface(seed, n, base, amplitude, terms);
    require_enclosed(inner, Enclosure(s), o, 0.0, "random star surface does not enclose the body");
    return s;
}

Polytope cube(int n) {
    check_dimension(n);
    std::vector<Vec> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? 1.0 : -1.0;
        pts.push_back(v);
    }
    return Polytope(std::move(pts));
}

Polytope cross_polytope(int n) { return Polytope(axis_directions(n)); }

Polytope regular_simplex(int n) {
    check_dimension(n);
    // Standard basis of R^{n+1} projected onto the hyperplane sum = 0.
    const Vec centroid = Vec::Constant(n + 1, 1.0 / (n + 1));
    Vec normal = Vec::Ones(n + 1);
    const Mat basis = orthogonal_complement(normal);
    std::vector<Vec> pts;
    for (int i = 0; i <= n; ++i) {
        Vec e = Vec::Zero(n + 1);
        e(i) = 1.0;
        Vec v = basis.transpose() * (e - centroid);
        pts.push_back(v / v.norm());
    }
    return Polytope(std::move(pts));
}

Polytope random_polytope(std::uint64_t seed, int n, int count) {
    check_dimension(n);
    if (count <= n) throw InvalidArgument("random polytope needs more than n points");
    Rng rng(seed);
    std::vector<Vec> pts;
    while (static_cast<int>(pts.size()) < count) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = normal_variate(rng);
        if (v.norm() < 1e-6) continue;
        pts.push_back(v.normalized() * (0.8 + 0.4 * uniform_variate(rng)));
    }
    return Polytope(std::move(pts));
}

}  // namespace sipcone
