#include "sipcone/sampling.hpp"

#include "sipcone/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace sipcone {

double normal_variate(Rng& rng) {
    boost::random::normal_distribution<double> dist(0.0, 1.0);
    return dist(rng);
}

double uniform_variate(Rng& rng) {
    boost::random::uniform_01<double> dist;
    return dist(rng);
}

std::vector<Vec> sphere_directions(int n, int count, std::uint64_t seed) {
    check_dimension(n);
    std::vector<Vec> out;
    if (count <= 0) return out;
    out.reserve(static_cast<std::size_t>(count));
    if (n == 2) {
        for (int i = 0; i < count; ++i) {
            const double a = 2.0 * std::numbers::pi * (i + 0.5) / count;
            Vec v(2);
            v << std::cos(a), std::sin(a);
            out.push_back(v);
        }
    } else if (n == 3) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        // The seed turns the lattice about the polar axis.
        const double turn = static_cast<double>(seed % 1000003) * (std::numbers::phi - 1.0);
        const double spin = 2.0 * std::numbers::pi * (turn - std::floor(turn));
        for (int i = 0; i < count; ++i) {
            const double z = 1.0 - 2.0 * (i + 0.5) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double a = golden * i + spin;
            Vec v(3);
            v << r * std::cos(a), r * std::sin(a), z;
            out.push_back(v);
        }
    } else {
        Rng rng(seed);
        while (static_cast<int>(out.size()) < count) {
            Vec v(n);
            for (int j = 0; j < n; ++j) v(j) = normal_variate(rng);
            const double len = v.norm();
            if (len > 1e-8) out.push_back(v / len);
        }
    }
    return out;
}

std::vector<Vec> axis_directions(int n) {
    std::vector<Vec> out;
    for (int i = 0; i < n; ++i) {
        for (double s : {1.0, -1.0}) {
            Vec v = Vec::Zero(n);
            v(i) = s;
            out.push_back(v);
        }
    }
    return out;
}

const std::vector<Vec>& probe_directions(int n) {
    check_dimension(n);
    static std::mutex mutex;
    static std::map<int, std::vector<Vec>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<Vec> dirs = axis_directions(n);
        const int extra = n == 2 ? 720 : (n == 3 ? 1500 : 400 * n);
        for (Vec& v : sphere_directions(n, extra, 0xd1ec7)) dirs.push_back(std::move(v));
        it = cache.emplace(n, std::move(dirs)).first;
    }
    return it->second;
}

std::vector<Vec> span_directions(const Mat& basis, int count, std::uint64_t seed) {
    std::vector<Vec> out;
    if (basis.cols() == 1) {
        out.push_back(basis.col(0));
        out.push_back(-basis.col(0));
    } else if (basis.cols() == 2) {
        for (int i = 0; i < count; ++i) {
            const double a = 2.0 * std::numbers::pi * i / count;
            out.push_back(std::cos(a) * basis.col(0) + std::sin(a) * basis.col(1));
        }
    } else {
        for (const Vec& v : sphere_directions(static_cast<int>(basis.cols()), count, seed)) out.push_back(basis * v);
    }
    return out;
}

LineMinimum minimize_on_interval(const std::function<double(double)>& f, double lo, double hi) {
    std::uintmax_t max_iter = 200;
    const auto [x, fx] = boost::math::tools::brent_find_minima(
        f, lo, hi, std::numeric_limits<double>::digits, max_iter);
    return LineMinimum{x, fx};
}

LineMinimum minimize_convex_line(const std::function<double(double)>& f, double scale) {
    const double f0 = f(0.0);
    double t = scale > 0.0 ? scale : 1.0;
    for (int i = 0; i < 200; ++i) {
        if (f(t) >= f0 && f(-t) >= f0) break;
        t *= 2.0;
    }
    LineMinimum best = minimize_on_interval(f, -t, t);
    if (f0 < best.value) best = LineMinimum{0.0, f0};
    return best;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, int max_iter) {
    const bool lo_positive = f(lo) > 0.0;
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if ((f(mid) > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

SimplexResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& start,
                          double initial_step, int max_iter, double ftol) {
    const Eigen::Index dim = start.size();
    std::vector<Vec> pts;
    std::vector<double> vals;
    pts.push_back(start);
    for (Eigen::Index i = 0; i < dim; ++i) {
        Vec p = start;
        p(i) += initial_step;
        pts.push_back(p);
    }
    for (const Vec& p : pts) vals.push_back(f(p));

    std::vector<std::size_t> order(pts.size());
    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];
        double spread = 0.0;
        for (const Vec& p : pts) spread = std::max(spread, (p - pts[best]).cwiseAbs().maxCoeff());
        if (std::abs(vals[worst] - vals[best]) <= ftol * (1.0 + std::abs(vals[best])) && spread < 1e-10) {
            converged = true;
            break;
        }
        Vec centroid = Vec::Zero(dim);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i != worst) centroid += pts[i];
        }
        centroid /= static_cast<double>(dim);

        const Vec reflected = centroid + (centroid - pts[worst]);
        const double fr = f(reflected);
        if (fr < vals[best]) {
            const Vec expanded = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = f(expanded);
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        const Vec contracted = outside ? Vec(centroid + 0.5 * (reflected - centroid))
                                       : Vec(centroid + 0.5 * (pts[worst] - centroid));
        const double fc = f(contracted);
        if (fc < std::min(fr, vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == best) continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            vals[i] = f(pts[i]);
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    return SimplexResult{pts[idx], vals[idx], converged};
}

}  // namespace sipcone
