#include "sipcone/bodies.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <cmath>

namespace sipcone {

namespace {

class EllipseSection final : public PlanarSection {
 public:
    EllipseSection(const Eigen::Matrix2d& shape, const Eigen::Vector2d& center)
        : inverse_(shape.inverse()), center_(center) {}

    double support(const Eigen::Vector2d& nu) const override {
        return nu.dot(center_) + std::sqrt(nu.dot(inverse_ * nu));
    }

 private:
    Eigen::Matrix2d inverse_;
    Eigen::Vector2d center_;
};

class PointHullSection final : public PlanarSection {
 public:
    explicit PointHullSection(std::vector<Eigen::Vector2d> pts) : pts_(std::move(pts)) {}

    double support(const Eigen::Vector2d& nu) const override {
        double best = -INFINITY;
        for (const auto& p : pts_) best = std::max(best, nu.dot(p));
        return best;
    }

 private:
    std::vector<Eigen::Vector2d> pts_;
};

// h_section(nu) = min over tau of h_{K - origin}(E nu + F tau), F spanning
// the directions orthogonal to the plane.
class GenericSection final : public PlanarSection {
 public:
    GenericSection(const SupportBody& body, const PlaneFrame& frame) : body_(body), origin_(frame.origin) {
        const auto n = frame.origin.size();
        Mat e(n, 2);
        e.col(0) = frame.e1;
        e.col(1) = frame.e2;
        e1_ = frame.e1;
        e2_ = frame.e2;
        Eigen::HouseholderQR<Mat> qr(e);
        const Mat q = qr.householderQ();
        complement_ = q.rightCols(n - 2);
    }

    double support(const Eigen::Vector2d& nu) const override {
        const Vec base = nu(0) * e1_ + nu(1) * e2_;
        auto shifted = [&](const Vec& w) { return body_.support(w) - w.dot(origin_); };
        const auto extra = complement_.cols();
        if (extra == 0) return shifted(base);
        const double scale = std::max(nu.norm(), 1e-300);
        if (extra == 1) {
            const Vec f = complement_.col(0);
            return minimize_convex_line([&](double t) { return shifted(base + t * f); }, scale).value;
        }
        Vec point = base;
        double value = shifted(point);
        for (int sweep = 0; sweep < 100; ++sweep) {
            const double before = value;
            for (Eigen::Index j = 0; j < extra; ++j) {
                const Vec f = complement_.col(j);
                const LineMinimum m = minimize_convex_line([&](double t) { return shifted(point + t * f); }, scale);
                if (m.value < value) {
                    point += m.argmin * f;
                    value = m.value;
                }
            }
            if (before - value <= 1e-15 * (1.0 + std::abs(value))) break;
        }
        return value;
    }

 private:
    const SupportBody& body_;
    Vec origin_;
    Vec e1_;
    Vec e2_;
    Mat complement_;
};

}  // namespace

std::unique_ptr<PlanarSection> make_ellipse_section(const Eigen::Matrix2d& shape, const Eigen::Vector2d& center) {
    return std::make_unique<EllipseSection>(shape, center);
}

std::unique_ptr<PlanarSection> make_point_hull_section(std::vector<Eigen::Vector2d> points) {
    if (points.empty()) throw InvalidArgument("empty planar section");
    return std::make_unique<PointHullSection>(std::move(points));
}

std::unique_ptr<PlanarSection> make_generic_section(const SupportBody& body, const PlaneFrame& frame) {
    return std::make_unique<GenericSection>(body, frame);
}

}  // namespace sipcone
