#include "sipcone/body_io.hpp"

#include "sipcone/errors.hpp"
#include "sipcone/generators.hpp"

#include <algorithm>
#include <cmath>

namespace sipcone {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InvalidArgument(path + ": " + what); }

const Json& field(const Json& obj, const char* name, const std::string& path) {
    const auto it = obj.find(name);
    if (it == obj.end()) fail(path + "." + name, "missing field");
    return *it;
}

double number(const Json& obj, const char* name, const std::string& path) {
    const Json& v = field(obj, name, path);
    if (!v.is_number()) fail(path + "." + name, "expected a number");
    return v.get<double>();
}

int integer(const Json& obj, const char* name, const std::string& path) {
    const Json& v = field(obj, name, path);
    if (!v.is_number_integer()) fail(path + "." + name, "expected an integer");
    return v.get<int>();
}

std::uint64_t seed_of(const Json& obj, const std::string& path) {
    const Json& v = field(obj, "seed", path);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(path + ".seed", "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

int dimension_of(const Json& obj, const std::string& path) {
    const int n = integer(obj, "dimension", path);
    if (n < kMinDimension || n > kMaxDimension) fail(path + ".dimension", "must be between 2 and 8");
    return n;
}

Vec sized_vec(const Json& obj, const char* name, int n, const std::string& path) {
    Vec v = vec_from_json(field(obj, name, path), path + "." + name);
    if (v.size() != n) fail(path + "." + name, "length does not match the dimension");
    return v;
}

std::string kind_of(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const Json& k = field(j, "kind", path);
    if (!k.is_string()) fail(path + ".kind", "expected a string");
    return k.get<std::string>();
}

template <class F>
auto wrap(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const InvalidArgument& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        throw InvalidArgument(path + ": " + msg);
    }
}

}  // namespace

void require_fields(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; });
        if (!known) fail(path + "." + it.key(), "unknown field");
    }
}

Vec vec_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of numbers");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Mat mat_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
    const Vec first = vec_from_json(j[0], path + "[0]");
    Mat m(static_cast<Eigen::Index>(j.size()), first.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Vec row = vec_from_json(j[i], path + "[" + std::to_string(i) + "]");
        if (row.size() != first.size()) fail(path, "rows have different lengths");
        m.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return m;
}

Json vec_to_json(const Vec& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

Json mat_to_json(const Mat& m) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(vec_to_json(m.row(i).transpose()));
    return j;
}

bool is_star_kind(const std::string& kind) { return kind == "star" || kind == "sphere" || kind == "random_star"; }

BodyPtr body_from_json(const Json& j, const std::string& path) {
    const std::string kind = kind_of(j, path);
    return wrap(path, [&]() -> BodyPtr {
        if (kind == "ellipsoid") {
            require_fields(j, {"kind", "dimension", "center", "shape"}, path);
            const int n = dimension_of(j, path);
            const Mat shape = mat_from_json(field(j, "shape", path), path + ".shape");
            if (shape.rows() != n || shape.cols() != n) fail(path + ".shape", "must be dimension x dimension");
            return std::make_shared<Ellipsoid>(sized_vec(j, "center", n, path), shape);
        }
        if (kind == "ball") {
            require_fields(j, {"kind", "dimension", "center", "radius"}, path);
            const int n = dimension_of(j, path);
            const Vec c = j.contains("center") ? sized_vec(j, "center", n, path) : Vec(Vec::Zero(n));
            const double r = number(j, "radius", path);
            if (!(r > 0.0)) fail(path + ".radius", "must be positive");
            return std::make_shared<Ellipsoid>(Ellipsoid::ball(c, r));
        }
        if (kind == "polytope") {
            require_fields(j, {"kind", "dimension", "vertices"}, path);
            const int n = dimension_of(j, path);
            const Mat v = mat_from_json(field(j, "vertices", path), path + ".vertices");
            if (v.cols() != n) fail(path + ".vertices", "vertex length does not match the dimension");
            std::vector<Vec> pts;
            for (Eigen::Index i = 0; i < v.rows(); ++i) pts.push_back(v.row(i).transpose());
            return std::make_shared<Polytope>(std::move(pts));
        }
        if (kind == "superellipsoid") {
            require_fields(j, {"kind", "dimension", "exponent", "semi_axes"}, path);
            const int n = dimension_of(j, path);
            return std::make_shared<Superellipsoid>(number(j, "exponent", path), sized_vec(j, "semi_axes", n, path));
        }
        if (kind == "cube" || kind == "cross_polytope" || kind == "simplex") {
            require_fields(j, {"kind", "dimension"}, path);
            const int n = dimension_of(j, path);
            if (kind == "cube") return std::make_shared<Polytope>(cube(n));
            if (kind == "cross_polytope") return std::make_shared<Polytope>(cross_polytope(n));
            return std::make_shared<Polytope>(regular_simplex(n));
        }
        if (kind == "affine") {
            require_fields(j, {"kind", "base", "linear", "translation"}, path);
            BodyPtr base = body_from_json(field(j, "base", path), path + ".base");
            const int n = base->dimension();
            const Mat m = mat_from_json(field(j, "linear", path), path + ".linear");
            if (m.rows() != n || m.cols() != n) fail(path + ".linear", "must be dimension x dimension");
            const Vec t = j.contains("translation") ? sized_vec(j, "translation", n, path) : Vec(Vec::Zero(n));
            return std::make_shared<AffineImage>(std::move(base), m, t);
        }
        if (kind == "random_ellipsoid") {
            require_fields(j, {"kind", "dimension", "seed", "condition_cap"}, path);
            return std::make_shared<Ellipsoid>(
                random_ellipsoid(seed_of(j, path), dimension_of(j, path), number(j, "condition_cap", path)));
        }
        if (kind == "perturbed_superellipsoid") {
            require_fields(j, {"kind", "dimension", "seed", "exponent", "semi_axes"}, path);
            const int n = dimension_of(j, path);
            return perturbed_superellipsoid(seed_of(j, path), number(j, "exponent", path), sized_vec(j, "semi_axes", n, path));
        }
        if (kind == "random_polytope") {
            require_fields(j, {"kind", "dimension", "seed", "count"}, path);
            return std::make_shared<Polytope>(
                random_polytope(seed_of(j, path), dimension_of(j, path), integer(j, "count", path)));
        }
        fail(path + ".kind", "unknown body kind '" + kind + "'");
    });
}

StarSurface star_from_json(const Json& j, const std::string& path) {
    const std::string kind = kind_of(j, path);
    return wrap(path, [&]() -> StarSurface {
        if (kind == "sphere") {
            require_fields(j, {"kind", "dimension", "radius"}, path);
            const double r = number(j, "radius", path);
            if (!(r > 0.0)) fail(path + ".radius", "must be positive");
            return StarSurface::sphere(dimension_of(j, path), r);
        }
        if (kind == "star") {
            require_fields(j, {"kind", "dimension", "base", "terms"}, path);
            const int n = dimension_of(j, path);
            const Json& terms = field(j, "terms", path);
            if (!terms.is_array()) fail(path + ".terms", "expected an array");
            std::vector<StarTerm> table;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::string tp = path + ".terms[" + std::to_string(i) + "]";
                require_fields(terms[i], {"exponents", "coefficient"}, tp);
                const Json& ex = field(terms[i], "exponents", tp);
                if (!ex.is_array() || static_cast<int>(ex.size()) != n) fail(tp + ".exponents", "expected dimension integers");
                StarTerm t{{}, number(terms[i], "coefficient", tp)};
                for (const Json& e : ex) {
                    if (!e.is_number_integer()) fail(tp + ".exponents", "expected integers");
                    t.exponents.push_back(e.get<int>());
                }
                table.push_back(std::move(t));
            }
            return StarSurface(n, number(j, "base", path), std::move(table));
        }
        if (kind == "random_star") {
            require_fields(j, {"kind", "dimension", "seed", "base", "amplitude", "terms"}, path);
            const int terms = j.contains("terms") ? integer(j, "terms", path) : 8;
            return random_star_surface(seed_of(j, path), dimension_of(j, path), number(j, "base", path),
                                       number(j, "amplitude", path), terms);
        }
        fail(path + ".kind", "unknown star surface kind '" + kind + "'");
    });
}

Enclosure surface_from_json(const Json& j, const std::string& path) {
    if (is_star_kind(kind_of(j, path))) return Enclosure(star_from_json(j, path));
    return Enclosure(body_from_json(j, path));
}

Json body_to_json(const SupportBody& body) {
    if (const auto* e = dynamic_cast<const Ellipsoid*>(&body)) {
        return Json{{"kind", "ellipsoid"},
                    {"dimension", e->dimension()},
                    {"center", vec_to_json(e->center())},
                    {"shape", mat_to_json(e->shape())}};
    }
    if (const auto* p = dynamic_cast<const Polytope*>(&body)) {
        Json verts = Json::array();
        for (const Vec& v : p->vertices()) verts.push_back(vec_to_json(v));
        return Json{{"kind", "polytope"}, {"dimension", p->dimension()}, {"vertices", verts}};
    }
    if (const auto* s = dynamic_cast<const Superellipsoid*>(&body)) {
        return Json{{"kind", "superellipsoid"},
                    {"dimension", s->dimension()},
                    {"exponent", s->exponent()},
                    {"semi_axes", vec_to_json(s->semi_axes())}};
    }
    if (const auto* a = dynamic_cast<const AffineImage*>(&body)) {
        return Json{{"kind", "affine"},
                    {"base", body_to_json(a->base())},
                    {"linear", mat_to_json(a->linear())},
                    {"translation", vec_to_json(a->translation())}};
    }
    throw InvalidArgument("body has no explicit descriptor: " + body.describe());
}

Json star_to_json(const StarSurface& s) {
    Json terms = Json::array();
    for (const StarTerm& t : s.terms()) terms.push_back(Json{{"exponents", t.exponents}, {"coefficient", t.coefficient}});
    return Json{{"kind", "star"}, {"dimension", s.dimension()}, {"base", s.base()}, {"terms", terms}};
}

}  // namespace sipcone
