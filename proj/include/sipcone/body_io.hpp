#pragma once

#include "sipcone/bodies.hpp"
#include "sipcone/star_surface.hpp"

#include <json.hpp>

#include <string>

namespace sipcone {

using Json = nlohmann::json;

/// Throws InvalidArgument naming `path.field` for the first key of `obj`
/// outside `allowed`, or when `obj` is not an object.
void require_fields(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path);

Vec vec_from_json(const Json& j, const std::string& path);
Mat mat_from_json(const Json& j, const std::string& path);
Json vec_to_json(const Vec& v);
Json mat_to_json(const Mat& m);

/// Body descriptor kinds: ellipsoid, ball, polytope, superellipsoid, cube,
/// cross_polytope, simplex, affine, random_ellipsoid,
/// perturbed_superellipsoid, random_polytope.
BodyPtr body_from_json(const Json& j, const std::string& path = "body");

/// Star descriptor kinds: star, sphere, random_star.
StarSurface star_from_json(const Json& j, const std::string& path = "surface");

/// A star descriptor or a body descriptor.
Enclosure surface_from_json(const Json& j, const std::string& path = "surface");

bool is_star_kind(const std::string& kind);

/// Explicit descriptor (no generator kinds) of a body built from closed
/// forms; throws InvalidArgument for section bodies.
Json body_to_json(const SupportBody& body);
Json star_to_json(const StarSurface& s);

}  // namespace sipcone
