#include "sipcone/harness.hpp"

#include "sipcone/body_ops.hpp"
#include "sipcone/characterize.hpp"
#include "sipcone/errors.hpp"
#include "sipcone/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace sipcone {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InvalidArgument(path + ": " + what); }

struct Defaults {
    int samples;
    int planes;
    double tolerance;
    int min_samples;
    int min_planes;
};

Defaults defaults_for(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::theorem1: return {50, 32, 1e-8, 1, 8};
        case ScenarioKind::theorem2: return {8, 32, 1e-7, 1, 8};
        case ScenarioKind::sip: return {24, 64, 1e-8, 1, 64};
        case ScenarioKind::hammer: return {200, 1, 1e-7, 1, 1};
        case ScenarioKind::kakutani: return {32, 10, 1e-6, 8, 1};
        case ScenarioKind::reflect: return {48, 48, 1e-8, 8, 8};
        case ScenarioKind::explore: return {12, 32, 1e-8, 1, 8};
    }
    return {1, 1, 1e-8, 1, 1};
}

std::vector<const char*> specific_fields(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::theorem1: return {"ellipsoids", "surfaces"};
        case ScenarioKind::theorem2: return {"ellipsoids", "lambdas"};
        case ScenarioKind::sip: return {"body", "surface", "g", "origin", "swapped"};
        case ScenarioKind::hammer: return {"bodies", "origin"};
        case ScenarioKind::kakutani: return {"bodies", "origin"};
        case ScenarioKind::reflect: return {"body", "surface", "origin", "chords"};
        case ScenarioKind::explore: return {"bodies", "surface", "origin", "through_origin"};
    }
    return {};
}

std::vector<const char*> required_fields(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::theorem1: return {"ellipsoids", "surfaces"};
        case ScenarioKind::theorem2: return {"ellipsoids", "lambdas"};
        case ScenarioKind::sip: return {"body", "surface", "g"};
        case ScenarioKind::hammer: return {"bodies"};
        case ScenarioKind::kakutani: return {"bodies"};
        case ScenarioKind::reflect: return {"body", "surface", "chords"};
        case ScenarioKind::explore: return {"bodies", "surface"};
    }
    return {};
}

// A string descriptor names a JSON file, relative to the config's directory.
Json resolve(const Json& j, const std::string& base, const std::string& path) {
    if (!j.is_string()) return j;
    std::filesystem::path file(j.get<std::string>());
    if (file.is_relative() && !base.empty()) file = std::filesystem::path(base) / file;
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(path, "cannot open body file '" + file.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(path, file.string() + ": " + e.what());
    }
}

const Json& list_field(const Json& p, const char* name) {
    const Json& v = p.at(name);
    if (!v.is_array() || v.empty()) fail(std::string("config.") + name, "expected a nonempty array");
    return v;
}

std::vector<BodyPtr> body_list(const Json& p, const char* name, const std::string& base) {
    std::vector<BodyPtr> out;
    const Json& list = list_field(p, name);
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = std::string("config.") + name + "[" + std::to_string(i) + "]";
        out.push_back(body_from_json(resolve(list[i], base, path), path));
    }
    return out;
}

double lambda_value(const Json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string() && j.get<std::string>() == "sqrt2") return std::numbers::sqrt2;
    fail(path, "expected a number or \"sqrt2\"");
}

Vec origin_of(const Json& p, int n) {
    if (!p.contains("origin")) return Vec::Zero(n);
    Vec o = vec_from_json(p.at("origin"), "config.origin");
    if (o.size() != n) fail("config.origin", "length does not match the dimension");
    return o;
}

const Ellipsoid& as_ellipsoid(const BodyPtr& b, const std::string& path) {
    const auto* e = dynamic_cast<const Ellipsoid*>(b.get());
    if (!e) fail(path, "expected an ellipsoid descriptor");
    return *e;
}

// Builds every object a scenario needs, so parse-time validation and the run
// share one code path.
void check_parameters(ScenarioKind kind, const Json& p, const std::string& base) {
    for (const char* name : required_fields(kind)) {
        if (!p.contains(name)) fail(std::string("config.") + name, "missing field");
    }
    switch (kind) {
        case ScenarioKind::theorem1: {
            const auto es = body_list(p, "ellipsoids", base);
            for (std::size_t i = 0; i < es.size(); ++i) as_ellipsoid(es[i], "config.ellipsoids[" + std::to_string(i) + "]");
            const Json& ss = list_field(p, "surfaces");
            for (std::size_t i = 0; i < ss.size(); ++i) {
                const std::string path = "config.surfaces[" + std::to_string(i) + "]";
                star_from_json(resolve(ss[i], base, path), path);
            }
            break;
        }
        case ScenarioKind::theorem2: {
            const auto es = body_list(p, "ellipsoids", base);
            for (std::size_t i = 0; i < es.size(); ++i) as_ellipsoid(es[i], "config.ellipsoids[" + std::to_string(i) + "]");
            const Json& ls = list_field(p, "lambdas");
            for (std::size_t i = 0; i < ls.size(); ++i) {
                const std::string path = "config.lambdas[" + std::to_string(i) + "]";
                if (!(lambda_value(ls[i], path) > 1.0)) fail(path, "lambda must exceed 1");
            }
            break;
        }
        case ScenarioKind::sip: {
            const BodyPtr k = body_from_json(resolve(p.at("body"), base, "config.body"), "config.body");
            surface_from_json(resolve(p.at("surface"), base, "config.surface"), "config.surface");
            body_from_json(resolve(p.at("g"), base, "config.g"), "config.g");
            origin_of(p, k->dimension());
            if (p.contains("swapped") && !p.at("swapped").is_boolean()) fail("config.swapped", "expected a boolean");
            break;
        }
        case ScenarioKind::hammer:
        case ScenarioKind::kakutani: {
            const auto bs = body_list(p, "bodies", base);
            origin_of(p, bs.front()->dimension());
            break;
        }
        case ScenarioKind::reflect: {
            const BodyPtr k = body_from_json(resolve(p.at("body"), base, "config.body"), "config.body");
            surface_from_json(resolve(p.at("surface"), base, "config.surface"), "config.surface");
            origin_of(p, k->dimension());
            const Json& chords = list_field(p, "chords");
            for (std::size_t i = 0; i < chords.size(); ++i) {
                const std::string path = "config.chords[" + std::to_string(i) + "]";
                require_fields(chords[i], {"p", "x"}, path);
                if (!chords[i].contains("p")) fail(path + ".p", "missing field");
                vec_from_json(chords[i].at("p"), path + ".p");
                if (chords[i].contains("x")) vec_from_json(chords[i].at("x"), path + ".x");
            }
            break;
        }
        case ScenarioKind::explore: {
            const auto bs = body_list(p, "bodies", base);
            surface_from_json(resolve(p.at("surface"), base, "config.surface"), "config.surface");
            origin_of(p, bs.front()->dimension());
            if (p.contains("through_origin") && !p.at("through_origin").is_boolean()) {
                fail("config.through_origin", "expected a boolean");
            }
            break;
        }
    }
}

std::string case_name(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

struct Runner {
    const ScenarioConfig& config;
    const Json& p;
    const std::string& base;
    int samples;
    int planes;
    double tol;
    Json cases = Json::array();
    Json aggregate = Json::object();
    std::vector<CsvRow> rows;
    bool verdict = true;

    void row(const std::string& id, int sample, const char* kind, double value) {
        rows.push_back(CsvRow{id, sample, kind, value});
    }

    void theorem1() {
        const auto es = body_list(p, "ellipsoids", base);
        const Json& ss = p.at("surfaces");
        double worst = 0.0;
        double worst_affine = 0.0;
        for (std::size_t i = 0; i < es.size(); ++i) {
            for (std::size_t j = 0; j < ss.size(); ++j) {
                const std::string path = "config.surfaces[" + std::to_string(j) + "]";
                const StarSurface s = star_from_json(resolve(ss[j], base, path), path);
                const Theorem1Report r = verify_theorem1(as_ellipsoid(es[i], "config.ellipsoids"), s, samples, planes, tol,
                                                         config.seed);
                const std::string id = case_name("e", i) + "-" + case_name("s", j);
                cases.push_back(Json{{"case", id},
                                     {"max_residual", r.max_residual},
                                     {"max_affine_residual", r.max_affine_residual},
                                     {"samples", r.samples},
                                     {"verdict", r.verdict}});
                for (std::size_t k = 0; k < r.residuals.size(); ++k) {
                    row(id, static_cast<int>(k), "through_origin", r.residuals[k]);
                    row(id, static_cast<int>(k), "affine", r.affine_residuals[k]);
                }
                worst = std::max(worst, r.max_residual);
                worst_affine = std::max(worst_affine, r.max_affine_residual);
                verdict = verdict && r.verdict;
            }
        }
        aggregate = Json{{"max_residual", worst}, {"max_affine_residual", worst_affine}};
    }

    void theorem2() {
        const auto es = body_list(p, "ellipsoids", base);
        const Json& ls = p.at("lambdas");
        double worst = 0.0;
        for (std::size_t i = 0; i < es.size(); ++i) {
            const Ellipsoid& e1 = as_ellipsoid(es[i], "config.ellipsoids");
            for (std::size_t j = 0; j < ls.size(); ++j) {
                const double lambda = lambda_value(ls[j], "config.lambdas");
                const E3Result e3 = construct_e3(e1, lambda);
                const E3Certificate cert = certify_e3(e1, lambda, samples, planes, config.seed);
                const bool tag_ok = (e3.regime == E3Regime::equal && std::abs(e3.mu - lambda) <= 1e-9) ||
                                    (e3.regime == E3Regime::e3_inside_e2 && e3.mu < lambda) ||
                                    (e3.regime == E3Regime::e2_inside_e3 && e3.mu > lambda);
                bool ok = tag_ok && cert.e3_defect <= tol;
                if (e3.regime == E3Regime::equal) ok = ok && cert.e2_defect <= tol;
                const std::string id = case_name("e", i) + "-" + case_name("l", j);
                cases.push_back(Json{{"case", id},
                                     {"lambda", lambda},
                                     {"mu", e3.mu},
                                     {"regime", to_string(e3.regime)},
                                     {"e3_defect", cert.e3_defect},
                                     {"e2_defect", cert.e2_defect},
                                     {"points", cert.points},
                                     {"verdict", ok}});
                row(id, 0, "e3_defect", cert.e3_defect);
                row(id, 0, "e2_defect", cert.e2_defect);
                worst = std::max(worst, cert.e3_defect);
                verdict = verdict && ok;
            }
        }
        aggregate = Json{{"max_e3_defect", worst}};
    }

    void sip() {
        const BodyPtr k = body_from_json(resolve(p.at("body"), base, "config.body"), "config.body");
        SipScene scene{k, surface_from_json(resolve(p.at("surface"), base, "config.surface"), "config.surface"),
                       body_from_json(resolve(p.at("g"), base, "config.g"), "config.g"), origin_of(p, k->dimension())};
        SipOptions opt;
        opt.samples = samples;
        opt.planes = planes;
        opt.tol = tol;
        opt.swapped = p.value("swapped", false);
        opt.seed = config.seed;
        const SipReport r = sip_check(scene, opt);
        for (std::size_t i = 0; i < r.records.size(); ++i) {
            const SipRecord& rec = r.records[i];
            const std::string id = case_name("x", i);
            cases.push_back(Json{{"case", id},
                                 {"x", vec_to_json(rec.x)},
                                 {"y", vec_to_json(rec.y)},
                                 {"plane_normal", vec_to_json(rec.plane.normal())},
                                 {"plane_offset", rec.plane.offset()},
                                 {"coplanarity", rec.coplanarity},
                                 {"g_forward", rec.g_forward},
                                 {"g_reverse", rec.g_reverse},
                                 {"g_match", rec.g_match}});
            row("sip", static_cast<int>(i), "coplanarity", rec.coplanarity);
            row("sip", static_cast<int>(i), "g_match", rec.g_match);
        }
        aggregate = Json{{"scale", r.scale},
                         {"max_coplanarity", r.max_coplanarity},
                         {"mean_coplanarity", r.mean_coplanarity},
                         {"max_g_match", r.max_g_match},
                         {"mean_g_match", r.mean_g_match},
                         {"swapped", r.swapped},
                         {"surface_kind", scene.s.is_star() ? "star" : "body"}};
        verdict = r.verdict;
    }

    void hammer() {
        const auto bs = body_list(p, "bodies", base);
        const Vec o = origin_of(p, bs.front()->dimension());
        std::size_t agreements = 0;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const HammerResult h = hammer_test(*bs[i], o, samples, tol);
            const SymmetryResult s = central_symmetry_check(*bs[i], o, tol);
            const bool agree = h.symmetric == s.symmetric;
            agreements += agree ? 1 : 0;
            const std::string id = case_name("b", i);
            cases.push_back(Json{{"case", id},
                                 {"body", bs[i]->describe()},
                                 {"hammer", h.symmetric},
                                 {"hammer_defect", h.worst_defect},
                                 {"worst_direction", vec_to_json(h.worst_direction)},
                                 {"central_symmetry", s.symmetric},
                                 {"symmetry_defect", s.defect},
                                 {"agree", agree}});
            row(id, 0, "hammer_defect", h.worst_defect);
            row(id, 0, "symmetry_defect", s.defect);
            verdict = verdict && agree;
        }
        aggregate = Json{{"bodies", bs.size()}, {"agreements", agreements}};
    }

    void kakutani() {
        const auto bs = body_list(p, "bodies", base);
        const Vec o = origin_of(p, bs.front()->dimension());
        double worst = 0.0;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const KakutaniReport r = kakutani_test(*bs[i], o, planes, tol, samples, config.seed);
            const std::string id = case_name("b", i);
            Json per = Json::array();
            for (std::size_t j = 0; j < r.planes.size(); ++j) {
                const KakutaniPlane& kp = r.planes[j];
                per.push_back(Json{{"normal", vec_to_json(kp.normal)},
                                   {"line", vec_to_json(kp.line)},
                                   {"defect", kp.defect},
                                   {"converged", kp.converged}});
                row(id, static_cast<int>(j), "shadow_defect", kp.defect);
            }
            cases.push_back(Json{{"case", id},
                                 {"body", bs[i]->describe()},
                                 {"passes", r.passes},
                                 {"worst_defect", r.worst_defect},
                                 {"planes", per}});
            worst = std::max(worst, r.worst_defect);
            verdict = verdict && r.passes;
        }
        aggregate = Json{{"worst_defect", worst}};
    }

    void reflect() {
        const BodyPtr k = body_from_json(resolve(p.at("body"), base, "config.body"), "config.body");
        const Enclosure s = surface_from_json(resolve(p.at("surface"), base, "config.surface"), "config.surface");
        const int n = k->dimension();
        const Vec o = origin_of(p, n);
        const Json& chords = p.at("chords");
        double worst_i = 0.0;
        double worst_ii = 0.0;
        for (std::size_t i = 0; i < chords.size(); ++i) {
            const std::string path = "config.chords[" + std::to_string(i) + "]";
            const Vec pd = vec_from_json(chords[i].at("p"), path + ".p");
            if (pd.size() != n) fail(path + ".p", "length does not match the dimension");
            const Vec pp = s.point(o, pd);
            const Vec qq = s.antipode(o, pp);
            Vec xd;
            if (chords[i].contains("x")) {
                xd = vec_from_json(chords[i].at("x"), path + ".x");
                if (xd.size() != n) fail(path + ".x", "length does not match the dimension");
            } else {
                xd = orthonormal_basis(intersection_plane(*k, pp, qq, o, planes).plane).col(0);
            }
            const Vec xx = s.point(o, xd);
            const Vec yy = s.antipode(o, xx);
            const ReflectionReport r = reflection_conjugacy_check(*k, o, pp, qq, xx, yy, tol, samples, planes);
            const std::string id = case_name("c", i);
            cases.push_back(Json{{"case", id},
                                 {"p", vec_to_json(pp)},
                                 {"q", vec_to_json(qq)},
                                 {"x", vec_to_json(xx)},
                                 {"y", vec_to_json(yy)},
                                 {"defect_i", r.defect_i},
                                 {"defect_ii", r.defect_ii},
                                 {"passes_i", r.passes_i},
                                 {"passes_ii", r.passes_ii}});
            row(id, 0, "defect_i", r.defect_i);
            row(id, 0, "defect_ii", r.defect_ii);
            worst_i = std::max(worst_i, r.defect_i);
            worst_ii = std::max(worst_ii, r.defect_ii);
            verdict = verdict && r.passes_i && r.passes_ii;
        }
        aggregate = Json{{"max_defect_i", worst_i}, {"max_defect_ii", worst_ii}};
    }

    void explore() {
        const auto bs = body_list(p, "bodies", base);
        const Enclosure s = surface_from_json(resolve(p.at("surface"), base, "config.surface"), "config.surface");
        const Vec o = origin_of(p, bs.front()->dimension());
        const bool through = p.value("through_origin", true);
        Json values = Json::array();
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const DeviationResult d = deviation_metric(*bs[i], s, o, samples, planes, through, config.seed);
            const ConvexityResult cv = strict_convexity_check(*bs[i]);
            const std::string id = case_name("b", i);
            cases.push_back(Json{{"case", id},
                                 {"body", bs[i]->describe()},
                                 {"strictly_convex", cv.strictly_convex},
                                 {"flatness", cv.flatness},
                                 {"deviation", d.value},
                                 {"worst_x", vec_to_json(d.worst_x)}});
            for (std::size_t k = 0; k < d.residuals.size(); ++k) row(id, static_cast<int>(k), "deviation", d.residuals[k]);
            values.push_back(d.value);
        }
        aggregate = Json{{"deviations", values},
                         {"through_origin", through},
                         {"surface_kind", s.is_star() ? "star" : "body"},
                         {"surface_symmetric", s.symmetric_about(o)}};
        verdict = true;
    }
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

}  // namespace

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::theorem1: return "theorem1";
        case ScenarioKind::theorem2: return "theorem2";
        case ScenarioKind::sip: return "sip";
        case ScenarioKind::hammer: return "hammer";
        case ScenarioKind::kakutani: return "kakutani";
        case ScenarioKind::reflect: return "reflect";
        case ScenarioKind::explore: return "explore";
    }
    return "theorem1";
}

ScenarioKind scenario_from_string(const std::string& name) {
    for (ScenarioKind k : {ScenarioKind::theorem1, ScenarioKind::theorem2, ScenarioKind::sip, ScenarioKind::hammer,
                           ScenarioKind::kakutani, ScenarioKind::reflect, ScenarioKind::explore}) {
        if (to_string(k) == name) return k;
    }
    throw InvalidArgument("config.scenario: unknown scenario '" + name + "'");
}

bool is_exploratory(ScenarioKind kind) { return kind == ScenarioKind::explore; }

int ScenarioConfig::effective_samples() const { return samples.value_or(defaults_for(kind).samples); }
int ScenarioConfig::effective_planes() const { return planes.value_or(defaults_for(kind).planes); }
double ScenarioConfig::effective_tolerance() const { return tolerance.value_or(defaults_for(kind).tolerance); }

ScenarioConfig parse_config(const Json& doc, const std::string& base_dir) {
    if (!doc.is_object()) fail("config", "expected an object");
    if (!doc.contains("scenario") || !doc.at("scenario").is_string()) fail("config.scenario", "missing or not a string");
    ScenarioConfig c;
    c.base_dir = base_dir;
    c.kind = scenario_from_string(doc.at("scenario").get<std::string>());
    const Defaults d = defaults_for(c.kind);
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        const Json& v = it.value();
        if (key == "scenario") continue;
        if (key == "seed") {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
                fail("config.seed", "expected a nonnegative integer");
            }
            c.seed = v.get<std::uint64_t>();
        } else if (key == "samples") {
            if (!v.is_number_integer() || v.get<int>() < d.min_samples) {
                fail("config.samples", "expected an integer of at least " + std::to_string(d.min_samples));
            }
            c.samples = v.get<int>();
        } else if (key == "planes") {
            if (!v.is_number_integer() || v.get<int>() < d.min_planes) {
                fail("config.planes", "expected an integer of at least " + std::to_string(d.min_planes));
            }
            c.planes = v.get<int>();
        } else if (key == "tolerance") {
            if (!v.is_number() || !(v.get<double>() > 0.0)) fail("config.tolerance", "expected a positive number");
            c.tolerance = v.get<double>();
        } else if (key == "output") {
            require_fields(v, {"report", "csv"}, "config.output");
            for (const char* f : {"report", "csv"}) {
                if (!v.contains(f)) continue;
                if (!v.at(f).is_string()) fail(std::string("config.output.") + f, "expected a string");
                (std::string(f) == "report" ? c.report_path : c.csv_path) = v.at(f).get<std::string>();
            }
        } else {
            const auto allowed = specific_fields(c.kind);
            const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
            if (!known) fail("config." + key, "unknown field for scenario " + to_string(c.kind));
            c.parameters[key] = v;
        }
    }
    if (!doc.contains("seed")) fail("config.seed", "missing field");
    check_parameters(c.kind, c.parameters, c.base_dir);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Json doc;
    try {
        doc = Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
    return parse_config(doc, std::filesystem::path(path).parent_path().string());
}

Json config_to_json(const ScenarioConfig& c) {
    Json j = c.parameters;
    j["scenario"] = to_string(c.kind);
    j["seed"] = c.seed;
    if (c.samples) j["samples"] = *c.samples;
    if (c.planes) j["planes"] = *c.planes;
    if (c.tolerance) j["tolerance"] = *c.tolerance;
    if (c.report_path || c.csv_path) {
        Json out = Json::object();
        if (c.report_path) out["report"] = *c.report_path;
        if (c.csv_path) out["csv"] = *c.csv_path;
        j["output"] = out;
    }
    return j;
}

void save_config(const ScenarioConfig& config, const std::string& path) {
    write_text(path, config_to_json(config).dump(2) + "\n");
}

RunReport run(const ScenarioConfig& config) {
    Runner r{config, config.parameters, config.base_dir, config.effective_samples(), config.effective_planes(),
             config.effective_tolerance(), Json::array(), Json::object(), {}, true};
    switch (config.kind) {
        case ScenarioKind::theorem1: r.theorem1(); break;
        case ScenarioKind::theorem2: r.theorem2(); break;
        case ScenarioKind::sip: r.sip(); break;
        case ScenarioKind::hammer: r.hammer(); break;
        case ScenarioKind::kakutani: r.kakutani(); break;
        case ScenarioKind::reflect: r.reflect(); break;
        case ScenarioKind::explore: r.explore(); break;
    }
    Json body{{"schema", kReportSchema},
              {"scenario", to_string(config.kind)},
              {"config", config_to_json(config)},
              {"effective", Json{{"seed", config.seed},
                                 {"samples", r.samples},
                                 {"planes", r.planes},
                                 {"tolerance", r.tol}}},
              {"cases", r.cases},
              {"aggregate", r.aggregate},
              {"exploratory", is_exploratory(config.kind)},
              {"verdict", r.verdict}};
    return RunReport{config.kind, std::move(body), std::move(r.rows), r.verdict};
}

std::string render_report(const RunReport& report) { return report.body.dump(2) + "\n"; }

void emit_report(const RunReport& report, const std::string& path) { write_text(path, render_report(report)); }

std::string render_csv(const RunReport& report) {
    std::string out = std::string("# ") + kCsvSchema + "\ncase,sample,kind,value\n";
    for (const CsvRow& r : report.rows) {
        out += r.case_id + "," + std::to_string(r.sample) + "," + r.kind + "," + format_double(r.value) + "\n";
    }
    return out;
}

void write_csv(const RunReport& report, const std::string& path) { write_text(path, render_csv(report)); }

int exit_code(const RunReport& report) { return is_exploratory(report.kind) || report.verdict ? 0 : 1; }

}  // namespace sipcone
