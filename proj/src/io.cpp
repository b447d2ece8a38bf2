#include "csl/io.hpp"

#include <fstream>

namespace csl::io {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { fail(errc::parse, msg); }

std::int64_t as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::vector<std::int64_t> as_int_array(const json& j, const char* what) {
    if (!j.is_array()) parse_fail(std::string(what) + " must be an array of integers");
    std::vector<std::int64_t> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_int(v, what));
    return out;
}

} // namespace

json element_to_json(const AmbientGroup& g, const Element& e) {
    if (g.is_integers()) return e.free_coords[0];
    if (g.torsion_moduli.empty()) return json(e.free_coords);
    return json{{"free", e.free_coords}, {"torsion", e.torsion_coords}};
}

Element element_from_json(const AmbientGroup& g, const json& j) {
    if (g.is_integers()) {
        if (!j.is_number_integer()) parse_fail("elements of Z are encoded as bare integers");
        return z_element(j.get<std::int64_t>());
    }
    if (g.torsion_moduli.empty())
        return make_element(g, as_int_array(j, "free coordinates"));
    if (!j.is_object() || !j.contains("free") || !j.contains("torsion"))
        parse_fail("elements of mixed groups need \"free\" and \"torsion\" arrays");
    return make_element(g, as_int_array(j["free"], "free coordinates"),
                        as_int_array(j["torsion"], "torsion coordinates"));
}

json elements_to_json(const AmbientGroup& g, const std::vector<Element>& elems) {
    json out = json::array();
    for (const Element& e : elems) out.push_back(element_to_json(g, e));
    return out;
}

std::vector<Element> elements_from_json(const AmbientGroup& g, const json& j) {
    if (!j.is_array()) parse_fail("expected an array of elements");
    std::vector<Element> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(element_from_json(g, v));
    return out;
}

json ambient_to_json(const AmbientGroup& g) {
    return json{{"free_rank", g.free_rank}, {"torsion", g.torsion_moduli}};
}

AmbientGroup ambient_from_json(const json& j) {
    if (!j.is_object()) parse_fail("\"ambient\" must be an object");
    AmbientGroup g;
    g.free_rank = as_int(j.at("free_rank"), "free_rank");
    if (j.contains("torsion")) g.torsion_moduli = as_int_array(j["torsion"], "torsion");
    validate_group(g);
    return g;
}

namespace {

json color_to_json(const AmbientGroup& g, const ColorClass& c) {
    if (const auto* f = std::get_if<FiniteSet>(&c))
        return json{{"kind", "finite"}, {"elements", elements_to_json(g, f->elements)}};
    if (const auto* s = std::get_if<SemilinearSet>(&c)) {
        json pieces = json::array();
        for (const LinearPiece& p : s->pieces) {
            json piece{{"base", element_to_json(g, p.base)},
                       {"generators", elements_to_json(g, p.generators)}};
            if (p.bounded()) piece["bounds"] = p.bounds;
            pieces.push_back(std::move(piece));
        }
        return json{{"kind", "semilinear"}, {"pieces", std::move(pieces)}};
    }
    if (const auto* fm = std::get_if<FinitePlusMonoid>(&c))
        return json{{"kind", "finite_plus_monoid"},
                    {"core", elements_to_json(g, fm->core.elements)},
                    {"monoid", elements_to_json(g, fm->monoid.generators)}};
    const auto& tm = std::get<TranslatedMonoid>(c);
    return json{{"kind", "translated_monoid"},
                {"base", element_to_json(g, tm.base)},
                {"monoid", elements_to_json(g, tm.monoid.generators)}};
}

ColorClass color_from_json(const AmbientGroup& g, const json& j) {
    if (!j.is_object() || !j.contains("kind")) parse_fail("each color needs a \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "finite")
        return make_finite_set(g, elements_from_json(g, j.at("elements")));
    if (kind == "semilinear") {
        if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty())
            parse_fail("semilinear colors need a nonempty \"pieces\" array");
        SemilinearSet s;
        for (const auto& pj : j["pieces"]) {
            LinearPiece p;
            p.base = element_from_json(g, pj.at("base"));
            p.generators = elements_from_json(g, pj.at("generators"));
            if (pj.contains("bounds")) p.bounds = as_int_array(pj["bounds"], "bounds");
            s.pieces.push_back(std::move(p));
        }
        return s;
    }
    if (kind == "finite_plus_monoid")
        return FinitePlusMonoid{make_finite_set(g, elements_from_json(g, j.at("core"))),
                                MonoidDesc{g, elements_from_json(g, j.at("monoid"))}};
    if (kind == "translated_monoid")
        return TranslatedMonoid{element_from_json(g, j.at("base")),
                                MonoidDesc{g, elements_from_json(g, j.at("monoid"))}};
    parse_fail("unknown color kind: " + kind);
}

} // namespace

json tuple_to_json(const ColorTuple& t) {
    json colors = json::array();
    for (const ColorClass& c : t.colors) colors.push_back(color_to_json(t.ambient, c));
    return json{{"ambient", ambient_to_json(t.ambient)}, {"colors", std::move(colors)}};
}

TupleFile tuple_from_json(const json& j) {
    try {
        if (!j.is_object()) parse_fail("tuple file must be a JSON object");
        AmbientGroup g = ambient_from_json(j.at("ambient"));
        if (!j.contains("colors") || !j["colors"].is_array() || j["colors"].empty())
            parse_fail("tuple file needs a nonempty \"colors\" array");
        std::vector<ColorClass> colors;
        for (const auto& cj : j["colors"]) colors.push_back(color_from_json(g, cj));
        TupleFile out{make_color_tuple(g, std::move(colors)), std::nullopt, std::nullopt};
        if (j.contains("witness_sets")) {
            std::vector<FiniteSet> witnesses;
            for (const auto& wj : j["witness_sets"])
                witnesses.push_back(make_finite_set(g, elements_from_json(g, wj)));
            out.witnesses = std::move(witnesses);
        }
        if (j.contains("inhomogeneous"))
            out.inhomogeneous = make_finite_set(g, elements_from_json(g, j["inhomogeneous"]));
        return out;
    } catch (const json::exception& e) {
        parse_fail(std::string("malformed tuple file: ") + e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse, "cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(errc::parse, "invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

TupleFile load_tuple_file(const std::string& path) { return tuple_from_json(load_json_file(path)); }

json window_to_json(const Window& w) {
    json out = json::array();
    for (const auto& b : w.bounds) out.push_back(json::array({b[0], b[1]}));
    return out;
}

Window window_from_json(const AmbientGroup& g, const json& j) {
    if (!j.is_array()) parse_fail("window must be an array of [lo, hi] pairs");
    std::vector<std::array<std::int64_t, 2>> bounds;
    for (const auto& b : j) {
        if (!b.is_array() || b.size() != 2) parse_fail("window entries must be [lo, hi] pairs");
        bounds.push_back({as_int(b[0], "window bound"), as_int(b[1], "window bound")});
    }
    return make_window(g, std::move(bounds));
}

json certificate_to_json(const CoveringCertificate& cert) {
    json out{{"method", cert.method},
             {"r", cert.r},
             {"h", cert.h.entries},
             {"X", elements_to_json(cert.tuple.ambient, cert.cover.elements)},
             {"bound", cert.bound},
             {"status", to_string(cert.status)}};
    if (cert.window) out["window"] = window_to_json(*cert.window);
    if (cert.equality) out["equality"] = true;
    if (cert.layer_threshold) out["t"] = *cert.layer_threshold;
    if (cert.inhomogeneous_base)
        out["B"] = elements_to_json(cert.tuple.ambient, cert.inhomogeneous_base->elements);
    return out;
}

CoveringCertificate certificate_from_json(const ColorTuple& tuple, const json& j) {
    try {
        CoveringCertificate cert;
        cert.tuple = tuple;
        cert.method = j.at("method").get<std::string>();
        cert.r = as_int(j.at("r"), "r");
        cert.h = make_h_vector(as_int_array(j.at("h"), "h"));
        cert.cover =
            make_finite_set(tuple.ambient, elements_from_json(tuple.ambient, j.at("X")));
        cert.bound = as_int(j.at("bound"), "bound");
        cert.status = cert_status_from_string(j.at("status").get<std::string>());
        if (j.contains("window")) cert.window = window_from_json(tuple.ambient, j["window"]);
        if (j.contains("equality")) cert.equality = j["equality"].get<bool>();
        if (j.contains("t")) cert.layer_threshold = as_int(j["t"], "t");
        if (j.contains("B"))
            cert.inhomogeneous_base =
                make_finite_set(tuple.ambient, elements_from_json(tuple.ambient, j["B"]));
        return cert;
    } catch (const json::exception& e) {
        parse_fail(std::string("malformed certificate: ") + e.what());
    }
}

json profile_to_json(const RepProfile& profile) {
    json counts = json::array();
    for (const auto& [n, cnt] : profile.counts) counts.push_back(json::array({n, cnt}));
    return json{{"h", profile.h.entries}, {"counts", std::move(counts)}};
}

json layer_structure_to_json(const LayerStructure& ls, const HVector& h) {
    return json{{"h", h.entries}, {"t", ls.threshold}, {"H", ls.H},      {"C", ls.C},
                {"c", ls.c},      {"d", ls.d},         {"D", ls.D},      {"stabilized", ls.stabilized}};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fail(errc::parse, "cannot open output file: " + path);
    out << content;
}

} // namespace csl::io
