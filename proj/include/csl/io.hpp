#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "csl/covering.hpp"
#include "csl/layers.hpp"
#include "csl/set_model.hpp"

namespace csl::io {

using nlohmann::json;

// Element text encoding: bare integers in Z, length-d arrays in Z^d, and
// {"free": [...], "torsion": [...]} objects in mixed groups.
json element_to_json(const AmbientGroup& g, const Element& e);
Element element_from_json(const AmbientGroup& g, const json& j);
json elements_to_json(const AmbientGroup& g, const std::vector<Element>& elems);
std::vector<Element> elements_from_json(const AmbientGroup& g, const json& j);

json ambient_to_json(const AmbientGroup& g);
AmbientGroup ambient_from_json(const json& j);

json tuple_to_json(const ColorTuple& t);

/// A tuple file may carry optional companions: per-color witness sets for
/// approx-submonoid covers and the finite set B of an inhomogeneous family.
struct TupleFile {
    ColorTuple tuple;
    std::optional<std::vector<FiniteSet>> witnesses;
    std::optional<FiniteSet> inhomogeneous;
};

TupleFile tuple_from_json(const json& j);
TupleFile load_tuple_file(const std::string& path);

json window_to_json(const Window& w);
Window window_from_json(const AmbientGroup& g, const json& j);

json certificate_to_json(const CoveringCertificate& cert);
/// Certificates do not embed their tuple; supply the tuple they refer to.
CoveringCertificate certificate_from_json(const ColorTuple& tuple, const json& j);

json profile_to_json(const RepProfile& profile);
json layer_structure_to_json(const LayerStructure& ls, const HVector& h);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace csl::io
