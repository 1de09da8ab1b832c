#pragma once

#include <string>

#include "bubble/complex.hpp"
#include "bubble/moves.hpp"
#include "bubble/regularity.hpp"
#include "json.hpp"

namespace bubble {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

struct Document {
    BubbleComplex complex;
    Json metadata = Json::object();
};

// Document layout: format_version, vertices {id, x, y}, edges {id, v_from,
// v_to, half_angle, face_left, face_right}, faces {id, region_label}, metadata.
Json to_json(const BubbleComplex& c, const Json& metadata = Json::object());
// throws InputError on schema violations or unresolved ids
Document document_from_json(const Json& j);

std::string dump_document(const BubbleComplex& c, const Json& metadata = Json::object());
Document parse_document(const std::string& text);
Document load_document(const std::string& path);
void save_document(const std::string& path, const BubbleComplex& c, const Json& metadata = Json::object());

Json to_json(const ValidationReport& r);
Json to_json(const MoveReport& r, bool include_result = false);
// perimeter, areas, pressures (when path independent) and per-face data
Json measurements(const BubbleComplex& c, double tol = 1e-9);

// deterministic SVG 1.1 drawing: faces filled by region, one path per edge
std::string render_svg(const BubbleComplex& c);

}  // namespace bubble
