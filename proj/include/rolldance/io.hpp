#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "rolldance/dancing.hpp"
#include "rolldance/rolling.hpp"

namespace rolldance {

using json = nlohmann::json;

json to_json(const SphericalPolygon& poly);
json to_json(const DancingPair& pair);
json to_json(const HorizontalPolygon& poly);

// Throws ParseError on a wrong kind or malformed arrays.
SphericalPolygon spherical_from_json(const json& doc);
DancingPair dancing_pair_from_json(const json& doc);
HorizontalPolygon horizontal_from_json(const json& doc);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& doc);

// "s,x,y,z" -> quaternion (not normalized).
Quaternion parse_quaternion(const std::string& text);

// Affine chart of the projective plane: the coordinate set to 1 (0, 1 or 2).
struct SvgOptions {
    int chart_axis = 2;
    double size = 640.0;
};

// Draws the vertices A_i, the lines b_i clipped to the view, and the points b_i b_i+1.
std::string dancing_pair_svg(const DancingPair& pair, const SvgOptions& options = {});

}  // namespace rolldance
