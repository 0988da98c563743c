#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "fatpoints/scheme.hpp"
#include "fatpoints/segre.hpp"

namespace fatpoints {

using Json = nlohmann::ordered_json;

enum class OutputFormat { plain, json, csv };
/// Throws InvalidInput for anything but plain, json or csv.
OutputFormat parse_format(const std::string& name);

Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

/// {"n": n, "field": {...}, "points": [{"coords": ["1", "-2/3", ...], "m": m}, ...]}
/// with normalized coordinates written as exact strings.
Json scheme_to_json(const FatPointScheme& z);
/// Coordinates may be strings ("3", "-2/5") or JSON integers. Throws
/// InvalidInput on any schema violation.
FatPointScheme scheme_from_json(const Json& j);

/// Canonical text: two-space indented JSON with a trailing newline.
std::string serialize_scheme(const FatPointScheme& z);
FatPointScheme parse_scheme(std::string_view text);

FatPointScheme read_scheme_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json profile_to_json(const HilbertProfile& p);
std::string format_profile(const HilbertProfile& p, OutputFormat fmt);

Json segre_to_json(const SegreReport& r);
std::string format_segre(const SegreReport& r, OutputFormat fmt);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace fatpoints
