#include "fatpoints/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fatpoints/error.hpp"

namespace fatpoints {

OutputFormat parse_format(const std::string& name) {
  if (name == "plain") return OutputFormat::plain;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw InvalidInput("unknown format '" + name + "' (expected plain, json or csv)");
}

Json field_to_json(const Field& f) {
  Json j;
  if (f.is_rational()) {
    j["kind"] = "rational";
  } else {
    j["kind"] = "prime";
    j["p"] = f.modulus();
  }
  return j;
}

Field field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw InvalidInput("field must be an object with a string \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "rational") return Field::rational();
  if (kind == "prime") {
    if (!j.contains("p") || !j["p"].is_number_unsigned()) throw InvalidInput("prime field needs a positive integer \"p\"");
    return Field::prime(j["p"].get<std::uint64_t>());
  }
  throw InvalidInput("unknown field kind '" + kind + "'");
}

Json scheme_to_json(const FatPointScheme& z) {
  Json j;
  j["n"] = z.n();
  j["field"] = field_to_json(z.field());
  Json points = Json::array();
  for (const auto& it : z.items()) {
    Json coords = Json::array();
    for (const Scalar& c : it.point.coords()) coords.push_back(c.to_string());
    points.push_back(Json{{"coords", coords}, {"m", it.m}});
  }
  j["points"] = points;
  return j;
}

FatPointScheme scheme_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("scheme document must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_unsigned()) throw InvalidInput("\"n\" must be a non-negative integer");
  const auto n = j["n"].get<std::size_t>();
  const Field f = j.contains("field") ? field_from_json(j["field"]) : Field::rational();
  if (!j.contains("points") || !j["points"].is_array()) throw InvalidInput("\"points\" must be an array");
  std::vector<FatPoint> items;
  std::size_t idx = 0;
  for (const Json& p : j["points"]) {
    const std::string where = "point " + std::to_string(idx++);
    if (!p.is_object() || !p.contains("coords") || !p["coords"].is_array()) {
      throw InvalidInput(where + ": needs a \"coords\" array");
    }
    if (!p.contains("m") || !p["m"].is_number_unsigned() || p["m"].get<std::uint64_t>() < 1 ||
        p["m"].get<std::uint64_t>() > 1000000) {
      throw InvalidInput(where + ": \"m\" must be a positive integer");
    }
    if (p["coords"].size() != n + 1) {
      throw InvalidInput(where + ": expected " + std::to_string(n + 1) + " coordinates, got " +
                         std::to_string(p["coords"].size()));
    }
    std::vector<Scalar> coords;
    for (const Json& c : p["coords"]) {
      if (c.is_string()) {
        coords.push_back(Scalar::parse(c.get<std::string>(), f));
      } else if (c.is_number_integer()) {
        coords.push_back(Scalar::parse(c.dump(), f));
      } else {
        throw InvalidInput(where + ": coordinates must be integer or fraction strings");
      }
    }
    items.push_back({ProjectivePoint(std::move(coords)), p["m"].get<unsigned>()});
  }
  return FatPointScheme(std::move(items));
}

std::string serialize_scheme(const FatPointScheme& z) { return scheme_to_json(z).dump(2) + "\n"; }

FatPointScheme parse_scheme(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  return scheme_from_json(j);
}

FatPointScheme read_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scheme(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidInput("write to '" + path + "' failed");
}

Json profile_to_json(const HilbertProfile& p) {
  Json j;
  j["n"] = p.n;
  j["t_max"] = p.t_max;
  Json rows = Json::array();
  for (unsigned t = 0; t <= p.t_max; ++t) {
    rows.push_back(Json{{"t", t}, {"hilbert", p.hilbert[t]}, {"ideal_dim", p.ideal_dim[t]}});
  }
  j["rows"] = rows;
  j["multiplicity"] = p.e;
  j["regularity_index"] = p.reg ? Json(*p.reg) : Json(nullptr);
  return j;
}

std::string format_profile(const HilbertProfile& p, OutputFormat fmt) {
  std::ostringstream out;
  switch (fmt) {
    case OutputFormat::json:
      out << profile_to_json(p).dump(2) << "\n";
      break;
    case OutputFormat::csv:
      out << "t,hilbert,ideal_dim\n";
      for (unsigned t = 0; t <= p.t_max; ++t) out << t << "," << p.hilbert[t] << "," << p.ideal_dim[t] << "\n";
      out << "multiplicity," << p.e << "\n";
      out << "regularity_index," << (p.reg ? std::to_string(*p.reg) : "") << "\n";
      break;
    case OutputFormat::plain:
      out << "t\tH(t)\tdim I_t\n";
      for (unsigned t = 0; t <= p.t_max; ++t) out << t << "\t" << p.hilbert[t] << "\t" << p.ideal_dim[t] << "\n";
      out << "e = " << p.e << "\n";
      if (p.reg) {
        out << "reg = " << *p.reg << "\n";
      } else {
        out << "reg > " << p.t_max << "\n";
      }
      break;
  }
  return out.str();
}

Json segre_to_json(const SegreReport& r) {
  Json j;
  j["T"] = r.T;
  j["p_min"] = r.p_min;
  Json rows = Json::array();
  for (std::size_t k = 0; k < r.t_j.size(); ++k) {
    const SegreWitness& w = r.witnesses[k];
    rows.push_back(Json{{"j", k + 1},
                        {"T_j", r.t_j[k]},
                        {"witness", Json{{"dim", w.flat.dim()}, {"incident", w.incident}, {"weight", w.weight}}}});
  }
  j["t_j"] = rows;
  return j;
}

namespace {

std::string join_indices(const std::vector<std::size_t>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::string format_segre(const SegreReport& r, OutputFormat fmt) {
  std::ostringstream out;
  switch (fmt) {
    case OutputFormat::json:
      out << segre_to_json(r).dump(2) << "\n";
      break;
    case OutputFormat::csv:
      out << "j,T_j,witness_dim,weight,incident\n";
      for (std::size_t k = 0; k < r.t_j.size(); ++k) {
        const auto& w = r.witnesses[k];
        out << k + 1 << "," << r.t_j[k] << "," << w.flat.dim() << "," << w.weight << "," << join_indices(w.incident, ";")
            << "\n";
      }
      out << "T," << r.T << "\n";
      out << "p_min," << r.p_min << "\n";
      break;
    case OutputFormat::plain:
      for (std::size_t k = 0; k < r.t_j.size(); ++k) {
        const auto& w = r.witnesses[k];
        out << "T_" << k + 1 << " = " << r.t_j[k] << "  (flat of dim " << w.flat.dim() << ", weight " << w.weight
            << ", points " << join_indices(w.incident, " ") << ")\n";
      }
      out << "T = " << r.T << " (first reached at j = " << r.p_min << ")\n";
      break;
  }
  return out.str();
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fatpoints
