#include "polydisc_cli/config_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polydisc/errors.hpp"

namespace polydisc::cli {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar_array(const nlohmann::json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void emit(const nlohmann::json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(it.key()).dump() + ": ";
        emit(it.value(), depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_scalar_array(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(j[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

double finite_number(const nlohmann::json& v, std::size_t idx) {
  if (!v.is_number()) throw InvalidInput("point " + std::to_string(idx) + " has a non-numeric coordinate");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InvalidInput("point " + std::to_string(idx) + " has a non-finite coordinate");
  return d;
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

std::string to_json_text(const ConfigFile& cf) {
  nlohmann::json j;
  j["schema_version"] = cf.schema_version;
  j["n"] = cf.n();
  nlohmann::json pts = nlohmann::json::array();
  for (Point p : cf.points) pts.push_back({p.real(), p.imag()});
  j["points"] = std::move(pts);
  j["meta"] = cf.meta.is_null() ? nlohmann::json::object() : cf.meta;
  return dump_json(j);
}

ConfigFile from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  if (!j.contains("schema_version") || j["schema_version"] != 1) throw InvalidInput("schema_version must be 1");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw InvalidInput("n must be an integer");
  if (!j.contains("points") || !j["points"].is_array()) throw InvalidInput("points must be an array");

  ConfigFile cf;
  const auto& pts = j["points"];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!p.is_array() || p.size() != 2) throw InvalidInput("point " + std::to_string(i) + " is not an [x, y] pair");
    cf.points.emplace_back(finite_number(p[0], i), finite_number(p[1], i));
  }
  if (j["n"].get<long long>() != static_cast<long long>(cf.points.size())) {
    throw InvalidInput("n does not match the number of points");
  }
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) throw InvalidInput("meta must be an object");
    cf.meta = j["meta"];
  }
  return cf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to " + path.string() + " failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("read from " + path.string() + " failed");
  return ss.str();
}

void write_config(const std::filesystem::path& path, const ConfigFile& cf) { write_text(path, to_json_text(cf)); }

ConfigFile read_config(const std::filesystem::path& path) { return from_json_text(read_text(path)); }

}  // namespace polydisc::cli
