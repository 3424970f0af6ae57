#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "polydisc/geometry.hpp"

namespace polydisc::cli {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigFile {
  int schema_version = 1;
  PointConfig points;
  nlohmann::json meta = nlohmann::json::object();

  int n() const { return static_cast<int>(points.size()); }
};

// Pretty JSON with every float printed as %.17g; non-finite floats become null.
std::string dump_json(const nlohmann::json& j);

std::string to_json_text(const ConfigFile& cf);
// Throws InvalidInput on schema violations or non-finite coordinates.
ConfigFile from_json_text(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

void write_config(const std::filesystem::path& path, const ConfigFile& cf);
ConfigFile read_config(const std::filesystem::path& path);

}  // namespace polydisc::cli
