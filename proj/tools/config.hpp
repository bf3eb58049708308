#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace kcli {

using Json = nlohmann::ordered_json;

/// Raised for anything the user can fix in the config; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log = false;

  std::vector<double> values() const;
};

/// Reads a JSON file. An empty path yields an empty object.
Json load_config(const std::string& path);

/// Applies "a.b.c=value". The value is parsed as JSON when possible and kept
/// as a string otherwise.
void apply_override(Json& config, const std::string& assignment);

/// Parses config["axes"]; names must be distinct and listed in `allowed`.
std::vector<Axis> parse_axes(const Json& config, const std::vector<std::string>& allowed);

/// Typed lookups with defaults; a present value of the wrong type is a ConfigError.
double get_number(const Json& config, const std::string& dotted, double fallback);
int get_int(const Json& config, const std::string& dotted, int fallback);
std::string get_string(const Json& config, const std::string& dotted, const std::string& fallback);
bool has(const Json& config, const std::string& dotted);

/// Rejects keys outside `allowed` in a section ("" for the top level).
void check_keys(const Json& config, const std::string& section, const std::vector<std::string>& allowed);

}  // namespace kcli
