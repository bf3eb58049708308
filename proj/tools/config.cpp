#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kcli {

namespace {

std::vector<std::string> split_dotted(const std::string& dotted) {
  std::vector<std::string> parts;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) throw ConfigError("empty path component in '" + dotted + "'");
    parts.push_back(part);
  }
  if (parts.empty()) throw ConfigError("empty key");
  return parts;
}

const Json* find(const Json& config, const std::string& dotted) {
  const Json* node = &config;
  for (const auto& part : split_dotted(dotted)) {
    if (!node->is_object()) return nullptr;
    auto it = node->find(part);
    if (it == node->end()) return nullptr;
    node = &*it;
  }
  return node;
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    if (i == count - 1)
      v[i] = stop;
    else if (log)
      v[i] = start * std::pow(stop / start, f);
    else
      v[i] = start + (stop - start) * f;
  }
  return v;
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  Json j;
  try {
    j = Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  return j;
}

void apply_override(Json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + assignment + "'");
  const auto parts = split_dotted(assignment.substr(0, eq));
  const std::string text = assignment.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  Json* node = &config;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    Json& next = (*node)[parts[i]];
    if (next.is_null()) next = Json::object();
    if (!next.is_object()) throw ConfigError("'" + parts[i] + "' is not a table");
    node = &next;
  }
  (*node)[parts.back()] = value;
}

std::vector<Axis> parse_axes(const Json& config, const std::vector<std::string>& allowed) {
  std::vector<Axis> axes;
  auto it = config.find("axes");
  if (it == config.end()) return axes;
  if (!it->is_array()) throw ConfigError("'axes' must be an array");
  if (it->size() > 2) throw ConfigError("at most two swept axes are supported");
  for (const auto& a : *it) {
    if (!a.is_object()) throw ConfigError("each axis must be an object");
    check_keys(a, "", {"name", "start", "stop", "count", "scale"});
    Axis axis;
    axis.name = get_string(a, "name", "");
    if (std::find(allowed.begin(), allowed.end(), axis.name) == allowed.end())
      throw ConfigError("axis '" + axis.name + "' is not a sweepable parameter here");
    for (const auto& other : axes)
      if (other.name == axis.name) throw ConfigError("axis '" + axis.name + "' listed twice");
    if (!has(a, "start") || !has(a, "stop") || !has(a, "count"))
      throw ConfigError("axis '" + axis.name + "' needs start, stop and count");
    axis.start = get_number(a, "start", 0.0);
    axis.stop = get_number(a, "stop", 0.0);
    axis.count = get_int(a, "count", 0);
    if (axis.count < 2) throw ConfigError("axis '" + axis.name + "' needs count >= 2");
    const std::string scale = get_string(a, "scale", "linear");
    if (scale == "log") {
      if (!(axis.start > 0.0 && axis.stop > 0.0))
        throw ConfigError("log axis '" + axis.name + "' needs positive bounds");
      axis.log = true;
    } else if (scale != "linear") {
      throw ConfigError("axis scale must be linear or log");
    }
    axes.push_back(axis);
  }
  return axes;
}

double get_number(const Json& config, const std::string& dotted, double fallback) {
  const Json* v = find(config, dotted);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError("'" + dotted + "' must be a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw ConfigError("'" + dotted + "' must be finite");
  return x;
}

int get_int(const Json& config, const std::string& dotted, int fallback) {
  const Json* v = find(config, dotted);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError("'" + dotted + "' must be an integer");
  return v->get<int>();
}

std::string get_string(const Json& config, const std::string& dotted, const std::string& fallback) {
  const Json* v = find(config, dotted);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError("'" + dotted + "' must be a string");
  return v->get<std::string>();
}

bool has(const Json& config, const std::string& dotted) { return find(config, dotted) != nullptr; }

void check_keys(const Json& config, const std::string& section, const std::vector<std::string>& allowed) {
  const Json* node = section.empty() ? &config : find(config, section);
  if (!node) return;
  if (!node->is_object()) throw ConfigError("'" + section + "' must be a table");
  for (const auto& item : node->items())
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ConfigError("unknown key '" + (section.empty() ? "" : section + ".") + item.key() + "'");
}

}  // namespace kcli
