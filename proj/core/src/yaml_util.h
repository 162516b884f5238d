#pragma once

#include <yaml-cpp/yaml.h>

#include <initializer_list>
#include <string>
#include <string_view>

#include "vixsel/errors.h"

namespace vixsel::detail {

inline YAML::Node parse_yaml(std::string_view source) {
  try {
    return YAML::Load(std::string(source));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("malformed file: ") + e.what());
  }
}

inline std::string mark_of(const YAML::Node& node) {
  const YAML::Mark m = node.Mark();
  if (m.is_null()) return {};
  return " (line " + std::to_string(m.line + 1) + ")";
}

inline void require_map(const YAML::Node& node, const char* what) {
  if (!node.IsMap()) throw ParseError(std::string(what) + " must be a mapping" + mark_of(node));
}

inline void require_sequence(const YAML::Node& node, const char* what) {
  if (!node.IsSequence()) {
    throw ParseError(std::string(what) + " must be a list" + mark_of(node));
  }
}

inline void reject_unknown_keys(const YAML::Node& node,
                                std::initializer_list<std::string_view> allowed,
                                const char* what) {
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) {
      throw ParseError(std::string("unknown key '") + key + "' in " + what +
                       mark_of(kv.first));
    }
  }
}

template <typename T>
T required(const YAML::Node& node, const char* key) {
  const YAML::Node value = node[key];
  if (!value) throw ParseError(std::string("missing key '") + key + "'" + mark_of(node));
  try {
    return value.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(std::string("bad value for '") + key + "'" + mark_of(value));
  }
}

}  // namespace vixsel::detail
