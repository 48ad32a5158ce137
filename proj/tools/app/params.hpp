#pragma once

#include <string>
#include <vector>

#include "app.hpp"

namespace weyllab::app {

enum class ParamKind { integer, real, text, flag, real_list };

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::integer;
  Json fallback;  // null means "unset unless given"
  double lo = 0.0;
  double hi = 0.0;
  bool open_interval = false;
  std::vector<std::string> choices;
  std::string help;
};

const std::vector<ParamSpec>& command_parameters(const std::string& command);

}  // namespace weyllab::app
