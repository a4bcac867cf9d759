#pragma once

#include <string>

#include "asap/pipeline.hpp"

namespace asap {

// Flat `key = value` scenario files ('#' starts a comment). Keys are
// documented in the README; unknown keys are rejected so typos fail loudly.
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace asap
