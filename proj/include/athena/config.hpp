#pragma once

#include <string_view>

#include <json.hpp>

namespace athena {

// Parses a configuration document into a JSON value. TOML is accepted unless
// the first non-blank character is '{', in which case the text is JSON.
[[nodiscard]] nlohmann::json parse_config(std::string_view source);

}  // namespace athena
