#ifndef SO3TRACK_CONFIG_HPP_
#define SO3TRACK_CONFIG_HPP_

#include <string>

#include "so3track/integrator.hpp"

namespace so3track {

// Malformed config text; carries line number and key context in the message.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid config with an out-of-range or inconsistent value.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Flat `key = value` text with dotted keys; `#` starts a comment. Unknown
// keys are a hard error. The `controller` key is required, everything else
// defaults. See the README for the full key reference.
SimConfig parse_config_text(const std::string& text);
SimConfig parse_config(const std::string& path);

// Invariant checks shared by the parser and in-code construction.
void validate_config(const SimConfig& config);

}  // namespace so3track

#endif  // SO3TRACK_CONFIG_HPP_
