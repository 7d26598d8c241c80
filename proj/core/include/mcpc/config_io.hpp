#pragma once

#include <iosfwd>
#include <string>

#include "mcpc/config.hpp"

namespace mcpc {

// Plain-text config: one "key = value" per line, '#' comments, keys exactly
// the NetworkConfig field names. Unknown keys are hard errors that name the
// key; a missing file is an error naming the path. The parsed config is
// validated before being returned.
NetworkConfig parse_config_file(const std::string& path);
NetworkConfig parse_config_string(const std::string& text,
                                  const std::string& origin = "<string>");

// Applies a single "key=value" override onto cfg. Same key set and error
// behavior as the file parser. Does not re-validate; call validate() after
// the last override.
void apply_override(NetworkConfig& cfg, const std::string& assignment);

// Canonical text form (parse/serialize round-trips to the same config).
std::string serialize_config(const NetworkConfig& cfg);

}  // namespace mcpc
