#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "brownsim/app/config.hpp"

namespace brownsim {

/// c0..c4 binary mixtures and the abp-dense / abp-dilute active systems. The charge
/// tables are reconstructions from the qualitative behaviour each mixture should show.
/// Throws ConfigError for an unknown name.
RunConfig load_preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace brownsim
