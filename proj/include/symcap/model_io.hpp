#pragma once

#include "symcap/linfty.hpp"

#include <string>
#include <string_view>

namespace symcap {

// Model files are JSON documents with sections "flags", "generators",
// "operations", "augmentations" and optionally "mc_elements".
std::shared_ptr<LInfinityModel> parse_model(std::string_view text);
std::string print_model(const LInfinityModel& m);
std::shared_ptr<LInfinityModel> load_model_file(const std::string& path);

// Parses "c*x + c'*y" style element text: terms "coeff*name" or "name".
Element parse_element(const LInfinityModel& m, std::string_view text);

} // namespace symcap
