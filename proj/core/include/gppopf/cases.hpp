// Bundled test systems. The same text ships as data/case14.m and
// data/case30.m; resolve_case accepts either a file path or a builtin name.
#pragma once

#include <string>

#include "gppopf/matpower.hpp"

namespace gppopf::cases {

const std::string& ieee14_text();
const std::string& ieee30_text();

NetworkCase ieee14();
NetworkCase ieee30();

// "case14"/"case30" resolve to the builtins; anything else is read as a path.
NetworkCase resolve_case(const std::string& path_or_name);

}  // namespace gppopf::cases
