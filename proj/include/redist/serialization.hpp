#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "redist/distribution.hpp"

namespace redist {

// JSON documents, reals written with 17 significant digits:
//   {"version":1,"kind":"learned","lp":[...],"lv":[...],"a":x|null,"b":x|null}
//   {"version":1,"kind":"kde","centers":[...],"bandwidth":h,
//    "grid_density":K,"cdf_method":"fast"|"precise"}
//   {"version":1,"kind":"analytic","family":"normal","params":[mu,sigma]}
// A KDE's grid is rebuilt on load. "cdf_method" is optional on input.
std::string to_json(const Distribution& d);
Distribution from_json(std::string_view document);

void save_distribution(const Distribution& d, const std::filesystem::path& path);
Distribution load_distribution(const std::filesystem::path& path);

}  // namespace redist
