#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smoothed/analysis.hpp"
#include "smoothed/distributions.hpp"
#include "smoothed/menu.hpp"

namespace smoothed {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"m": 2, "atoms": [{"v": [...], "p": 0.5, "ln_scale": 0, "ln_p": ...}]}
/// "v" is the unit vector; "ln_scale" and "ln_p" are written for every atom
/// and are optional on input (defaults 0 and ln p).
std::string to_json(const DiscreteDistribution& dist);
DiscreteDistribution discrete_from_json(const std::string& text);

/// {"n": 2, "m": 1, "profiles": [{"v": [[...], [...]], "p": 0.25}]}
std::string to_json(const JointDiscreteDistribution& dist);
JointDiscreteDistribution joint_from_json(const std::string& text);

/// {"m": 2, "entries": [{"q": [...], "price": 1.5, "ln_price": 0.405}]}
/// On input "ln_price" wins over "price" when both are present.
std::string to_json(const Menu& menu);
Menu menu_from_json(const std::string& text);

/// {"schema": 1, "experiment": ..., "meta": {...}, "columns": [...], "rows": [[...]]}
std::string to_json(const Table& table, const std::vector<std::pair<std::string, std::string>>& meta);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace smoothed
