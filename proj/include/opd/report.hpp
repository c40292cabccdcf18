#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace opd {

/// Canonical serialization: sorted keys, no floats anywhere, exact
/// rationals as "num/den" strings. Byte-identical across runs.
std::string canonical_json(const nlohmann::json& j);

/// Degree-indexed dimension tables as JSON objects with string keys.
nlohmann::json dims_to_json(const std::map<int, int>& dims);

/// Fixed-width text table with a header row.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

std::string dims_to_text(const std::map<int, int>& dims);

}  // namespace opd
