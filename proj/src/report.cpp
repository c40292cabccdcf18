#include "opd/report.hpp"

#include <sstream>

namespace opd {

std::string canonical_json(const nlohmann::json& j) { return j.dump(); }

nlohmann::json dims_to_json(const std::map<int, int>& dims) {
    nlohmann::json out = nlohmann::json::object();
    for (auto& [d, c] : dims) out[std::to_string(d)] = c;
    return out;
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width(header.size());
    for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (auto& row : rows)
        for (size_t c = 0; c < row.size() && c < width.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        for (size_t c = 0; c < width.size(); ++c) {
            std::string cell = c < row.size() ? row[c] : "";
            os << cell << std::string(width[c] - cell.size() + 2, ' ');
        }
        os << "\n";
    };
    emit(header);
    std::vector<std::string> rule;
    for (size_t c = 0; c < width.size(); ++c) rule.push_back(std::string(width[c], '-'));
    emit(rule);
    for (auto& row : rows) emit(row);
    return os.str();
}

std::string dims_to_text(const std::map<int, int>& dims) {
    if (dims.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [d, c] : dims) {
        if (!first) os << " ";
        os << d << ":" << c;
        first = false;
    }
    return os.str();
}

}  // namespace opd
