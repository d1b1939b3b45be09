#include "svt/index_set.hpp"

#include <charconv>
#include <sstream>

namespace svt {

std::string join_indices(const std::vector<std::uint32_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

std::vector<std::uint32_t> parse_indices(const std::string& text) {
    std::vector<std::uint32_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        auto last = item.find_last_not_of(" \t\r\n");
        item = item.substr(first, last - first + 1);
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw IndexError("bad index '" + item + "'");
        }
        values.push_back(v);
    }
    return values;
}

}  // namespace svt
