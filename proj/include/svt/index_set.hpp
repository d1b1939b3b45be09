#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "svt/error.hpp"

namespace svt {

/// Strictly increasing set of 1-based frame positions.
template <class Tag>
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<std::uint32_t> values) : values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] == 0) throw IndexError(std::string(Tag::name) + " indices are 1-based; got 0");
            if (i > 0 && values_[i] <= values_[i - 1]) {
                throw IndexError(std::string(Tag::name) + " indices must be strictly increasing");
            }
        }
    }

    /// Sorts and de-duplicates before validating.
    static IndexSet from_unsorted(std::vector<std::uint32_t> values) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return IndexSet(std::move(values));
    }

    const std::vector<std::uint32_t>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }
    std::uint32_t operator[](std::size_t i) const { return values_[i]; }

    bool contains(std::uint32_t index) const {
        return std::binary_search(values_.begin(), values_.end(), index);
    }

    /// Throws unless every index lies in [lowest, frame_count].
    void check_range(std::size_t frame_count, std::uint32_t lowest = 1) const {
        if (values_.empty()) return;
        if (values_.front() < lowest || values_.back() > frame_count) {
            throw IndexError(std::string(Tag::name) + " index out of range [" + std::to_string(lowest) + ", " +
                             std::to_string(frame_count) + "]");
        }
    }

    bool operator==(const IndexSet&) const = default;

private:
    std::vector<std::uint32_t> values_;
};

struct RedundancyTag {
    static constexpr const char* name = "redundancy";
};
struct KeyFrameTag {
    static constexpr const char* name = "key-frame";
};

using RedundancyIndex = IndexSet<RedundancyTag>;
using KeyFrameIndex = IndexSet<KeyFrameTag>;

std::string join_indices(const std::vector<std::uint32_t>& values);
std::vector<std::uint32_t> parse_indices(const std::string& text);

}  // namespace svt
