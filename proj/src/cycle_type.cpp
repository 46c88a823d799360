#include "arbor/cycle_type.hpp"

#include <algorithm>
#include <stdexcept>

namespace arbor {

CycleType::CycleType(std::vector<std::uint64_t> parts) : parts_(std::move(parts)) {
    for (std::uint64_t p : parts_)
        if (p == 0) throw std::invalid_argument("CycleType: parts must be positive");
    std::sort(parts_.rbegin(), parts_.rend());
}

std::string CycleType::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += '+';
        out += std::to_string(parts_[i]);
    }
    return out;
}


} // namespace arbor
