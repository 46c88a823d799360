#include "arbor/spherical_index.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace arbor {

SphericalIndex::SphericalIndex(std::vector<std::uint32_t> degrees) : degrees_(std::move(degrees)) {
    if (degrees_.empty()) throw std::invalid_argument("SphericalIndex: needs at least one level");
    partial_.reserve(degrees_.size() + 1);
    partial_.push_back(1);
    for (std::uint32_t d : degrees_) {
        if (d < 1) throw std::invalid_argument("SphericalIndex: degrees must be >= 1");
        std::uint64_t prev = partial_.back();
        if (prev > (std::uint64_t{1} << 62) / d)
            throw std::overflow_error("SphericalIndex: leaf count exceeds 2^62");
        partial_.push_back(prev * d);
    }
}

SphericalIndex SphericalIndex::parse(const std::string& csv) {
    std::vector<std::uint32_t> degrees;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("SphericalIndex: cannot parse '" + item + "'");
        }
        if (pos != item.size() || v == 0 || v > std::numeric_limits<std::uint32_t>::max())
            throw std::invalid_argument("SphericalIndex: invalid degree '" + item + "'");
        degrees.push_back(static_cast<std::uint32_t>(v));
    }
    return SphericalIndex(std::move(degrees));
}

SphericalIndex SphericalIndex::prefix(std::size_t k) const {
    if (k == 0 || k > levels()) throw std::invalid_argument("SphericalIndex::prefix: bad length");
    return SphericalIndex(std::vector<std::uint32_t>(degrees_.begin(), degrees_.begin() + k));
}

std::string SphericalIndex::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(degrees_[i]);
    }
    return out;
}

} // namespace arbor
