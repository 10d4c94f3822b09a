#include "djrsp/register_layout.hpp"

#include <unordered_set>

#include "djrsp/errors.hpp"

namespace djrsp {

std::string_view to_string(Party party) {
    switch (party) {
        case Party::Alice: return "Alice";
        case Party::Charlie: return "Charlie";
        case Party::Bob: return "Bob";
    }
    return "?";
}

RegisterLayout::RegisterLayout(std::vector<Site> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) throw Error(ErrorKind::InvalidLayout, "layout has no sites");
    std::unordered_set<std::string> seen;
    for (const auto& s : sites_) {
        if (s.dimension < 2)
            throw Error(ErrorKind::InvalidLayout, "site '" + s.label + "' has dimension < 2");
        if (!seen.insert(s.label).second)
            throw Error(ErrorKind::InvalidLayout, "duplicate site label '" + s.label + "'");
    }
    strides_.assign(sites_.size(), 1);
    for (std::size_t i = sites_.size(); i-- > 0;) {
        strides_[i] = total_;
        total_ *= sites_[i].dimension;
    }
}

std::vector<std::size_t> RegisterLayout::dimensions() const {
    std::vector<std::size_t> dims;
    dims.reserve(sites_.size());
    for (const auto& s : sites_) dims.push_back(s.dimension);
    return dims;
}

std::size_t RegisterLayout::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < sites_.size(); ++i)
        if (sites_[i].label == label) return i;
    throw Error(ErrorKind::UnknownSite, "no site '" + std::string(label) + "' in layout");
}

bool RegisterLayout::contains(std::string_view label) const noexcept {
    for (const auto& s : sites_)
        if (s.label == label) return true;
    return false;
}

std::size_t RegisterLayout::flat_index(const std::vector<std::size_t>& digits) const {
    if (digits.size() != sites_.size())
        throw Error(ErrorKind::DimensionMismatch, "digit count does not match site count");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] >= sites_[i].dimension)
            throw Error(ErrorKind::DimensionMismatch, "digit out of range for site '" + sites_[i].label + "'");
        flat += digits[i] * strides_[i];
    }
    return flat;
}

std::vector<std::size_t> RegisterLayout::digits(std::size_t flat) const {
    std::vector<std::size_t> out(sites_.size());
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        out[i] = flat / strides_[i];
        flat %= strides_[i];
    }
    return out;
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
    if (sites_.size() != other.sites_.size()) return false;
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        const auto& a = sites_[i];
        const auto& b = other.sites_[i];
        if (a.label != b.label || a.dimension != b.dimension || a.owner != b.owner) return false;
    }
    return true;
}

RegisterLayout protocol_layout(std::size_t d) {
    // Ownership after distribution: A and f stay with Alice, e goes to
    // Charlie, B and g go to Bob.
    return RegisterLayout({
        {"A", d, Party::Alice},
        {"B", d, Party::Bob},
        {"e", d, Party::Charlie},
        {"f", 2, Party::Alice},
        {"g", d, Party::Bob},
    });
}

}  // namespace djrsp
