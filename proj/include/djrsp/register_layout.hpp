#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace djrsp {

enum class Party { Alice, Charlie, Bob };

std::string_view to_string(Party party);

struct Site {
    std::string label;
    std::size_t dimension = 2;
    Party owner = Party::Alice;
};

/// Ordered list of heterogeneous-dimension sites. The first site is the most
/// significant digit of the flat amplitude index.
class RegisterLayout {
public:
    explicit RegisterLayout(std::vector<Site> sites);

    const std::vector<Site>& sites() const noexcept { return sites_; }
    std::size_t site_count() const noexcept { return sites_.size(); }
    std::size_t total_dimension() const noexcept { return total_; }

    const Site& site(std::size_t i) const { return sites_.at(i); }
    std::size_t dimension(std::size_t i) const { return sites_.at(i).dimension; }
    std::vector<std::size_t> dimensions() const;

    /// Throws Error(UnknownSite).
    std::size_t index_of(std::string_view label) const;
    bool contains(std::string_view label) const noexcept;

    /// Flat-index stride of site i (product of the dimensions after it).
    std::size_t stride(std::size_t i) const { return strides_.at(i); }

    std::size_t flat_index(const std::vector<std::size_t>& digits) const;
    std::vector<std::size_t> digits(std::size_t flat) const;

    bool operator==(const RegisterLayout& other) const;

private:
    std::vector<Site> sites_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
};

/// The protocol register (A, B, e, f, g) with dims (d, d, d, 2, d).
RegisterLayout protocol_layout(std::size_t d);

}  // namespace djrsp
