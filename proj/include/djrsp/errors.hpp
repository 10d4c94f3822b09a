#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace djrsp {

enum class ErrorKind {
    InvalidLayout,
    UnknownSite,
    DimensionMismatch,
    NonUnitary,
    NonNormalized,
    NonOrthonormalBasis,
    ResidualEntanglement,
    InvalidChannel,
    InvalidTarget,
    InvalidConfig,
    UnpairablePairing,
    BasisNotRealizable,
    NoCorrectionFound,
    InvalidRequest,
    IoFailure,
};

std::string_view to_string(ErrorKind kind);

// Every error raised by the library carries a machine-readable kind so the
// harness can turn protocol findings into report entries.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace djrsp
