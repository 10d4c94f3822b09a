#include "djrsp/errors.hpp"

namespace djrsp {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidLayout: return "InvalidLayout";
        case ErrorKind::UnknownSite: return "UnknownSite";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonUnitary: return "NonUnitary";
        case ErrorKind::NonNormalized: return "NonNormalized";
        case ErrorKind::NonOrthonormalBasis: return "NonOrthonormalBasis";
        case ErrorKind::ResidualEntanglement: return "ResidualEntanglement";
        case ErrorKind::InvalidChannel: return "InvalidChannel";
        case ErrorKind::InvalidTarget: return "InvalidTarget";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::UnpairablePairing: return "UnpairablePairing";
        case ErrorKind::BasisNotRealizable: return "BasisNotRealizable";
        case ErrorKind::NoCorrectionFound: return "NoCorrectionFound";
        case ErrorKind::InvalidRequest: return "InvalidRequest";
        case ErrorKind::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

}  // namespace djrsp
