#pragma once

// Internal: the per-engine pieces of the protocol. The branch walker in
// protocol.cpp is shared; engines only decide which gates, bases and
// corrections to use.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "djrsp/protocol.hpp"

namespace djrsp::detail {

struct Correction {
    std::string name;
    std::optional<UnitaryOp> op;
    bool found = false;
};

class ProtocolEngine {
public:
    virtual ~ProtocolEngine() = default;

    virtual std::vector<UnitaryOp> encoding() const = 0;
    virtual std::vector<UnitaryOp> bob_pre(std::size_t f) const = 0;
    virtual const MeasurementBasis& mu() const = 0;
    virtual const MeasurementBasis& nu() const = 0;
    virtual std::optional<UnitaryOp> charlie_gate(std::size_t f, std::size_t p) const = 0;
    virtual std::vector<UnitaryOp> bob_post(std::size_t f) const = 0;
    /// `outcomes` holds (f, mu, nu[, g]).
    virtual Correction correct(const std::vector<std::size_t>& outcomes, std::span<const Complex> bob) const = 0;
};

std::unique_ptr<ProtocolEngine> make_exact_d2_engine(const ProtocolConfig& config);
std::unique_ptr<ProtocolEngine> make_general_engine(const ProtocolConfig& config);

inline std::unique_ptr<ProtocolEngine> make_engine(const ProtocolConfig& config) {
    return config.engine == Engine::ExactD2 ? make_exact_d2_engine(config) : make_general_engine(config);
}

}  // namespace djrsp::detail
