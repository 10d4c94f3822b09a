#pragma once

namespace djrsp {

// Single knob for every numerical threshold used by the simulator and the
// claim checks.
struct Tolerances {
    double unitarity = 1e-12;         // max |U^dag U - I|
    double norm = 1e-12;              // | ||psi|| - 1 |
    double orthonormality = 1e-12;    // | <v_i|v_j> - delta_ij |
    double probability_sum = 1e-12;   // siblings / leaves sum to one
    double probability_floor = 1e-14; // branches below are pruned and flagged
    double purity = 1e-10;            // product-state check for fidelity
    double success = 1e-9;            // leaf succeeds iff fidelity >= 1 - success
    double overlap_magnitude = 1e-10; // mu-basis overlap property
    double channel = 1e-12;           // sum a_k^2 = 1
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace djrsp
