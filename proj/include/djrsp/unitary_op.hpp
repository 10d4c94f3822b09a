#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "djrsp/tolerances.hpp"

namespace djrsp {

using Matrix = Eigen::MatrixXcd;

double unitarity_defect(const Matrix& m);

/// A named unitary, optionally bound to an ordered list of target sites.
/// Construction rejects non-square or non-unitary matrices.
class UnitaryOp {
public:
    UnitaryOp(std::string name, Matrix matrix,
              double tol = default_tolerances().unitarity);
    UnitaryOp(std::string name, Matrix matrix, std::vector<std::string> targets,
              double tol = default_tolerances().unitarity);

    const std::string& name() const noexcept { return name_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    const std::vector<std::string>& targets() const noexcept { return targets_; }
    Eigen::Index size() const noexcept { return matrix_.rows(); }

    UnitaryOp on(std::vector<std::string> targets) const;
    UnitaryOp renamed(std::string name) const;

private:
    std::string name_;
    Matrix matrix_;
    std::vector<std::string> targets_;
};

}  // namespace djrsp
