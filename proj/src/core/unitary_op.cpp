#include "djrsp/unitary_op.hpp"

#include "djrsp/errors.hpp"

namespace djrsp {

double unitarity_defect(const Matrix& m) {
    const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    return defect.cwiseAbs().maxCoeff();
}

UnitaryOp::UnitaryOp(std::string name, Matrix matrix, double tol)
    : UnitaryOp(std::move(name), std::move(matrix), {}, tol) {}

UnitaryOp::UnitaryOp(std::string name, Matrix matrix, std::vector<std::string> targets, double tol)
    : name_(std::move(name)), matrix_(std::move(matrix)), targets_(std::move(targets)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
        throw Error(ErrorKind::DimensionMismatch, name_ + ": matrix is not square");
    const double defect = unitarity_defect(matrix_);
    if (!(defect <= tol))
        throw Error(ErrorKind::NonUnitary, name_ + ": |U^dag U - I|_max = " + std::to_string(defect));
}

UnitaryOp UnitaryOp::on(std::vector<std::string> targets) const {
    UnitaryOp copy = *this;
    copy.targets_ = std::move(targets);
    return copy;
}

UnitaryOp UnitaryOp::renamed(std::string name) const {
    UnitaryOp copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

}  // namespace djrsp
