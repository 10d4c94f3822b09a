#include "djrsp/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "djrsp/errors.hpp"
#include "djrsp/kernels.hpp"

namespace djrsp {

double orthonormality_defect(const std::vector<CVector>& vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i; j < vectors.size(); ++j) {
            const Complex g = inner_product(vectors[i], vectors[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - expected));
        }
    }
    return worst;
}

MeasurementBasis::MeasurementBasis(std::string site, std::string name, std::vector<CVector> vectors, double tol)
    : site_(std::move(site)), name_(std::move(name)), vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw Error(ErrorKind::NonOrthonormalBasis, name_ + ": empty basis");
    for (const auto& v : vectors_)
        if (v.size() != vectors_.size())
            throw Error(ErrorKind::NonOrthonormalBasis, name_ + ": vector count must equal the site dimension");
    const double defect = orthonormality_defect(vectors_);
    if (!(defect <= tol))
        throw Error(ErrorKind::NonOrthonormalBasis, name_ + ": Gram defect " + std::to_string(defect));
}

MeasurementBasis MeasurementBasis::computational(std::string site, std::size_t dimension) {
    std::vector<CVector> vectors(dimension, CVector(dimension, Complex{0.0, 0.0}));
    for (std::size_t i = 0; i < dimension; ++i) vectors[i][i] = 1.0;
    return MeasurementBasis(std::move(site), "computational", std::move(vectors));
}

MeasurementBasis MeasurementBasis::on(std::string site) const {
    MeasurementBasis copy = *this;
    copy.site_ = std::move(site);
    return copy;
}

std::string to_string(const OutcomePath& path) {
    std::string s;
    for (const auto& o : path) {
        if (!s.empty()) s += '/';
        s += (o.basis == "computational") ? o.site : o.basis;
        s += '=';
        s += std::to_string(o.index);
    }
    return s;
}

bool path_less(const OutcomePath& a, const OutcomePath& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].index != b[i].index) return a[i].index < b[i].index;
        if (a[i].site != b[i].site) return a[i].site < b[i].site;
    }
    return a.size() < b.size();
}

namespace {

std::size_t checked_site(const StateVector& state, const MeasurementBasis& basis) {
    const std::size_t site = state.layout().index_of(basis.site());
    if (state.layout().dimension(site) != basis.size())
        throw Error(ErrorKind::DimensionMismatch,
                    basis.name() + ": basis size does not match dimension of site '" + basis.site() + "'");
    return site;
}

BranchRecord make_record(const StateVector& state, const MeasurementBasis& basis, std::size_t site,
                         std::size_t outcome, const Tolerances& tol) {
    BranchRecord rec;
    rec.outcome_path = {Outcome{basis.site(), basis.name(), outcome}};
    auto projected = kernels::project_parallel(state.amplitudes(), state.layout().dimensions(), site,
                                               basis.vectors()[outcome]);
    const double n = vector_norm(projected);
    rec.probability = n * n;
    if (rec.probability < tol.probability_floor) {
        rec.pruned = true;
        return rec;
    }
    for (auto& a : projected) a /= n;
    rec.post_state.emplace(state.layout(), std::move(projected));
    return rec;
}

}  // namespace

std::vector<BranchRecord> measure_exhaustive(const StateVector& state, const MeasurementBasis& basis,
                                             const Tolerances& tol) {
    const std::size_t site = checked_site(state, basis);
    std::vector<BranchRecord> records;
    records.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) records.push_back(make_record(state, basis, site, i, tol));
    return records;
}

BranchRecord collapse(const StateVector& state, const MeasurementBasis& basis, std::size_t outcome,
                      const Tolerances& tol) {
    const std::size_t site = checked_site(state, basis);
    if (outcome >= basis.size()) throw Error(ErrorKind::InvalidConfig, "outcome index out of range");
    auto rec = make_record(state, basis, site, outcome, tol);
    if (rec.pruned) throw Error(ErrorKind::InvalidConfig, "collapse onto an outcome below the probability floor");
    return rec;
}

StateVector embed_and_apply(const StateVector& state, const UnitaryOp& op) {
    const auto& layout = state.layout();
    kernels::SiteSelection sel{layout.dimensions(), {}};
    for (const auto& label : op.targets()) {
        const std::size_t idx = layout.index_of(label);
        if (std::find(sel.targets.begin(), sel.targets.end(), idx) != sel.targets.end())
            throw Error(ErrorKind::DimensionMismatch, op.name() + ": repeated target site '" + label + "'");
        sel.targets.push_back(idx);
    }
    if (sel.targets.empty()) throw Error(ErrorKind::UnknownSite, op.name() + ": operator is not bound to any site");
    if (kernels::local_dimension(sel) != static_cast<std::size_t>(op.size()))
        throw Error(ErrorKind::DimensionMismatch,
                    op.name() + ": matrix size " + std::to_string(op.size()) +
                        " != product of target dimensions " + std::to_string(kernels::local_dimension(sel)));
    auto out = kernels::apply_parallel(state.amplitudes(), sel, op.matrix());
    // Norm drift accumulates ~1e-16 per gate; the state invariant is 1e-12.
    return StateVector(layout, std::move(out));
}

Matrix reduced_density(const StateVector& state, std::string_view site) {
    const auto& layout = state.layout();
    const std::size_t idx = layout.index_of(site);
    const std::size_t d = layout.dimension(idx);
    const std::size_t stride = layout.stride(idx);
    const std::size_t outer = layout.total_dimension() / (d * stride);
    const auto& amps = state.amplitudes();

    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t hi = 0; hi < outer; ++hi) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            const std::size_t base = hi * d * stride + lo;
            for (std::size_t i = 0; i < d; ++i) {
                const Complex ai = amps[base + i * stride];
                if (ai == Complex{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < d; ++j)
                    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                        ai * std::conj(amps[base + j * stride]);
            }
        }
    }
    return rho;
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

CVector site_state(const StateVector& state, std::string_view site, const Tolerances& tol) {
    const Matrix rho = reduced_density(state, site);
    const double p = purity(rho);
    if (p < 1.0 - tol.purity)
        throw Error(ErrorKind::ResidualEntanglement,
                    "site '" + std::string(site) + "' reduced-state purity " + std::to_string(p));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
    const Eigen::VectorXcd top = eig.eigenvectors().col(rho.rows() - 1);
    CVector v(top.data(), top.data() + top.size());
    // Fix the global phase: first non-negligible component real positive.
    for (const auto& a : v) {
        if (std::abs(a) > 1e-12) {
            const Complex phase = std::conj(a) / std::abs(a);
            for (auto& b : v) b *= phase;
            break;
        }
    }
    return v;
}

double fidelity(const StateVector& state, std::span<const Complex> reference, std::string_view site,
                const Tolerances& tol) {
    const Matrix rho = reduced_density(state, site);
    if (static_cast<std::size_t>(rho.rows()) != reference.size())
        throw Error(ErrorKind::DimensionMismatch, "reference length does not match site dimension");
    const double p = purity(rho);
    if (p < 1.0 - tol.purity)
        throw Error(ErrorKind::ResidualEntanglement,
                    "site '" + std::string(site) + "' reduced-state purity " + std::to_string(p));
    const double rn = vector_norm(reference);
    if (rn == 0.0) throw Error(ErrorKind::NonNormalized, "zero reference state");
    Eigen::VectorXcd r(static_cast<Eigen::Index>(reference.size()));
    for (std::size_t i = 0; i < reference.size(); ++i) r(static_cast<Eigen::Index>(i)) = reference[i] / rn;
    const double f = (r.adjoint() * rho * r)(0, 0).real();
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace djrsp
