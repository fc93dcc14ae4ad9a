#include "chanlink/pauli.hpp"

#include <cmath>

namespace chanlink {

namespace {

const Leg kIn{"0", 2};
const Leg kOut{"1", 2};

std::array<double, 3> family_diag(FamilyKind kind, double p) {
    switch (kind) {
        case FamilyKind::C: return {p, p, p};
        case FamilyKind::D: return {p, -p, p};
        case FamilyKind::R: return {-p, -p, p};
        case FamilyKind::S: return {-p, p, p};
    }
    throw Error("family_diag: bad kind");
}

void check_range(FamilyKind kind, double p) {
    const bool wide_high = kind == FamilyKind::C || kind == FamilyKind::R;  // -1/3 <= p <= 1
    const double lo = wide_high ? -1.0 / 3.0 : -1.0;
    const double hi = wide_high ? 1.0 : 1.0 / 3.0;
    if (!(p >= lo && p <= hi))
        throw ParamRange(std::string("make_family: ") + to_string(kind) + " requires " +
                         (wide_high ? "-1/3 <= p <= 1" : "-1 <= p <= 1/3"));
}

} // namespace

FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "C") return FamilyKind::C;
    if (s == "D") return FamilyKind::D;
    if (s == "R") return FamilyKind::R;
    if (s == "S") return FamilyKind::S;
    throw ParamRange("family kind must be one of C, D, R, S (got '" + s + "')");
}

const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::C: return "C";
        case FamilyKind::D: return "D";
        case FamilyKind::R: return "R";
        case FamilyKind::S: return "S";
    }
    return "?";
}

Matrix pauli_matrix(int i) {
    Matrix m(2, 2);
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw Error("pauli_matrix: index must be 0..3");
    }
    return m;
}

LabeledOperator family_choi(FamilyKind kind, double p) {
    const double hi = (1.0 + p) / 2.0, lo = (1.0 - p) / 2.0;
    Matrix c = Matrix::Zero(4, 4);
    c(0, 0) = hi;
    c(1, 1) = lo;
    c(2, 2) = lo;
    c(3, 3) = hi;
    switch (kind) {
        case FamilyKind::C: c(0, 3) = c(3, 0) = p; break;
        case FamilyKind::D: c(1, 2) = c(2, 1) = p; break;
        case FamilyKind::R: c(0, 3) = c(3, 0) = -p; break;
        case FamilyKind::S: c(1, 2) = c(2, 1) = -p; break;
    }
    return LabeledOperator({kOut, kIn}, std::move(c));
}

PauliDiagonalChannel make_family(FamilyKind kind, double p) {
    check_range(kind, p);
    return PauliDiagonalChannel{kind, p, family_diag(kind, p),
                                Channel({kIn}, {kOut}, family_choi(kind, p))};
}

Eigen::Matrix4d pauli_transfer(const Channel& c) {
    if (c.in_dim() != 2 || c.out_dim() != 2 || c.in_legs().size() != 1 || c.out_legs().size() != 1)
        throw ShapeError("pauli_transfer: requires a single-qubit channel");
    Eigen::Matrix4d t;
    for (int j = 0; j < 4; ++j) {
        const LabeledOperator out = apply(c, LabeledOperator(c.in_legs(), pauli_matrix(j)));
        for (int i = 0; i < 4; ++i)
            t(i, j) = 0.5 * (pauli_matrix(i) * out.data()).trace().real();
    }
    return t;
}

std::array<double, 4> transfer_diagonal(const Channel& c, double tol) {
    const Eigen::Matrix4d t = pauli_transfer(c);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs(t(i, j)) > tol)
                throw Error("transfer_diagonal: channel is not diagonal in the Pauli basis");
    return {t(0, 0), t(1, 1), t(2, 2), t(3, 3)};
}

bool commutes(const Channel& m, const Channel& n) {
    const Matrix& a = m.choi().data();
    const Matrix& b = n.choi().data();
    if (a.rows() != b.rows()) throw ShapeError("commutes: Choi dimensions differ");
    return max_abs(a * b - b * a) <= tol::commute_rel * max_abs(a) * max_abs(b);
}

FidelityReport eigen_fidelity(const Channel& m, const Channel& n) {
    if (m.in_dim() != n.in_dim() || m.out_dim() != n.out_dim())
        throw ShapeError("eigen_fidelity: leg dimensions differ");
    if (!commutes(m, n)) throw NotCommuting("eigen_fidelity: Choi operators do not commute");

    const LabeledOperator a = hermitian_part(m.choi());
    const LabeledOperator b_op = hermitian_part(n.choi());
    EigenDecomposition eig = hermitian_eig(a);
    const Index d = a.dim();
    Matrix u = eig.eigenvectors;
    Matrix b = u.adjoint() * b_op.data() * u;

    // Refine degenerate clusters of a's spectrum against b, so both are
    // diagonal in the final basis.
    const double cluster_tol = 1e-8 * std::max(1.0, std::abs(eig.eigenvalues(0)));
    Index start = 0;
    while (start < d) {
        Index stop = start + 1;
        while (stop < d && eig.eigenvalues(start) - eig.eigenvalues(stop) <= cluster_tol) ++stop;
        if (stop - start > 1) {
            const Matrix block = 0.5 * (b.block(start, start, stop - start, stop - start) +
                                        b.block(start, start, stop - start, stop - start).adjoint());
            Eigen::SelfAdjointEigenSolver<Matrix> es(block);
            if (es.info() != Eigen::Success) throw Error("eigen_fidelity: eigensolver failed");
            u.middleCols(start, stop - start) = u.middleCols(start, stop - start) * es.eigenvectors();
            b = u.adjoint() * b_op.data() * u;
        }
        start = stop;
    }

    const double off_tol = 1e-10 * std::max(1.0, max_abs(b_op.data()));
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            if (i != j && std::abs(b(i, j)) > off_tol)
                throw NotCommuting("eigen_fidelity: residual off-diagonal after simultaneous diagonalization");

    // Same support clamp as psd_sqrt: spectrum within 1e-10 * lambda_max of
    // zero is treated as zero, so the pairing agrees with the general method
    // at rank-deficient parameters.
    const double a_cut = tol::psd_clamp_rel * std::abs(eig.eigenvalues(0));
    double b_max = 0.0;
    for (Index i = 0; i < d; ++i) b_max = std::max(b_max, std::abs(b(i, i).real()));
    const double b_cut = tol::psd_clamp_rel * b_max;
    double sum = 0.0;
    for (Index i = 0; i < d; ++i) {
        const double alpha = eig.eigenvalues(i) > a_cut ? eig.eigenvalues(i) : 0.0;
        const double beta = b(i, i).real() > b_cut ? b(i, i).real() : 0.0;
        sum += std::sqrt(alpha * beta);
    }
    FidelityReport rep;
    rep.value = std::min(1.0, sum / static_cast<double>(m.in_dim()));
    rep.method = FidelityMethod::eigen_pairing;
    rep.gap_to_cross_check = std::abs(rep.value - channel_fidelity(m, n).value);
    return rep;
}

FidelityReport eigen_fidelity(const PauliDiagonalChannel& m, const PauliDiagonalChannel& n) {
    return eigen_fidelity(m.channel, n.channel);
}

std::pair<Isometry, Isometry> uhlmann_maximizer(const Channel& m, const Channel& n) {
    if (m.in_dim() != n.in_dim() || m.out_dim() != n.out_dim())
        throw ShapeError("uhlmann_maximizer: leg dimensions differ");
    return {full_dilation(m), full_dilation(n)};
}

std::pair<Isometry, Isometry> uhlmann_maximizer(const PauliDiagonalChannel& m, const PauliDiagonalChannel& n) {
    return uhlmann_maximizer(m.channel, n.channel);
}

} // namespace chanlink
