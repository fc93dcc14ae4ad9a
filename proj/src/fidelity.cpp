#include "chanlink/fidelity.hpp"
#include "chanlink/link.hpp"

#include <algorithm>
#include <cmath>

namespace chanlink {

namespace {

// Self-linked Chois beyond this total dimension are too expensive for the
// literal tensor-power cross-check (three dense eigendecompositions each);
// the closed-form rows are produced regardless.
constexpr Index kSweepCrossCheckDim = 256;

double clamp_unit(double x) { return std::min(1.0, std::max(0.0, x)); }

void require_density(const LabeledOperator& rho, const char* who) {
    const EigenDecomposition eig = hermitian_eig(hermitian_part(rho));
    const double lam_max = eig.eigenvalues(0);
    const double lam_min = eig.eigenvalues(eig.eigenvalues.size() - 1);
    if (lam_min < -tol::psd_clamp_rel * lam_max)
        throw NotPSD(std::string(who) + ": operator is not positive semidefinite");
    if (std::abs(rho.data().trace().real() - 1.0) > tol::unit_trace ||
        std::abs(rho.data().trace().imag()) > tol::unit_trace)
        throw NotUnitTrace(std::string(who) + ": trace differs from 1");
}

} // namespace

const char* to_string(FidelityMethod m) {
    switch (m) {
        case FidelityMethod::general: return "general";
        case FidelityMethod::eigen_pairing: return "eigen_pairing";
        case FidelityMethod::uhlmann_overlap: return "uhlmann_overlap";
    }
    return "?";
}

double state_fidelity(const LabeledOperator& rho, const LabeledOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw ShapeError("state_fidelity: dimension mismatch");
    require_density(rho, "state_fidelity");
    require_density(sigma, "state_fidelity");
    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) evaluated as the nuclear norm
    // |sqrt(sigma) sqrt(rho)|_1. Identical value, but small singular values
    // come out with absolute (not square-rooted) accuracy, which keeps the
    // rank-deficient cases at ~1e-15 instead of ~1e-8.
    const Matrix sr = psd_sqrt(hermitian_part(rho)).data();
    const Matrix ss = psd_sqrt(hermitian_part(sigma)).data();
    Eigen::JacobiSVD<Matrix> svd(ss * sr);
    return clamp_unit(svd.singularValues().sum());
}

FidelityReport channel_fidelity(const Channel& m, const Channel& n) {
    auto dims = [](const std::vector<Leg>& legs) {
        std::vector<Index> d;
        for (const auto& l : legs) d.push_back(l.dim);
        return d;
    };
    if (dims(m.in_legs()) != dims(n.in_legs()) || dims(m.out_legs()) != dims(n.out_legs()))
        throw ShapeError("channel_fidelity: leg dimensions differ");
    const double d0 = static_cast<double>(m.in_dim());
    const LabeledOperator a(m.choi().legs(), m.choi().data() / d0);
    const LabeledOperator b(m.choi().legs(), n.choi().data() / d0);  // same leg frame
    FidelityReport rep;
    rep.value = state_fidelity(a, b);
    rep.method = FidelityMethod::general;
    return rep;
}

SweepResult discrimination_sweep(const Channel& m, const Channel& n, int n_max, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw BadEpsilon("discrimination_sweep: epsilon must be in (0,1)");
    if (n_max < 1) throw Error("discrimination_sweep: n_max must be >= 1");

    SweepResult res;
    res.epsilon = epsilon;
    res.fid1 = channel_fidelity(m, n).value;

    const Index base = m.out_dim() * m.in_dim();
    const Index cross_limit = std::min(dimension_guard(), kSweepCrossCheckDim);
    for (int k = 1; k <= n_max; ++k) {
        const double closed = std::pow(res.fid1, k);
        res.rows.push_back({k, closed});

        // Literal n-fold self-link fidelity, where the dimension permits.
        Index total = 1;
        bool fits = true;
        for (int j = 0; j < k && fits; ++j) {
            total *= base;
            fits = total <= cross_limit;
        }
        if (fits) {
            const Channel mm = self_link_power(m, k);
            const Channel nn = self_link_power(n, k);
            const double d0 = static_cast<double>(mm.in_dim());
            const LabeledOperator a(mm.choi().legs(), mm.choi().data() / d0);
            const LabeledOperator b(mm.choi().legs(), nn.choi().data() / d0);
            res.max_crosscheck_gap = std::max(res.max_crosscheck_gap,
                                              std::abs(state_fidelity(a, b) - closed));
        }
    }

    // fid1 within rounding of 1 means the channels are indistinguishable and
    // the threshold is never reached (sentinel -1).
    if (res.fid1 >= 1.0 - 1e-12) res.n_tilde = -1;
    else if (res.fid1 <= 0.0) res.n_tilde = 0;
    else res.n_tilde = static_cast<long>(std::floor(std::log(epsilon) / std::log(res.fid1)));
    return res;
}

double uhlmann_overlap(const Isometry& v, const Isometry& w, int n_power) {
    if (n_power < 1) throw Error("uhlmann_overlap: n_power must be >= 1");
    auto dims = [](const std::vector<Leg>& legs) {
        std::vector<Index> d;
        for (const auto& l : legs) d.push_back(l.dim);
        return d;
    };
    if (dims(v.in_legs()) != dims(w.in_legs()) || dims(v.out_legs()) != dims(w.out_legs()) ||
        v.anc_dim() != w.anc_dim())
        throw ShapeError("uhlmann_overlap: isometry shapes differ");
    const double d0 = static_cast<double>(v.in_dim());
    const double overlap = std::abs((v.matrix().adjoint() * w.matrix()).trace()) / d0;
    return std::pow(overlap, n_power);
}

} // namespace chanlink
