#include "chanlink/channel.hpp"

#include <algorithm>
#include <set>

namespace chanlink {

namespace {

std::vector<Leg> concat(std::vector<Leg> a, const std::vector<Leg>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string unique_label(std::string base, const std::set<std::string>& taken) {
    while (taken.count(base)) base += "'";
    return base;
}

} // namespace

Channel::Channel(std::vector<Leg> in_legs, std::vector<Leg> out_legs, Matrix choi)
    : in_(std::move(in_legs)), out_(std::move(out_legs)), choi_(concat(out_, in_), std::move(choi)) {
    if (!choi_.is_hermitian(tol::channel_hermitian_rel))
        throw NotHermitian("Channel: choi exceeds Hermiticity tolerance");
}

Channel::Channel(std::vector<Leg> in_legs, std::vector<Leg> out_legs, LabeledOperator choi)
    : in_(std::move(in_legs)), out_(std::move(out_legs)), choi_(std::move(choi)) {
    if (choi_.legs() != concat(out_, in_))
        throw ShapeError("Channel: choi legs must be out_legs ++ in_legs");
    if (!choi_.is_hermitian(tol::channel_hermitian_rel))
        throw NotHermitian("Channel: choi exceeds Hermiticity tolerance");
}

Channel choi_from_kraus(const KrausSet& k, std::vector<Leg> in_legs, std::vector<Leg> out_legs) {
    if (k.operators.empty()) throw ShapeError("choi_from_kraus: empty Kraus set");
    const Index din = total_dim(in_legs), dout = total_dim(out_legs);
    Matrix completeness = Matrix::Zero(din, din);
    Matrix choi = Matrix::Zero(dout * din, dout * din);
    for (const auto& a : k.operators) {
        if (a.rows() != dout || a.cols() != din)
            throw ShapeError("choi_from_kraus: Kraus operator is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected " + std::to_string(dout) + "x" +
                             std::to_string(din));
        completeness += a.adjoint() * a;
        const Vector v = vec(a);
        choi += v * v.adjoint();
    }
    if (max_abs_diff(completeness, Matrix::Identity(din, din)) > tol::kraus_completeness)
        throw NotTracePreserving("choi_from_kraus: sum A_i^dag A_i differs from identity");
    return Channel(std::move(in_legs), std::move(out_legs), std::move(choi));
}

KrausSet kraus_from_choi(const Channel& c) {
    const EigenDecomposition eig = hermitian_eig(hermitian_part(c.choi()));
    const Index r = support_rank(eig);
    KrausSet out;
    out.operators.reserve(static_cast<size_t>(r));
    for (Index i = 0; i < r; ++i) {
        const double lam = std::max(eig.eigenvalues(i), 0.0);
        out.operators.push_back(std::sqrt(lam) * unvec(eig.eigenvectors.col(i), c.out_dim(), c.in_dim()));
    }
    return out;
}

LabeledOperator apply(const Channel& c, const LabeledOperator& x) {
    if (x.legs() != c.in_legs()) throw ShapeError("apply: input must sit on the channel's in legs");
    const LabeledOperator big = kron(identity_operator(c.out_legs()), transpose(x));
    const LabeledOperator prod(big.legs(), big.data() * c.choi().data());
    return partial_trace(prod, c.in_labels());
}

CptpReport verify_cptp(const Channel& c) {
    CptpReport rep;
    const EigenDecomposition eig = hermitian_eig(hermitian_part(c.choi()));
    const double lam_min = eig.eigenvalues(eig.eigenvalues.size() - 1);
    rep.cp_gap = std::max(0.0, -lam_min);
    const LabeledOperator reduced = partial_trace(c.choi(), c.out_labels());
    rep.tp_gap = max_abs_diff(reduced.data(), Matrix::Identity(reduced.dim(), reduced.dim()));
    rep.ok = rep.cp_gap <= tol::cptp && rep.tp_gap <= tol::cptp;
    return rep;
}

Channel tensor_channel(const Channel& a, const Channel& b) {
    const LabeledOperator big = kron(a.choi(), b.choi());
    std::vector<std::string> order = a.out_labels();
    for (const auto& l : b.out_labels()) order.push_back(l);
    for (const auto& l : a.in_labels()) order.push_back(l);
    for (const auto& l : b.in_labels()) order.push_back(l);
    return Channel(concat(a.in_legs(), b.in_legs()), concat(a.out_legs(), b.out_legs()),
                   permute_legs(big, order));
}

Channel compose_channel(const Channel& n, const Channel& m) {
    if (m.out_legs().size() != n.in_legs().size())
        throw ShapeError("compose_channel: mid leg counts differ");
    for (size_t i = 0; i < n.in_legs().size(); ++i)
        if (n.in_legs()[i].dim != m.out_legs()[i].dim)
            throw ShapeError("compose_channel: mid dimensions differ at position " + std::to_string(i));

    // Rename n's legs onto m's mid labels; prime colliding output labels.
    std::set<std::string> taken;
    for (const auto& l : m.in_legs()) taken.insert(l.label);
    for (const auto& l : m.out_legs()) taken.insert(l.label);
    std::map<std::string, std::string> ren;
    for (size_t i = 0; i < n.in_legs().size(); ++i)
        ren[n.in_legs()[i].label] = m.out_legs()[i].label;
    for (const auto& l : n.out_legs()) {
        const std::string fresh = unique_label(l.label, taken);
        if (fresh != l.label) ren[l.label] = fresh;
        taken.insert(fresh);
    }
    const Channel np = rename_legs(n, ren);

    // Tr_mid[(N x I_in)(I_out x M^{T_mid})] on legs (mid ++ m.in ++ n.out).
    const std::vector<std::string> mid = m.out_labels();
    const LabeledOperator a = kron(partial_transpose(m.choi(), mid), identity_operator(np.out_legs()));
    const LabeledOperator b = kron(np.choi(), identity_operator(m.in_legs()));
    const LabeledOperator b_aligned = permute_legs(b, labels_of(a.legs()));
    const LabeledOperator prod(a.legs(), b_aligned.data() * a.data());
    const LabeledOperator traced = partial_trace(prod, mid);  // legs m.in ++ n.out

    std::vector<std::string> order = np.out_labels();
    for (const auto& l : m.in_labels()) order.push_back(l);
    return Channel(m.in_legs(), np.out_legs(), permute_legs(traced, order));
}

Channel identity_channel(Leg in, Leg out) {
    if (in.dim != out.dim) throw ShapeError("identity_channel: in/out dims differ");
    const Vector dk = double_ket_identity(in.dim);
    return Channel({in}, {out}, Matrix(dk * dk.adjoint()));
}

Channel rename_legs(const Channel& c, const std::map<std::string, std::string>& mapping) {
    auto rename = [&](std::vector<Leg> legs) {
        for (auto& l : legs) {
            auto it = mapping.find(l.label);
            if (it != mapping.end()) l.label = it->second;
        }
        return legs;
    };
    return Channel(rename(c.in_legs()), rename(c.out_legs()),
                   LabeledOperator(rename(c.choi().legs()), c.choi().data()));
}

} // namespace chanlink
