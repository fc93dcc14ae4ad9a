#include "chanlink/dilation.hpp"
#include "chanlink/link.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <set>

namespace chanlink {

namespace {

std::string unique_label(std::string base, const std::set<std::string>& taken) {
    while (taken.count(base)) base += "'";
    return base;
}

std::set<std::string> labels_in_use(const Channel& c) {
    std::set<std::string> s;
    for (const auto& l : c.choi().legs()) s.insert(l.label);
    return s;
}

std::vector<Index> row_strides(const std::vector<Leg>& legs) {
    std::vector<Index> s(legs.size(), 1);
    for (size_t i = legs.size(); i-- > 1;) s[i - 1] = s[i] * legs[i].dim;
    return s;
}

// Reorder the row index of a rectangular matrix whose rows are indexed
// row-major by `row_legs` into the order given by `order` (labels).
Matrix permute_matrix_rows(const Matrix& v, const std::vector<Leg>& row_legs,
                           const std::vector<std::string>& order) {
    std::vector<size_t> pos;
    pos.reserve(order.size());
    for (const auto& lab : order) {
        auto it = std::find_if(row_legs.begin(), row_legs.end(), [&](const Leg& l) { return l.label == lab; });
        if (it == row_legs.end()) throw UnknownLeg("permute_matrix_rows: no leg labeled '" + lab + "'");
        pos.push_back(static_cast<size_t>(it - row_legs.begin()));
    }
    if (pos.size() != row_legs.size()) throw BadPermutation("permute_matrix_rows: not a permutation");

    std::vector<Leg> new_legs;
    for (size_t p : pos) new_legs.push_back(row_legs[p]);
    const auto old_str = row_strides(row_legs);
    const auto new_str = row_strides(new_legs);

    Matrix out(v.rows(), v.cols());
    for (Index i = 0; i < v.rows(); ++i) {
        Index ni = 0;
        for (size_t k = 0; k < pos.size(); ++k)
            ni += ((i / old_str[pos[k]]) % row_legs[pos[k]].dim) * new_str[k];
        out.row(ni) = v.row(i);
    }
    return out;
}

// The canonical Stinespring construction for a Choi operator on out ++ in
// legs: V = (I_out x S)(|I_out>> x I_in) with S = (choi^T)^{1/2},
// i.e. V_{(a,r),n} = S_{r,(a,n)} with r running over the out x in pair space.
// Returns the uncompressed matrix plus the eigendecomposition of choi^T used
// for the optional support compression.
struct FullDilation {
    Matrix v;                 // (d_out * d_out * d_in) x d_in
    EigenDecomposition eig;   // of choi^T
};

FullDilation stinespring_full(const Channel& m) {
    const Index dout = m.out_dim(), din = m.in_dim();
    const LabeledOperator t = transpose(m.choi());
    FullDilation fd{Matrix::Zero(dout * dout * din, din), hermitian_eig(hermitian_part(t))};
    const Matrix s = psd_sqrt(hermitian_part(t)).data();
    for (Index a = 0; a < dout; ++a)
        for (Index r = 0; r < dout * din; ++r)
            for (Index n = 0; n < din; ++n) fd.v(a * dout * din + r, n) = s(r, a * din + n);
    return fd;
}

Leg make_anc_leg(const Channel& m, const std::string& base, Index dim) {
    return Leg{unique_label(base, labels_in_use(m)), dim};
}

Isometry compressed_dilation(const Channel& m, const std::string& anc_label) {
    const FullDilation fd = stinespring_full(m);
    const Index dout = m.out_dim(), din = m.in_dim();
    const Index r = support_rank(fd.eig);
    // Project the ancilla (the out x in pair space) onto the support
    // eigenvectors: Vc = (I_out x U_r^dag) V.
    const Matrix u = fd.eig.eigenvectors.leftCols(r);
    Matrix vc = Matrix::Zero(dout * r, din);
    for (Index a = 0; a < dout; ++a)
        vc.middleRows(a * r, r) = u.adjoint() * fd.v.middleRows(a * dout * din, dout * din);
    return Isometry(m.in_legs(), m.out_legs(), {make_anc_leg(m, anc_label, r)}, std::move(vc));
}

void require_cptp(const Channel& c, const char* who) {
    if (!verify_cptp(c).ok) throw NotCPTP(std::string(who) + ": channel fails CPTP verification");
}

} // namespace

Isometry::Isometry(std::vector<Leg> in_legs, std::vector<Leg> out_legs, std::vector<Leg> anc_legs, Matrix v)
    : in_(std::move(in_legs)), out_(std::move(out_legs)), anc_(std::move(anc_legs)), v_(std::move(v)) {
    if (anc_.empty() || total_dim(anc_) < 1) throw ShapeError("Isometry: ancilla dimension must be >= 1");
    if (v_.rows() != total_dim(out_) * total_dim(anc_) || v_.cols() != total_dim(in_))
        throw ShapeError("Isometry: matrix is " + std::to_string(v_.rows()) + "x" + std::to_string(v_.cols()) +
                         ", legs give " + std::to_string(total_dim(out_) * total_dim(anc_)) + "x" +
                         std::to_string(total_dim(in_)));
    std::set<std::string> seen;
    for (const auto& l : in_)
        if (!seen.insert(l.label).second) throw LabelCollision("Isometry: duplicate label '" + l.label + "'");
    seen.clear();
    for (const auto& legs : {&out_, &anc_})
        for (const auto& l : *legs)
            if (!seen.insert(l.label).second) throw LabelCollision("Isometry: duplicate label '" + l.label + "'");
    if (isometry_gap() > tol::isometry)
        throw Error("Isometry: max|V^dag V - I| = " + std::to_string(isometry_gap()));
}

double Isometry::isometry_gap() const {
    return max_abs_diff(Matrix(v_.adjoint() * v_), Matrix::Identity(v_.cols(), v_.cols()));
}

Isometry minimal_dilation(const Channel& m, const std::string& anc_label) {
    require_cptp(m, "minimal_dilation");
    return compressed_dilation(m, anc_label);
}

Isometry full_dilation(const Channel& m, const std::string& anc_label) {
    require_cptp(m, "full_dilation");
    const FullDilation fd = stinespring_full(m);
    return Isometry(m.in_legs(), m.out_legs(), {make_anc_leg(m, anc_label, m.out_dim() * m.in_dim())}, fd.v);
}

Isometry indirect_composition_dilation(const Channel& n, const Channel& m) {
    if (m.out_legs().size() != n.in_legs().size())
        throw ShapeError("indirect_composition_dilation: mid leg counts differ");
    for (size_t i = 0; i < n.in_legs().size(); ++i)
        if (n.in_legs()[i].dim != m.out_legs()[i].dim)
            throw ShapeError("indirect_composition_dilation: mid dimensions differ");
    require_cptp(m, "indirect_composition_dilation");
    require_cptp(n, "indirect_composition_dilation");

    std::set<std::string> taken = labels_in_use(m);
    taken.merge(labels_in_use(n));
    const Isometry v1 = minimal_dilation(m, unique_label("A1", taken));
    taken.insert(v1.anc_legs()[0].label);
    const Isometry v2 = minimal_dilation(n, unique_label("A2", taken));
    const Leg a1 = v1.anc_legs()[0], a2 = v2.anc_legs()[0];

    // (V2 x I_A1) V1, rows (n.out ++ A2 ++ A1) -> reorder to (n.out ++ A1 ++ A2).
    Matrix w = Eigen::kroneckerProduct(v2.matrix(), Matrix::Identity(a1.dim, a1.dim)) * v1.matrix();
    std::vector<Leg> rows = n.out_legs();
    rows.push_back(a2);
    rows.push_back(a1);
    std::vector<std::string> order = labels_of(n.out_legs());
    order.push_back(a1.label);
    order.push_back(a2.label);
    w = permute_matrix_rows(w, rows, order);
    return Isometry(m.in_legs(), n.out_legs(), {a1, a2}, std::move(w));
}

Isometry direct_composition_dilation(const Channel& n, const Channel& m, const std::string& anc_label) {
    require_cptp(m, "direct_composition_dilation");
    require_cptp(n, "direct_composition_dilation");
    return compressed_dilation(compose_channel(n, m), anc_label);
}

Isometry link_dilation_indirect(const Channel& n, const Channel& m, const std::vector<std::string>& shared) {
    // Validates the shared-leg structure as a side effect; also the channel
    // whose output the result must reproduce.
    const Channel linked = link_product(n, m, shared);
    require_cptp(m, "link_dilation_indirect");
    require_cptp(n, "link_dilation_indirect");

    std::set<std::string> taken = labels_in_use(m);
    taken.merge(labels_in_use(n));
    const Isometry v1 = minimal_dilation(m, unique_label("A1", taken));
    taken.insert(v1.anc_legs()[0].label);
    const Isometry v2 = minimal_dilation(n, unique_label("A2", taken));
    const Leg a1 = v1.anc_legs()[0], a2 = v2.anc_legs()[0];

    const std::set<std::string> sh(shared.begin(), shared.end());
    std::vector<Leg> side_n;  // n.in \ shared, threaded by identity under V1
    for (const auto& l : n.in_legs())
        if (!sh.count(l.label)) side_n.push_back(l);
    std::vector<Leg> side_m;  // m.out \ shared, threaded by identity under V2
    for (const auto& l : m.out_legs())
        if (!sh.count(l.label)) side_m.push_back(l);

    // Step 1: V1 x I_side_n, rows (m.out ++ A1 ++ side_n).
    const Index d_side_n = total_dim(side_n);
    Matrix w = Eigen::kroneckerProduct(v1.matrix(), Matrix::Identity(d_side_n, d_side_n));
    std::vector<Leg> rows = m.out_legs();
    rows.push_back(a1);
    rows.insert(rows.end(), side_n.begin(), side_n.end());

    // Step 2: reorder rows to (side_m ++ n.in-order ++ A1) so V2 lines up with
    // n's declared input order (shared legs matched by label).
    std::vector<std::string> mid_order = labels_of(side_m);
    for (const auto& l : n.in_legs()) mid_order.push_back(l.label);
    mid_order.push_back(a1.label);
    w = permute_matrix_rows(w, rows, mid_order);

    // Step 3: (I_side_m x V2 x I_A1), rows (side_m ++ n.out ++ A2 ++ A1).
    const Index d_side_m = total_dim(side_m);
    const Matrix k = Eigen::kroneckerProduct(
        Matrix::Identity(d_side_m, d_side_m),
        Matrix(Eigen::kroneckerProduct(v2.matrix(), Matrix::Identity(a1.dim, a1.dim))));
    w = k * w;

    rows = side_m;
    rows.insert(rows.end(), n.out_legs().begin(), n.out_legs().end());
    rows.push_back(a2);
    rows.push_back(a1);
    std::vector<std::string> final_order = labels_of(linked.out_legs());
    final_order.push_back(a1.label);
    final_order.push_back(a2.label);
    w = permute_matrix_rows(w, rows, final_order);
    return Isometry(linked.in_legs(), linked.out_legs(), {a1, a2}, std::move(w));
}

Isometry link_dilation_direct(const Channel& n, const Channel& m, const std::vector<std::string>& shared,
                              const std::string& anc_label) {
    require_cptp(m, "link_dilation_direct");
    require_cptp(n, "link_dilation_direct");
    return compressed_dilation(link_product(n, m, shared), anc_label);
}

LabeledOperator apply_dilation(const Isometry& v, const LabeledOperator& rho) {
    if (rho.legs() != v.in_legs()) throw ShapeError("apply_dilation: input must sit on the isometry's in legs");
    std::vector<Leg> big_legs = v.out_legs();
    big_legs.insert(big_legs.end(), v.anc_legs().begin(), v.anc_legs().end());
    const LabeledOperator big(std::move(big_legs), v.matrix() * rho.data() * v.matrix().adjoint());
    return partial_trace(big, labels_of(v.anc_legs()));
}

} // namespace chanlink
