#include "chanlink/tensor.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>

namespace chanlink {

namespace {

std::atomic<Index> g_dimension_guard{4096};

std::vector<Index> leg_dims(const std::vector<Leg>& legs) {
    std::vector<Index> d(legs.size());
    for (size_t i = 0; i < legs.size(); ++i) d[i] = legs[i].dim;
    return d;
}

// Row-major strides for a list of dimensions.
std::vector<Index> strides_of(const std::vector<Index>& dims) {
    std::vector<Index> s(dims.size(), 1);
    for (size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
    return s;
}

// Positions of the given labels inside `legs`; throws UnknownLeg.
std::vector<size_t> positions_of(const std::vector<Leg>& legs, const std::vector<std::string>& labels,
                                 const char* who) {
    std::vector<size_t> pos;
    pos.reserve(labels.size());
    for (const auto& lab : labels) {
        auto it = std::find_if(legs.begin(), legs.end(), [&](const Leg& l) { return l.label == lab; });
        if (it == legs.end()) throw UnknownLeg(std::string(who) + ": no leg labeled '" + lab + "'");
        pos.push_back(static_cast<size_t>(it - legs.begin()));
    }
    return pos;
}

} // namespace

bool operator==(const Leg& a, const Leg& b) { return a.label == b.label && a.dim == b.dim; }
bool operator!=(const Leg& a, const Leg& b) { return !(a == b); }

Index total_dim(const std::vector<Leg>& legs) {
    Index d = 1;
    for (const auto& l : legs) d *= l.dim;
    return d;
}

std::vector<std::string> labels_of(const std::vector<Leg>& legs) {
    std::vector<std::string> out;
    out.reserve(legs.size());
    for (const auto& l : legs) out.push_back(l.label);
    return out;
}

Index dimension_guard() { return g_dimension_guard.load(); }

void set_dimension_guard(Index limit) {
    if (limit < 1) throw Error("set_dimension_guard: limit must be >= 1");
    g_dimension_guard.store(limit);
}

// ---------------------------------------------------------------------------
// LabeledOperator
// ---------------------------------------------------------------------------

LabeledOperator::LabeledOperator(std::vector<Leg> legs, Matrix data)
    : legs_(std::move(legs)), data_(std::move(data)) {
    std::set<std::string> seen;
    for (const auto& l : legs_) {
        if (l.dim < 1) throw ShapeError("LabeledOperator: leg '" + l.label + "' has dim < 1");
        if (!seen.insert(l.label).second)
            throw LabelCollision("LabeledOperator: duplicate leg label '" + l.label + "'");
    }
    const Index d = total_dim(legs_);
    if (data_.rows() != d || data_.cols() != d)
        throw ShapeError("LabeledOperator: data is " + std::to_string(data_.rows()) + "x" +
                         std::to_string(data_.cols()) + ", legs give " + std::to_string(d));
}

bool LabeledOperator::has_leg(const std::string& label) const {
    return std::any_of(legs_.begin(), legs_.end(), [&](const Leg& l) { return l.label == label; });
}

const Leg& LabeledOperator::leg(const std::string& label) const {
    return legs_[static_cast<size_t>(leg_position(label))];
}

Index LabeledOperator::leg_position(const std::string& label) const {
    for (size_t i = 0; i < legs_.size(); ++i)
        if (legs_[i].label == label) return static_cast<Index>(i);
    throw UnknownLeg("LabeledOperator: no leg labeled '" + label + "'");
}

double LabeledOperator::max_abs() const { return chanlink::max_abs(data_); }

bool LabeledOperator::is_hermitian(double rel_tol) const {
    return max_abs_diff(data_, data_.adjoint()) <= rel_tol * max_abs();
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

LabeledOperator identity_operator(std::vector<Leg> legs) {
    const Index d = total_dim(legs);
    return LabeledOperator(std::move(legs), Matrix::Identity(d, d));
}

Vector double_ket_identity(Index d) {
    if (d < 1) throw ShapeError("double_ket_identity: d must be >= 1");
    Vector v = Vector::Zero(d * d);
    for (Index n = 0; n < d; ++n) v(n * d + n) = 1.0;
    return v;
}

Vector vec(const Matrix& a) {
    Vector v(a.size());
    for (Index m = 0; m < a.rows(); ++m)
        for (Index n = 0; n < a.cols(); ++n) v(m * a.cols() + n) = a(m, n);
    return v;
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
    if (v.size() != rows * cols) throw ShapeError("unvec: size mismatch");
    Matrix a(rows, cols);
    for (Index m = 0; m < rows; ++m)
        for (Index n = 0; n < cols; ++n) a(m, n) = v(m * cols + n);
    return a;
}

LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b) {
    for (const auto& l : b.legs())
        if (a.has_leg(l.label)) throw LabelCollision("kron: duplicate leg label '" + l.label + "'");
    const Index d = a.dim() * b.dim();
    if (d > dimension_guard())
        throw TooLarge("kron: total dimension " + std::to_string(d) + " exceeds guard " +
                       std::to_string(dimension_guard()));
    std::vector<Leg> legs = a.legs();
    legs.insert(legs.end(), b.legs().begin(), b.legs().end());
    Matrix k = Eigen::kroneckerProduct(a.data(), b.data());
    return LabeledOperator(std::move(legs), std::move(k));
}

EigenDecomposition hermitian_eig(const LabeledOperator& a) {
    const double scale = a.max_abs();
    if (max_abs_diff(a.data(), a.data().adjoint()) > tol::hermitian_rel * scale)
        throw NotHermitian("hermitian_eig: operator exceeds Hermiticity tolerance");

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a.data() + a.data().adjoint()));
    if (es.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver failed");

    const Index n = a.dim();
    Matrix u = es.eigenvectors();

    // Canonical phase: first component above threshold made real positive.
    for (Index c = 0; c < n; ++c) {
        for (Index r = 0; r < n; ++r) {
            const double m = std::abs(u(r, c));
            if (m > 1e-12) {
                u.col(c) *= std::conj(u(r, c)) / m;
                break;
            }
        }
    }

    std::vector<Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    const auto& vals = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
        if (vals(i) != vals(j)) return vals(i) > vals(j);
        for (Index r = 0; r < n; ++r) {
            const Complex x = u(r, i), y = u(r, j);
            if (x.real() != y.real()) return x.real() > y.real();
            if (x.imag() != y.imag()) return x.imag() > y.imag();
        }
        return false;
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = vals(order[static_cast<size_t>(k)]);
        out.eigenvectors.col(k) = u.col(order[static_cast<size_t>(k)]);
    }
    return out;
}

LabeledOperator psd_sqrt(const LabeledOperator& a) {
    EigenDecomposition eig = hermitian_eig(a);
    const Index n = a.dim();
    const double lam_max = n > 0 ? eig.eigenvalues(0) : 0.0;
    Eigen::VectorXd d = eig.eigenvalues;
    for (Index i = 0; i < n; ++i) {
        if (d(i) < -tol::psd_clamp_rel * lam_max)
            throw NotPSD("psd_sqrt: eigenvalue " + std::to_string(d(i)) + " below clamp window");
        // The whole +/- window snaps to zero: eigensolver noise of size
        // eps*|a| would otherwise surface as sqrt(eps) ~ 1e-8 in the result.
        d(i) = d(i) > tol::psd_clamp_rel * lam_max ? std::sqrt(d(i)) : 0.0;
    }
    Matrix s = eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.adjoint();
    return LabeledOperator(a.legs(), std::move(s));
}

LabeledOperator partial_trace(const LabeledOperator& a, const std::vector<std::string>& over) {
    const auto pos = positions_of(a.legs(), over, "partial_trace");
    std::vector<bool> traced(a.legs().size(), false);
    for (size_t p : pos) traced[p] = true;

    std::vector<Leg> kept;
    std::vector<Index> kept_dims, traced_dims;
    for (size_t i = 0; i < a.legs().size(); ++i) {
        if (traced[i]) traced_dims.push_back(a.legs()[i].dim);
        else {
            kept.push_back(a.legs()[i]);
            kept_dims.push_back(a.legs()[i].dim);
        }
    }

    const Index d = a.dim();
    const auto dims = leg_dims(a.legs());
    const auto str = strides_of(dims);
    const auto kstr = strides_of(kept_dims);
    const auto tstr = strides_of(traced_dims);

    // For every flat index: its flat position in the kept and traced subspaces.
    std::vector<Index> kflat(static_cast<size_t>(d), 0), tflat(static_cast<size_t>(d), 0);
    for (Index i = 0; i < d; ++i) {
        size_t kq = 0, tq = 0;
        for (size_t l = 0; l < dims.size(); ++l) {
            const Index digit = (i / str[l]) % dims[l];
            if (traced[l]) tflat[static_cast<size_t>(i)] += digit * tstr[tq++];
            else kflat[static_cast<size_t>(i)] += digit * kstr[kq++];
        }
    }

    const Index dk = kept.empty() ? 1 : total_dim(kept);
    Matrix out = Matrix::Zero(dk, dk);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            if (tflat[static_cast<size_t>(i)] == tflat[static_cast<size_t>(j)])
                out(kflat[static_cast<size_t>(i)], kflat[static_cast<size_t>(j)]) += a.data()(i, j);
    return LabeledOperator(std::move(kept), std::move(out));
}

LabeledOperator partial_transpose(const LabeledOperator& a, const std::vector<std::string>& over) {
    const auto pos = positions_of(a.legs(), over, "partial_transpose");
    std::vector<bool> flip(a.legs().size(), false);
    for (size_t p : pos) flip[p] = true;

    const Index d = a.dim();
    const auto dims = leg_dims(a.legs());
    const auto str = strides_of(dims);

    // Additive split of each flat index into kept / transposed contributions.
    std::vector<Index> keep_part(static_cast<size_t>(d), 0), swap_part(static_cast<size_t>(d), 0);
    for (Index i = 0; i < d; ++i) {
        for (size_t l = 0; l < dims.size(); ++l) {
            const Index contrib = ((i / str[l]) % dims[l]) * str[l];
            if (flip[l]) swap_part[static_cast<size_t>(i)] += contrib;
            else keep_part[static_cast<size_t>(i)] += contrib;
        }
    }

    Matrix out(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            out(keep_part[static_cast<size_t>(i)] + swap_part[static_cast<size_t>(j)],
                keep_part[static_cast<size_t>(j)] + swap_part[static_cast<size_t>(i)]) = a.data()(i, j);
    return LabeledOperator(a.legs(), std::move(out));
}

LabeledOperator permute_legs(const LabeledOperator& a, const std::vector<std::string>& order) {
    if (order.size() != a.legs().size())
        throw BadPermutation("permute_legs: order lists " + std::to_string(order.size()) + " labels, operator has " +
                             std::to_string(a.legs().size()) + " legs");
    std::set<std::string> seen(order.begin(), order.end());
    if (seen.size() != order.size()) throw BadPermutation("permute_legs: repeated label in order");
    std::vector<size_t> pos;
    try {
        pos = positions_of(a.legs(), order, "permute_legs");
    } catch (const UnknownLeg& e) {
        throw BadPermutation(e.what());
    }

    std::vector<Leg> new_legs;
    new_legs.reserve(order.size());
    for (size_t p : pos) new_legs.push_back(a.legs()[p]);

    const Index d = a.dim();
    const auto old_dims = leg_dims(a.legs());
    const auto old_str = strides_of(old_dims);
    const auto new_str = strides_of(leg_dims(new_legs));

    std::vector<Index> map(static_cast<size_t>(d), 0);
    for (Index i = 0; i < d; ++i)
        for (size_t k = 0; k < pos.size(); ++k)
            map[static_cast<size_t>(i)] += ((i / old_str[pos[k]]) % old_dims[pos[k]]) * new_str[k];

    Matrix out(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            out(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]) = a.data()(i, j);
    return LabeledOperator(std::move(new_legs), std::move(out));
}

LabeledOperator transpose(const LabeledOperator& a) {
    return LabeledOperator(a.legs(), a.data().transpose());
}

LabeledOperator hermitian_part(const LabeledOperator& a) {
    return LabeledOperator(a.legs(), 0.5 * (a.data() + a.data().adjoint()));
}

Index support_rank(const EigenDecomposition& eig, double rel_threshold) {
    if (eig.eigenvalues.size() == 0) return 0;
    const double cut = rel_threshold * eig.eigenvalues(0);
    Index r = 0;
    for (Index i = 0; i < eig.eigenvalues.size(); ++i)
        if (eig.eigenvalues(i) > cut) ++r;
    return r;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("max_abs_diff: shape mismatch");
    return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

} // namespace chanlink
