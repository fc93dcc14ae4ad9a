// tensor.hpp — dense complex matrix algebra over labeled tensor-product spaces.
//
// An operator lives on an ordered list of legs (labeled tensor factors); the
// matrix is indexed row-major over the leg dimensions. Vectorization is fixed
// everywhere to |A>> = (A x I)|I>> = sum_{mn} A_{mn} |m>|n> (row-major).
#pragma once

#include "chanlink/errors.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace chanlink {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;
using Index   = Eigen::Index;

// Tolerances used across the library. Rank/clamp thresholds are relative to
// the largest eigenvalue so they survive the rho <-> Choi normalizations.
namespace tol {
inline constexpr double hermitian_rel         = 1e-12;  // strict Hermiticity (eig/sqrt inputs)
inline constexpr double channel_hermitian_rel = 1e-10;  // Choi operators after chained algebra
inline constexpr double eig_reconstruct_rel   = 1e-10;
inline constexpr double rank_rel              = 1e-10;  // support threshold, relative to lambda_max
inline constexpr double psd_clamp_rel         = 1e-10;
inline constexpr double sqrt_reconstruct      = 1e-9;
inline constexpr double cptp                  = 1e-9;
inline constexpr double kraus_completeness    = 1e-9;
inline constexpr double isometry              = 1e-9;
inline constexpr double commute_rel           = 1e-10;
inline constexpr double fidelity_clamp        = 1e-9;
inline constexpr double unit_trace            = 1e-9;
} // namespace tol

// ---------------------------------------------------------------------------
// Legs and the dimension guard
// ---------------------------------------------------------------------------

struct Leg {
    std::string label;
    Index dim = 0;
};

bool operator==(const Leg& a, const Leg& b);
bool operator!=(const Leg& a, const Leg& b);

Index total_dim(const std::vector<Leg>& legs);
std::vector<std::string> labels_of(const std::vector<Leg>& legs);

// Total-dimension guard for kron chains and self-link powers. Default 4096;
// the CLI maps --max-dim / CHANLINK_MAX_DIM onto this.
Index dimension_guard();
void set_dimension_guard(Index limit);

// ---------------------------------------------------------------------------
// LabeledOperator
// ---------------------------------------------------------------------------

class LabeledOperator {
public:
    // data must be square with side prod(leg dims); labels pairwise distinct.
    LabeledOperator(std::vector<Leg> legs, Matrix data);

    const std::vector<Leg>& legs() const { return legs_; }
    const Matrix& data() const { return data_; }
    Index dim() const { return data_.rows(); }

    bool has_leg(const std::string& label) const;
    const Leg& leg(const std::string& label) const;  // throws UnknownLeg
    Index leg_position(const std::string& label) const;

    double max_abs() const;
    bool is_hermitian(double rel_tol = tol::hermitian_rel) const;

private:
    std::vector<Leg> legs_;
    Matrix data_;
};

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;  // descending, deterministic tie order
    Matrix eigenvectors;          // columns, phase-canonicalized
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

LabeledOperator identity_operator(std::vector<Leg> legs);

// |I>> = sum_n |n>|n> in the computational basis; squared norm d.
Vector double_ket_identity(Index d);

// Row-major vectorization |A>> and its inverse.
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, Index rows, Index cols);

// (a x b) with row-major block convention; legs concatenate.
LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b);

// Deterministic Hermitian eigendecomposition of (a + a^dag)/2. Descending
// eigenvalues; exact ties ordered by the first differing eigenvector
// component, larger real part first.
EigenDecomposition hermitian_eig(const LabeledOperator& a);

// PSD square root; eigenvalues in [-1e-10*lambda_max, 0) clamp to zero,
// anything lower throws NotPSD.
LabeledOperator psd_sqrt(const LabeledOperator& a);

LabeledOperator partial_trace(const LabeledOperator& a, const std::vector<std::string>& over);
LabeledOperator partial_transpose(const LabeledOperator& a, const std::vector<std::string>& over);
LabeledOperator permute_legs(const LabeledOperator& a, const std::vector<std::string>& order);
LabeledOperator transpose(const LabeledOperator& a);
LabeledOperator hermitian_part(const LabeledOperator& a);

// Count of eigenvalues above rank_rel * lambda_max.
Index support_rank(const EigenDecomposition& eig, double rel_threshold = tol::rank_rel);

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace chanlink
