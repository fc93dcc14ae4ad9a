// pauli.hpp — the four qubit diagonal channel families with closed-form Choi
// operators, eigenvalue-pairing fidelity, commutation checks, and the
// dilation pair achieving the Uhlmann bound.
#pragma once

#include "chanlink/channel.hpp"
#include "chanlink/dilation.hpp"
#include "chanlink/fidelity.hpp"

#include <array>
#include <string>
#include <utility>

namespace chanlink {

// C: depolarizing            diag(1,  p,  p, p)   -1/3 <= p <= 1
// D: transpose depolarizing  diag(1,  p, -p, p)   -1   <= p <= 1/3
// R: hybrid depolarizing     diag(1, -p, -p, p)   -1/3 <= p <= 1
// S: hybrid transpose        diag(1, -p,  p, p)   -1   <= p <= 1/3
//
// The Choi matrices are authoritative; S's transfer diagonal follows from its
// Choi (off-diagonal -p), not the duplicated printed list.
enum class FamilyKind { C, D, R, S };

FamilyKind family_kind_from_string(const std::string& s);  // "C" | "D" | "R" | "S"
const char* to_string(FamilyKind k);

struct PauliDiagonalChannel {
    FamilyKind kind;
    double p;
    std::array<double, 3> diag;  // (a1, a2, a3)
    Channel channel;             // in leg "0", out leg "1"
};

Matrix pauli_matrix(int i);  // sigma_0..sigma_3

// Closed-form Choi for any p (no range check); legs (out "1", in "0").
LabeledOperator family_choi(FamilyKind kind, double p);

// Range-checked family constructor.
PauliDiagonalChannel make_family(FamilyKind kind, double p);

// Transfer matrix T_ij = (1/2) Tr[sigma_i apply(c, sigma_j)] for qubit channels.
Eigen::Matrix4d pauli_transfer(const Channel& c);

// (1, a1, a2, a3) when the transfer matrix is diagonal; throws otherwise.
std::array<double, 4> transfer_diagonal(const Channel& c, double tol = 1e-10);

// max|MN - NM| <= 1e-10 * max|M| * max|N| on the Chois.
bool commutes(const Channel& m, const Channel& n);

// Fidelity by eigenvalue pairing in a simultaneous eigenbasis of the two
// (commuting) Chois: (1/d_in) sum_i sqrt(alpha_i beta_i). Degenerate
// eigenspaces of m's Choi are refined against n's before pairing;
// NotCommuting if off-diagonals survive.
FidelityReport eigen_fidelity(const Channel& m, const Channel& n);
FidelityReport eigen_fidelity(const PauliDiagonalChannel& m, const PauliDiagonalChannel& n);

// Dilation pair (V0, W0) with uhlmann_overlap(V0, W0, 1) equal to the channel
// fidelity; both carry the full out x in ancilla so their shapes agree.
std::pair<Isometry, Isometry> uhlmann_maximizer(const Channel& m, const Channel& n);
std::pair<Isometry, Isometry> uhlmann_maximizer(const PauliDiagonalChannel& m, const PauliDiagonalChannel& n);

} // namespace chanlink
