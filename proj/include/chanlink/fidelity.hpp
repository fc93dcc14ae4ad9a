// fidelity.hpp — state fidelity, channel fidelity on normalized Choi
// operators, the n-fold discrimination decay, and the Uhlmann overlap.
#pragma once

#include "chanlink/channel.hpp"
#include "chanlink/dilation.hpp"

#include <vector>

namespace chanlink {

enum class FidelityMethod { general, eigen_pairing, uhlmann_overlap };

const char* to_string(FidelityMethod m);

struct FidelityReport {
    double value = 0.0;  // clamped to [0, 1]
    FidelityMethod method = FidelityMethod::general;
    double gap_to_cross_check = 0.0;
};

struct SweepRow {
    int n = 0;
    double fidelity = 0.0;
};

struct SweepResult {
    double fid1 = 0.0;
    std::vector<SweepRow> rows;
    double epsilon = 0.0;
    long n_tilde = -1;  // -1 when unreachable (fid1 >= 1)
    double max_crosscheck_gap = 0.0;
};

// F(rho, sigma) = Tr sqrt(sqrt(rho) sigma sqrt(rho)); inputs must be PSD with
// unit trace (within 1e-9).
double state_fidelity(const LabeledOperator& rho, const LabeledOperator& sigma);

// F(M, N) = F(choi_M / d_in, choi_N / d_in).
FidelityReport channel_fidelity(const Channel& m, const Channel& n);

// Rows are F(M,N)^n for n = 1..n_max. Where the self-linked Choi dimension
// stays within min(dimension guard, 256), the literal tensor-power fidelity is
// also computed and the largest deviation reported. n_tilde is the last n for
// which F^n >= epsilon may still hold: floor(log eps / log F).
SweepResult discrimination_sweep(const Channel& m, const Channel& n, int n_max, double epsilon);

// (1/d_in^n) |Tr(V^dag W)|^n for dilation isometries of equal shape.
double uhlmann_overlap(const Isometry& v, const Isometry& w, int n_power);

} // namespace chanlink
