// channel.hpp — CPTP maps stored by their Choi operator.
//
// The Choi operator of a map M: L(H_in) -> L(H_out) is
//   choi = (M x I)(|I>><<I|),  living on out_legs ++ in_legs,
// and the inverse map is M(X) = Tr_in[(I_out x X^T) choi].
#pragma once

#include "chanlink/tensor.hpp"

#include <map>
#include <vector>

namespace chanlink {

struct KrausSet {
    std::vector<Matrix> operators;  // each d_out x d_in
};

class Channel {
public:
    // choi is on out_legs ++ in_legs. Construction checks shape and
    // Hermiticity (1e-10 relative); positivity and trace preservation are
    // reported by verify_cptp, not enforced, so invalid candidates can be
    // represented and inspected.
    Channel(std::vector<Leg> in_legs, std::vector<Leg> out_legs, Matrix choi);
    Channel(std::vector<Leg> in_legs, std::vector<Leg> out_legs, LabeledOperator choi);

    const std::vector<Leg>& in_legs() const { return in_; }
    const std::vector<Leg>& out_legs() const { return out_; }
    const LabeledOperator& choi() const { return choi_; }

    Index in_dim() const { return total_dim(in_); }
    Index out_dim() const { return total_dim(out_); }
    std::vector<std::string> in_labels() const { return labels_of(in_); }
    std::vector<std::string> out_labels() const { return labels_of(out_); }

private:
    std::vector<Leg> in_, out_;
    LabeledOperator choi_;
};

struct CptpReport {
    double cp_gap = 0.0;  // -min(0, lambda_min(choi))
    double tp_gap = 0.0;  // max|Tr_out(choi) - I|
    bool ok = false;      // both gaps <= 1e-9
};

Channel choi_from_kraus(const KrausSet& k, std::vector<Leg> in_legs, std::vector<Leg> out_legs);

// One Kraus operator per Choi eigenvalue above 1e-10 * lambda_max.
KrausSet kraus_from_choi(const Channel& c);

// M(X) = Tr_in[(I_out x X^T) choi]; x must sit on exactly in_legs.
LabeledOperator apply(const Channel& c, const LabeledOperator& x);

CptpReport verify_cptp(const Channel& c);

// Choi of a x b, legs ordered (a.out ++ b.out ++ a.in ++ b.in).
Channel tensor_channel(const Channel& a, const Channel& b);

// Choi of n after m. m.out dims must equal n.in dims positionally; n's legs
// are renamed onto m's where needed (colliding output labels get primes).
Channel compose_channel(const Channel& n, const Channel& m);

Channel identity_channel(Leg in, Leg out);

// Rename legs by label; unknown keys are ignored.
Channel rename_legs(const Channel& c, const std::map<std::string, std::string>& mapping);

} // namespace chanlink
