// dilation.hpp — Stinespring dilations: minimal single-channel dilation,
// indirect/direct composition dilations, and their link-product versions.
#pragma once

#include "chanlink/channel.hpp"

#include <string>
#include <vector>

namespace chanlink {

// V: H_in -> H_out x H_anc with V^dag V = I, rows ordered out_legs ++ anc_legs.
class Isometry {
public:
    Isometry(std::vector<Leg> in_legs, std::vector<Leg> out_legs, std::vector<Leg> anc_legs, Matrix v);

    const std::vector<Leg>& in_legs() const { return in_; }
    const std::vector<Leg>& out_legs() const { return out_; }
    const std::vector<Leg>& anc_legs() const { return anc_; }
    const Matrix& matrix() const { return v_; }

    Index in_dim() const { return total_dim(in_); }
    Index out_dim() const { return total_dim(out_); }
    Index anc_dim() const { return total_dim(anc_); }

    double isometry_gap() const;  // max|V^dag V - I|

private:
    std::vector<Leg> in_, out_, anc_;
    Matrix v_;
};

// V = (I_out x (choi^T)^{1/2}) (|I_out>> x I_in), ancilla compressed onto the
// support of choi^T in the deterministic eigenvector order.
Isometry minimal_dilation(const Channel& m, const std::string& anc_label = "A");

// Uncompressed variant: ancilla is the full out x in space. Used by the
// Uhlmann maximizers, where both dilations must share one ancilla space.
Isometry full_dilation(const Channel& m, const std::string& anc_label = "A");

// V = (V2 x I_A1) V1 from the minimal dilations of m and n; ancilla legs A1, A2.
Isometry indirect_composition_dilation(const Channel& n, const Channel& m);

// Minimal dilation of the composite n after m; ancilla dim = rank of its Choi.
Isometry direct_composition_dilation(const Channel& n, const Channel& m, const std::string& anc_label = "A");

// Dilations of the link over the shared legs (m's outputs feeding n's inputs,
// identity threaded through the side legs).
Isometry link_dilation_indirect(const Channel& n, const Channel& m, const std::vector<std::string>& shared);
Isometry link_dilation_direct(const Channel& n, const Channel& m, const std::vector<std::string>& shared,
                              const std::string& anc_label = "A");

// Tr_anc[V rho V^dag]; rho must sit on in_legs.
LabeledOperator apply_dilation(const Isometry& v, const LabeledOperator& rho);

} // namespace chanlink
