#include "chanlink/link.hpp"

#include <algorithm>
#include <set>

namespace chanlink {

namespace {

std::vector<Leg> legs_minus(const std::vector<Leg>& legs, const std::set<std::string>& drop) {
    std::vector<Leg> out;
    for (const auto& l : legs)
        if (!drop.count(l.label)) out.push_back(l);
    return out;
}

} // namespace

Channel link_product(const Channel& n, const Channel& m, const std::vector<std::string>& shared) {
    const std::set<std::string> sh(shared.begin(), shared.end());
    if (sh.size() != shared.size()) throw LinkError("link_product: repeated shared label");

    for (const auto& lab : shared) {
        const auto& mo = m.out_legs();
        const auto& ni = n.in_legs();
        auto mi = std::find_if(mo.begin(), mo.end(), [&](const Leg& l) { return l.label == lab; });
        auto ni_it = std::find_if(ni.begin(), ni.end(), [&](const Leg& l) { return l.label == lab; });
        if (mi == mo.end() || ni_it == ni.end())
            throw LinkError("link_product: shared label '" + lab + "' must be an m output and an n input");
        if (mi->dim != ni_it->dim)
            throw LinkError("link_product: shared leg '" + lab + "' has mismatched dimensions");
    }
    // All remaining labels must be disjoint between the operands.
    std::set<std::string> m_labels, n_labels;
    for (const auto& l : m.choi().legs()) m_labels.insert(l.label);
    for (const auto& l : n.choi().legs()) n_labels.insert(l.label);
    for (const auto& lab : m_labels)
        if (!sh.count(lab) && n_labels.count(lab))
            throw LinkError("link_product: label '" + lab + "' appears on both channels but is not shared");

    const std::vector<Leg> n_side_in = legs_minus(n.in_legs(), sh);   // n.in \ shared
    const std::vector<Leg> m_side_out = legs_minus(m.out_legs(), sh); // m.out \ shared

    // Working legs: m.out ++ m.in ++ n.out ++ (n.in \ shared); the shared legs
    // inside m.out double as n's inputs.
    std::vector<Leg> pad_for_m = n.out_legs();
    pad_for_m.insert(pad_for_m.end(), n_side_in.begin(), n_side_in.end());
    std::vector<Leg> pad_for_n = m_side_out;
    pad_for_n.insert(pad_for_n.end(), m.in_legs().begin(), m.in_legs().end());

    const LabeledOperator a = kron(partial_transpose(m.choi(), shared), identity_operator(pad_for_m));
    const LabeledOperator b = kron(n.choi(), identity_operator(pad_for_n));
    const LabeledOperator b_aligned = permute_legs(b, labels_of(a.legs()));
    const LabeledOperator prod(a.legs(), b_aligned.data() * a.data());
    const LabeledOperator traced = shared.empty() ? prod : partial_trace(prod, shared);

    std::vector<Leg> out_legs = m_side_out;
    out_legs.insert(out_legs.end(), n.out_legs().begin(), n.out_legs().end());
    std::vector<Leg> in_legs = m.in_legs();
    in_legs.insert(in_legs.end(), n_side_in.begin(), n_side_in.end());

    std::vector<std::string> order = labels_of(out_legs);
    for (const auto& lab : labels_of(in_legs)) order.push_back(lab);
    return Channel(std::move(in_legs), out_legs, permute_legs(traced, order));
}

Channel self_link_power(const Channel& m, int n) {
    if (n < 1) throw Error("self_link_power: n must be >= 1");
    const Index base = m.out_dim() * m.in_dim();
    Index total = 1;
    for (int k = 0; k < n; ++k) {
        total *= base;
        if (total > dimension_guard())
            throw TooLarge("self_link_power: total dimension " + std::to_string(total) +
                           " exceeds guard " + std::to_string(dimension_guard()));
    }
    Channel acc = m;
    for (int k = 1; k < n; ++k) {
        std::map<std::string, std::string> ren;
        for (const auto& l : m.choi().legs()) ren[l.label] = l.label + "@" + std::to_string(k);
        acc = tensor_channel(acc, rename_legs(m, ren));
    }
    return acc;
}

} // namespace chanlink
