#include "chanlink/dilation.hpp"
#include "chanlink/link.hpp"
#include "chanlink/pauli.hpp"
#include "chanlink/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace chanlink;

namespace {

const std::vector<Leg> kIn{{"0", 2}};
const std::vector<Leg> kOut{{"1", 2}};

Channel family_channel(FamilyKind k, double p) { return make_family(k, p).channel; }

Channel identity2() {
    return choi_from_kraus(KrausSet{{Matrix::Identity(2, 2)}}, kIn, kOut);
}

// Output agreement on the full matrix-unit basis of the input space.
double dilation_vs_channel_gap(const Isometry& v, const Channel& c) {
    double gap = 0.0;
    const Index d = c.in_dim();
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            const Matrix unit = oracle::matrix_unit(d, i, j);
            const Matrix via_v = apply_dilation(v, LabeledOperator(c.in_legs(), unit)).data();
            const Matrix via_c = oracle::apply_choi(c.choi().data(), unit, c.out_dim(), d);
            gap = std::max(gap, oracle::max_abs_diff(via_v, via_c));
        }
    return gap;
}

} // namespace

TEST_CASE("minimal_dilation of the identity channel") {
    const Isometry v = minimal_dilation(identity2());
    CHECK(v.anc_dim() == 1);
    // V equals the identity up to a global phase
    const Complex ph = v.matrix()(0, 0);
    CHECK(std::abs(std::abs(ph) - 1.0) <= 1e-12);
    CHECK(oracle::max_abs_diff(v.matrix(), Matrix(ph * Matrix::Identity(2, 2))) <= 1e-12);
    CHECK(v.isometry_gap() <= tol::isometry);
}

TEST_CASE("minimal_dilation ancilla equals Choi rank") {
    CHECK(minimal_dilation(family_channel(FamilyKind::C, 0.0)).anc_dim() == 4);   // Choi = I/2
    CHECK(minimal_dilation(family_channel(FamilyKind::C, 1.0)).anc_dim() == 1);   // rank-1 Choi
    CHECK(minimal_dilation(family_channel(FamilyKind::D, 1.0 / 3.0)).anc_dim() == 3);

    const Channel c = family_channel(FamilyKind::C, 0.5);
    const Isometry v = minimal_dilation(c);
    CHECK(v.anc_dim() == 4);
    CHECK(dilation_vs_channel_gap(v, c) <= 1e-10);
}

TEST_CASE("minimal_dilation matches the eigenvector shortcut") {
    // Compressing (I x S)(|I>> x I) onto Supp(choi^T) must equal
    // V[(a,j),n] = sqrt(l_j) conj(U[(a,n),j]) with U, l from choi^T.
    const Channel c = family_channel(FamilyKind::R, 0.4);
    const Isometry v = minimal_dilation(c);
    const EigenDecomposition eig = hermitian_eig(transpose(c.choi()));
    const Index r = v.anc_dim();
    Matrix expect(2 * r, 2);
    for (Index a = 0; a < 2; ++a)
        for (Index j = 0; j < r; ++j)
            for (Index n = 0; n < 2; ++n)
                expect(a * r + j, n) =
                    std::sqrt(eig.eigenvalues(j)) * std::conj(eig.eigenvectors(a * 2 + n, j));
    CHECK(oracle::max_abs_diff(v.matrix(), expect) <= 1e-12);
}

TEST_CASE("apply_dilation on specific states") {
    const Channel c5 = family_channel(FamilyKind::C, 0.5);
    const Isometry v5 = minimal_dilation(c5);
    Matrix zero_state = Matrix::Zero(2, 2);
    zero_state(0, 0) = 1;
    Matrix expect(2, 2);
    expect << 0.75, 0, 0, 0.25;
    CHECK(oracle::max_abs_diff(apply_dilation(v5, LabeledOperator(kIn, zero_state)).data(), expect) <= 1e-12);

    const Channel c0 = family_channel(FamilyKind::C, 0.0);
    const Isometry v0 = minimal_dilation(c0);
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(oracle::max_abs_diff(apply_dilation(v0, LabeledOperator(kIn, plus)).data(),
                               Matrix(0.5 * Matrix::Identity(2, 2))) <= 1e-12);

    CHECK_THROWS_AS(apply_dilation(v0, LabeledOperator({{"0", 3}}, Matrix::Identity(3, 3))), ShapeError);
}

TEST_CASE("minimal_dilation rejects invalid channels") {
    const Channel bad(kIn, kOut, family_choi(FamilyKind::C, 2.0));
    CHECK_THROWS_AS(minimal_dilation(bad), NotCPTP);
}

TEST_CASE("indirect composition dilation") {
    const Isometry idid = indirect_composition_dilation(identity2(), identity2());
    CHECK(idid.anc_dim() == 1);
    Matrix rho(2, 2);
    rho << 0.25, Complex(0.1, -0.3), Complex(0.1, 0.3), 0.75;
    CHECK(oracle::max_abs_diff(apply_dilation(idid, LabeledOperator(kIn, rho)).data(), rho) <= 1e-12);

    // C(0.5) then C(0.6) behaves as C(0.3)
    const Isometry v = indirect_composition_dilation(family_channel(FamilyKind::C, 0.6),
                                                     family_channel(FamilyKind::C, 0.5));
    CHECK(v.anc_legs().size() == 2);
    CHECK(v.anc_legs()[0].dim == 4);
    CHECK(v.anc_legs()[1].dim == 4);
    CHECK(v.isometry_gap() <= tol::isometry);
    CHECK(dilation_vs_channel_gap(v, family_channel(FamilyKind::C, 0.3)) <= 1e-9);
}

TEST_CASE("direct composition dilation") {
    CHECK(direct_composition_dilation(identity2(), identity2()).anc_dim() == 1);

    Rng rng(307);
    for (int t = 0; t < 10; ++t) {
        const Channel m = random_channel(kIn, kOut, 2, rng);
        const Channel n = random_channel(kIn, kOut, 3, rng);
        const Channel nm = compose_channel(n, m);
        const Isometry direct = direct_composition_dilation(n, m);
        const Isometry indirect = indirect_composition_dilation(n, m);
        CHECK(direct.isometry_gap() <= tol::isometry);
        CHECK(dilation_vs_channel_gap(direct, nm) <= 1e-9);
        CHECK(dilation_vs_channel_gap(indirect, nm) <= 1e-9);
        // minimality and the resource ordering of the two constructions
        const EigenDecomposition eig = hermitian_eig(hermitian_part(nm.choi()));
        CHECK(direct.anc_dim() == support_rank(eig));
        CHECK(direct.anc_dim() <= indirect.anc_dim());
    }
}

TEST_CASE("full-rank d=4 pair: ancilla accounting") {
    Rng rng(311);
    const std::vector<Leg> in4{{"0", 4}};
    const std::vector<Leg> out4{{"1", 4}};
    const Channel m = random_channel(in4, out4, 16, rng);
    const Channel n = random_channel(in4, out4, 16, rng);
    REQUIRE(support_rank(hermitian_eig(hermitian_part(m.choi()))) == 16);
    REQUIRE(support_rank(hermitian_eig(hermitian_part(n.choi()))) == 16);

    const Isometry indirect = indirect_composition_dilation(n, m);
    CHECK(indirect.anc_legs()[0].dim == 16);
    CHECK(indirect.anc_legs()[1].dim == 16);
    CHECK(indirect.anc_dim() == 256);

    const Isometry direct = direct_composition_dilation(n, m);
    CHECK(direct.anc_dim() <= 256);
    CHECK(direct.anc_dim() ==
          support_rank(hermitian_eig(hermitian_part(compose_channel(n, m).choi()))));
}

TEST_CASE("link dilations on the two-sided 0..6 leg layout") {
    Rng rng(313);
    // M: H0 x H2 -> H1 x H3, N: H3 x H5 -> H4 x H6, shared leg 3.
    const Channel m = random_channel({{"0", 2}, {"2", 2}}, {{"1", 2}, {"3", 2}}, 4, rng);
    const Channel n = random_channel({{"3", 2}, {"5", 2}}, {{"4", 2}, {"6", 2}}, 4, rng);
    const Channel linked = link_product(n, m, {"3"});

    const Isometry vi = link_dilation_indirect(n, m, {"3"});
    CHECK(vi.isometry_gap() <= tol::isometry);
    CHECK(labels_of(vi.in_legs()) == std::vector<std::string>{"0", "2", "5"});
    CHECK(labels_of(vi.out_legs()) == std::vector<std::string>{"1", "4", "6"});
    CHECK(dilation_vs_channel_gap(vi, linked) <= 1e-9);

    const Isometry vd = link_dilation_direct(n, m, {"3"});
    CHECK(vd.isometry_gap() <= tol::isometry);
    CHECK(vd.anc_dim() == support_rank(hermitian_eig(hermitian_part(linked.choi()))));
    CHECK(dilation_vs_channel_gap(vd, linked) <= 1e-9);
    CHECK(vd.anc_dim() <= vi.anc_dim());

    CHECK_THROWS_AS(link_dilation_indirect(n, m, {"4"}), LinkError);
}

TEST_CASE("link dilations degenerate to the composition dilations") {
    // All side legs trivial: the link over the single shared leg is plain
    // composition, and the direct constructions coincide exactly.
    Rng rng(317);
    const Channel m = random_channel({{"0", 2}}, {{"mid", 2}}, 2, rng);
    const Channel n = random_channel({{"mid", 2}}, {{"out", 2}}, 3, rng);

    const Isometry via_link = link_dilation_direct(n, m, {"mid"});
    const Isometry via_comp = direct_composition_dilation(n, m);
    CHECK(oracle::max_abs_diff(via_link.matrix(), via_comp.matrix()) <= 1e-12);

    const Isometry ind_link = link_dilation_indirect(n, m, {"mid"});
    const Isometry ind_comp = indirect_composition_dilation(n, m);
    CHECK(oracle::max_abs_diff(ind_link.matrix(), ind_comp.matrix()) <= 1e-12);

    // identity channels all around: V rho V^dag = rho with ancilla dim 1
    const Channel mid_id = choi_from_kraus(KrausSet{{Matrix::Identity(2, 2)}}, {{"0", 2}}, {{"mid", 2}});
    const Channel out_id = choi_from_kraus(KrausSet{{Matrix::Identity(2, 2)}}, {{"mid", 2}}, {{"out", 2}});
    const Isometry vid = link_dilation_direct(out_id, mid_id, {"mid"});
    CHECK(vid.anc_dim() == 1);
    Matrix rho(2, 2);
    rho << 0.6, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.4;
    CHECK(oracle::max_abs_diff(apply_dilation(vid, LabeledOperator({{"0", 2}}, rho)).data(), rho) <= 1e-12);
}

TEST_CASE("dilations confirm the transposed-Choi trace identity") {
    // Tr_out[(choi of n after m)^T] = I on the input legs.
    Rng rng(331);
    const Channel m = random_channel(kIn, kOut, 2, rng);
    const Channel n = random_channel(kIn, kOut, 4, rng);
    const Channel nm = compose_channel(n, m);
    const LabeledOperator t = transpose(nm.choi());
    const LabeledOperator reduced = partial_trace(t, labels_of(nm.out_legs()));
    CHECK(max_abs_diff(reduced.data(), Matrix::Identity(reduced.dim(), reduced.dim())) <= 1e-10);
}

TEST_CASE("isometry invariant holds across random channels") {
    Rng rng(337);
    for (int t = 0; t < 50; ++t) {
        const Index din = t % 2 == 0 ? 2 : 3;
        const Channel c = random_channel({{"0", din}}, {{"1", 2}}, 1 + t % 4, rng);
        const Isometry v = minimal_dilation(c);
        CHECK(v.isometry_gap() <= tol::isometry);
        CHECK(dilation_vs_channel_gap(v, c) <= 1e-9);
        CHECK(v.anc_dim() == support_rank(hermitian_eig(hermitian_part(c.choi()))));
    }
}
