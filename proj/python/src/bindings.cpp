// bindings.cpp — python module exposing the channel calculus: families,
// Choi/Kraus conversion, dilations, link products, fidelity and sweeps.
#include "chanlink/io.hpp"
#include "chanlink/link.hpp"
#include "chanlink/pauli.hpp"
#include "chanlink/random.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace chanlink;

namespace {

std::string leg_repr(const Leg& l) {
    std::ostringstream os;
    os << "Leg('" << l.label << "', " << l.dim << ")";
    return os.str();
}

Channel make_channel(std::vector<Leg> in_legs, std::vector<Leg> out_legs, const Matrix& choi) {
    return Channel(std::move(in_legs), std::move(out_legs), choi);
}

} // namespace

PYBIND11_MODULE(_chanlink, m) {
    m.doc() = "finite-dimensional quantum channels: Choi representations, Stinespring "
              "dilations, link products, fidelity and discrimination";

    py::register_exception<Error>(m, "Error");

    py::class_<Leg>(m, "Leg")
        .def(py::init<std::string, Index>(), py::arg("label"), py::arg("dim"))
        .def_readonly("label", &Leg::label)
        .def_readonly("dim", &Leg::dim)
        .def("__repr__", &leg_repr)
        .def("__eq__", [](const Leg& a, const Leg& b) { return a == b; });

    py::class_<Channel>(m, "Channel")
        .def(py::init(&make_channel), py::arg("in_legs"), py::arg("out_legs"), py::arg("choi"))
        .def_property_readonly("choi", [](const Channel& c) { return c.choi().data(); })
        .def_property_readonly("in_legs", &Channel::in_legs)
        .def_property_readonly("out_legs", &Channel::out_legs)
        .def_property_readonly("in_dim", &Channel::in_dim)
        .def_property_readonly("out_dim", &Channel::out_dim);

    py::class_<CptpReport>(m, "CptpReport")
        .def_readonly("cp_gap", &CptpReport::cp_gap)
        .def_readonly("tp_gap", &CptpReport::tp_gap)
        .def_readonly("ok", &CptpReport::ok);

    py::class_<Isometry>(m, "Isometry")
        .def_property_readonly("matrix", &Isometry::matrix)
        .def_property_readonly("in_legs", &Isometry::in_legs)
        .def_property_readonly("out_legs", &Isometry::out_legs)
        .def_property_readonly("anc_legs", &Isometry::anc_legs)
        .def_property_readonly("anc_dim", &Isometry::anc_dim)
        .def("isometry_gap", &Isometry::isometry_gap);

    py::enum_<FidelityMethod>(m, "FidelityMethod")
        .value("general", FidelityMethod::general)
        .value("eigen_pairing", FidelityMethod::eigen_pairing)
        .value("uhlmann_overlap", FidelityMethod::uhlmann_overlap);

    py::class_<FidelityReport>(m, "FidelityReport")
        .def_readonly("value", &FidelityReport::value)
        .def_readonly("method", &FidelityReport::method)
        .def_readonly("gap_to_cross_check", &FidelityReport::gap_to_cross_check);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("n", &SweepRow::n)
        .def_readonly("fidelity", &SweepRow::fidelity);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("fid1", &SweepResult::fid1)
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("epsilon", &SweepResult::epsilon)
        .def_readonly("n_tilde", &SweepResult::n_tilde)
        .def_readonly("max_crosscheck_gap", &SweepResult::max_crosscheck_gap);

    py::class_<PauliDiagonalChannel>(m, "PauliDiagonalChannel")
        .def_property_readonly("kind",
                               [](const PauliDiagonalChannel& f) { return std::string(to_string(f.kind)); })
        .def_readonly("p", &PauliDiagonalChannel::p)
        .def_readonly("diag", &PauliDiagonalChannel::diag)
        .def_readonly("channel", &PauliDiagonalChannel::channel);

    // channel algebra
    m.def("choi_from_kraus",
          [](const std::vector<Matrix>& ops, std::vector<Leg> in_legs, std::vector<Leg> out_legs) {
              return choi_from_kraus(KrausSet{ops}, std::move(in_legs), std::move(out_legs));
          },
          py::arg("operators"), py::arg("in_legs"), py::arg("out_legs"));
    m.def("kraus_from_choi", [](const Channel& c) { return kraus_from_choi(c).operators; });
    m.def("apply", [](const Channel& c, const Matrix& x) {
        return apply(c, LabeledOperator(c.in_legs(), x)).data();
    }, py::arg("channel"), py::arg("x"));
    m.def("verify_cptp", &verify_cptp);
    m.def("tensor_channel", &tensor_channel);
    m.def("compose_channel", &compose_channel, py::arg("n"), py::arg("m"), "Choi of n after m");
    m.def("identity_channel", &identity_channel, py::arg("in_leg"), py::arg("out_leg"));
    m.def("rename_legs", &rename_legs);

    // link products
    m.def("link_product", &link_product, py::arg("n"), py::arg("m"), py::arg("shared"));
    m.def("self_link_power", &self_link_power, py::arg("m"), py::arg("n"));

    // dilations
    m.def("minimal_dilation", &minimal_dilation, py::arg("m"), py::arg("anc_label") = "A");
    m.def("full_dilation", &full_dilation, py::arg("m"), py::arg("anc_label") = "A");
    m.def("indirect_composition_dilation", &indirect_composition_dilation, py::arg("n"), py::arg("m"));
    m.def("direct_composition_dilation", &direct_composition_dilation, py::arg("n"), py::arg("m"),
          py::arg("anc_label") = "A");
    m.def("link_dilation_indirect", &link_dilation_indirect, py::arg("n"), py::arg("m"), py::arg("shared"));
    m.def("link_dilation_direct", &link_dilation_direct, py::arg("n"), py::arg("m"), py::arg("shared"),
          py::arg("anc_label") = "A");
    m.def("apply_dilation", [](const Isometry& v, const Matrix& rho) {
        return apply_dilation(v, LabeledOperator(v.in_legs(), rho)).data();
    }, py::arg("isometry"), py::arg("rho"));

    // fidelity and discrimination
    m.def("state_fidelity", [](const Matrix& rho, const Matrix& sigma) {
        return state_fidelity(LabeledOperator({{"s", rho.rows()}}, rho),
                              LabeledOperator({{"s", sigma.rows()}}, sigma));
    }, py::arg("rho"), py::arg("sigma"));
    m.def("channel_fidelity", &channel_fidelity);
    m.def("eigen_fidelity", [](const Channel& a, const Channel& b) { return eigen_fidelity(a, b); });
    m.def("discrimination_sweep", &discrimination_sweep, py::arg("m"), py::arg("n"), py::arg("n_max"),
          py::arg("epsilon"));
    m.def("uhlmann_overlap", &uhlmann_overlap, py::arg("v"), py::arg("w"), py::arg("n_power") = 1);
    m.def("uhlmann_maximizer", [](const Channel& a, const Channel& b) { return uhlmann_maximizer(a, b); });

    // diagonal families
    m.def("make_family", [](const std::string& kind, double p) {
        return make_family(family_kind_from_string(kind), p);
    }, py::arg("kind"), py::arg("p"));
    m.def("family_choi", [](const std::string& kind, double p) {
        return family_choi(family_kind_from_string(kind), p).data();
    }, py::arg("kind"), py::arg("p"));
    m.def("pauli_matrix", &pauli_matrix, py::arg("i"));
    m.def("pauli_transfer", &pauli_transfer);
    m.def("transfer_diagonal", &transfer_diagonal, py::arg("channel"), py::arg("tol") = 1e-10);
    m.def("commutes", &commutes);

    // random generation and io
    m.def("random_channel",
          [](Index d_in, Index d_out, Index rank, std::uint64_t seed) {
              Rng rng(seed);
              if (rank == 0) rank = d_in * d_out;
              return random_channel({{"0", d_in}}, {{"1", d_out}}, rank, rng);
          },
          py::arg("d_in"), py::arg("d_out"), py::arg("rank") = 0, py::arg("seed") = 0,
          "Haar-induced CPTP channel; rank 0 means full Kraus rank");
    m.def("store_channel", &store_channel, py::arg("path"), py::arg("channel"));
    m.def("load_channel", &load_channel, py::arg("path"));
    m.def("channel_to_json", &channel_to_json);
    m.def("channel_from_json", &channel_from_json);

    m.def("dimension_guard", &dimension_guard);
    m.def("set_dimension_guard", &set_dimension_guard);
}
