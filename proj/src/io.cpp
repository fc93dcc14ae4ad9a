#include "chanlink/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace chanlink {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void emit_legs(std::ostringstream& os, const std::vector<Leg>& legs) {
    os << "[";
    for (size_t i = 0; i < legs.size(); ++i) {
        if (i) os << ",";
        os << "{\"label\":" << json(legs[i].label).dump() << ",\"dim\":" << legs[i].dim << "}";
    }
    os << "]";
}

void emit_matrix(std::ostringstream& os, const Matrix& m) {
    os << "[";
    for (Index i = 0; i < m.rows(); ++i) {
        if (i) os << ",";
        os << "\n    [";
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) os << ",";
            os << "[" << fmt(m(i, j).real()) << "," << fmt(m(i, j).imag()) << "]";
        }
        os << "]";
    }
    os << "\n  ]";
}

std::vector<Leg> parse_legs(const json& j, const char* field) {
    if (!j.is_array()) throw Error(std::string("document: ") + field + " must be an array");
    std::vector<Leg> legs;
    for (const auto& e : j) {
        if (!e.contains("label") || !e.contains("dim"))
            throw Error(std::string("document: ") + field + " entries need label and dim");
        legs.push_back(Leg{e.at("label").get<std::string>(), e.at("dim").get<Index>()});
    }
    return legs;
}

Matrix parse_matrix(const json& j, const char* field) {
    if (!j.is_array() || j.empty()) throw Error(std::string("document: ") + field + " must be a non-empty array");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<size_t>(i));
        if (static_cast<Index>(row.size()) != cols) throw Error("document: ragged matrix rows");
        for (Index k = 0; k < cols; ++k) {
            const auto& cell = row.at(static_cast<size_t>(k));
            if (!cell.is_array() || cell.size() != 2) throw Error("document: entries must be [re, im] pairs");
            m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return m;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("document: invalid JSON");
    if (j.value("schema_version", -1) != kChannelSchemaVersion)
        throw Error("document: unsupported schema_version");
    return j;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

} // namespace

std::string channel_to_json(const Channel& c) {
    std::ostringstream os;
    os << "{\n  \"schema_version\": " << kChannelSchemaVersion << ",\n  \"legs_in\": ";
    emit_legs(os, c.in_legs());
    os << ",\n  \"legs_out\": ";
    emit_legs(os, c.out_legs());
    os << ",\n  \"choi\": ";
    emit_matrix(os, c.choi().data());
    os << "\n}\n";
    return os.str();
}

Channel channel_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("choi")) throw Error("document: missing choi");
    return Channel(parse_legs(j.at("legs_in"), "legs_in"), parse_legs(j.at("legs_out"), "legs_out"),
                   parse_matrix(j.at("choi"), "choi"));
}

std::string isometry_to_json(const Isometry& v) {
    std::ostringstream os;
    os << "{\n  \"schema_version\": " << kChannelSchemaVersion << ",\n  \"legs_in\": ";
    emit_legs(os, v.in_legs());
    os << ",\n  \"legs_out\": ";
    emit_legs(os, v.out_legs());
    os << ",\n  \"legs_anc\": ";
    emit_legs(os, v.anc_legs());
    os << ",\n  \"v\": ";
    emit_matrix(os, v.matrix());
    os << "\n}\n";
    return os.str();
}

Isometry isometry_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("v")) throw Error("document: missing v");
    return Isometry(parse_legs(j.at("legs_in"), "legs_in"), parse_legs(j.at("legs_out"), "legs_out"),
                    parse_legs(j.at("legs_anc"), "legs_anc"), parse_matrix(j.at("v"), "v"));
}

std::string sweep_to_csv(const SweepResult& s) {
    std::ostringstream os;
    os << "n,fidelity\n";
    for (const auto& row : s.rows) os << row.n << "," << fmt12(row.fidelity) << "\n";
    os << "# fid1 = " << fmt12(s.fid1) << "\n";
    os << "# epsilon = " << fmt12(s.epsilon) << "\n";
    os << "# n_tilde = " << s.n_tilde << "\n";
    os << "# max_crosscheck_gap = " << fmt12(s.max_crosscheck_gap) << "\n";
    return os.str();
}

void store_channel(const std::string& path, const Channel& c) { spit(path, channel_to_json(c)); }
Channel load_channel(const std::string& path) { return channel_from_json(slurp(path)); }
void store_isometry(const std::string& path, const Isometry& v) { spit(path, isometry_to_json(v)); }
Isometry load_isometry(const std::string& path) { return isometry_from_json(slurp(path)); }
void store_sweep(const std::string& path, const SweepResult& s) { spit(path, sweep_to_csv(s)); }

} // namespace chanlink
