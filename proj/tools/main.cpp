// chanlink — command-line front end: build channel families, verify CPTP,
// run dilations and link products, compute fidelities and discrimination
// sweeps. Documents are JSON (channels, isometries) and CSV (sweeps).
#include "chanlink/io.hpp"
#include "chanlink/link.hpp"
#include "chanlink/pauli.hpp"
#include "chanlink/random.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>

namespace {

using namespace chanlink;

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// A channel argument is either a JSON file or "random:DIN[xDOUT][@RANK]",
// drawing from the shared seeded generator.
Channel resolve_channel(const std::string& arg, Rng& rng) {
    if (arg.rfind("random:", 0) != 0) return load_channel(arg);
    std::string spec = arg.substr(7);
    Index rank = 0;
    if (const auto at = spec.find('@'); at != std::string::npos) {
        rank = std::stol(spec.substr(at + 1));
        spec = spec.substr(0, at);
    }
    Index din = 0, dout = 0;
    if (const auto x = spec.find('x'); x != std::string::npos) {
        din = std::stol(spec.substr(0, x));
        dout = std::stol(spec.substr(x + 1));
    } else {
        din = dout = std::stol(spec);
    }
    if (din < 1 || dout < 1) throw ParamRange("random channel spec needs positive dimensions");
    if (rank == 0) rank = din * dout;
    return random_channel({{"0", din}}, {{"1", dout}}, rank, rng);
}

double parse_double(const std::string& s, const char* what) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParamRange(std::string("cannot parse ") + what + " '" + s + "'");
    }
}

// --shared takes tokens "L" or "L=R": m's output leg L links n's input leg R.
// n's legs are renamed onto m's (shared by mapping, the rest primed clear of
// collisions) so both operands live in one label space.
struct LinkSpecCli {
    Channel n_aligned;
    std::vector<std::string> shared;
};

LinkSpecCli align_link_operands(const Channel& m, const Channel& n, const std::vector<std::string>& tokens) {
    std::set<std::string> taken;
    for (const auto& l : m.choi().legs()) taken.insert(l.label);

    std::map<std::string, std::string> ren;
    std::vector<std::string> shared;
    std::set<std::string> used_targets;
    for (const auto& tok : tokens) {
        const auto eq = tok.find('=');
        const std::string left = eq == std::string::npos ? tok : tok.substr(0, eq);
        const std::string right = eq == std::string::npos ? tok : tok.substr(eq + 1);
        if (!used_targets.insert(left).second) throw LinkError("--shared: repeated m-side label '" + left + "'");
        const auto& mo = m.out_legs();
        if (std::none_of(mo.begin(), mo.end(), [&](const Leg& l) { return l.label == left; }))
            throw LinkError("--shared: '" + left + "' is not an output leg of the first channel");
        const auto& ni = n.in_legs();
        if (std::none_of(ni.begin(), ni.end(), [&](const Leg& l) { return l.label == right; }))
            throw LinkError("--shared: '" + right + "' is not an input leg of the second channel");
        if (right != left) ren[right] = left;
        shared.push_back(left);
    }
    for (const auto& l : n.choi().legs()) {
        if (ren.count(l.label)) continue;
        std::string fresh = l.label;
        while (taken.count(fresh) || used_targets.count(fresh)) fresh += "'";
        if (fresh != l.label) ren[l.label] = fresh;
        taken.insert(fresh);
    }
    return {rename_legs(n, ren), std::move(shared)};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) std::cout << text;
    else {
        std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write '" + out_path + "'");
        f << text;
    }
}

int run(int argc, char** argv) {
    CLI::App app{"calculus of finite-dimensional quantum channels: Choi representations, "
                 "Stinespring dilations, link products, fidelity and discrimination"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    long max_dim = 0;
    app.add_option("--seed", seed, "seed for random channel arguments (random:D[xD][@RANK])");
    app.add_option("--max-dim", max_dim, "total-dimension guard (overrides CHANLINK_MAX_DIM)");
    app.fallthrough();  // global flags may follow the subcommand

    // family
    auto* family = app.add_subcommand("family", "write a C/D/R/S diagonal-family channel document");
    std::string fam_kind, fam_p, fam_out;
    family->add_option("kind", fam_kind, "family kind: C, D, R or S")->required();
    family->add_option("p", fam_p, "family parameter")->required();
    family->add_option("-o,--output", fam_out, "output path (stdout if omitted)");

    // verify
    auto* verify = app.add_subcommand("verify", "report the CP and TP gaps of a channel");
    std::string ver_arg;
    verify->add_option("channel", ver_arg, "channel file or random:SPEC")->required();

    // dilate
    auto* dilate = app.add_subcommand("dilate", "construct a Stinespring dilation isometry");
    std::string dil_mode = "minimal", dil_out;
    std::vector<std::string> dil_args, dil_shared;
    dilate->add_option("channels", dil_args, "one channel (minimal) or two (first applied first)")
        ->required()
        ->expected(1, 2);
    dilate->add_option("--mode", dil_mode, "minimal | indirect | direct")
        ->check(CLI::IsMember({"minimal", "indirect", "direct"}));
    dilate->add_option("--shared", dil_shared, "shared legs L or L=R for link dilations")->delimiter(',');
    dilate->add_option("-o,--output", dil_out, "write the isometry document here");

    // link
    auto* link = app.add_subcommand("link", "link product of two channels over shared legs");
    std::vector<std::string> link_args, link_shared;
    std::string link_out;
    link->add_option("channels", link_args, "first channel, second channel")->required()->expected(2);
    link->add_option("--shared", link_shared, "shared legs L or L=R (may be empty: tensor product)")
        ->delimiter(',');
    link->add_option("-o,--output", link_out, "output path (stdout if omitted)");

    // fidelity
    auto* fid = app.add_subcommand("fidelity", "channel fidelity of two channels");
    std::vector<std::string> fid_args;
    std::string fid_method = "general";
    bool fid_cross = false;
    fid->add_option("channels", fid_args, "two channel arguments")->required()->expected(2);
    fid->add_option("--method", fid_method, "general | eigen | uhlmann")
        ->check(CLI::IsMember({"general", "eigen", "uhlmann"}));
    fid->add_flag("--cross-check", fid_cross, "also print the other methods and their gaps");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "n-fold self-link discrimination decay table");
    std::vector<std::string> sweep_args;
    std::string sweep_out;
    int sweep_nmax = 6;
    std::string sweep_eps = "0.01";
    sweep->add_option("channels", sweep_args, "two channel arguments")->required()->expected(2);
    sweep->add_option("--n-max", sweep_nmax, "largest self-link power");
    sweep->add_option("--epsilon", sweep_eps, "distinguishability threshold in (0,1)");
    sweep->add_option("-o,--output", sweep_out, "output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    if (max_dim > 0) set_dimension_guard(max_dim);
    else if (const char* env = std::getenv("CHANLINK_MAX_DIM")) set_dimension_guard(std::stol(env));

    Rng rng(seed);

    if (family->parsed()) {
        const FamilyKind kind = family_kind_from_string(fam_kind);
        const double p = parse_double(fam_p, "p");
        emit(channel_to_json(make_family(kind, p).channel), fam_out);
        return 0;
    }

    if (verify->parsed()) {
        const Channel c = resolve_channel(ver_arg, rng);
        const CptpReport rep = verify_cptp(c);
        std::cout << "cp_gap = " << fmt6(rep.cp_gap) << "\n"
                  << "tp_gap = " << fmt6(rep.tp_gap) << "\n"
                  << "ok = " << (rep.ok ? "true" : "false") << "\n";
        return rep.ok ? 0 : 3;
    }

    if (dilate->parsed()) {
        std::optional<Isometry> v;
        if (dil_args.size() == 1) {
            if (dil_mode != "minimal")
                throw ParamRange("dilate: modes indirect/direct need two channels");
            v = minimal_dilation(resolve_channel(dil_args[0], rng));
        } else {
            if (dil_mode == "minimal") throw ParamRange("dilate: mode minimal takes one channel");
            const Channel m = resolve_channel(dil_args[0], rng);
            const Channel n0 = resolve_channel(dil_args[1], rng);
            if (dil_shared.empty()) {
                v = dil_mode == "indirect" ? indirect_composition_dilation(n0, m)
                                           : direct_composition_dilation(n0, m);
            } else {
                const LinkSpecCli spec = align_link_operands(m, n0, dil_shared);
                v = dil_mode == "indirect" ? link_dilation_indirect(spec.n_aligned, m, spec.shared)
                                           : link_dilation_direct(spec.n_aligned, m, spec.shared);
            }
        }
        std::cout << "ancilla_dims =";
        for (const auto& l : v->anc_legs()) std::cout << " " << l.dim;
        std::cout << "\nancilla_dim_total = " << v->anc_dim() << "\n"
                  << "isometry_gap = " << fmt6(v->isometry_gap()) << "\n";
        if (!dil_out.empty()) store_isometry(dil_out, *v);
        return 0;
    }

    if (link->parsed()) {
        const Channel m = resolve_channel(link_args[0], rng);
        const Channel n0 = resolve_channel(link_args[1], rng);
        const LinkSpecCli spec = align_link_operands(m, n0, link_shared);
        emit(channel_to_json(link_product(spec.n_aligned, m, spec.shared)), link_out);
        return 0;
    }

    if (fid->parsed()) {
        const Channel a = resolve_channel(fid_args[0], rng);
        const Channel b = resolve_channel(fid_args[1], rng);
        const double general = channel_fidelity(a, b).value;

        double value = general;
        std::string method = "general";
        if (fid_method == "eigen") {
            value = eigen_fidelity(a, b).value;
            method = "eigen_pairing";
        } else if (fid_method == "uhlmann") {
            const auto [v0, w0] = uhlmann_maximizer(a, b);
            value = uhlmann_overlap(v0, w0, 1);
            method = "uhlmann_overlap";
        }
        std::cout << "fidelity = " << fmt12(value) << "\n"
                  << "method = " << method << "\n";
        if (fid_cross) {
            std::cout << "general = " << fmt12(general) << "\n";
            try {
                const double e = eigen_fidelity(a, b).value;
                std::cout << "eigen_pairing = " << fmt12(e) << " (gap " << fmt6(std::abs(e - general))
                          << ")\n";
            } catch (const NotCommuting&) {
                std::cout << "eigen_pairing = unavailable (Chois do not commute)\n";
            }
            const auto [v0, w0] = uhlmann_maximizer(a, b);
            const double u = uhlmann_overlap(v0, w0, 1);
            std::cout << "uhlmann_overlap = " << fmt12(u) << " (gap " << fmt6(std::abs(u - general))
                      << ")\n";
        }
        return 0;
    }

    if (sweep->parsed()) {
        const Channel a = resolve_channel(sweep_args[0], rng);
        const Channel b = resolve_channel(sweep_args[1], rng);
        const double eps = parse_double(sweep_eps, "epsilon");
        if (!(eps > 0.0 && eps < 1.0)) throw BadEpsilon("sweep: epsilon must be in (0,1)");
        emit(sweep_to_csv(discrimination_sweep(a, b, sweep_nmax, eps)), sweep_out);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParamRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadEpsilon& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LinkError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NotCommuting& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
