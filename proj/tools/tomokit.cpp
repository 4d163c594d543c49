// tomokit: synthesize, sample, reconstruct, compare and evolve quantum-state
// tomography data on the truncated Fock basis. Units: hbar = 1, [q,p] = i,
// so <0|q^2|0> = 1/2 and a coherent state alpha has <q> = sqrt(2) Re alpha.
//
// Exit codes: 0 ok, 1 usage error, 2 numeric error, 3 I/O error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "tomo/dynamics.hpp"
#include "tomo/fock.hpp"
#include "tomo/forward.hpp"
#include "tomo/grid.hpp"
#include "tomo/inverse.hpp"
#include "tomo/io.hpp"
#include "tomo/states.hpp"

namespace fs = std::filesystem;
using namespace tomo;

namespace {

void apply_threads(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("TOMOKIT_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);
}

double grid_value(const DatasetManifest& m, const std::string& key) {
    auto it = m.grid.find(key);
    if (it == m.grid.end())
        throw IoError("malformed-header: manifest grid is missing \"" + key + "\"");
    return it->second;
}

struct SynthOpts {
    std::string state;
    std::string scheme = "symplectic";
    std::string out;
    int dim = 32;
    double radius = 6.0;
    int nr = 48, ntheta = 48;
    double x_half = 8.0;
    int x_points = 512;
    int angles = 64;
    double alpha_r = 5.0;
    std::string alpha_grid = "40x40";
    std::uint64_t seed = 0;
    int threads = 0;
};

std::pair<int, int> parse_grid_pair(const std::string& text) {
    const std::size_t x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= text.size())
        throw UsageError("expected --alpha-grid as NxM, got \"" + text + "\"");
    try {
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw UsageError("expected --alpha-grid as NxM, got \"" + text + "\"");
    }
}

int run_synth(const SynthOpts& o) {
    apply_threads(o.threads);
    StateSpec spec = parse_state_spec(o.state);
    DensityMatrix rho = realize(spec, o.dim);
    fs::create_directories(o.out);
    DatasetManifest manifest;
    manifest.scheme = o.scheme;
    manifest.state = o.state;
    manifest.seed = o.seed;
    manifest.grid["dim"] = o.dim;

    if (o.scheme == "symplectic") {
        PolarDomain dom{o.radius, o.nr, o.ntheta};
        XGrid grid = XGrid::centered(o.x_half, o.x_points);
        std::cerr << "synth: " << dom.n_radial * dom.n_angular << " symplectic slices\n";
        Tomogram t = synth_symplectic(rho, o.state, dom, grid);
        write_tomogram(o.out + "/tomogram.csv", t);
        manifest.files = {"tomogram.csv"};
        manifest.grid["radius"] = dom.radius;
        manifest.grid["n_radial"] = dom.n_radial;
        manifest.grid["n_angular"] = dom.n_angular;
        manifest.grid["x_half"] = o.x_half;
        manifest.grid["x_points"] = o.x_points;
    } else if (o.scheme == "homodyne") {
        XGrid grid = XGrid::centered(o.x_half, o.x_points);
        std::cerr << "synth: " << o.angles << " homodyne angles\n";
        Tomogram t = synth_homodyne(rho, o.state, o.angles, grid);
        write_tomogram(o.out + "/tomogram.csv", t);
        manifest.files = {"tomogram.csv"};
        manifest.grid["angles"] = o.angles;
        manifest.grid["x_half"] = o.x_half;
        manifest.grid["x_points"] = o.x_points;
    } else if (o.scheme == "photon") {
        auto [nr, ntheta] = parse_grid_pair(o.alpha_grid);
        PolarDomain dom{o.alpha_r, nr, ntheta};
        std::cerr << "synth: " << nr * ntheta << " reference amplitudes\n";
        PhotonTomogram t = synth_photon(rho, o.state, dom);
        write_photon_tomogram(o.out + "/photon.csv", t);
        manifest.files = {"photon.csv"};
        manifest.grid["alpha_r"] = dom.radius;
        manifest.grid["n_radial"] = dom.n_radial;
        manifest.grid["n_angular"] = dom.n_angular;
    } else {
        throw UsageError("unknown scheme \"" + o.scheme +
                         "\" (expected symplectic, homodyne or photon)");
    }
    // manifest last: its presence marks a complete dataset
    write_manifest(o.out + "/manifest.json", manifest);
    std::printf("scheme=%s state=%s files=%zu out=%s\n", o.scheme.c_str(), o.state.c_str(),
                manifest.files.size(), o.out.c_str());
    return 0;
}

struct ReconOpts {
    std::string in;
    std::string scheme;  // optional; must match manifest when given
    std::string reference_state;
    std::string out;
    int dim = 0;  // 0: take the truncation recorded in the manifest
    double s = 0.0;
    double eps = 0.05;
    int threads = 0;
};

int run_reconstruct(const ReconOpts& o) {
    apply_threads(o.threads);
    DatasetManifest manifest = read_manifest(o.in + "/manifest.json");
    if (!o.scheme.empty() && o.scheme != manifest.scheme)
        throw UsageError("scheme mismatch: flag says \"" + o.scheme + "\" but manifest says \"" +
                         manifest.scheme + "\"");
    const std::string data_path = o.in + "/" + manifest.files.at(0);
    const int dim = o.dim > 0 ? o.dim : static_cast<int>(grid_value(manifest, "dim"));

    DensityMatrix rho;
    ReconstructionReport report;
    if (manifest.scheme == "symplectic") {
        Tomogram t = read_tomogram(data_path);
        PolarDomain dom{grid_value(manifest, "radius"),
                        static_cast<int>(grid_value(manifest, "n_radial")),
                        static_cast<int>(grid_value(manifest, "n_angular"))};
        std::cerr << "reconstruct: " << t.slices.size() << " slices, dim " << dim << "\n";
        std::tie(rho, report) = reconstruct_symplectic(t, dim, dom);
    } else if (manifest.scheme == "homodyne") {
        Tomogram t = read_tomogram(data_path);
        std::cerr << "reconstruct: " << t.slices.size() << " angles, dim " << dim << "\n";
        std::tie(rho, report) = reconstruct_homodyne(t, dim, o.eps);
    } else if (manifest.scheme == "photon") {
        OrderingParam ord{o.s};
        ord.validate();
        PhotonTomogram t = read_photon_tomogram(data_path);
        PolarDomain dom{grid_value(manifest, "alpha_r"),
                        static_cast<int>(grid_value(manifest, "n_radial")),
                        static_cast<int>(grid_value(manifest, "n_angular"))};
        std::cerr << "reconstruct: " << t.entries.size() << " amplitudes, dim " << dim << "\n";
        std::tie(rho, report) = reconstruct_photon(t, ord, dim, dom);
    } else {
        throw IoError("malformed-header: manifest scheme \"" + manifest.scheme + "\"");
    }

    if (!o.reference_state.empty()) {
        DensityMatrix ref = realize(parse_state_spec(o.reference_state), dim);
        report.fidelity_vs_reference = fidelity(rho, ref, reconstruction_tolerances());
    }
    fs::create_directories(o.out);
    write_density(o.out + "/density.json", rho);
    write_report(o.out + "/report.json", report);
    if (report.fidelity_vs_reference)
        std::printf("fidelity=%.6f trace_err=%.3e herm_resid=%.3e min_eig=%.3e\n",
                    *report.fidelity_vs_reference, report.trace_err, report.herm_resid,
                    report.min_eig);
    else
        std::printf("trace_err=%.3e herm_resid=%.3e min_eig=%.3e\n", report.trace_err,
                    report.herm_resid, report.min_eig);
    return 0;
}

struct SampleOpts {
    std::string state;
    std::string out;
    int dim = 32;
    double phi = 0.0;
    double x_half = 8.0;
    int x_points = 512;
    std::int64_t shots = 100000;
    std::uint64_t seed = 0;
    int threads = 0;
};

int run_sample(const SampleOpts& o) {
    apply_threads(o.threads);
    DensityMatrix rho = realize(parse_state_spec(o.state), o.dim);
    XGrid grid = XGrid::centered(o.x_half, o.x_points);
    TomogramSlice slice = homodyne_marginal(rho, o.phi, grid);
    Histogram hist = sample_counts(slice, o.shots, o.seed);
    write_histogram(o.out, hist);
    std::printf("shots=%lld mean=%.17g out=%s\n", static_cast<long long>(hist.total()),
                hist.mean(), o.out.c_str());
    return 0;
}

int run_fidelity(const std::string& path_a, const std::string& path_b) {
    LoadReport lr;
    DensityMatrix a = read_density(path_a, &lr);
    DensityMatrix b = read_density(path_b, &lr);
    for (const std::string& w : lr.warnings) std::cerr << "warning: " << w << "\n";
    std::printf("fidelity=%.6f\n", fidelity(a, b));
    return 0;
}

struct WignerOpts {
    std::string state;
    std::string in;
    std::string out;
    int dim = 32;
    double q_half = 6.0, p_half = 6.0;
    int q_points = 129, p_points = 129;
    int threads = 0;
};

int run_wigner(const WignerOpts& o) {
    apply_threads(o.threads);
    DensityMatrix rho;
    if (!o.in.empty())
        rho = read_density(o.in);
    else if (!o.state.empty())
        rho = realize(parse_state_spec(o.state), o.dim);
    else
        throw UsageError("wigner needs --state or --in");
    WignerGrid w = wigner(rho, XGrid::centered(o.q_half, o.q_points),
                          XGrid::centered(o.p_half, o.p_points));
    if (!o.out.empty()) write_wigner(o.out, w);
    // report the value at the grid point nearest the origin
    int iq = 0, ip = 0;
    for (std::size_t i = 0; i < w.q.size(); ++i)
        if (std::abs(w.q[i]) < std::abs(w.q[iq])) iq = static_cast<int>(i);
    for (std::size_t j = 0; j < w.p.size(); ++j)
        if (std::abs(w.p[j]) < std::abs(w.p[ip])) ip = static_cast<int>(j);
    std::printf("w_origin=%.17g integral=%.17g\n", w.values(iq, ip), w.integral());
    return 0;
}

struct EvolveOpts {
    std::string state;
    std::string in;
    std::string out;
    int dim = 32;
    double t = 0.0;
    int threads = 0;
};

int run_evolve(const EvolveOpts& o) {
    apply_threads(o.threads);
    DensityMatrix rho;
    if (!o.in.empty())
        rho = read_density(o.in);
    else if (!o.state.empty())
        rho = realize(parse_state_spec(o.state), o.dim);
    else
        throw UsageError("evolve needs --state or --in");
    DensityMatrix evolved = evolve(rho, {o.t});
    write_density(o.out, evolved);
    std::printf("t=%.17g purity=%.17g out=%s\n", o.t, evolved.purity(), o.out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "tomokit: quantum-state tomography on the truncated Fock basis.\n"
        "Units: hbar = 1, q = (a + a†)/sqrt(2), so vacuum <q^2> = 1/2."};
    app.require_subcommand(1);

    SynthOpts so;
    CLI::App* synth = app.add_subcommand("synth", "Synthesize a tomogram dataset");
    synth->add_option("--state", so.state, "State spec, e.g. cat:a=1,b=1 (required)")
        ->required();
    synth->add_option("--scheme", so.scheme,
                      "symplectic | homodyne | photon (default symplectic)");
    synth->add_option("--out", so.out, "Output dataset directory (required)")->required();
    synth->add_option("--dim", so.dim, "Fock truncation (default 32)");
    synth->add_option("--radius", so.radius, "(mu,nu) disk radius (default 6)");
    synth->add_option("--nr", so.nr, "Radial nodes (default 48)");
    synth->add_option("--ntheta", so.ntheta, "Angular nodes (default 48)");
    synth->add_option("--x-half", so.x_half, "Quadrature grid half-width (default 8)");
    synth->add_option("--x-points", so.x_points, "Quadrature grid points (default 512)");
    synth->add_option("--angles", so.angles, "Homodyne angle count (default 64)");
    synth->add_option("--alpha-r", so.alpha_r, "Photon scheme alpha-disk radius (default 5)");
    synth->add_option("--alpha-grid", so.alpha_grid, "Photon alpha grid NrxNtheta (default 40x40)");
    synth->add_option("--seed", so.seed, "Recorded dataset seed (default 0)");
    synth->add_option("--threads", so.threads, "OpenMP thread cap (default: TOMOKIT_THREADS)");

    SampleOpts po;
    CLI::App* sample = app.add_subcommand("sample", "Draw finite-shot homodyne samples");
    sample->add_option("--state", po.state, "State spec (required)")->required();
    sample->add_option("--out", po.out, "Histogram CSV path (required)")->required();
    sample->add_option("--dim", po.dim, "Fock truncation (default 32)");
    sample->add_option("--phi", po.phi, "Homodyne phase (default 0)");
    sample->add_option("--x-half", po.x_half, "Grid half-width (default 8)");
    sample->add_option("--x-points", po.x_points, "Grid points (default 512)");
    sample->add_option("--shots", po.shots, "Number of samples (default 100000)");
    sample->add_option("--seed", po.seed, "RNG seed (default 0)");
    sample->add_option("--threads", po.threads, "OpenMP thread cap (default: TOMOKIT_THREADS)");

    ReconOpts ro;
    CLI::App* recon = app.add_subcommand("reconstruct", "Reconstruct a density matrix");
    recon->add_option("--in", ro.in, "Dataset directory with manifest.json (required)")
        ->required();
    recon->add_option("--out", ro.out, "Output directory (required)")->required();
    recon->add_option("--scheme", ro.scheme, "Expected scheme; must match the manifest");
    recon->add_option("--dim", ro.dim, "Fock truncation (default: from manifest)");
    recon->add_option("--s", ro.s, "Photon-scheme ordering parameter in (-1, 0] (default 0)");
    recon->add_option("--eps", ro.eps, "Homodyne kernel regularizer (default 0.05)");
    recon->add_option("--reference-state", ro.reference_state,
                      "State spec to compute fidelity against");
    recon->add_option("--threads", ro.threads, "OpenMP thread cap (default: TOMOKIT_THREADS)");

    std::string fa, fb;
    CLI::App* fid = app.add_subcommand("fidelity", "Uhlmann fidelity of two density files");
    fid->add_option("a", fa, "First density JSON")->required();
    fid->add_option("b", fb, "Second density JSON")->required();

    WignerOpts wo;
    CLI::App* wig = app.add_subcommand("wigner", "Wigner function on a phase-space grid");
    wig->add_option("--state", wo.state, "State spec");
    wig->add_option("--in", wo.in, "Density JSON (alternative to --state)");
    wig->add_option("--out", wo.out, "Wigner CSV path");
    wig->add_option("--dim", wo.dim, "Fock truncation (default 32)");
    wig->add_option("--q-half", wo.q_half, "q half-width (default 6)");
    wig->add_option("--p-half", wo.p_half, "p half-width (default 6)");
    wig->add_option("--q-points", wo.q_points, "q points (default 129)");
    wig->add_option("--p-points", wo.p_points, "p points (default 129)");
    wig->add_option("--threads", wo.threads, "OpenMP thread cap (default: TOMOKIT_THREADS)");

    EvolveOpts eo;
    CLI::App* evo = app.add_subcommand("evolve", "Harmonic-oscillator evolution, frequency 1");
    evo->add_option("--state", eo.state, "State spec");
    evo->add_option("--in", eo.in, "Density JSON (alternative to --state)");
    evo->add_option("--out", eo.out, "Output density JSON (required)")->required();
    evo->add_option("--dim", eo.dim, "Fock truncation (default 32)");
    evo->add_option("--t", eo.t, "Evolution time (default 0)");
    evo->add_option("--threads", eo.threads, "OpenMP thread cap (default: TOMOKIT_THREADS)");

    try {
        app.parse(argc, argv);
        if (*synth) return run_synth(so);
        if (*sample) return run_sample(po);
        if (*recon) return run_reconstruct(ro);
        if (*fid) return run_fidelity(fa, fb);
        if (*wig) return run_wigner(wo);
        if (*evo) return run_evolve(eo);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
