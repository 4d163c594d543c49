#include "tomo/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace tomo {

namespace {

constexpr const char* kVersionLine = "# tomokit format 1";

std::string fmt(double v) {
    if (!std::isfinite(v)) throw IoError("NaN-in-payload: refusing to write non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("missing-file: cannot open " + path);
    return in;
}

void check_preamble(std::ifstream& in, const std::string& path, const std::string& header) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("malformed-header: empty file " + path);
    if (line.rfind("# tomokit format ", 0) != 0)
        throw IoError("malformed-header: missing format line in " + path);
    if (line != kVersionLine)
        throw IoError("version-mismatch: " + path + " declares \"" + line +
                      "\", expected \"" + kVersionLine + "\"");
    if (!std::getline(in, line) || line != header)
        throw IoError("malformed-header: expected header \"" + header + "\" in " + path);
}

std::vector<double> parse_record(const std::string& line, std::size_t n_cols,
                                 const std::string& path) {
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(cell, &pos);
        } catch (const std::exception&) {
            throw IoError("malformed-header: unparseable field \"" + cell + "\" in " + path);
        }
        if (pos != cell.size())
            throw IoError("malformed-header: unparseable field \"" + cell + "\" in " + path);
        if (!std::isfinite(v)) throw IoError("NaN-in-payload: non-finite value in " + path);
        fields.push_back(v);
    }
    if (fields.size() != n_cols)
        throw IoError("malformed-header: record with " + std::to_string(fields.size()) +
                      " columns, expected " + std::to_string(n_cols) + " in " + path);
    return fields;
}

void write_json_value(std::ostream& out, const nlohmann::json& j);

void write_json_object(std::ostream& out, const nlohmann::json& j) {
    // nlohmann keeps object keys sorted, so dumping in iteration order is
    // deterministic; doubles go through fmt() for stable formatting.
    out << '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        first = false;
        out << '\n' << "  " << nlohmann::json(it.key()).dump() << ": ";
        write_json_value(out, it.value());
    }
    out << "\n}";
}

void write_json_value(std::ostream& out, const nlohmann::json& j) {
    if (j.is_number_float())
        out << fmt(j.get<double>());
    else if (j.is_array()) {
        out << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << ',';
            write_json_value(out, j[i]);
        }
        out << ']';
    } else if (j.is_object())
        write_json_object(out, j);
    else
        out << j.dump();
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out = open_out(path);
    write_json_object(out, j);
    out << '\n';
    if (!out) throw IoError("write failed: " + path);
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in = open_in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("parse error at byte " + std::to_string(e.byte) + " of " + path + ": " +
                      e.what());
    }
}

}  // namespace

void write_tomogram(const std::string& path, const Tomogram& tomogram) {
    std::ofstream out = open_out(path);
    out << kVersionLine << "\n# state " << tomogram.state_label << "\nx,mu,nu,w\n";
    for (const TomogramSlice& s : tomogram.slices)
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << fmt(s.x[i]) << ',' << fmt(s.mu) << ',' << fmt(s.nu) << ',' << fmt(s.w[i])
                << '\n';
    if (!out) throw IoError("write failed: " + path);
}

Tomogram read_tomogram(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("malformed-header: empty file " + path);
    if (line != kVersionLine) {
        if (line.rfind("# tomokit format ", 0) == 0)
            throw IoError("version-mismatch: " + path + " declares \"" + line + "\"");
        throw IoError("malformed-header: missing format line in " + path);
    }
    Tomogram tomogram;
    if (!std::getline(in, line) || line.rfind("# state ", 0) != 0)
        throw IoError("malformed-header: missing state line in " + path);
    tomogram.state_label = line.substr(8);
    if (!std::getline(in, line) || line != "x,mu,nu,w")
        throw IoError("malformed-header: expected header \"x,mu,nu,w\" in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> f = parse_record(line, 4, path);
        if (tomogram.slices.empty() || tomogram.slices.back().mu != f[1] ||
            tomogram.slices.back().nu != f[2]) {
            TomogramSlice s;
            s.mu = f[1];
            s.nu = f[2];
            tomogram.slices.push_back(std::move(s));
        }
        tomogram.slices.back().x.push_back(f[0]);
        tomogram.slices.back().w.push_back(f[3]);
    }
    return tomogram;
}

void write_photon_tomogram(const std::string& path, const PhotonTomogram& tomogram) {
    std::ofstream out = open_out(path);
    out << kVersionLine << "\n# state " << tomogram.state_label << "\nre_alpha,im_alpha,n,w\n";
    for (const PhotonEntry& e : tomogram.entries)
        for (std::size_t n = 0; n < e.probs.size(); ++n)
            out << fmt(e.alpha.real()) << ',' << fmt(e.alpha.imag()) << ',' << n << ','
                << fmt(e.probs[n]) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

PhotonTomogram read_photon_tomogram(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("malformed-header: empty file " + path);
    if (line != kVersionLine) {
        if (line.rfind("# tomokit format ", 0) == 0)
            throw IoError("version-mismatch: " + path + " declares \"" + line + "\"");
        throw IoError("malformed-header: missing format line in " + path);
    }
    PhotonTomogram tomogram;
    if (!std::getline(in, line) || line.rfind("# state ", 0) != 0)
        throw IoError("malformed-header: missing state line in " + path);
    tomogram.state_label = line.substr(8);
    if (!std::getline(in, line) || line != "re_alpha,im_alpha,n,w")
        throw IoError("malformed-header: expected header \"re_alpha,im_alpha,n,w\" in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> f = parse_record(line, 4, path);
        Complex alpha(f[0], f[1]);
        if (tomogram.entries.empty() || tomogram.entries.back().alpha != alpha)
            tomogram.entries.push_back({alpha, {}});
        PhotonEntry& e = tomogram.entries.back();
        if (f[2] != static_cast<double>(e.probs.size()))
            throw IoError("malformed-header: non-contiguous photon index in " + path);
        e.probs.push_back(f[3]);
    }
    for (const PhotonEntry& e : tomogram.entries)
        tomogram.n_max = std::max(tomogram.n_max, static_cast<int>(e.probs.size()) - 1);
    return tomogram;
}

void write_wigner(const std::string& path, const WignerGrid& grid) {
    std::ofstream out = open_out(path);
    out << kVersionLine << "\nq,p,w\n";
    for (std::size_t i = 0; i < grid.q.size(); ++i)
        for (std::size_t j = 0; j < grid.p.size(); ++j)
            out << fmt(grid.q[i]) << ',' << fmt(grid.p[j]) << ','
                << fmt(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
                << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void write_histogram(const std::string& path, const Histogram& hist) {
    std::ofstream out = open_out(path);
    out << kVersionLine << "\nvalue,count\n";
    for (std::size_t i = 0; i < hist.values.size(); ++i)
        out << fmt(hist.values[i]) << ',' << hist.counts[i] << '\n';
    if (!out) throw IoError("write failed: " + path);
}

Histogram read_histogram(const std::string& path) {
    std::ifstream in = open_in(path);
    check_preamble(in, path, "value,count");
    Histogram hist;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> f = parse_record(line, 2, path);
        hist.values.push_back(f[0]);
        hist.counts.push_back(static_cast<std::int64_t>(f[1]));
    }
    return hist;
}

void write_density(const std::string& path, const DensityMatrix& rho) {
    const int dim = rho.dim();
    std::ofstream out = open_out(path);
    out << "{\n  \"dim\": " << dim << ",\n  \"re\": [";
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n)
            out << (m + n ? "," : "") << fmt(rho(m, n).real());
    out << "],\n  \"im\": [";
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n)
            out << (m + n ? "," : "") << fmt(rho(m, n).imag());
    out << "]\n}\n";
    if (!out) throw IoError("write failed: " + path);
}

DensityMatrix read_density(const std::string& path, LoadReport* report) {
    nlohmann::json j = read_json_file(path);
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw IoError("malformed-header: density JSON needs dim/re/im in " + path);
    const int dim = j["dim"].get<int>();
    if (dim < 1) throw IoError("non-square payload: dim " + std::to_string(dim) + " in " + path);
    const auto& re = j["re"];
    const auto& im = j["im"];
    const std::size_t want = static_cast<std::size_t>(dim) * dim;
    if (re.size() != want || im.size() != want)
        throw IoError("dim mismatch: dim " + std::to_string(dim) + " but " +
                      std::to_string(re.size()) + "/" + std::to_string(im.size()) +
                      " array entries in " + path);
    CMat m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const std::size_t k = static_cast<std::size_t>(r) * dim + c;
            double a = re[k].get<double>(), b = im[k].get<double>();
            if (!std::isfinite(a) || !std::isfinite(b))
                throw IoError("NaN-in-payload: non-finite value in " + path);
            m(r, c) = Complex(a, b);
        }
    DensityMatrix rho(std::move(m));
    if (report && rho.hermiticity_residual() > 1e-6)
        report->warnings.push_back("stored matrix is not Hermitian: residual " +
                                   std::to_string(rho.hermiticity_residual()));
    return rho;
}

void write_report(const std::string& path, const ReconstructionReport& report) {
    nlohmann::json j;
    if (report.fidelity_vs_reference) j["fidelity"] = *report.fidelity_vs_reference;
    j["trace_err"] = report.trace_err;
    j["herm_resid"] = report.herm_resid;
    j["min_eig"] = report.min_eig;
    j["grid"] = report.grid;
    write_json_file(path, j);
}

void write_manifest(const std::string& path, const DatasetManifest& manifest) {
    nlohmann::json j;
    j["format_version"] = manifest.format_version;
    j["scheme"] = manifest.scheme;
    j["state"] = manifest.state;
    j["grid"] = manifest.grid;
    j["files"] = manifest.files;
    j["seed"] = manifest.seed;
    write_json_file(path, j);
}

DatasetManifest read_manifest(const std::string& path) {
    nlohmann::json j = read_json_file(path);
    DatasetManifest m;
    try {
        m.format_version = j.at("format_version").get<std::string>();
        m.scheme = j.at("scheme").get<std::string>();
        m.state = j.at("state").get<std::string>();
        m.grid = j.at("grid").get<std::map<std::string, double>>();
        m.files = j.at("files").get<std::vector<std::string>>();
        m.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed-header: manifest " + path + ": " + e.what());
    }
    if (m.format_version != "1")
        throw IoError("version-mismatch: manifest declares format_version \"" +
                      m.format_version + "\", expected \"1\"");
    const fs::path base = fs::path(path).parent_path();
    for (const std::string& f : m.files) {
        const fs::path p = base / f;
        if (!fs::exists(p)) throw IoError("missing-file: " + p.string());
    }
    return m;
}

}  // namespace tomo
