#ifndef TOMO_IO_HPP
#define TOMO_IO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tomo/forward.hpp"
#include "tomo/inverse.hpp"
#include "tomo/types.hpp"

namespace tomo {

// Dataset manifest: written last by synthesis commands so its presence marks
// a complete dataset. All referenced files are relative to the manifest.
struct DatasetManifest {
    std::string format_version = "1";
    std::string scheme;  // symplectic | homodyne | photon
    std::string state;
    std::map<std::string, double> grid;  // numeric grid metadata, by name
    std::vector<std::string> files;
    std::uint64_t seed = 0;
};

// Warnings surfaced by readers (e.g. Hermiticity drift in a stored matrix).
struct LoadReport {
    std::vector<std::string> warnings;
};

// All writers are deterministic: fixed record order, floats printed with
// %.17g, so identical inputs give byte-identical files. Non-finite payload
// values are refused on write and rejected on read (NaN-in-payload).

void write_tomogram(const std::string& path, const Tomogram& tomogram);
Tomogram read_tomogram(const std::string& path);

void write_photon_tomogram(const std::string& path, const PhotonTomogram& tomogram);
PhotonTomogram read_photon_tomogram(const std::string& path);

void write_wigner(const std::string& path, const WignerGrid& grid);

void write_histogram(const std::string& path, const Histogram& hist);
Histogram read_histogram(const std::string& path);

void write_density(const std::string& path, const DensityMatrix& rho);
DensityMatrix read_density(const std::string& path, LoadReport* report = nullptr);

void write_report(const std::string& path, const ReconstructionReport& report);

void write_manifest(const std::string& path, const DatasetManifest& manifest);
// Checks the format version and that every referenced file exists next to
// the manifest (missing-file error names the offending path).
DatasetManifest read_manifest(const std::string& path);

}  // namespace tomo

#endif
