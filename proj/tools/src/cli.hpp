#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace rmtlab::cli {

using cplx = std::complex<double>;

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalError = 3 };

struct ExperimentConfig {
    std::string command;
    std::string ensemble = "gaussian-c";
    std::string ensemble_b = "fourmatch-c";  // universality only
    int n = 64;
    cplx z{0.0, 0.0};
    cplx w{0.0, 0.0};  // kernel-eval only
    std::vector<double> r{1.0};
    long samples = 100;
    std::uint64_t seed = 0;
    std::string method = "auto";  // auto | direct | hessenberg
    bool real_kernel = false;
    double test_radius = 1.0;
    int nodes = 4096;
    int threads = 0;
    std::string out;
    std::string format;  // csv | json, inferred from `out` when empty

    bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

// Hex digest (FNV-1a, 64 bit) of the fields that determine results.
std::string config_hash(const ExperimentConfig& c);

// Throws DomainError on invalid fields.
void validate(const ExperimentConfig& c);

// "re" or "re,im".
cplx parse_complex(const std::string& s);

const std::vector<std::string>& subcommands();

// Full command line without the program name. Artifacts go to c.out,
// resolved against $RMTLAB_OUTPUT_DIR when relative.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmtlab::cli
