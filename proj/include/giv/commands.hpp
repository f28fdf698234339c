#pragma once

// givtool subcommands. Every command produces a CheckReport; its JSON form
// leaves out the wall-clock time so that reruns with the same configuration
// are byte-identical.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "giv/hofstadter.hpp"
#include "giv/lattice.hpp"
#include "giv/transform.hpp"
#include "json.hpp"

namespace giv::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInvalidInput = 2 };

struct RunConfig {
    std::string command;
    int dim = 2;  // spacetime dimension for the gauge checks, spatial for spectra
    int size = 3;
    Boundary bc = Boundary::Periodic;
    Construction construction = Construction::Asymmetric;
    std::optional<std::uint64_t> seed;
    int trials = 100;
    double beta = 1.0;
    std::optional<double> tolerance;
    HofstadterParams hofstadter;
    int n_max = 8;
    bool compare = false;
    std::string source = "random";  // twist-check: random | uniform
    TransitionData transition;
    std::string output;      // explicit output file
    std::string output_dir;  // default: $GIV_OUTPUT_DIR, else "."
};

// Overlays the keys of a JSON config onto `cfg`. Unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

struct CheckReport {
    std::string check;
    bool pass = false;
    double max_violation = 0.0;
    double tolerance = 0.0;
    std::optional<std::uint64_t> seed;
    double elapsed_seconds = 0.0;
    nlohmann::json details = nlohmann::json::object();

    nlohmann::json to_json() const;
};

CheckReport cmd_roundtrip(const RunConfig& cfg);
CheckReport cmd_dof(const RunConfig& cfg);
CheckReport cmd_gauge_orbit(const RunConfig& cfg);
CheckReport cmd_bianchi(const RunConfig& cfg);
CheckReport cmd_action_check(const RunConfig& cfg);
CheckReport cmd_twist_check(const RunConfig& cfg);
CheckReport cmd_spectrum(const RunConfig& cfg);
CheckReport cmd_butterfly(const RunConfig& cfg);

// Validates and runs cfg.command. Throws std::invalid_argument on bad input.
CheckReport dispatch(const RunConfig& cfg);

// Full command line: parses, runs, prints the JSON report on `out`.
// Returns an ExitCode.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace giv::cli
