#ifndef BFT_CONFIG_HPP
#define BFT_CONFIG_HPP

#include "bft/bft_core.hpp"
#include "bft/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bft {

// Run configuration, one JSON document per run. Reproducibility over
// convenience: no environment variables except the output-dir override.
struct RunConfig {
    DispersionPtr dispersion;
    std::optional<GGEState> state;
    std::optional<QuenchSpec> quench;
    std::vector<double> alphas{2.0};

    struct OracleSettings {
        int L = 512;
        int ell = 64;
        double t_min = 0.0;
        double t_max = -1.0; // <= 0: use the revival guard limit
        int t_count = 33;
    } oracle;

    struct ScanSettings {
        std::vector<double> x;
        std::vector<double> t;
        std::vector<double> xi;
        int draws = 20; // random draws for identity checks
    } scan;

    QuadratureSettings quadrature;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    int threads = 1;
    bool allow_branch_risk = false;

    std::string config_hash; // FNV-1a of the canonical JSON text
    std::string source_text;

    // The state named in the config; "from_quench" derives the long-time GGE.
    const GGEState& require_state() const;
    const QuenchSpec& require_quench() const;
};

// Parses the JSON config file. Unknown keys are errors (catches typos),
// missing sections are errors only when a command needs them.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

} // namespace bft

#endif
