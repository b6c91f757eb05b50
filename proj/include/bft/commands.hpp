#ifndef BFT_COMMANDS_HPP
#define BFT_COMMANDS_HPP

#include "bft/config.hpp"

#include <iosfwd>
#include <string>

namespace bft::cmd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

// Each command writes its CSV/JSON artifacts into cfg.output_dir and a short
// human summary to `log`. They throw: the CLI maps exception type to exit code.

// (alpha, rate_space, rate_time) for every configured alpha.
void cmd_gge_entropy(const RunConfig& cfg, std::ostream& log);

// Oracle scan vs the quasiparticle profile: per-time CSV and a summary JSON
// with the fitted early slope against 2 * rate_time and the plateau against
// ell * rate_space.
void cmd_quench_compare(const RunConfig& cfg, std::ostream& log);

// Random (x, t) draws of the dynamic/static split identity.
void cmd_fcs_check(const RunConfig& cfg, std::ostream& log);

// Decay diagnostics: current-current power law, equal-time density-density
// exponential clustering, pair-correction light-cone map.
void cmd_diagnostics(const RunConfig& cfg, std::ostream& log);

// Yang-Baxter residuals for the configured alphas and both sign choices.
void cmd_replica_check(const RunConfig& cfg, std::ostream& log);

// Sector-sum identity on the configured state and on random validated GGEs.
void cmd_sector_check(const RunConfig& cfg, std::ostream& log);

} // namespace bft::cmd

#endif
