#include "bft/commands.hpp"
#include "bft/errors.hpp"

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Ballistic-fluctuation-theory engine for free-fermion entanglement"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    std::string config_path;
    std::string out_dir;
    int threads = 0;
    std::uint64_t seed = 0;
    bool seed_set = false, allow_branch_risk = false;

    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out_dir, "output directory override");
    app.add_option("--threads", threads, "worker threads for scan grids");
    app.add_option("--seed", seed, "random seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_flag("--allow-branch-risk", allow_branch_risk,
                 "permit states outside the validated regime (w > 0)");

    auto* gge = app.add_subcommand("gge-entropy", "Renyi rate table for a GGE");
    auto* cmp = app.add_subcommand("quench-compare", "oracle vs quasiparticle profile");
    auto* fcs = app.add_subcommand("fcs-check", "dynamic/static counting identity");
    auto* diag = app.add_subcommand("diagnostics", "correlator decay diagnostics");
    auto* rep = app.add_subcommand("replica-check", "replica S-matrix Yang-Baxter residuals");
    auto* sec = app.add_subcommand("sector-check", "sector-sum identity residuals");

    CLI11_PARSE(app, argc, argv);

    try {
        bft::RunConfig cfg = bft::load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        else if (const char* env = std::getenv("BFT_OUT_DIR")) cfg.output_dir = env;
        if (threads > 0) cfg.threads = threads;
        if (seed_set) cfg.seed = seed;
        if (allow_branch_risk) {
            cfg.allow_branch_risk = true;
            cfg.quadrature.allow_branch_risk = true;
        }

        if (gge->parsed()) bft::cmd::cmd_gge_entropy(cfg, std::cout);
        if (cmp->parsed()) bft::cmd::cmd_quench_compare(cfg, std::cout);
        if (fcs->parsed()) bft::cmd::cmd_fcs_check(cfg, std::cout);
        if (diag->parsed()) bft::cmd::cmd_diagnostics(cfg, std::cout);
        if (rep->parsed()) bft::cmd::cmd_replica_check(cfg, std::cout);
        if (sec->parsed()) bft::cmd::cmd_sector_check(cfg, std::cout);
        return bft::cmd::kExitOk;
    } catch (const bft::DomainError& e) {
        std::cerr << "config/domain error: " << e.what() << "\n";
        return bft::cmd::kExitConfigError;
    } catch (const bft::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return bft::cmd::kExitConfigError;
    } catch (const bft::BranchRiskError& e) {
        std::cerr << "branch-risk error: " << e.what() << "\n";
        return bft::cmd::kExitNumericalError;
    } catch (const bft::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return bft::cmd::kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bft::cmd::kExitNumericalError;
    }
}
