#include <doctest.h>

#include "bft/commands.hpp"
#include "bft/config.hpp"
#include "bft/errors.hpp"
#include "bft/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bft;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kBaseConfig = R"({
  "dispersion": {"family": "lattice_cosine", "hopping": 1.0},
  "state": {"type": "constant_n", "n": 0.3333333333333333},
  "alphas": [2],
  "seed": 9,
  "output_dir": "OUTDIR"
})";

std::string config_with_outdir(const std::string& dir) {
    std::string text = kBaseConfig;
    auto pos = text.find("OUTDIR");
    text.replace(pos, 6, dir);
    return text;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing essentials") {
    RunConfig cfg = parse_config(config_with_outdir("/tmp/x"));
    CHECK(cfg.dispersion->family() == "lattice_cosine");
    CHECK(cfg.alphas.size() == 1);
    CHECK(cfg.seed == 9);
    CHECK(!cfg.config_hash.empty());
    CHECK(cfg.require_state().n(0.0) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(cfg.require_quench(), DomainError);
}

TEST_CASE("config rejects unknown keys and bad values") {
    CHECK_THROWS_AS(parse_config(R"({"dispersion": {"family": "lattice_cosine"}, "typo": 1})"),
                    DomainError);
    CHECK_THROWS_AS(parse_config(R"({"dispersion": {"family": "unknown_family"}})"),
                    DomainError);
    CHECK_THROWS_AS(parse_config(R"({"dispersion": {"family": "lattice_cosine"}, "alphas": []})"),
                    DomainError);
    CHECK_THROWS_AS(parse_config(R"({"state": {"type": "constant_n", "n": 0.3}})"), DomainError);
    CHECK_THROWS_AS(parse_config("not json"), DomainError);
}

TEST_CASE("quench config derives its gge") {
    RunConfig cfg = parse_config(R"({
      "dispersion": {"family": "lattice_cosine"},
      "quench": {"family": "gamma_sine", "gamma": 0.8},
      "state": {"type": "from_quench"}
    })");
    CHECK(cfg.require_state().n(0.0) == doctest::Approx(0.0));
    CHECK(cfg.require_quench().dispersion().family() == "lattice_cosine");
}

TEST_CASE("float formatting is deterministic and precise") {
    CHECK(out::format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(out::format_double(0.0) == "0");
    double v = 0.5877866649021191;
    CHECK(std::stod(out::format_double(v)) == v);
}

TEST_CASE("gge-entropy command output") {
    fs::path dir = fs::temp_directory_path() / "bft_cli_test_gge";
    fs::remove_all(dir);
    RunConfig cfg = parse_config(config_with_outdir(dir.string()));
    std::ostringstream log;
    cmd::cmd_gge_entropy(cfg, log);

    std::string text = slurp(dir / "gge_entropy.csv");
    CHECK(text.find("# config_hash=") == 0);
    CHECK(text.find("alpha,rate_space,rate_time") != std::string::npos);
    CHECK(text.find("0.58778666490211") != std::string::npos);
    CHECK(text.find("0.37419661281068") != std::string::npos);

    // byte-identical on a rerun
    std::ostringstream log2;
    cmd::cmd_gge_entropy(cfg, log2);
    CHECK(slurp(dir / "gge_entropy.csv") == text);
    fs::remove_all(dir);
}

TEST_CASE("fcs-check reruns are byte-identical") {
    fs::path dir = fs::temp_directory_path() / "bft_cli_test_fcs";
    fs::remove_all(dir);
    std::string text = R"({
      "dispersion": {"family": "lattice_cosine"},
      "state": {"type": "constant_n", "n": 0.3},
      "alphas": [2],
      "scan": {"draws": 5},
      "seed": 77,
      "output_dir": ")" + dir.string() + R"("
    })";
    RunConfig cfg = parse_config(text);
    std::ostringstream log1, log2;
    cmd::cmd_fcs_check(cfg, log1);
    std::string first = slurp(dir / "fcs_check.csv");
    cmd::cmd_fcs_check(cfg, log2);
    CHECK(slurp(dir / "fcs_check.csv") == first);
    CHECK(first.find("x,t,xi,profile,fcs_value,residual") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("sector-check command passes on the configured state") {
    fs::path dir = fs::temp_directory_path() / "bft_cli_test_sector";
    fs::remove_all(dir);
    std::string text = R"({
      "dispersion": {"family": "lattice_cosine"},
      "state": {"type": "constant_n", "n": 0.25},
      "alphas": [2, 4],
      "scan": {"draws": 2},
      "output_dir": ")" + dir.string() + R"("
    })";
    RunConfig cfg = parse_config(text);
    std::ostringstream log;
    cmd::cmd_sector_check(cfg, log);
    CHECK(slurp(dir / "sector_check.csv").find("alpha,direction,rate") != std::string::npos);
    fs::remove_all(dir);
}

#ifdef BFT_CLI_PATH
TEST_CASE("binary exit codes") {
    fs::path dir = fs::temp_directory_path() / "bft_cli_test_bin";
    fs::create_directories(dir);
    fs::path cfg_ok = dir / "ok.json";
    {
        std::ofstream f(cfg_ok);
        f << config_with_outdir(dir.string());
    }
    fs::path cfg_bad = dir / "bad.json";
    {
        std::ofstream f(cfg_bad);
        // missing dispersion section
        f << R"({"state": {"type": "constant_n", "n": 0.3}})";
    }

    std::string base = std::string(BFT_CLI_PATH);
    int ok = std::system((base + " gge-entropy --config " + cfg_ok.string() +
                          " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(ok) == 0);

    int bad = std::system((base + " gge-entropy --config " + cfg_bad.string() +
                           " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad) == 2);

    int missing = std::system((base + " gge-entropy --config /nonexistent.json"
                               " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(missing) == 2);

    // oracle guard violation maps to a config error
    fs::path cfg_guard = dir / "guard.json";
    {
        std::ofstream f(cfg_guard);
        f << R"({
          "dispersion": {"family": "lattice_cosine"},
          "quench": {"family": "gamma_sine", "gamma": 0.8},
          "oracle": {"L": 64, "ell": 32, "t_count": 4},
          "output_dir": ")" << dir.string() << R"("
        })";
    }
    int guard = std::system((base + " quench-compare --config " + cfg_guard.string() +
                             " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(guard) == 2);
    fs::remove_all(dir);
}
#endif

} // TEST_SUITE
