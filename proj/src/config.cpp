#include "bft/config.hpp"

#include "bft/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bft {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw DomainError("config: unknown key '" + it.key() + "' in " + where);
}

DispersionPtr parse_dispersion(const json& j) {
    check_keys(j, {"family", "hopping", "mass", "theta_max", "path"}, "dispersion");
    std::string family = j.at("family").get<std::string>();
    if (family == "lattice_cosine") return make_lattice_cosine(j.value("hopping", 1.0));
    if (family == "continuum_quadratic")
        return make_continuum_quadratic(j.value("mass", 1.0), j.value("theta_max", 8.0));
    if (family == "tabulated") return make_tabulated_from_csv(j.at("path").get<std::string>());
    throw DomainError("config: unknown dispersion family '" + family + "'");
}

GGEState parse_state(const json& j, DispersionPtr disp, const std::optional<QuenchSpec>& quench) {
    check_keys(j, {"type", "beta", "mu", "w", "n", "path"}, "state");
    std::string type = j.at("type").get<std::string>();
    if (type == "thermal")
        return GGEState::thermal(disp, j.at("beta").get<double>(), j.at("mu").get<double>());
    if (type == "constant_w") return GGEState::constant_weight(disp, j.at("w").get<double>());
    if (type == "constant_n") return GGEState::constant_occupation(disp, j.at("n").get<double>());
    if (type == "tabulated")
        return GGEState::tabulated_from_csv(disp, j.at("path").get<std::string>());
    if (type == "from_quench") {
        if (!quench) throw DomainError("config: state 'from_quench' requires a quench section");
        return gge_from_quench(*quench);
    }
    throw DomainError("config: unknown state type '" + type + "'");
}

QuenchSpec parse_quench(const json& j, DispersionPtr disp) {
    check_keys(j, {"family", "gamma", "path"}, "quench");
    std::string family = j.at("family").get<std::string>();
    if (family == "gamma_sine") return QuenchSpec::gamma_sine(disp, j.at("gamma").get<double>());
    if (family == "gauss_pair") return QuenchSpec::gauss_pair(disp, j.at("gamma").get<double>());
    if (family == "trivial") return QuenchSpec::trivial(disp);
    if (family == "tabulated")
        return QuenchSpec::tabulated_from_csv(disp, j.at("path").get<std::string>());
    throw DomainError("config: unknown quench family '" + family + "'");
}

} // namespace

const GGEState& RunConfig::require_state() const {
    if (!state) throw DomainError("config: this command requires a 'state' section");
    return *state;
}

const QuenchSpec& RunConfig::require_quench() const {
    if (!quench) throw DomainError("config: this command requires a 'quench' section");
    return *quench;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw DomainError(std::string("config: JSON parse failure: ") + e.what());
    }
    check_keys(j,
               {"dispersion", "state", "quench", "alphas", "oracle", "scan", "quadrature",
                "output_dir", "seed", "threads", "allow_branch_risk"},
               "top level");

    RunConfig cfg;
    cfg.source_text = text;
    {
        std::ostringstream h;
        h << std::hex << fnv1a(text);
        cfg.config_hash = h.str();
    }

    if (!j.contains("dispersion")) throw DomainError("config: missing 'dispersion'");
    cfg.dispersion = parse_dispersion(j.at("dispersion"));

    if (j.contains("quench")) cfg.quench = parse_quench(j.at("quench"), cfg.dispersion);
    if (j.contains("state")) cfg.state = parse_state(j.at("state"), cfg.dispersion, cfg.quench);

    if (j.contains("alphas")) {
        cfg.alphas = j.at("alphas").get<std::vector<double>>();
        if (cfg.alphas.empty()) throw DomainError("config: 'alphas' must be nonempty");
        for (double a : cfg.alphas)
            if (!(a > 0.0)) throw DomainError("config: alpha entries must be positive");
    }

    if (j.contains("oracle")) {
        const json& o = j.at("oracle");
        check_keys(o, {"L", "ell", "t_min", "t_max", "t_count"}, "oracle");
        cfg.oracle.L = o.value("L", cfg.oracle.L);
        cfg.oracle.ell = o.value("ell", cfg.oracle.ell);
        cfg.oracle.t_min = o.value("t_min", cfg.oracle.t_min);
        cfg.oracle.t_max = o.value("t_max", cfg.oracle.t_max);
        cfg.oracle.t_count = o.value("t_count", cfg.oracle.t_count);
        if (cfg.oracle.t_count < 2) throw DomainError("config: oracle.t_count must be >= 2");
    }

    if (j.contains("scan")) {
        const json& s = j.at("scan");
        check_keys(s, {"x", "t", "xi", "draws"}, "scan");
        if (s.contains("x")) cfg.scan.x = s.at("x").get<std::vector<double>>();
        if (s.contains("t")) cfg.scan.t = s.at("t").get<std::vector<double>>();
        if (s.contains("xi")) cfg.scan.xi = s.at("xi").get<std::vector<double>>();
        cfg.scan.draws = s.value("draws", cfg.scan.draws);
    }

    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        check_keys(q, {"rel_tol", "abs_tol", "panel_points", "max_panels", "crossing_grid"},
                   "quadrature");
        cfg.quadrature.rel_tol = q.value("rel_tol", cfg.quadrature.rel_tol);
        cfg.quadrature.abs_tol = q.value("abs_tol", cfg.quadrature.abs_tol);
        cfg.quadrature.panel_points = q.value("panel_points", cfg.quadrature.panel_points);
        cfg.quadrature.max_panels = q.value("max_panels", cfg.quadrature.max_panels);
        cfg.quadrature.crossing_grid = q.value("crossing_grid", cfg.quadrature.crossing_grid);
    }

    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.allow_branch_risk = j.value("allow_branch_risk", cfg.allow_branch_risk);
    cfg.quadrature.allow_branch_risk = cfg.allow_branch_risk;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace bft
