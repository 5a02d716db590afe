// smc: run, validate and sweep sensorimotor context experiments.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "smc/error.hpp"
#include "smc/experiment.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Overrides {
    std::string experiment;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::optional<std::size_t> k;
    std::optional<std::size_t> r;
    std::optional<bool> lifted;
    std::optional<bool> symmetrize;
};

void add_config_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--experiment", o.experiment, "sim1, sim2, sim3 or custom")
        ->check(CLI::IsMember({"sim1", "sim2", "sim3", "custom"}));
    cmd->add_option("--config", o.config, "flat JSON config file");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out-dir", o.out_dir, "artifact directory");
    cmd->add_option("--k", o.k, "number of contexts");
    cmd->add_option("--r", o.r, "number of prototypes");
    cmd->add_option("--lifted", o.lifted, "cluster transition (pair) states")->expected(0, 1)->default_str("true");
    cmd->add_option("--symmetrize", o.symmetrize, "decompose (T + T^T)/2")->expected(0, 1)->default_str("true");
}

// Preset, then file, then flags.
smc::ExperimentConfig resolve(const Overrides& o) {
    nlohmann::json doc = nlohmann::json::object();
    if (!o.config.empty()) doc = smc::read_config_document(o.config);
    std::string name = "sim1";
    if (!o.experiment.empty()) {
        name = o.experiment;
        doc.erase("experiment");
    } else if (auto it = doc.find("experiment"); it != doc.end() && it->is_string()) {
        name = it->get<std::string>();
    }
    smc::ExperimentConfig c = smc::apply_json(doc, smc::preset(name));
    if (o.seed) c.seed = *o.seed;
    if (!o.out_dir.empty()) c.out_dir = o.out_dir;
    if (o.k) c.k = *o.k;
    if (o.r) c.r = *o.r;
    if (o.lifted) c.lifted = *o.lifted;
    if (o.symmetrize) c.symmetrize = *o.symmetrize;
    return c;
}

void report_error(std::string_view category, std::string_view message) {
    std::cerr << nlohmann::json{{"error", category}, {"message", message}}.dump() << '\n';
}

int exit_code_for(smc::ErrorKind kind) {
    return kind == smc::ErrorKind::parse_error || kind == smc::ErrorKind::invalid_config ? kExitConfig
                                                                                         : kExitRuntime;
}

std::string show(const std::optional<double>& v, const char* missing = "n/a") {
    return v ? smc::format_float(*v) : missing;
}

void print_summary(const smc::ExperimentResult& res) {
    const auto& r = res.report;
    std::printf("experiment %s seed %llu  states %zu (visited %zu)\n", res.config.experiment.c_str(),
                static_cast<unsigned long long>(res.config.seed), r.n_states, r.n_visited);
    std::printf("  purity                 %s\n", show(r.purity).c_str());
    if (r.purity_all_occurrences)
        std::printf("  purity (all pairs)     %s\n", show(r.purity_all_occurrences).c_str());
    if (r.band_spread) std::printf("  band spread            %s\n", show(r.band_spread).c_str());
    if (r.baseline_kmeans_purity)
        std::printf("  raw K-means purity     %s\n", show(r.baseline_kmeans_purity).c_str());
    std::printf("  entropy                %s -> %s bits (reduction %s)\n",
                smc::format_float(r.entropy.marginal_entropy).c_str(),
                smc::format_float(r.entropy.posterior_entropy).c_str(),
                smc::format_float(r.entropy.entropy_reduction).c_str());
    std::printf("  prediction             marginal %s, contextual %s over %zu transitions\n",
                smc::format_float(r.prediction.marginal).c_str(),
                smc::format_float(r.prediction.contextual).c_str(), r.prediction.evaluated);
}

int run_one(const smc::ExperimentConfig& c, bool quiet) {
    auto res = smc::run_experiment(c);
    smc::write_artifacts(res, c.out_dir);
    if (!quiet) print_summary(res);
    return 0;
}

int cmd_validate(const std::string& path) {
    const auto v = smc::validate_config_file(path);
    for (const auto& msg : v) std::cout << msg << '\n';
    if (!v.empty()) {
        report_error("InvalidConfig", std::to_string(v.size()) + " violation(s)");
        return kExitConfig;
    }
    std::cout << "ok\n";
    return 0;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
    const auto dash = s.find_first_of("-:");
    try {
        if (dash == std::string::npos) {
            const auto v = std::stoull(s);
            return {v, v};
        }
        const auto a = std::stoull(s.substr(0, dash));
        const auto b = std::stoull(s.substr(dash + 1));
        if (b < a) throw std::invalid_argument("empty range");
        return {a, b};
    } catch (const std::exception&) {
        throw smc::Error(smc::ErrorKind::invalid_config, "--seeds expects FIRST-LAST, got '" + s + "'");
    }
}

int cmd_sweep(const smc::ExperimentConfig& base, const std::string& range, unsigned jobs) {
    if (const auto v = smc::violations(base); !v.empty()) {
        for (const auto& msg : v) std::cerr << msg << '\n';
        report_error("InvalidConfig", v.front());
        return kExitConfig;
    }
    const auto [first, last] = parse_range(range);
    const std::size_t n = static_cast<std::size_t>(last - first + 1);
    std::vector<std::string> rows(n);
    std::vector<int> status(n, 0);
    std::atomic<std::size_t> next{0};
    std::mutex io;

    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            smc::ExperimentConfig c = base;
            c.seed = first + i;
            c.out_dir = (fs::path(base.out_dir) / ("seed_" + std::to_string(c.seed))).string();
            try {
                const auto res = smc::run_experiment(c);
                smc::write_artifacts(res, c.out_dir);
                const auto& r = res.report;
                rows[i] = std::to_string(c.seed) + ',' + show(r.purity, "") + ',' +
                          show(r.purity_all_occurrences, "") + ',' + show(r.band_spread, "") + ',' +
                          show(r.baseline_kmeans_purity, "") + ',' +
                          smc::format_float(r.entropy.entropy_reduction) + ',' +
                          smc::format_float(r.prediction.marginal) + ',' +
                          smc::format_float(r.prediction.contextual);
                std::lock_guard lock(io);
                std::cout << rows[i] << '\n' << std::flush;
            } catch (const smc::Error& e) {
                status[i] = exit_code_for(e.kind());
                std::lock_guard lock(io);
                report_error(smc::error_name(e.kind()), "seed " + std::to_string(c.seed) + ": " + e.what());
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::string csv = "seed,purity,purity_all_occurrences,band_spread,baseline_kmeans_purity,entropy_reduction,"
                      "prediction_marginal,prediction_contextual\n";
    for (const auto& row : rows)
        if (!row.empty()) csv += row + '\n';
    fs::create_directories(base.out_dir);
    std::FILE* f = std::fopen((fs::path(base.out_dir) / "sweep.csv").c_str(), "wb");
    if (!f) throw smc::Error(smc::ErrorKind::io_error, "cannot write sweep.csv");
    std::fwrite(csv.data(), 1, csv.size(), f);
    std::fclose(f);
    return *std::max_element(status.begin(), status.end());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensorimotor context discovery by spectral clustering of transition graphs"};
    app.require_subcommand(1);

    Overrides run_opts;
    auto* run = app.add_subcommand("run", "run one experiment and write its artifacts");
    add_config_flags(run, run_opts);
    bool quiet = false;
    run->add_flag("--quiet", quiet, "do not print the score summary");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a config file against all invariants");
    validate->add_option("config,--config", validate_path, "config file")->required();

    Overrides sweep_opts;
    std::string seeds = "0-19";
    unsigned jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "run a seed range, one subdirectory per seed");
    add_config_flags(sweep, sweep_opts);
    sweep->add_option("--seeds", seeds, "inclusive seed range FIRST-LAST")->capture_default_str();
    sweep->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("UsageError", e.what());
        return kExitConfig;
    }

    try {
        if (*validate) return cmd_validate(validate_path);
        if (*run) {
            const auto c = resolve(run_opts);
            return run_one(c, quiet);
        }
        if (*sweep) {
            auto c = resolve(sweep_opts);
            if (sweep_opts.out_dir.empty()) c.out_dir = "sweep_" + c.experiment;
            return cmd_sweep(c, seeds, jobs);
        }
    } catch (const smc::Error& e) {
        report_error(smc::error_name(e.kind()), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        report_error("RuntimeError", e.what());
        return kExitRuntime;
    }
    return 0;
}
