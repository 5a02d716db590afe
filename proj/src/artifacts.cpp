#include <cstdio>
#include <fstream>

#include "smc/error.hpp"
#include "smc/experiment.hpp"
#include "smc/rng.hpp"

namespace smc {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_float(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string samples_csv(const SampleLog& log) {
    std::string s = "t,m,s,d,phi,e_id\n";
    for (const auto& r : log.records()) {
        s += std::to_string(r.t) + ',' + format_float(r.obs.motor) + ',' + format_float(r.obs.sensor) + ',' +
             format_float(r.latent.distance) + ',' + format_float(r.latent.orientation) + ',' +
             std::to_string(r.latent.id) + '\n';
    }
    return s;
}

std::string prototypes_csv(const PrototypeSet& p) {
    std::string s = "id,m,s\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += std::to_string(i) + ',' + format_float(p.centers()[i].motor) + ',' +
             format_float(p.centers()[i].sensor) + '\n';
    return s;
}

std::string transitions_csv(const TransitionMatrix& t) {
    std::string s = "from,to,count,prob\n";
    for (StateId i = 0; i < t.size(); ++i)
        for (const auto& e : t.row(i))
            s += std::to_string(i) + ',' + std::to_string(e.to) + ',' + std::to_string(e.count) + ',' +
                 format_float(e.prob) + '\n';
    return s;
}

std::string pair_states_csv(const PairStateIndex& index) {
    std::string s = "pair_id,from_proto,to_proto\n";
    for (std::size_t i = 0; i < index.size(); ++i)
        s += std::to_string(i) + ',' + std::to_string(index.pair(i).first) + ',' +
             std::to_string(index.pair(i).second) + '\n';
    return s;
}

std::string embedding_csv(const SpectralEmbedding& emb) {
    std::string s = "state_id";
    for (std::size_t c = 1; c <= emb.k; ++c) s += ",lambda_rank_" + std::to_string(c);
    s += '\n';
    for (StateId st : emb.states) {
        s += std::to_string(st);
        for (double x : emb.v_row(st)) s += ',' + format_float(x);
        s += '\n';
    }
    return s;
}

std::string contexts_csv(const ContextPartition& p) {
    std::string s = "state_id,context_id\n";
    for (std::size_t i = 0; i < p.assignment.size(); ++i)
        s += std::to_string(i) + ',' + std::to_string(p.assignment[i]) + '\n';
    return s;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw Error(ErrorKind::io_error, "failed writing " + path.string());
}

} // namespace

json report_json(const ExperimentResult& res) {
    const auto& rep = res.report;
    const auto& cfg = res.config;
    json j;
    j["experiment"] = cfg.experiment;
    j["purity"] = optional_number(rep.purity);
    j["purity_all_occurrences"] = optional_number(rep.purity_all_occurrences);
    j["band_spread"] = optional_number(rep.band_spread);
    j["baseline_kmeans_purity"] = optional_number(rep.baseline_kmeans_purity);
    j["marginal_entropy"] = rep.entropy.marginal_entropy;
    j["posterior_entropy"] = rep.entropy.posterior_entropy;
    j["entropy_reduction"] = rep.entropy.entropy_reduction;
    j["prediction_marginal"] = rep.prediction.marginal;
    j["prediction_contextual"] = rep.prediction.contextual;
    j["prediction_evaluated"] = rep.prediction.evaluated;
    j["n_states"] = rep.n_states;
    j["n_visited"] = rep.n_visited;
    j["n_deduplicated"] = res.prototype_sequence.size();
    j["eigenvalues"] = res.embedding.eigenvalues;
    j["eigenvalues_imag"] = res.embedding.eigenvalues_imag;
    j["prototype_inertia"] = res.prototypes.inertia;
    j["seeds"] = {{"master", cfg.seed},
                  {"explore", derive_seed(cfg.seed, 1)},
                  {"transition", derive_seed(cfg.seed, 2)},
                  {"holdout", derive_seed(cfg.seed, 3)},
                  {"discretizer", derive_seed(cfg.seed, 4)},
                  {"spectral", derive_seed(cfg.seed, 5)},
                  {"baseline", derive_seed(cfg.seed, 6)}};
    j["generator"] = kGeneratorName;
    j["config"] = to_json(cfg);
    return j;
}

std::vector<std::string> artifact_names(const ExperimentResult& res) {
    std::vector<std::string> names{"samples.csv", "prototypes.csv", "transitions.csv"};
    if (res.pairs) names.push_back("pair_states.csv");
    names.insert(names.end(), {"embedding.csv", "contexts.csv", "report.json", "config.json"});
    return names;
}

void write_artifacts(const ExperimentResult& res, const fs::path& dir) {
    std::vector<fs::path> written;
    try {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw Error(ErrorKind::io_error, "cannot create " + dir.string() + ": " + ec.message());
        auto emit = [&](const std::string& name, const std::string& content) {
            written.push_back(dir / name);
            write_file(dir / name, content);
        };
        emit("samples.csv", samples_csv(res.transition_log));
        emit("prototypes.csv", prototypes_csv(res.prototypes));
        emit("transitions.csv", transitions_csv(res.matrix));
        if (res.pairs) emit("pair_states.csv", pair_states_csv(*res.pairs));
        emit("embedding.csv", embedding_csv(res.embedding));
        emit("contexts.csv", contexts_csv(res.partition));
        emit("report.json", report_json(res).dump(2) + '\n');
        emit("config.json", to_json(res.config).dump(2) + '\n');
    } catch (...) {
        for (const auto& p : written) {
            std::error_code ignored;
            fs::remove(p, ignored);
        }
        throw;
    }
}

} // namespace smc
