#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace tdc::cli {

namespace {

struct TrialOutcome {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string failure;
    std::size_t candidates = 0;
    double decode_ms = 0;
};

struct MessageOutcome {
    std::uint64_t message_seed = 0;
    std::uint64_t a_prime = 0;
    std::size_t confusable_size = 0;
    std::size_t record_length = 0;
    double encode_ms = 0;
    std::string error;  // encoder failure
    std::vector<TrialOutcome> trials;
};

double log2_big(const BigInt& v) {
    if (v <= 0) return 0;
    const auto b = boost::multiprecision::msb(v);
    if (b < 60) return std::log2(v.convert_to<double>());
    return static_cast<double>(b - 52) + std::log2((v >> static_cast<unsigned>(b - 52)).convert_to<double>());
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

MessageOutcome run_message(const ExperimentConfig& cfg, std::size_t idx) {
    MessageOutcome mo;
    mo.message_seed = cfg.seed * 1000003ULL + idx;
    std::mt19937_64 rng(mo.message_seed);
    Bits data(data_capacity_bits(cfg.q, cfg.n));
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = rng() & 1;

    Seq sent;
    SyndromeRecord rec;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        if (cfg.construction == Construction::A) {
            const EncodedA e = encode_A(data, cfg.q, cfg.n, cfg.p);
            sent = e.x;
            rec = e.r;
            mo.confusable_size = e.confusable_size;
        } else {
            const CodewordB cw = encode_B(data, cfg.q, cfg.n, cfg.p, cfg.opt);
            sent = cw.full();
            rec = cw.record;
            mo.confusable_size = cw.confusable_size;
            mo.record_length = cw.r.size();
        }
        mo.encode_ms = ms_since(t0);
    } catch (const std::exception& e) {
        mo.error = e.what();
        return mo;
    }
    mo.a_prime = rec.a_prime;

    for (std::size_t s = 0; s < cfg.seeds; ++s) {
        TrialOutcome t;
        t.seed = mo.message_seed * 7919ULL + s;
        ChannelSpec spec;
        spec.max_dups = cfg.dups;
        spec.num_edits = cfg.edits;
        spec.edit_kinds = cfg.kinds;
        spec.seed = t.seed;
        const Seq y = run_channel(sent, spec, cfg.q);
        const auto t0 = std::chrono::steady_clock::now();
        const DecodeReport rep = cfg.construction == Construction::A ? decode_A(y, rec, cfg.q, cfg.n, cfg.p)
                                                                       : decode_B(y, cfg.q, cfg.n, cfg.p, cfg.opt);
        t.decode_ms = ms_since(t0);
        t.ok = rep.ok && rep.data == data;
        t.failure = rep.ok ? (t.ok ? "none" : "wrong-message") : failure_name(rep.failure);
        t.candidates = rep.candidates;
        mo.trials.push_back(std::move(t));
    }
    return mo;
}

Json percentiles(std::vector<double> v) {
    Json j;
    if (v.empty()) return j;
    std::sort(v.begin(), v.end());
    auto at = [&](double f) { return v[static_cast<std::size_t>(f * static_cast<double>(v.size() - 1))]; };
    j["p50"] = at(0.5);
    j["p90"] = at(0.9);
    j["p99"] = at(0.99);
    j["max"] = v.back();
    return j;
}

}  // namespace

Json run_experiment(const ExperimentConfig& cfg) {
    if (cfg.q < 3) throw UsageError("q must be at least 3");
    if (cfg.p < 0) throw UsageError("p must be non-negative");
    if (cfg.n == 0) throw UsageError("n must be positive");

    std::vector<MessageOutcome> out(cfg.messages);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < cfg.messages;) out[i] = run_message(cfg, i);
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.messages)));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Json j;
    Json params;
    params["construction"] = cfg.construction == Construction::A ? "A" : "B";
    params["q"] = cfg.q;
    params["n"] = cfg.n;
    params["p"] = cfg.p;
    params["mode"] = cfg.construction == Construction::A ? "side-channel" : mode_name(cfg.opt.mode);
    if (cfg.construction == Construction::B) {
        if (cfg.opt.mode == Mode::Strict) params["strict_L"] = cfg.opt.strict_L;
        params["aux"] = aux_to_json(codec_aux_params(cfg.q, cfg.n, cfg.p, cfg.opt));
    }
    params["seed"] = cfg.seed;
    params["messages"] = cfg.messages;
    params["seeds_per_message"] = cfg.seeds;
    params["dups"] = cfg.dups;
    params["edits"] = cfg.edits;
    params["kinds"] = kinds_to_string(cfg.kinds);
    j["params"] = params;

    std::size_t trials = 0, successes = 0, max_cand = 0;
    Json failures = Json::array();
    std::vector<std::uint64_t> a_values;
    std::size_t max_conf = 0;
    std::vector<double> enc_ms, dec_ms;
    for (const auto& mo : out) {
        if (!mo.error.empty()) {
            failures.push_back({{"message_seed", mo.message_seed}, {"stage", "encode"}, {"failure", mo.error}});
            continue;
        }
        a_values.push_back(mo.a_prime);
        max_conf = std::max(max_conf, mo.confusable_size);
        enc_ms.push_back(mo.encode_ms);
        for (const auto& t : mo.trials) {
            ++trials;
            successes += t.ok;
            max_cand = std::max(max_cand, t.candidates);
            dec_ms.push_back(t.decode_ms);
            if (!t.ok)
                failures.push_back({{"message_seed", mo.message_seed}, {"channel_seed", t.seed}, {"stage", "decode"},
                                    {"failure", t.failure}});
        }
    }
    j["trials"] = trials;
    j["successes"] = successes;
    j["failures"] = failures;

    if (cfg.construction == Construction::B) {
        const AuxParams aux = codec_aux_params(cfg.q, cfg.n, cfg.p, cfg.opt);
        j["record_length"] = aux.codeword_length();
        j["redundancy"] = codeword_B_length(cfg.q, cfg.n, cfg.p, cfg.opt) - cfg.n;
    }
    Json a;
    if (!a_values.empty()) {
        std::sort(a_values.begin(), a_values.end());
        double mean = 0;
        for (auto v : a_values) mean += static_cast<double>(v);
        a["min"] = a_values.front();
        a["median"] = a_values[a_values.size() / 2];
        a["max"] = a_values.back();
        a["mean"] = mean / static_cast<double>(a_values.size());
        a["values"] = a_values;
    }
    j["a_prime"] = a;
    j["max_candidates"] = max_cand;

    // measured sizes against the analytic bounds, on a log₂ scale
    Json table = Json::array();
    BigInt conf_bound;
    std::string conf_name;
    if (cfg.construction == Construction::A) {
        conf_bound = bound_A(cfg.q, cfg.n, cfg.p);
        conf_name = "confusable_A";
    } else if (cfg.opt.mode == Mode::Strict) {
        conf_bound = bound_B_strict(cfg.q, cfg.n, cfg.p, cfg.opt.strict_L);
        conf_name = "confusable_B_strict";
    } else {
        conf_bound = bound_B_anchored(cfg.q, cfg.n, cfg.p);
        conf_name = "confusable_B_anchored";
    }
    table.push_back({{"quantity", conf_name},
                     {"log2_bound", log2_big(conf_bound)},
                     {"log2_measured_max", max_conf ? std::log2(static_cast<double>(max_conf)) : 0.0}});
    j["bounds"] = table;

    if (cfg.timing) {
        Json t;
        t["encode_ms"] = percentiles(enc_ms);
        t["decode_ms"] = percentiles(dec_ms);
        j["timing"] = t;
    }
    return j;
}

}  // namespace tdc::cli
