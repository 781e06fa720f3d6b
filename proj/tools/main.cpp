#include <cmath>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "common.hpp"
#include "experiment.hpp"
#include "suites.hpp"

using namespace tdc;
using namespace tdc::cli;

namespace {

// Exit statuses: 0 ok, 1 decode failure / invariant violation, 2 usage or input error.
constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct CodecArgs {
    int q = 4;
    std::size_t n = 24;
    int p = 1;
    std::string mode = "anchored";
    std::size_t strict_L = 3;
    std::string construction = "B";
    std::string config;
    bool json = false;

    void add_to(CLI::App* app) {
        app->add_option("--q", q, "alphabet size")->capture_default_str();
        app->add_option("--n", n, "message length")->capture_default_str();
        app->add_option("--p", p, "edit budget")->capture_default_str();
        app->add_option("--mode", mode, "anchored or strict")->capture_default_str();
        app->add_option("--strict-L", strict_L, "locality for strict mode")->capture_default_str();
        app->add_option("--construction", construction, "A (side channel) or B")->capture_default_str();
        app->add_option("--config", config, "aux parameter file");
        app->add_flag("--json", json, "machine-readable output");
    }

    BOptions options() const {
        BOptions o;
        try {
            o.mode = parse_mode(mode);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        o.strict_L = strict_L;
        if (!config.empty()) {
            try {
                o.aux = AuxParams::load(config);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
        }
        return o;
    }

    void check() const {
        if (q < 3 || q > 64) throw UsageError("q must be in [3, 64]");
        if (p < 0) throw UsageError("p must be non-negative");
        if (n == 0) throw UsageError("n must be positive");
        if (construction != "A" && construction != "B") throw UsageError("construction must be A or B");
    }
};

std::string read_input(const std::string& flag) {
    if (!flag.empty()) return flag;
    std::string s((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    return s;
}

Seq parse_input(const std::string& text, int q) {
    try {
        return parse_seq(text, q);
    } catch (const SeqError& e) {
        throw UsageError(e.what());
    }
}

int cmd_encode(const CodecArgs& a, const std::string& hex) {
    a.check();
    const Bits data = hex_to_bits(hex, data_capacity_bits(a.q, a.n));
    Json j;
    if (a.construction == "A") {
        const EncodedA e = encode_A(data, a.q, a.n, a.p);
        if (!a.json) {
            std::cout << to_string(e.x, a.q) << '\n';
            std::cerr << "a_prime=" << e.r.a_prime << " residue=" << e.r.residue << '\n';
            return kOk;
        }
        j["construction"] = "A";
        j["x"] = to_string(e.x, a.q);
        j["a_prime"] = e.r.a_prime;
        j["residue"] = e.r.residue;
        j["confusable_size"] = e.confusable_size;
    } else {
        const CodewordB cw = encode_B(data, a.q, a.n, a.p, a.options());
        if (!a.json) {
            std::cout << to_string(cw.full(), a.q) << '\n';
            return kOk;
        }
        j["construction"] = "B";
        j["mode"] = a.mode;
        j["codeword"] = to_string(cw.full(), a.q);
        j["length"] = cw.full().size();
        j["x"] = to_string(cw.x, a.q);
        j["buffer"] = to_string(cw.b, a.q);
        j["a_prime"] = cw.record.a_prime;
        j["residue"] = cw.record.residue;
        j["confusable_size"] = cw.confusable_size;
        j["aux"] = aux_to_json(cw.aux);
    }
    std::cout << j.dump() << '\n';
    return kOk;
}

int cmd_decode(const CodecArgs& a, const std::string& input, std::uint64_t a_prime, std::uint64_t residue) {
    a.check();
    const Seq y = parse_input(read_input(input), a.q);
    DecodeReport rep;
    if (a.construction == "A") {
        if (a_prime < 2) throw UsageError("construction A needs --a-prime and --residue");
        rep = decode_A(y, SyndromeRecord{a_prime, residue, std::nullopt}, a.q, a.n, a.p);
    } else {
        rep = decode_B(y, a.q, a.n, a.p, a.options());
    }
    if (rep.failure == Failure::BadInput) {
        std::cout << rep.to_json(a.q) << '\n';
        return kUsage;
    }
    if (a.json || !rep.ok) {
        Json j = Json::parse(rep.to_json(a.q));
        if (rep.ok) j["data"] = bits_to_hex(rep.data);
        std::cout << j.dump() << '\n';
    } else {
        std::cout << bits_to_hex(rep.data) << '\n';
    }
    return rep.ok ? kOk : kFailed;
}

int cmd_channel(int q, std::uint64_t seed, std::size_t dups, std::size_t edits, const std::string& kinds,
                const std::string& input) {
    const Seq x = parse_input(read_input(input), q);
    ChannelSpec spec;
    spec.max_dups = dups;
    spec.num_edits = edits;
    spec.edit_kinds = parse_kinds(kinds);
    spec.seed = seed;
    std::cout << to_string(run_channel(x, spec, q), q) << '\n';
    return kOk;
}

int cmd_bounds(int q, std::size_t n, int p) {
    if (q < 3) throw UsageError("bounds need q >= 3");
    if (p < 0) throw UsageError("p must be non-negative");
    const BigInt irr = count_irr(q, n);
    const Rational gv = gv_lower_bound(q, n, p);
    const BigInt gv_floor = gv.num / gv.den;
    const double r = growth_rate(q);
    auto log2b = [](const BigInt& v) {
        if (v <= 0) return 0.0;
        const auto b = boost::multiprecision::msb(v);
        if (b < 60) return std::log2(v.convert_to<double>());
        return static_cast<double>(b - 52) + std::log2((v >> static_cast<unsigned>(b - 52)).convert_to<double>());
    };
    Json j;
    j["q"] = q;
    j["n"] = n;
    j["p"] = p;
    j["irr_count"] = irr.str();
    j["gv_bound"] = gv_floor.str();
    j["log2_irr_count"] = log2b(irr);
    j["log2_gv_bound"] = log2b(gv.num) - log2b(gv.den);
    j["growth_rate"] = r;
    j["rate_bits_per_symbol"] = n ? (log2b(gv.num) - log2b(gv.den)) / static_cast<double>(n) : 0.0;
    j["asymptotic_rate_bits_per_symbol"] = std::log2(r);
    j["data_bits"] = data_capacity_bits(q, n);
    j["record_bits_anchored"] = record_bits(q, n, p, Mode::Anchored);
    const BOptions opt;
    j["aux_length"] = codec_aux_params(q, n, p, opt).codeword_length();
    j["codeword_length_B"] = codeword_B_length(q, n, p, opt);
    std::cout << j.dump() << '\n';
    return kOk;
}

int cmd_verify(const std::vector<std::string>& suites, std::uint64_t seed, bool json) {
    std::vector<std::string> todo = suites;
    if (todo.empty() || (todo.size() == 1 && todo[0] == "all")) todo = suite_names();
    bool all_ok = true;
    Json out = Json::array();
    for (const auto& name : todo) {
        const SuiteResult r = run_suite(name, seed);
        all_ok &= r.ok;
        if (json) {
            out.push_back({{"suite", r.name}, {"ok", r.ok}, {"detail", r.detail}, {"counterexamples", r.counterexamples}});
        } else {
            std::cout << (r.ok ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail << '\n';
            for (const auto& c : r.counterexamples) std::cout << "    counterexample: " << c.dump() << '\n';
        }
    }
    if (json) std::cout << out.dump() << '\n';
    return all_ok ? kOk : kFailed;
}

int cmd_aux(const std::string& config, int q, int p_tilde, std::size_t payload) {
    AuxParams a;
    try {
        if (!config.empty()) a = AuxParams::load(config);
        else if (payload > 0) a = aux_params_for_payload(q, p_tilde, payload);
        a.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    Json j = aux_to_json(a);
    const auto bs = block_set_for(a.q, a.sigma, a.m, a.T);
    j["blocks"] = bs->size();
    j["min_color_size"] = bs->min_color_size();
    j["valid"] = true;
    std::cout << j.dump() << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Codes for channels with short tandem duplications and edits"};
    app.require_subcommand(1);

    CodecArgs enc_args, dec_args;
    std::string hex, input;
    std::uint64_t a_prime = 0, residue = 0;

    auto* enc = app.add_subcommand("encode", "encode hex data into a codeword");
    enc_args.add_to(enc);
    enc->add_option("--data", hex, "data as hex")->required();

    auto* dec = app.add_subcommand("decode", "decode a received sequence (argument or stdin)");
    dec_args.add_to(dec);
    dec->add_option("--input", input, "received sequence; stdin if omitted");
    dec->add_option("--a-prime", a_prime, "modulus (construction A)");
    dec->add_option("--residue", residue, "residue (construction A)");

    int ch_q = 4;
    std::uint64_t ch_seed = 0;
    std::size_t ch_dups = 0, ch_edits = 0;
    std::string ch_kinds = "sub", ch_input;
    auto* ch = app.add_subcommand("channel", "apply random duplications and edits");
    ch->add_option("--q", ch_q)->capture_default_str();
    ch->add_option("--seed", ch_seed)->capture_default_str();
    ch->add_option("--dups", ch_dups, "number of duplications")->capture_default_str();
    ch->add_option("--edits", ch_edits, "number of edits")->capture_default_str();
    ch->add_option("--kinds", ch_kinds, "comma list of sub, ins, del")->capture_default_str();
    ch->add_option("--input", ch_input, "sequence; stdin if omitted");

    int b_q = 4, b_p = 1;
    std::size_t b_n = 100;
    auto* bnd = app.add_subcommand("bounds", "code size and rate bounds as JSON");
    bnd->add_option("--q", b_q)->capture_default_str();
    bnd->add_option("--n", b_n)->capture_default_str();
    bnd->add_option("--p", b_p)->capture_default_str();

    std::vector<std::string> suites;
    std::uint64_t v_seed = 1;
    bool v_json = false;
    auto* ver = app.add_subcommand("verify", "run invariant suites");
    ver->add_option("suites", suites, "suite names or 'all'");
    ver->add_option("--seed", v_seed)->capture_default_str();
    ver->add_flag("--json", v_json);
    ver->footer("suites: automaton buffers roots rs blocks aux roundtrip-A roundtrip-B audit");

    ExperimentConfig ex;
    std::string ex_construction = "B", ex_mode = "anchored", ex_kinds = "sub", ex_config;
    auto* exp = app.add_subcommand("experiment", "Monte-Carlo runs with a JSON report");
    exp->add_option("--construction", ex_construction)->capture_default_str();
    exp->add_option("--q", ex.q)->capture_default_str();
    exp->add_option("--n", ex.n)->capture_default_str();
    exp->add_option("--p", ex.p)->capture_default_str();
    exp->add_option("--mode", ex_mode)->capture_default_str();
    exp->add_option("--strict-L", ex.opt.strict_L)->capture_default_str();
    exp->add_option("--config", ex_config, "aux parameter file");
    exp->add_option("--messages", ex.messages)->capture_default_str();
    exp->add_option("--seeds", ex.seeds, "channel seeds per message")->capture_default_str();
    exp->add_option("--seed", ex.seed, "base seed")->capture_default_str();
    exp->add_option("--dups", ex.dups)->capture_default_str();
    exp->add_option("--edits", ex.edits)->capture_default_str();
    exp->add_option("--kinds", ex_kinds)->capture_default_str();
    exp->add_option("--jobs", ex.jobs, "worker threads")->capture_default_str();
    exp->add_flag("--timing", ex.timing, "include wall-clock percentiles (not reproducible)");

    std::string aux_config;
    int aux_q = 4, aux_pt = 3;
    std::size_t aux_payload = 0;
    auto* aux = app.add_subcommand("aux", "show and validate aux code parameters");
    aux->add_option("--config", aux_config);
    aux->add_option("--q", aux_q)->capture_default_str();
    aux->add_option("--p-tilde", aux_pt)->capture_default_str();
    aux->add_option("--payload", aux_payload, "size parameters for this many bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*enc) return cmd_encode(enc_args, hex);
        if (*dec) return cmd_decode(dec_args, input, a_prime, residue);
        if (*ch) return cmd_channel(ch_q, ch_seed, ch_dups, ch_edits, ch_kinds, ch_input);
        if (*bnd) return cmd_bounds(b_q, b_n, b_p);
        if (*ver) return cmd_verify(suites, v_seed, v_json);
        if (*aux) return cmd_aux(aux_config, aux_q, aux_pt, aux_payload);
        if (*exp) {
            if (ex_construction != "A" && ex_construction != "B") throw UsageError("construction must be A or B");
            ex.construction = ex_construction == "A" ? Construction::A : Construction::B;
            try {
                ex.opt.mode = parse_mode(ex_mode);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            ex.kinds = parse_kinds(ex_kinds);
            if (!ex_config.empty()) {
                try {
                    ex.opt.aux = AuxParams::load(ex_config);
                } catch (const std::exception& e) {
                    throw UsageError(e.what());
                }
            }
            const Json rep = run_experiment(ex);
            std::cout << rep.dump(2) << '\n';
            return rep["failures"].empty() ? kOk : kFailed;
        }
    } catch (const UsageError& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "usage"}}.dump() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "runtime"}}.dump() << '\n';
        return kFailed;
    }
    return kUsage;
}
