#include "suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "tdc/automaton.hpp"
#include "tdc/rs.hpp"

namespace tdc::cli {

namespace {

Bits random_bits(std::size_t n, std::mt19937_64& rng) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = rng() & 1;
    return b;
}

Seq random_irr(int q, std::size_t n, std::mt19937_64& rng) {
    const BigInt total = count_irr(q, n);
    BigInt r = 0;
    for (int k = 0; k < 4; ++k) r = (r << 64) | rng();
    return unrank_irr(q, n, r % total);
}

void fail(SuiteResult& r, Json what) {
    r.ok = false;
    if (r.counterexamples.size() < 20) r.counterexamples.push_back(std::move(what));
}

SuiteResult suite_automaton(std::uint64_t) {
    SuiteResult r{"automaton"};
    const RootSet ru = enumerate_RU();
    static const char* literal[] = {"",       "0",      "01",      "01201",   "012",      "0120",
                                    "010",    "012010", "0121",    "01202",   "0123",     "01232",
                                    "01231",  "012313", "012312",  "0123121", "01234",    "012343",
                                    "012342", "0123424", "0123423", "01234232"};
    RootSet expect;
    for (const char* s : literal) expect.insert(seq_of(s));
    if (ru != expect) fail(r, "R(U) differs from the listed set");
    RootSet h;
    for (const auto& u : ru) h.insert(apply_h(u));
    if (enumerate_RV() != h) fail(r, "R(V) != h(R(U))");
    const std::size_t edges = build_fa5().edges().size();
    if (!build_fa5().accepts(seq_of("0120123234"))) fail(r, "automaton rejects 0120123234");
    r.detail = "|R(U)|=" + std::to_string(ru.size()) + ", edges=" + std::to_string(edges);
    return r;
}

SuiteResult suite_buffers(std::uint64_t) {
    SuiteResult r{"buffers"};
    for (int q = 3; q <= 6; ++q) {
        const auto g = graph_for(q);
        const int c = buffer_length(q);
        std::size_t missing = 0;
        for (int v : g->vertices())
            if (!find_buffer_from_state(*g, v, default_sigma(), c)) {
                ++missing;
                fail(r, {{"q", q}, {"state", to_string(g->word(v), q)}});
            }
        r.detail += "q=" + std::to_string(q) + " c=" + std::to_string(c) + " vertices=" +
                    std::to_string(g->vertices().size()) + " missing=" + std::to_string(missing) + "; ";
    }
    return r;
}

SuiteResult suite_roots(std::uint64_t seed) {
    SuiteResult r{"roots"};
    std::mt19937_64 rng(seed);
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        Seq s(4 + rng() % 40);
        for (auto& c : s) c = static_cast<Symbol>(rng() % 4);
        std::mt19937_64 order(seed + static_cast<std::uint64_t>(t));
        if (dedup_root_random_order(s, order) != dedup_root(s)) fail(r, {{"seed", seed}, {"trial", t}});
        // duplicating keeps the root
        Seq y = s;
        const std::size_t len = 1 + rng() % 3;
        if (y.size() >= len) y = apply_duplication(y, {rng() % (y.size() - len + 1), len});
        if (dedup_root(y) != dedup_root(s)) fail(r, {{"seed", seed}, {"trial", t}, {"check", "duplication"}});
    }
    r.detail = std::to_string(trials) + " random strings";
    return r;
}

SuiteResult suite_rs(std::uint64_t seed) {
    SuiteResult r{"rs"};
    const ReedSolomon rs(4, 15, 3);
    std::mt19937_64 rng(seed);
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        std::vector<std::uint32_t> msg(3);
        for (auto& v : msg) v = static_cast<std::uint32_t>(rng() % 16);
        auto recv = rs.encode(msg);
        std::vector<int> pos(15);
        for (int i = 0; i < 15; ++i) pos[static_cast<std::size_t>(i)] = i;
        std::shuffle(pos.begin(), pos.end(), rng);
        const int errs = static_cast<int>(rng() % 7);
        const int eras = static_cast<int>(rng() % static_cast<std::uint64_t>(13 - 2 * errs));
        std::vector<bool> erased(15, false);
        for (int i = 0; i < errs; ++i) recv[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] ^= 1 + rng() % 15;
        for (int i = errs; i < errs + eras; ++i) erased[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] = true;
        const auto d = rs.decode(recv, erased);
        if (!d.ok || d.message != msg) fail(r, {{"seed", seed}, {"trial", t}, {"errors", errs}, {"erasures", eras}});
    }
    r.detail = std::to_string(trials) + " patterns with 2t+e <= 12";
    return r;
}

SuiteResult suite_blocks(std::uint64_t) {
    SuiteResult r{"blocks"};
    const Seq& sigma = default_sigma();
    const std::size_t m = 8;
    std::vector<Seq> brute;
    Seq b(m, 0);
    for (;;) {
        const Seq w = concat(concat(sigma, b), sigma);
        std::size_t hits = 0;
        for (std::size_t i = 0; i + 5 <= w.size(); ++i) hits += std::equal(sigma.begin(), sigma.end(), w.begin() + static_cast<std::ptrdiff_t>(i));
        if (hits == 2 && is_irreducible(w)) brute.push_back(b);
        std::size_t k = m;
        while (k > 0 && b[k - 1] == 3) b[--k] = 0;
        if (k == 0) break;
        ++b[k - 1];
    }
    const BlockSet bs(4, sigma, m, 3);
    if (bs.enumerate() != brute) fail(r, "enumeration differs from exhaustive filter at m=8");
    const auto big = block_set_for(4, sigma, 18, 9);
    r.detail = "M_8=" + std::to_string(brute.size()) + ", M_18=" + std::to_string(big->size()) +
               ", min color=" + std::to_string(big->min_color_size());
    if (big->min_color_size() < 16) fail(r, "colors smaller than the field");
    return r;
}

SuiteResult suite_aux(std::uint64_t seed) {
    SuiteResult r{"aux"};
    const AuxParams p;
    p.validate();
    std::mt19937_64 rng(seed);
    const int trials = 60;
    for (int t = 0; t < trials; ++t) {
        const Bits u = random_bits(p.capacity_bits(), rng);
        ChannelSpec spec;
        spec.max_dups = 10;
        spec.num_edits = 1 + static_cast<std::size_t>(t % 3);
        spec.edit_kinds = {EditKind::Substitution, EditKind::Insertion, EditKind::Deletion};
        spec.seed = seed * 1000 + static_cast<std::uint64_t>(t);
        const auto d = decode_CE_detailed(dedup_root(run_channel(encode_CE(u, p), spec, p.q)), p);
        if (!d.ok || d.bits != u) fail(r, {{"channel_seed", spec.seed}, {"error", d.error}});
    }
    r.detail = std::to_string(trials) + " channels, codeword length " + std::to_string(p.codeword_length());
    return r;
}

SuiteResult suite_roundtrip_A(std::uint64_t seed) {
    SuiteResult r{"roundtrip-A"};
    std::mt19937_64 rng(seed);
    const std::size_t n = 14;
    int trials = 0;
    for (int msg = 0; msg < 6; ++msg) {
        const Bits d = random_bits(data_capacity_bits(4, n), rng);
        const EncodedA e = encode_A(d, 4, n, 1);
        for (std::uint64_t s = 0; s < 10; ++s, ++trials) {
            ChannelSpec spec;
            spec.max_dups = 8;
            spec.num_edits = 1;
            spec.seed = seed * 100 + static_cast<std::uint64_t>(msg) * 10 + s;
            const auto rep = decode_A(run_channel(e.x, spec, 4), e.r, 4, n, 1);
            if (!rep.ok || rep.data != d) fail(r, {{"channel_seed", spec.seed}, {"failure", failure_name(rep.failure)}});
        }
    }
    r.detail = std::to_string(trials) + " trials at n=14, p=1";
    return r;
}

SuiteResult suite_roundtrip_B(std::uint64_t seed) {
    SuiteResult r{"roundtrip-B"};
    std::mt19937_64 rng(seed);
    const std::size_t n = 24;
    const BOptions opt;
    int trials = 0;
    for (int msg = 0; msg < 4; ++msg) {
        const Bits d = random_bits(data_capacity_bits(4, n), rng);
        const Seq full = encode_B(d, 4, n, 1, opt).full();
        for (std::uint64_t s = 0; s < 10; ++s, ++trials) {
            ChannelSpec spec;
            spec.max_dups = 10;
            spec.num_edits = 1;
            spec.edit_kinds = {EditKind::Substitution, EditKind::Insertion, EditKind::Deletion};
            spec.seed = seed * 100 + static_cast<std::uint64_t>(msg) * 10 + s;
            const auto rep = decode_B(run_channel(full, spec, 4), 4, n, 1, opt);
            if (!rep.ok || rep.data != d) fail(r, {{"channel_seed", spec.seed}, {"failure", failure_name(rep.failure)}});
        }
    }
    r.detail = std::to_string(trials) + " trials at n=24, p=1, anchored";
    return r;
}

SuiteResult suite_audit(std::uint64_t seed) {
    SuiteResult r{"audit"};
    std::mt19937_64 rng(seed);
    std::size_t trials = 0, misses = 0;
    for (int k = 0; k < 3; ++k) {
        const Seq x = random_irr(4, 24, rng);
        const AuditReport a = candidate_generator_completeness_audit(x, 1, 4, 50, seed + static_cast<std::uint64_t>(k));
        trials += a.trials;
        misses += a.misses;
        for (auto s : a.miss_seeds) fail(r, {{"x", to_string(x, 4)}, {"seed", s}});
    }
    r.detail = std::to_string(trials) + " trials, " + std::to_string(misses) + " misses";
    return r;
}

const std::map<std::string, std::function<SuiteResult(std::uint64_t)>>& registry() {
    static const std::map<std::string, std::function<SuiteResult(std::uint64_t)>> m = {
        {"automaton", suite_automaton}, {"buffers", suite_buffers},         {"roots", suite_roots},
        {"rs", suite_rs},               {"blocks", suite_blocks},           {"aux", suite_aux},
        {"roundtrip-A", suite_roundtrip_A}, {"roundtrip-B", suite_roundtrip_B}, {"audit", suite_audit},
    };
    return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"automaton", "buffers",     "roots",       "rs",   "blocks",
                                                   "aux",       "roundtrip-A", "roundtrip-B", "audit"};
    return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw UsageError("unknown suite '" + name + "'");
    return it->second(seed);
}

}  // namespace tdc::cli
