// Acceptance suite: one PASS/FAIL line per criterion, each with its time budget.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "tdc/automaton.hpp"
#include "tdc/codec.hpp"

using namespace tdc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Seq random_irr(int q, std::size_t n, std::mt19937_64& rng) {
    const BigInt count = count_irr(q, n);
    BigInt v = 0;
    for (unsigned i = 0; i <= msb(count) + 8; ++i) v = (v << 1) | (rng() & 1);
    return unrank_irr(q, n, v % count);
}

Bits random_bits(std::size_t k, std::mt19937_64& rng) {
    Bits b(k);
    for (std::size_t i = 0; i < k; ++i) b[i] = rng() & 1;
    return b;
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

const EditKind kRotating[] = {EditKind::Substitution, EditKind::Insertion, EditKind::Deletion};

// 1 ------------------------------------------------------------------------
Outcome root_uniqueness() {
    std::mt19937_64 rng(101);
    std::size_t mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
        // random irreducible seed string blown up by random duplications
        Seq s = random_irr(4, 5 + rng() % 20, rng);
        const std::size_t dups = rng() % 25;
        for (std::size_t d = 0; d < dups; ++d) {
            const std::size_t len = 1 + rng() % std::min<std::size_t>(3, s.size());
            s = apply_duplication(s, {rng() % (s.size() - len + 1), len});
        }
        if (rng() % 3 == 0) s[rng() % s.size()] = static_cast<Symbol>(rng() % 4);
        std::mt19937_64 r1(rng()), r2(rng());
        const Seq a = dedup_root_random_order(s, r1);
        const Seq b = dedup_root_random_order(s, r2);
        if (a != b || a != dedup_root(s) || !is_irreducible(a)) ++mismatches;
    }
    return {mismatches == 0, "10000 strings, " + std::to_string(mismatches) + " disagreements"};
}

// 2 ------------------------------------------------------------------------
Outcome automaton_roots() {
    const std::vector<std::string> literal = {"",     "0",     "01",     "01201",   "012",     "0120",
                                              "010",  "012010", "0121",  "01202",   "0123",    "01232",
                                              "01231", "012313", "012312", "0123121", "01234",  "012343",
                                              "012342", "0123424", "0123423", "01234232"};
    RootSet expect;
    for (const auto& s : literal) expect.insert(seq_of(s));
    const RootSet ru = enumerate_RU();
    const RootSet rv = enumerate_RV();
    RootSet hru;
    for (const auto& u : ru) hru.insert(apply_h(u));
    const bool ok = ru.size() == 22 && ru == expect && rv == hru && rv.size() == 22;
    return {ok, "|R(U)|=" + std::to_string(ru.size()) + " literal=" + (ru == expect ? "match" : "MISMATCH") +
                    " |R(V)|=" + std::to_string(rv.size()) + " R(V)=h(R(U)): " + (rv == hru ? "yes" : "NO")};
}

// 3 ------------------------------------------------------------------------
Outcome buffer_existence() {
    std::ostringstream os;
    bool ok = true;
    for (int q = 3; q <= 6; ++q) {
        const auto g = graph_for(q);
        std::size_t missing = 0;
        const auto verts = g->vertices();
        for (int v : verts) {
            auto b = find_buffer_from_state(*g, v, default_sigma(), buffer_length(q));
            if (!b || b->size() != static_cast<std::size_t>(buffer_length(q))) {
                ++missing;
                continue;
            }
            // replay the path: word(v)·b·σ must be irreducible
            if (!is_irreducible(concat(concat(g->word(v), *b), default_sigma()))) ++missing;
        }
        ok &= missing == 0;
        os << "q=" << q << " c=" << buffer_length(q) << " vertices=" << verts.size() << " missing=" << missing << "; ";
    }
    return {ok, os.str()};
}

// 4 ------------------------------------------------------------------------
Outcome growth() {
    const double r = growth_rate(4);
    using boost::multiprecision::cpp_bin_float_50;
    const double ratio = static_cast<double>(cpp_bin_float_50(count_irr(4, 41)) / cpp_bin_float_50(count_irr(4, 40)));
    const bool ok = std::abs(r - 2.6590) <= 5e-5 && std::abs(ratio - r) <= 1e-2;
    return {ok, "root=" + fmt(r, 8) + " count(41)/count(40)=" + fmt(ratio, 8)};
}

// 5 ------------------------------------------------------------------------
Outcome substring_edit_replay() {
    std::size_t trials = 0, fails = 0;
    for (int p = 1; p <= 2; ++p)
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            std::mt19937_64 rng(seed * 7919 + static_cast<std::uint64_t>(p));
            const std::size_t n = 1 + rng() % 12;
            const Seq x = random_irr(4, n, rng);
            ChannelSpec spec;
            spec.max_dups = 6;
            spec.num_edits = static_cast<std::size_t>(p);
            spec.edit_kinds = {EditKind::Substitution};
            spec.seed = seed;
            const Seq y = run_channel(x, spec, 4);
            ++trials;
            if (!check_substring_edits(dedup_root(x), dedup_root(y), p, kLocality)) ++fails;
        }
    return {fails == 0, std::to_string(trials) + " trials, " + std::to_string(fails) + " failures"};
}

// 6 ------------------------------------------------------------------------
Outcome bound_assertions() {
    std::mt19937_64 rng(606);
    std::ostringstream os;
    std::size_t violations = 0;
    for (std::size_t n : {10, 20, 40}) {
        const auto& table = window_table_for(4);
        std::size_t worst = 0;
        for (int i = 0; i < 100; ++i) {
            const Seq x = random_irr(4, n, rng);
            const auto sz = step_substitute(x, table).size();
            worst = std::max(worst, sz);
            if (BigInt(sz) > bound_step(4, n)) ++violations;
        }
        os << "step n=" << n << " max=" << worst << "/" << bound_step(4, n) << "; ";
    }
    for (std::size_t n : {10, 16}) {
        std::size_t worst = 0;
        for (int i = 0; i < 100; ++i) {
            const auto rep = confusable_superset_A(random_irr(4, n, rng), 1, 4);
            worst = std::max(worst, rep.members.size());
            if (BigInt(rep.members.size()) > rep.bound) ++violations;
        }
        os << "A n=" << n << " max=" << worst << "; ";
    }
    {
        std::size_t worst = 0;
        for (int i = 0; i < 100; ++i) {
            const auto rep = confusable_superset_B_strict(random_irr(3, 10, rng), 1, 3, StrictOptions{3, 1u << 20});
            worst = std::max(worst, rep.members.size());
            if (BigInt(rep.members.size()) > bound_B_strict(3, 10, 1, 3)) ++violations;
        }
        os << "strict-B q=3 n=10 L'=3 max=" << worst << "/" << bound_B_strict(3, 10, 1, 3) << "; ";
    }
    os << "violations=" << violations;
    return {violations == 0, os.str()};
}

// 7 ------------------------------------------------------------------------
Outcome oracle_containment() {
    std::ostringstream os;
    std::size_t checked_x = 0, pairs = 0, escapes = 0;
    std::mt19937_64 rng(707);
    const std::vector<std::pair<std::size_t, std::size_t>> settings = {{6, 6}, {7, 5}};  // (n, duplication cap)
    for (auto [n, cap] : settings) {
        const BigInt total = count_irr(4, n);
        std::vector<Seq> all;
        for (BigInt i = 0; i < total; ++i) all.push_back(unrank_irr(4, n, i));
        // inverted index: root -> sequences whose bounded descendants reach it
        std::map<Seq, std::vector<std::uint32_t>> owners;
        for (std::uint32_t i = 0; i < all.size(); ++i)
            for (const Seq& r : oracle_roots(all[i], 1, cap, 4)) owners[r].push_back(i);
        std::vector<std::uint32_t> pick(all.size());
        for (std::uint32_t i = 0; i < pick.size(); ++i) pick[i] = i;
        std::shuffle(pick.begin(), pick.end(), rng);
        if (pick.size() > 250) pick.resize(250);
        for (std::uint32_t xi : pick) {
            const Seq& x = all[xi];
            std::set<std::uint32_t> confusable;
            for (const Seq& r : oracle_roots(x, 1, cap, 4))
                for (std::uint32_t yi : owners[r])
                    if (yi != xi) confusable.insert(yi);
            const auto rep = confusable_superset_A(x, 1, 4);
            const std::set<Seq> A(rep.members.begin(), rep.members.end());
            for (std::uint32_t yi : confusable) {
                ++pairs;
                if (!A.count(all[yi])) ++escapes;
            }
            ++checked_x;
        }
        os << "n=" << n << " cap=" << cap << " |Irr|=" << all.size() << "; ";
    }
    os << checked_x << " x checked, " << pairs << " confusable pairs, " << escapes << " outside A";
    return {escapes == 0 && checked_x >= 200, os.str()};
}

// 8 ------------------------------------------------------------------------
Outcome rs_layer() {
    const int N = 15, pt = 3, r = 4 * pt;
    const ReedSolomon rs(4, N, N - r);
    std::mt19937_64 rng(808);
    std::vector<std::vector<std::uint32_t>> msgs, cws;
    for (int i = 0; i < 100; ++i) {
        std::vector<std::uint32_t> m(static_cast<std::size_t>(N - r));
        for (auto& v : m) v = static_cast<std::uint32_t>(rng() % 16);
        msgs.push_back(m);
        cws.push_back(rs.encode(m));
    }
    std::size_t patterns = 0, fails = 0;
    // every (error set, erasure set) with 2t + e ≤ 4p̃, codewords taken round-robin
    for (unsigned err = 0; err < (1u << N); ++err) {
        const int t = __builtin_popcount(err);
        if (2 * t > r) continue;
        const unsigned rest = ((1u << N) - 1) & ~err;
        // enumerate subsets of the remaining positions with at most r - 2t elements
        for (unsigned era = rest;; era = (era - 1) & rest) {
            const int e = __builtin_popcount(era);
            if (2 * t + e <= r) {
                const std::size_t c = patterns % cws.size();
                auto recv = cws[c];
                std::vector<bool> erased(N, false);
                for (int i = 0; i < N; ++i) {
                    if (err >> i & 1) recv[static_cast<std::size_t>(i)] ^= static_cast<std::uint32_t>(1 + rng() % 15);
                    if (era >> i & 1) {
                        erased[static_cast<std::size_t>(i)] = true;
                        recv[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rng() % 16);
                    }
                }
                const auto dec = rs.decode(recv, erased);
                if (!dec.ok || dec.message != msgs[c]) ++fails;
                ++patterns;
            }
            if (era == 0) break;
        }
    }
    return {fails == 0, std::to_string(patterns) + " patterns over 100 codewords, " + std::to_string(fails) + " failures"};
}

// 9 ------------------------------------------------------------------------
Outcome ce_end_to_end() {
    const AuxParams params;  // q=4, m=18, T=9, N̂=15, γ=4, p̃=3
    params.validate();
    std::mt19937_64 rng(909);
    std::size_t ok_channel = 0, ok_script = 0, script_total = 0, collisions = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Bits u = random_bits(params.capacity_bits(), rng);
        const Seq c = encode_CE(u, params);
        ChannelSpec spec;
        spec.max_dups = 10;
        spec.num_edits = seed % 4;
        spec.edit_kinds = {EditKind::Substitution};
        spec.seed = seed;
        const auto res = decode_CE_detailed(dedup_root(run_channel(c, spec, 4)), params);
        ok_channel += res.ok && res.bits == u;
        collisions += res.collisions;
    }
    // scripted adversary: up to three arbitrary ≤17-substring replacements on the codeword
    for (int k = 1; k <= 3; ++k)
        for (int i = 0; i < 100; ++i) {
            const Bits u = random_bits(params.capacity_bits(), rng);
            Seq y = encode_CE(u, params);
            const std::size_t group = 9 * 23;
            for (int e = 0; e < k; ++e) {
                const std::size_t lu = rng() % 18, lv = rng() % 18;
                std::size_t pos;
                switch (i % 3) {
                case 0: pos = rng() % (y.size() - lu); break;                            // anywhere
                case 1: pos = (1 + rng() % 13) * group - 5 - rng() % 8; break;          // across a group boundary
                default: pos = (rng() % 15) * group + 18 + 23 * (rng() % 8); break;     // on a marker
                }
                pos = std::min(pos, y.size() - lu);
                Seq v(lv);
                for (auto& s : v) s = static_cast<Symbol>(rng() % 4);
                Seq z(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(pos));
                z.insert(z.end(), v.begin(), v.end());
                z.insert(z.end(), y.begin() + static_cast<std::ptrdiff_t>(pos + lu), y.end());
                y = std::move(z);
            }
            const auto res = decode_CE_detailed(dedup_root(y), params);
            ++script_total;
            ok_script += res.ok && res.bits == u;
            collisions += res.collisions;
        }
    return {ok_channel == 1000 && ok_script == script_total,
            "channels " + std::to_string(ok_channel) + "/1000, scripted edits " + std::to_string(ok_script) + "/" +
                std::to_string(script_total) + ", slot collisions " + std::to_string(collisions) + ", codeword length " +
                std::to_string(params.codeword_length())};
}

// 10 -----------------------------------------------------------------------
struct RoundTrip {
    std::size_t ok = 0, total = 0;
    std::vector<std::uint64_t> failed;
};

RoundTrip run_B(std::size_t n, int p, std::size_t messages, std::size_t seeds_per_message, std::uint64_t base) {
    RoundTrip rt;
    std::mt19937_64 rng(base);
    BOptions opt;
    for (std::size_t mi = 0; mi < messages; ++mi) {
        const Bits d = random_bits(data_capacity_bits(4, n), rng);
        const CodewordB cw = encode_B(d, 4, n, p, opt);
        const Seq full = cw.full();
        for (std::size_t s = 0; s < seeds_per_message; ++s) {
            ChannelSpec spec;
            spec.max_dups = 10;
            spec.num_edits = static_cast<std::size_t>(p);
            spec.edit_kinds = {kRotating[(rt.total) % 3]};
            spec.seed = base * 1000003 + rt.total;
            const auto res = decode_B(run_channel(full, spec, 4), 4, n, p, opt);
            ++rt.total;
            if (res.ok && res.data == d)
                ++rt.ok;
            else
                rt.failed.push_back(spec.seed);
        }
    }
    return rt;
}

Outcome construction_B() {
    std::ostringstream os;
    bool ok = true;
    auto report = [&](const std::string& name, const RoundTrip& rt) {
        ok &= rt.ok == rt.total;
        os << name << " " << rt.ok << "/" << rt.total;
        if (!rt.failed.empty()) os << " (first failing seed " << rt.failed.front() << ")";
        os << "; ";
    };
    report("p=1 n=24", run_B(24, 1, 10, 100, 1));
    report("p=1 n=40", run_B(40, 1, 10, 100, 2));
    report("p=2 n=24", run_B(24, 2, 4, 50, 3));
    // beyond the tail-covered regime: prefix candidates actually matter here
    report("p=1 n=80", run_B(80, 1, 1, 50, 4));
    return {ok, os.str()};
}

// 11 -----------------------------------------------------------------------
// The promise is a ≤L-substring edit between roots: edits whose output is
// irreducible. Edits that leave a repeat behind shrink under deduplication into
// a longer root-level edit; those are reported separately, outside the promise.
Outcome strict_pipeline() {
    const int q = 3;
    const std::size_t n = 10, L = 3;
    BOptions opt;
    opt.mode = Mode::Strict;
    opt.strict_L = L;
    std::mt19937_64 rng(1111);
    std::size_t total = 0, good = 0, outside = 0, outside_good = 0, sample = 0;
    std::uint64_t first_bad = 0;
    for (int mi = 0; mi < 20; ++mi) {
        const Bits d = random_bits(data_capacity_bits(q, n), rng);
        const CodewordB cw = encode_B(d, q, n, 1, opt);
        const Seq full = cw.full();
        const std::size_t head = n + cw.b.size() + cw.sigma.size();
        auto attempt = [&](std::size_t pos, std::size_t lu, const Seq& v) {
            Seq y(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(pos));
            y.insert(y.end(), v.begin(), v.end());
            y.insert(y.end(), full.begin() + static_cast<std::ptrdiff_t>(pos + lu), full.end());
            if (y == full) return;
            const bool in_promise = is_irreducible(y);
            if (!in_promise && sample++ % 10) return;  // out-of-promise edits are only sampled
            const auto res = decode_B(y, q, n, 1, opt);
            const bool ok = res.ok && res.data == d;
            if (!in_promise) {
                ++outside;
                outside_good += ok;
                return;
            }
            ++total;
            if (ok)
                ++good;
            else if (!first_bad)
                first_bad = total;
        };
        // exhaustive over the x·b·σ region: every replacement u→v with |u|,|v| ≤ L
        for (std::size_t pos = 0; pos < head; ++pos)
            for (std::size_t lu = 0; lu <= L; ++lu)
                for (std::size_t lv = 0; lv <= L; ++lv) {
                    std::size_t combos = 1;
                    for (std::size_t i = 0; i < lv; ++i) combos *= q;
                    for (std::size_t c = 0; c < combos; ++c) {
                        Seq v(lv);
                        std::size_t cc = c;
                        for (std::size_t i = 0; i < lv; ++i, cc /= q) v[i] = static_cast<Symbol>(cc % q);
                        attempt(pos, lu, v);
                    }
                }
        // sampled edits over the aux segment
        for (int i = 0; i < 200; ++i) {
            const std::size_t lu = rng() % (L + 1), lv = rng() % (L + 1);
            const std::size_t pos = head + rng() % (full.size() - head - lu);
            Seq v(lv);
            for (auto& s : v) s = static_cast<Symbol>(rng() % q);
            attempt(pos, lu, v);
        }
    }
    return {good == total && total > 0,
            std::to_string(good) + "/" + std::to_string(total) + " root-level edits recovered" +
                (first_bad ? " (first failure #" + std::to_string(first_bad) + ")" : "") +
                "; outside the promise (reducible after edit): " + std::to_string(outside_good) + "/" +
                std::to_string(outside) + " recovered anyway"};
}

// 12 -----------------------------------------------------------------------
Outcome negative() {
    std::ostringstream os;
    std::mt19937_64 rng(1212);
    std::size_t crashes = 0;
    {
        // Construction A, n=16, p=1, two substitutions
        std::size_t correct = 0, flagged = 0, wrong_detected = 0, wrong_silent = 0;
        for (int mi = 0; mi < 10; ++mi) {
            const Bits d = random_bits(data_capacity_bits(4, 16), rng);
            const EncodedA e = encode_A(d, 4, 16, 1);
            for (int s = 0; s < 30; ++s) {
                try {
                    ChannelSpec spec;
                    spec.max_dups = 8;
                    spec.num_edits = 2;
                    spec.seed = static_cast<std::uint64_t>(mi * 100 + s);
                    const auto res = decode_A(run_channel(e.x, spec, 4), e.r, 4, 16, 1);
                    if (!res.ok)
                        ++flagged;
                    else if (res.data == d)
                        ++correct;
                    else {
                        // re-encoding the survivor exposes the mismatch when its modulus differs
                        const EncodedA again = encode_A(res.data, 4, 16, 1);
                        (again.r == e.r ? wrong_silent : wrong_detected)++;
                    }
                } catch (const std::exception&) {
                    ++crashes;
                }
            }
        }
        os << "A: correct=" << correct << " flagged=" << flagged << " wrong-detected=" << wrong_detected
           << " wrong-silent=" << wrong_silent << " (silent rate " << fmt(wrong_silent / 300.0) << "); ";
    }
    {
        // Construction B anchored, n=80, p=1, two edits
        std::size_t correct = 0, flagged = 0, wrong_detected = 0, wrong_silent = 0, total = 0;
        const Bits d = random_bits(data_capacity_bits(4, 80), rng);
        BOptions opt;
        const CodewordB cw = encode_B(d, 4, 80, 1, opt);
        // edits confined to x so that they are not simply absorbed by the aux code
        for (int s = 0; s < 150; ++s) {
            try {
                Seq y = cw.full();
                for (int k = 0; k < 2; ++k) {
                    Edit e{kRotating[(s + k) % 3], rng() % 80, static_cast<Symbol>(rng() % 4)};
                    if (e.kind == EditKind::Substitution && y[e.pos] == e.symbol) e.symbol = (e.symbol + 1) % 4;
                    y = apply_edit(y, e, 4);
                }
                ChannelSpec spec;
                spec.max_dups = 10;
                spec.seed = static_cast<std::uint64_t>(5000 + s);
                const auto res = decode_B(run_channel(y, spec, 4), 4, 80, 1, opt);
                ++total;
                if (!res.ok)
                    ++flagged;
                else if (res.data == d)
                    ++correct;
                else if (res.record && !(*res.record == cw.record))
                    ++wrong_detected;
                else
                    ++wrong_silent;
            } catch (const std::exception&) {
                ++crashes;
            }
        }
        os << "B n=80: correct=" << correct << " flagged=" << flagged << " wrong-detected=" << wrong_detected
           << " wrong-silent=" << wrong_silent << " (silent rate " << fmt(total ? double(wrong_silent) / total : 0)
           << "); ";
    }
    os << "crashes=" << crashes;
    return {crashes == 0, os.str()};
}

// 13 -----------------------------------------------------------------------
Outcome redundancy_report() {
    std::ostringstream os;
    std::mt19937_64 rng(1313);
    BOptions opt;
    const AuxParams aux = codec_aux_params(4, 24, 1, opt);
    os << "aux: m=" << aux.m << " T=" << aux.T << " N_hat=" << aux.N_hat << " gamma=" << aux.gamma
       << " |r|=" << aux.codeword_length() << " payload bits=" << record_bits(4, 24, 1, Mode::Anchored) << "\n";
    os << "    n    log2|B_A|  log2 a(A)  log2|B'|  log2 a'   N-log4|Irr|\n";
    for (std::size_t n : {24, 40, 64, 80, 120, 200, 400}) {
        const double red = static_cast<double>(codeword_B_length(4, n, 1, opt)) -
                           static_cast<double>(msb(count_irr(4, n))) / 2.0;
        std::string la = "-", aa = "-", lb = "-", ab = "-";
        if (n <= 64) {
            double sa = 0, sA = 0;
            for (int i = 0; i < 2; ++i) {
                const Seq x = random_irr(4, n, rng);
                const auto rep = confusable_superset_A(x, 1, 4);
                std::vector<BigInt> ls;
                for (const auto& y : rep.members) ls.push_back(label(y, 4));
                sA += std::log2(static_cast<double>(rep.members.size()));
                sa += std::log2(static_cast<double>(find_modulus(label(x, 4), ls)));
            }
            la = fmt(sA / 2, 4);
            aa = fmt(sa / 2, 4);
        }
        if (n == 64 || n == 80) {
            const Seq x = random_irr(4, n, rng);
            const CodewordB cw = encode_B_seq(x, 1, 4, opt);
            lb = fmt(std::log2(std::max<double>(1, static_cast<double>(cw.confusable_size))), 4);
            ab = fmt(std::log2(static_cast<double>(cw.record.a_prime)), 4);
        } else if (n <= 51) {
            lb = "0 (tail)";
            ab = "1";
        }
        os << "    " << n << "    " << la << "    " << aa << "    " << lb << "    " << ab << "    " << fmt(red, 6)
           << "\n";
    }
    return {true, os.str()};
}

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "root uniqueness", 10, root_uniqueness},
        {2, "automaton roots R(U), R(V)", 1, automaton_roots},
        {3, "buffer existence", 300, buffer_existence},
        {4, "growth rate", 10, growth},
        {5, "substring-edit replay", 300, substring_edit_replay},
        {6, "size bounds", 600, bound_assertions},
        {7, "oracle containment", 600, oracle_containment},
        {8, "Reed-Solomon layer", 300, rs_layer},
        {9, "C_E end-to-end", 900, ce_end_to_end},
        {10, "construction B anchored end-to-end", 3600, construction_B},
        {11, "strict pipeline, reduced L", 1800, strict_pipeline},
        {12, "negative testing", 1800, negative},
        {13, "redundancy report", 3600, redundancy_report},
    };
    std::set<int> chosen;
    for (int i = 1; i < argc; ++i) chosen.insert(std::stoi(argv[i]));
    int failed = 0;
    for (const auto& c : all) {
        if (!chosen.empty() && !chosen.count(c.id)) continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " — " << o.detail << " ("
                  << fmt(secs) << " s, budget " << c.budget_s << " s" << (in_time ? "" : ", OVER BUDGET") << ")"
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
