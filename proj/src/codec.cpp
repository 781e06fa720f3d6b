#include "tdc/codec.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <nlohmann/json.hpp>
#include <random>

namespace tdc {

// ---------------------------------------------------------------- labels

BigInt label(const Seq& x, int q) {
    BigInt v = 0;
    for (Symbol c : x) v = v * q + c;
    return v;
}

std::vector<Bits> label_matrix(const Seq& x, int q) {
    const std::size_t rows = bits_per_symbol(q);
    std::vector<Bits> U(rows, Bits(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t r = 0; r < rows; ++r) U[r][i] = (x[i] >> (rows - 1 - r)) & 1;
    return U;
}

std::uint64_t label_mod(const Seq& x, int q, std::uint64_t a) {
    unsigned __int128 r = 0;
    for (Symbol c : x) r = (r * static_cast<unsigned>(q) + c) % a;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t find_modulus(const BigInt& fx, const std::vector<BigInt>& others) {
    // |fx - fy| as big-endian 64-bit limbs; a separates iff it divides none
    std::vector<std::vector<std::uint64_t>> diffs;
    diffs.reserve(others.size());
    for (const BigInt& fy : others) {
        if (fy == fx) throw std::invalid_argument("find_modulus: fx occurs among the others");
        const BigInt d = fx > fy ? BigInt(fx - fy) : BigInt(fy - fx);
        std::vector<std::uint64_t> limbs;
        boost::multiprecision::export_bits(d, std::back_inserter(limbs), 64);
        diffs.push_back(std::move(limbs));
    }
    auto divides = [](const std::vector<std::uint64_t>& limbs, std::uint64_t a) {
        unsigned __int128 r = 0;
        for (std::uint64_t l : limbs) r = ((r << 64) | l) % a;
        return r == 0;
    };
    // differences that killed a recent candidate are tried first
    std::vector<std::size_t> order(diffs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::uint64_t a = 2;; ++a) {
        bool ok = true;
        for (std::size_t i = 0; i < order.size(); ++i)
            if (divides(diffs[order[i]], a)) {
                std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i),
                            order.begin() + static_cast<std::ptrdiff_t>(i + 1));
                ok = false;
                break;
            }
        if (ok) return a;
        if (a == std::numeric_limits<std::uint64_t>::max()) throw ModulusOverflow("modulus exceeds 64 bits");
    }
}

// ---------------------------------------------------------------- framing

std::string mode_name(Mode m) { return m == Mode::Anchored ? "anchored" : "strict"; }

Mode parse_mode(const std::string& s) {
    if (s == "anchored") return Mode::Anchored;
    if (s == "strict") return Mode::Strict;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

std::size_t bits_per_symbol(int q) {
    std::size_t b = 0;
    while ((1 << b) < q) ++b;
    return std::max<std::size_t>(b, 1);
}

Bits SyndromeRecord::to_bits(int q, std::size_t tail_slots) const {
    Bits out;
    for (int i = 63; i >= 0; --i) out.push_back((a_prime >> i) & 1);
    for (int i = 63; i >= 0; --i) out.push_back((residue >> i) & 1);
    const std::size_t bps = bits_per_symbol(q);
    for (std::size_t k = 0; k < tail_slots; ++k) {
        const Symbol c = tail && k < tail->size() ? (*tail)[k] : 0;
        for (std::size_t b = bps; b-- > 0;) out.push_back((c >> b) & 1);
    }
    return out;
}

SyndromeRecord SyndromeRecord::from_bits(const Bits& bits, int q, std::size_t tail_slots, std::size_t tail_len) {
    const std::size_t bps = bits_per_symbol(q);
    if (bits.size() < 128 + tail_slots * bps) throw AuxDecodeError("syndrome record truncated");
    if (tail_len > tail_slots) throw std::invalid_argument("tail longer than its slots");
    SyndromeRecord r;
    r.a_prime = 0;
    for (std::size_t i = 0; i < 64; ++i) r.a_prime = (r.a_prime << 1) | bits[i];
    for (std::size_t i = 64; i < 128; ++i) r.residue = (r.residue << 1) | bits[i];
    if (r.a_prime < 2 || r.residue >= r.a_prime) throw AuxDecodeError("syndrome record is inconsistent");
    if (tail_slots > 0) {
        Seq t;
        for (std::size_t k = 0; k < tail_len; ++k) {
            unsigned v = 0;
            for (std::size_t b = 0; b < bps; ++b) v = (v << 1) | bits[128 + k * bps + b];
            if (v >= static_cast<unsigned>(q)) throw AuxDecodeError("syndrome tail symbol outside alphabet");
            t.push_back(static_cast<Symbol>(v));
        }
        r.tail = std::move(t);
    }
    return r;
}

std::size_t data_capacity_bits(int q, std::size_t n) {
    const BigInt c = count_irr(q, n);
    return c == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(c));
}

Seq data_to_seq(const Bits& data, int q, std::size_t n) {
    if (data.size() > data_capacity_bits(q, n)) throw std::length_error("data exceeds capacity of Irr_q(n)");
    BigInt v = 0;
    for (bool b : data) v = (v << 1) | (b ? 1 : 0);
    return unrank_irr(q, n, v);
}

Bits seq_to_data(const Seq& x, int q, std::size_t n) {
    const std::size_t k = data_capacity_bits(q, n);
    BigInt v = rank_irr(x, q);
    if (v >= (BigInt(1) << k)) throw std::out_of_range("sequence is not a codeword");
    Bits out(k);
    for (std::size_t i = 0; i < k; ++i) out[k - 1 - i] = boost::multiprecision::bit_test(v, static_cast<unsigned>(i));
    return out;
}

std::string failure_name(Failure f) {
    switch (f) {
    case Failure::None: return "none";
    case Failure::BadInput: return "bad-input";
    case Failure::AuxDecode: return "aux-decode";
    case Failure::NoSurvivor: return "no-survivor";
    case Failure::MultipleSurvivors: return "multiple-survivors";
    }
    return "?";
}

std::string DecodeReport::to_json(int q) const {
    nlohmann::ordered_json j;
    j["ok"] = ok;
    j["failure"] = failure_name(failure);
    if (!error.empty()) j["error"] = error;
    if (ok) j["x"] = to_string(x, q);
    j["candidates"] = candidates;
    j["survivors"] = survivors;
    if (record) {
        j["a_prime"] = record->a_prime;
        j["residue"] = record->residue;
        if (record->tail) j["tail"] = to_string(*record->tail, q);
    }
    return j.dump();
}

namespace {

bool in_codebook(const Seq& y, int q, std::size_t n) {
    return rank_irr(y, q) < (BigInt(1) << data_capacity_bits(q, n));
}

std::uint64_t separating_modulus(const Seq& x, const std::vector<Seq>& members, int q) {
    std::vector<BigInt> others;
    others.reserve(members.size());
    for (const Seq& y : members) others.push_back(label(y, q));
    const std::uint64_t a = find_modulus(label(x, q), others);
    const std::uint64_t rx = label_mod(x, q, a);
    for (const Seq& y : members)
        if (label_mod(y, q, a) == rx) throw std::logic_error("modulus fails to separate a confusable sequence");
    return a;
}

// Keeps candidates in the codebook whose label matches; `confirm` is the
// forward membership test, run only on label survivors.
template <class Confirm>
void select(DecodeReport& rep, const SeqSet& cands, const SyndromeRecord& r, int q, std::size_t n, Confirm confirm) {
    rep.candidates = cands.size();
    std::vector<Seq> surv;
    for (const Seq& y : cands)
        if (y.size() == n && label_mod(y, q, r.a_prime) == r.residue && in_codebook(y, q, n) && confirm(y))
            surv.push_back(y);
    rep.survivors = surv.size();
    if (surv.empty()) {
        rep.failure = Failure::NoSurvivor;
        rep.error = "no candidate matches the syndrome";
        return;
    }
    if (surv.size() > 1) {
        rep.failure = Failure::MultipleSurvivors;
        rep.error = std::to_string(surv.size()) + " candidates match the syndrome";
        return;
    }
    rep.x = surv.front();
    rep.data = seq_to_data(rep.x, q, n);
    rep.ok = true;
}

bool valid_symbols(const Seq& y, int q) {
    return std::all_of(y.begin(), y.end(), [q](Symbol c) { return c < q; });
}

}  // namespace

// ---------------------------------------------------------------- Construction A

EncodedA encode_A(const Bits& data, int q, std::size_t n, int p) {
    EncodedA out;
    out.x = data_to_seq(data, q, n);
    const auto rep = confusable_superset_A(out.x, p, q);
    out.confusable_size = rep.members.size();
    out.r.a_prime = separating_modulus(out.x, rep.members, q);
    out.r.residue = label_mod(out.x, q, out.r.a_prime);
    return out;
}

DecodeReport decode_A(const Seq& y, const SyndromeRecord& r, int q, std::size_t n, int p) {
    DecodeReport rep;
    rep.record = r;
    if (!valid_symbols(y, q) || r.a_prime < 2 || r.residue >= r.a_prime) {
        rep.failure = Failure::BadInput;
        rep.error = "received word or side information is malformed";
        return rep;
    }
    const Seq v = dedup_root(y);
    SeqSet cands;
    if (p <= 0) {
        cands.insert(v);
    } else {
        StepModel model{&window_table_for(q), 0, q};
        const SeqSet mid = model.closure({v}, p - 1);
        for (const Seq& z : mid)
            for (const Seq& c : step_substitute(z, *model.table, n)) cands.insert(c);
    }
    select(rep, cands, r, q, n, [](const Seq&) { return true; });
    return rep;
}

// ---------------------------------------------------------------- Construction B

Seq CodewordB::full() const {
    Seq w = x;
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), sigma.begin(), sigma.end());
    w.insert(w.end(), r.begin(), r.end());
    return w;
}

std::size_t record_tail_slots(int q, std::size_t n, int p, Mode mode) {
    (void)q;
    (void)n;
    return mode == Mode::Anchored ? 3 * static_cast<std::size_t>(std::max(p, 0)) * kLocality : 0;
}

std::size_t record_bits(int q, std::size_t n, int p, Mode mode) {
    return 128 + record_tail_slots(q, n, p, mode) * bits_per_symbol(q);
}

AuxParams codec_aux_params(int q, std::size_t n, int p, const BOptions& opt) {
    const std::size_t bits = record_bits(q, n, p, opt.mode);
    const int pt = 3 * std::max(p, 0);
    if (opt.aux && opt.aux->q == q && opt.aux->p_tilde == pt && opt.aux->capacity_bits() >= bits) {
        opt.aux->validate();
        return *opt.aux;
    }
    return aux_params_for_payload(q, pt, bits, opt.aux ? opt.aux->m : 18);
}

std::size_t codeword_B_length(int q, std::size_t n, int p, const BOptions& opt) {
    return n + static_cast<std::size_t>(buffer_length(q)) + default_sigma().size() +
           codec_aux_params(q, n, p, opt).codeword_length();
}

CodewordB encode_B_seq(const Seq& x, int p, int q, const BOptions& opt) {
    if (!is_irreducible(x) || !valid_symbols(x, q)) throw SeqError("encode_B: x must be irreducible over the alphabet");
    const std::size_t n = x.size();
    CodewordB cw;
    cw.aux = codec_aux_params(q, n, p, opt);
    cw.x = x;
    cw.sigma = cw.aux.sigma;
    cw.b = find_buffer(x, cw.sigma, q);

    std::vector<Seq> members;
    if (opt.mode == Mode::Anchored) {
        members = confusable_superset_B_anchored(x, p, q).members;
        cw.record.tail = slice(x, n - anchored_tail_length(n, p), n);
    } else {
        members = confusable_superset_B_strict(x, p, q, StrictOptions{opt.strict_L, opt.work_limit}).members;
    }
    cw.confusable_size = members.size();
    cw.record.a_prime = separating_modulus(x, members, q);
    cw.record.residue = label_mod(x, q, cw.record.a_prime);
    cw.r = encode_E1(cw.record.to_bits(q, record_tail_slots(q, n, p, opt.mode)), cw.aux);
    if (!is_irreducible(cw.full())) throw std::logic_error("encode_B produced a reducible codeword");
    return cw;
}

CodewordB encode_B(const Bits& data, int q, std::size_t n, int p, const BOptions& opt) {
    return encode_B_seq(data_to_seq(data, q, n), p, q, opt);
}

SeqSet strict_candidates(const Seq& s, std::size_t n, int p, int q, std::size_t L) {
    const std::size_t span = 2 * static_cast<std::size_t>(std::max(p, 0)) * L;
    const auto g = graph_for(q);
    SeqSet E;
    const int st0 = g->walk(s);
    if (st0 == DeBruijnIrrGraph::kNone) return {};
    std::vector<std::pair<Seq, int>> stack{{s, st0}};
    while (!stack.empty()) {
        auto [cur, st] = std::move(stack.back());
        stack.pop_back();
        if (cur.size() - s.size() < span && cur.size() < n + span)
            for (int a = 0; a < q; ++a) {
                const int t = g->next(st, static_cast<Symbol>(a));
                if (t == DeBruijnIrrGraph::kNone) continue;
                Seq nx = cur;
                nx.push_back(static_cast<Symbol>(a));
                stack.emplace_back(std::move(nx), t);
            }
        E.insert(std::move(cur));
    }
    StepModel model{&window_table_for(q), L, q};
    SeqSet out;
    for (const Seq& y : model.closure(E, p))
        if (y.size() == n) out.insert(y);
    return out;
}

bool strict_prefix_reachable(const Seq& y, const Seq& s, int p, int q, std::size_t L) {
    const std::size_t span = 2 * static_cast<std::size_t>(std::max(p, 0)) * L;
    StepModel model{&window_table_for(q), L, q};
    for (const Seq& f : model.closure({y}, p))
        if (f.size() >= s.size() && f.size() - s.size() <= span && std::equal(s.begin(), s.end(), f.begin()))
            return true;
    return false;
}

namespace {

std::size_t prefix_keep(std::size_t n, int p, std::size_t L) {
    const std::size_t pl = static_cast<std::size_t>(std::max(p, 0)) * L;
    return n > pl ? n - pl : 0;
}

bool anchored_prefix_reachable(const Seq& y, const Seq& s, int p, int q) {
    return anchored_prefixes(y, p, q).count(s) > 0;
}

}  // namespace

DecodeReport decode_B(const Seq& y, int q, std::size_t n, int p, const BOptions& opt) {
    DecodeReport rep;
    if (!valid_symbols(y, q)) {
        rep.failure = Failure::BadInput;
        rep.error = "symbol outside the alphabet";
        return rep;
    }
    const AuxParams aux = codec_aux_params(q, n, p, opt);
    const Seq w = dedup_root(y);
    const auto aux_res = decode_E1_tail(w, aux);
    if (!aux_res.ok) {
        rep.failure = Failure::AuxDecode;
        rep.error = aux_res.error;
        return rep;
    }
    SyndromeRecord r;
    try {
        const std::size_t tail_len = opt.mode == Mode::Anchored ? anchored_tail_length(n, p) : 0;
        r = SyndromeRecord::from_bits(aux_res.bits, q, record_tail_slots(q, n, p, opt.mode), tail_len);
    } catch (const AuxDecodeError& e) {
        rep.failure = Failure::AuxDecode;
        rep.error = e.what();
        return rep;
    }
    rep.record = r;

    const std::size_t L = opt.mode == Mode::Anchored ? kLocality : opt.strict_L;
    const std::size_t keep = prefix_keep(n, p, L);
    if (w.size() < keep) {
        rep.failure = Failure::NoSurvivor;
        rep.error = "received root shorter than the protected prefix";
        return rep;
    }
    const Seq s = slice(w, 0, keep);
    if (opt.mode == Mode::Anchored) {
        select(rep, anchored_candidates(s, *r.tail, n, p, q), r, q, n,
               [&](const Seq& c) { return anchored_prefix_reachable(c, s, p, q); });
    } else {
        select(rep, strict_candidates(s, n, p, q, L), r, q, n,
               [&](const Seq& c) { return strict_prefix_reachable(c, s, p, q, L); });
    }
    return rep;
}

// ---------------------------------------------------------------- audit

std::string AuditReport::to_json() const {
    nlohmann::ordered_json j;
    j["trials"] = trials;
    j["misses"] = misses;
    j["miss_seeds"] = miss_seeds;
    j["max_candidates"] = max_candidates;
    j["mean_candidates"] = mean_candidates;
    return j.dump();
}

AuditReport candidate_generator_completeness_audit(const Seq& x, int p, int q, std::size_t trials,
                                                   std::uint64_t seed, std::size_t max_dups, Mode mode,
                                                   std::size_t strict_L) {
    if (!is_irreducible(x)) throw SeqError("audit: x must be irreducible");
    const std::size_t n = x.size();
    const Seq b = find_buffer(x, default_sigma(), q);
    // a short stretch of genuine aux code so the channel sees realistic context
    BOptions opt;
    opt.mode = mode;
    const AuxParams aux = codec_aux_params(q, n, p, opt);
    const Seq r = encode_E1(Bits(record_bits(q, n, p, mode), false), aux);
    Seq word = concat(concat(x, b), default_sigma());
    word.insert(word.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(40, r.size())));

    const Seq tail = slice(x, n - anchored_tail_length(n, p), n);
    const std::size_t L = mode == Mode::Anchored ? kLocality : strict_L;
    const std::size_t keep = prefix_keep(n, p, L);
    static const EditKind kinds[] = {EditKind::Substitution, EditKind::Insertion, EditKind::Deletion};

    AuditReport rep;
    double total = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        ChannelSpec spec;
        spec.max_dups = max_dups;
        spec.num_edits = static_cast<std::size_t>(std::max(p, 0));
        spec.edit_kinds = {kinds[t % 3]};
        spec.seed = seed + t;
        const Seq w = dedup_root(run_channel(word, spec, q));
        ++rep.trials;
        bool hit = false;
        std::size_t count = 0;
        if (w.size() >= keep) {
            const Seq s = slice(w, 0, keep);
            const SeqSet gen = mode == Mode::Anchored ? anchored_candidates(s, tail, n, p, q)
                                                      : strict_candidates(s, n, p, q, strict_L);
            count = gen.size();
            hit = gen.count(x) && (mode == Mode::Anchored ? anchored_prefix_reachable(x, s, p, q)
                                                          : strict_prefix_reachable(x, s, p, q, strict_L));
        }
        total += static_cast<double>(count);
        rep.max_candidates = std::max(rep.max_candidates, count);
        if (!hit) {
            ++rep.misses;
            rep.miss_seeds.push_back(spec.seed);
        }
    }
    rep.mean_candidates = rep.trials ? total / static_cast<double>(rep.trials) : 0;
    return rep;
}

}  // namespace tdc
