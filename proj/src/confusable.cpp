#include "tdc/confusable.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>
#include <sstream>

namespace tdc {

std::string variant_name(Variant v) {
    switch (v) {
    case Variant::A: return "A";
    case Variant::BStrict: return "B";
    case Variant::BAnchored: return "B-anchored";
    }
    return "?";
}

std::string ConfusableReport::to_json() const {
    nlohmann::ordered_json j;
    j["x"] = to_string(x, q);
    j["q"] = q;
    j["p"] = p;
    j["L"] = L;
    j["variant"] = variant_name(variant);
    j["size"] = members.size();
    j["bound"] = bound.str();
    auto arr = nlohmann::json::array();
    for (const auto& m : members) arr.push_back(to_string(m, q));
    j["members"] = std::move(arr);
    return j.dump();
}

namespace {

// Splices e over P[c-2..c+3) and deduplicates. Only the neighbourhood of the
// splice can change: once the stack again ends with the same five symbols as
// the untouched suffix, the remainder is copied verbatim.
void splice_root(const Seq& P, std::size_t c, const Seq& e, Seq& z) {
    z.assign(P.begin(), P.begin() + static_cast<std::ptrdiff_t>(c - 2));
    for (Symbol s : e) root_push(z, s);
    std::size_t i = c + 3;
    for (; i < P.size(); ++i) {
        root_push(z, P[i]);
        if (i >= 4 && z.size() >= 5 && std::equal(z.end() - 5, z.end(), P.begin() + static_cast<std::ptrdiff_t>(i - 4))) {
            ++i;
            break;
        }
    }
    z.insert(z.end(), P.begin() + static_cast<std::ptrdiff_t>(i), P.end());
}

}  // namespace

SeqSet step_substitute(const Seq& x, const WindowRootTable& table, std::size_t only_len) {
    SeqSet out;
    if (only_len == 0 || x.size() == only_len) out.insert(x);
    const Seq P = pad_with_sentinels(x);
    Seq z;
    for (std::size_t c = 2; c + 2 < P.size(); ++c) {
        Window t;
        std::copy(P.begin() + static_cast<std::ptrdiff_t>(c - 2), P.begin() + static_cast<std::ptrdiff_t>(c + 3), t.begin());
        for (const Seq& e : table.entry(t)) {
            // deduplication only shortens, so short results can be skipped early
            if (only_len && P.size() - 9 + e.size() < only_len) continue;
            splice_root(P, c, e, z);
            if (only_len && z.size() - 4 != only_len) continue;
            out.insert(Seq(z.begin() + 2, z.end() - 2));
        }
    }
    return out;
}

SeqSet step_substring_edit(const Seq& x, std::size_t L, int q) {
    SeqSet out;
    out.insert(x);
    const std::size_t n = x.size();
    // all replacement strings v with |v| ≤ L, grown incrementally
    std::vector<Seq> vs{{}};
    for (std::size_t len = 1, from = 0; len <= L; ++len) {
        const std::size_t to = vs.size();
        for (std::size_t i = from; i < to; ++i)
            for (int a = 0; a < q; ++a) {
                Seq v = vs[i];
                v.push_back(static_cast<Symbol>(a));
                if (!ends_with_repeat(v)) vs.push_back(std::move(v));
            }
        from = to;
    }
    Seq z;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t lu = 0; lu <= L && i + lu <= n; ++lu)
            for (const Seq& v : vs) {
                z.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
                z.insert(z.end(), v.begin(), v.end());
                z.insert(z.end(), x.begin() + static_cast<std::ptrdiff_t>(i + lu), x.end());
                if (is_irreducible(z)) out.insert(z);
            }
    return out;
}

SeqSet StepModel::step(const Seq& x) const {
    SeqSet out = table ? step_substitute(x, *table) : SeqSet{x};
    if (direct_edit_L > 0) {
        SeqSet more = step_substring_edit(x, direct_edit_L, q);
        out.insert(more.begin(), more.end());
    }
    return out;
}

SeqSet StepModel::closure(const SeqSet& start, int steps) const {
    SeqSet all = start;
    SeqSet frontier = start;
    for (int k = 0; k < steps; ++k) {
        SeqSet next;
        for (const Seq& s : frontier)
            for (const Seq& t : step(s))
                if (!all.count(t)) next.insert(t);
        all.insert(next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

namespace {

BigInt big_pow(BigInt b, std::size_t e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::vector<Seq> sorted_members(const SeqSet& s, const Seq& x, std::size_t n) {
    std::vector<Seq> out;
    for (const auto& y : s)
        if (y.size() == n && y != x) out.push_back(y);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

BigInt bound_step(int q, std::size_t n) { return BigInt(968) * q * n + 1; }

BigInt bound_A(int q, std::size_t n, int p, std::size_t L) {
    return big_pow(BigInt(968) * q * (n + static_cast<std::size_t>(p) * L) + 1, 2 * static_cast<std::size_t>(p));
}

BigInt bound_B_strict(int q, std::size_t n, int p, std::size_t L) {
    const auto pl = static_cast<std::size_t>(p) * L;
    return big_pow(BigInt(q), 4 * pl) * big_pow(BigInt(n + pl), 2 * static_cast<std::size_t>(p));
}

BigInt bound_B_anchored(int q, std::size_t n, int p, std::size_t L) {
    const auto pl = static_cast<std::size_t>(p) * L;
    return bound_A(q, n, p, L) * (2 * pl + 1) * (2 * pl + 1);
}

ConfusableReport confusable_superset_A(const Seq& x, int p, int q) {
    if (!is_irreducible(x)) throw SeqError("confusable_superset_A: x must be irreducible");
    ConfusableReport rep{x, q, p, kLocality, Variant::A, {}, bound_A(q, x.size(), p)};
    if (p <= 0) return rep;
    StepModel model{&window_table_for(q), 0, q};
    // the last step only needs to land on length n; prune what cannot
    SeqSet mid = model.closure({x}, 2 * p - 1);
    SeqSet out;
    for (const Seq& z : mid)
        for (const Seq& y : step_substitute(z, *model.table, x.size())) out.insert(y);
    rep.members = sorted_members(out, x, x.size());
    return rep;
}

ConfusableReport confusable_superset_B_strict(const Seq& x, int p, int q, const StrictOptions& opt) {
    if (!is_irreducible(x)) throw SeqError("confusable_superset_B: x must be irreducible");
    const std::size_t n = x.size();
    ConfusableReport rep{x, q, p, opt.L, Variant::BStrict, {}, bound_B_strict(q, n, p, opt.L)};
    if (p <= 0) return rep;
    const std::size_t span = 2 * static_cast<std::size_t>(p) * opt.L;
    {
        long double work = 1;
        for (std::size_t i = 0; i < span; ++i) work *= q;
        if (work > static_cast<long double>(opt.work_limit))
            throw WorkLimitExceeded("strict enumeration needs q^{2pL} = " + std::to_string(static_cast<double>(work)) +
                                    " extensions; use anchored mode or a smaller L");
    }
    StepModel model{&window_table_for(q), opt.L, q};
    const SeqSet F = model.closure({x}, p);

    SeqSet D;
    for (const Seq& f : F)
        for (std::size_t k = 0; k <= span && k <= f.size(); ++k) D.insert(slice(f, 0, f.size() - k));

    SeqSet E;
    const auto g = graph_for(q);
    for (const Seq& d : D) {
        const int st = g->walk(d.size() > 5 ? slice(d, d.size() - 5, d.size()) : d);
        if (st == DeBruijnIrrGraph::kNone) continue;
        // DFS over irreducible extensions of length ≤ span
        std::vector<std::pair<Seq, int>> stack{{d, st}};
        while (!stack.empty()) {
            auto [s, cur] = std::move(stack.back());
            stack.pop_back();
            const std::size_t depth = s.size() - d.size();
            if (depth < span)
                for (int a = 0; a < q; ++a) {
                    const int t = g->next(cur, static_cast<Symbol>(a));
                    if (t == DeBruijnIrrGraph::kNone) continue;
                    Seq ns = s;
                    ns.push_back(static_cast<Symbol>(a));
                    stack.emplace_back(std::move(ns), t);
                }
            E.insert(std::move(s));
        }
    }

    // Final p steps. Both step kinds are reversible, so y ∈ step^p(E) iff
    // step^p(y) meets E; enumerate whichever side is smaller.
    SeqSet out;
    const BigInt irr_n = count_irr(q, n);
    if (irr_n < BigInt(E.size())) {
        for (BigInt i = 0; i < irr_n; ++i) {
            Seq y = unrank_irr(q, n, i);
            for (const Seq& z : model.closure({y}, p))
                if (E.count(z)) {
                    out.insert(y);
                    break;
                }
        }
    } else {
        for (const Seq& y : model.closure(E, p))
            if (y.size() == n) out.insert(y);
    }
    rep.members = sorted_members(out, x, n);
    return rep;
}

std::size_t anchored_tail_length(std::size_t n, int p, std::size_t L) {
    return std::min(n, 3 * static_cast<std::size_t>(p) * L);
}

SeqSet anchored_prefixes(const Seq& x, int p, int q, std::size_t L) {
    const std::size_t n = x.size();
    const std::size_t keep = n > static_cast<std::size_t>(p) * L ? n - static_cast<std::size_t>(p) * L : 0;
    StepModel model{&window_table_for(q), 0, q};
    SeqSet out;
    for (const Seq& v : model.closure({x}, p))
        if (v.size() >= keep) out.insert(slice(v, 0, keep));
    return out;
}

SeqSet anchored_candidates(const Seq& s, const Seq& tail, std::size_t n, int p, int q) {
    SeqSet out;
    if (tail.size() > n) return out;
    const std::size_t head = n - tail.size();
    if (head == 0) {
        if (is_irreducible(tail)) out.insert(tail);
        return out;
    }
    StepModel model{&window_table_for(q), 0, q};
    for (const Seq& z : model.closure({s}, p)) {
        if (z.size() < head) continue;
        Seq y = slice(z, 0, head);
        y.insert(y.end(), tail.begin(), tail.end());
        if (is_irreducible(y)) out.insert(std::move(y));
    }
    return out;
}

ConfusableReport confusable_superset_B_anchored(const Seq& x, int p, int q) {
    if (!is_irreducible(x)) throw SeqError("confusable_superset_B: x must be irreducible");
    const std::size_t n = x.size();
    ConfusableReport rep{x, q, p, kLocality, Variant::BAnchored, {}, bound_B_anchored(q, n, p)};
    const Seq tail = slice(x, n - anchored_tail_length(n, p), n);
    SeqSet out;
    for (const Seq& s : anchored_prefixes(x, p, q))
        for (const Seq& y : anchored_candidates(s, tail, n, p, q)) out.insert(y);
    rep.members = sorted_members(out, x, n);
    return rep;
}

SeqSet oracle_roots(const Seq& x, int p, std::size_t dup_cap, int q, std::size_t work_limit) {
    // States are (string, substitutions used); duplications used = length
    // growth. Duplications after the last substitution cannot change the root,
    // so they are only expanded while substitutions remain.
    if (p <= 0) return {x};
    std::vector<SeqSet> seen(static_cast<std::size_t>(p) + 1);
    std::vector<std::pair<Seq, int>> frontier{{x, 0}};
    seen[0].insert(x);
    SeqSet roots{x};
    std::size_t work = 0;
    while (!frontier.empty()) {
        std::vector<std::pair<Seq, int>> next;
        for (auto& [s, k] : frontier) {
            if (k > 0) roots.insert(dedup_root(s));
            if (++work > work_limit) throw WorkLimitExceeded("oracle work limit exceeded");
            auto add = [&](Seq t, int kk) {
                if (kk == p)
                    roots.insert(dedup_root(t));  // terminal: nothing further changes the root
                else if (seen[static_cast<std::size_t>(kk)].insert(t).second)
                    next.emplace_back(std::move(t), kk);
            };
            if (s.size() < x.size() + dup_cap)
                for (std::size_t len = 1; len <= kMaxDupLen && len <= s.size(); ++len)
                    for (std::size_t i = 0; i + len <= s.size(); ++i) add(apply_duplication(s, {i, len}), k);
            for (std::size_t i = 0; i < s.size(); ++i)
                for (int a = 0; a < q; ++a)
                    if (a != s[i]) {
                        Seq t = s;
                        t[i] = static_cast<Symbol>(a);
                        add(std::move(t), k + 1);
                    }
        }
        frontier = std::move(next);
    }
    return roots;
}

bool brute_force_confusable_oracle(const Seq& x, const Seq& y, int p, std::size_t dup_cap, int q) {
    if (x.size() != y.size()) throw SeqError("oracle needs equal lengths");
    if (x == y) return true;
    const SeqSet rx = oracle_roots(x, p, dup_cap, q);
    for (const Seq& r : oracle_roots(y, p, dup_cap, q))
        if (rx.count(r)) return true;
    return false;
}

double Rational::to_double() const {
    using boost::multiprecision::cpp_bin_float_50;
    return static_cast<double>(cpp_bin_float_50(num) / cpp_bin_float_50(den));
}

Rational gv_lower_bound(int q, std::size_t n, int p, std::size_t L) {
    return {count_irr(q, n), bound_A(q, n, p, L)};
}

}  // namespace tdc
