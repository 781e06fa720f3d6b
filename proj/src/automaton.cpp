#include "tdc/automaton.hpp"

#include <deque>
#include <memory>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tdc/constrained.hpp"

namespace tdc {

namespace {

constexpr std::size_t kRootCap = 16;  // observed maximum is 8

}  // namespace

Fa5::Fa5() {
    // Transcribed edge by edge from the figure. Symmetric structure: each S-state
    // with a self loop has a "twin" T-state reached by the previous symbol.
    edges_ = {
        {Start, 0, S1}, {S1, 0, S1},   {S1, 1, S2},   {S2, 1, S2},   {S2, 2, S3},   {S2, 0, T2},
        {T2, 0, T2},    {T2, 1, S2},   {S3, 0, S4},   {S3, 2, S3},   {S3, 1, T3},   {S3, 3, S6},
        {T3, 1, T3},    {T3, 2, S3},   {S4, 1, S2},   {S4, 0, S4},   {S4, 2, T4},   {T4, 2, T4},
        {T4, 0, S4},    {S6, 1, S7},   {S6, 3, S6},   {S6, 2, T6},   {S6, 4, S9},   {S7, 2, S5},
        {S7, 1, S7},    {S7, 3, T7},   {S5, 3, S6},   {S5, 2, S5},   {S5, 1, T5},   {T5, 1, T5},
        {T5, 2, S5},    {T7, 3, T7},   {T7, 1, S7},   {T6, 2, T6},   {T6, 3, S6},   {S9, 2, S10},
        {S9, 4, S9},    {S9, 3, T9},   {S10, 3, S8},  {S10, 2, S10}, {S10, 4, T10}, {S8, 4, S9},
        {S8, 3, S8},    {S8, 2, T8},   {T8, 2, T8},   {T8, 3, S8},   {T10, 4, T10}, {T10, 2, S10},
        {T9, 3, T9},    {T9, 4, S9},
    };
    for (auto& row : trans_) row.fill(kDead);
    for (const auto& e : edges_) {
        if (trans_[static_cast<std::size_t>(e.from)][e.label] != kDead) throw std::logic_error("Fa5 not deterministic");
        trans_[static_cast<std::size_t>(e.from)][e.label] = e.to;
    }
}

int Fa5::next(int state, Symbol a) const {
    if (state < 0 || a >= 5) return kDead;
    return trans_[static_cast<std::size_t>(state)][a];
}

bool Fa5::accepts(const Seq& w) const {
    int s = Start;
    for (Symbol c : w) {
        s = next(s, c);
        if (s == kDead) return false;
    }
    return s == kAccept;
}

std::string Fa5::state_name(int s) {
    if (s == Start) return "Start";
    if (s >= S1 && s <= S10) return "S" + std::to_string(s - S1 + 1);
    if (s >= T2 && s <= T10) return "T" + std::to_string(s - T2 + 2);
    return "?";
}

const Fa5& build_fa5() {
    static const Fa5 fa;
    return fa;
}

const std::vector<RootSet>& forward_roots() {
    static const std::vector<RootSet> roots = [] {
        const Fa5& fa = build_fa5();
        std::vector<RootSet> out(Fa5::kNumStates);
        std::deque<std::pair<int, Seq>> work{{Fa5::Start, Seq{}}};
        out[Fa5::Start].insert(Seq{});
        while (!work.empty()) {
            auto [s, r] = work.front();
            work.pop_front();
            for (const auto& e : fa.edges()) {
                if (e.from != s) continue;
                Seq nr = r;
                root_push(nr, e.label);  // R(ua) = R(R(u)a)
                if (nr.size() > kRootCap) throw std::logic_error("root set does not close; Fa5 transcription bug");
                if (out[static_cast<std::size_t>(e.to)].insert(nr).second) work.emplace_back(e.to, nr);
            }
        }
        return out;
    }();
    return roots;
}

const std::vector<RootSet>& backward_roots() {
    static const std::vector<RootSet> roots = [] {
        const Fa5& fa = build_fa5();
        std::vector<RootSet> out(Fa5::kNumStates);
        std::deque<std::pair<int, Seq>> work{{Fa5::kAccept, Seq{}}};
        out[Fa5::kAccept].insert(Seq{});
        while (!work.empty()) {
            auto [t, r] = work.front();
            work.pop_front();
            for (const auto& e : fa.edges()) {
                if (e.to != t) continue;
                Seq nr = dedup_root(concat(Seq{e.label}, r));  // R(av) = R(a R(v))
                if (nr.size() > kRootCap) throw std::logic_error("root set does not close; Fa5 transcription bug");
                if (out[static_cast<std::size_t>(e.from)].insert(nr).second) work.emplace_back(e.from, nr);
            }
        }
        return out;
    }();
    return roots;
}

RootSet enumerate_RU() {
    RootSet all;
    for (const auto& s : forward_roots()) all.insert(s.begin(), s.end());
    return all;
}

Seq apply_h(const Seq& s) {
    Seq out(s.rbegin(), s.rend());
    for (auto& c : out) {
        if (c >= 5) throw SeqError("h is defined on the alphabet {0,...,4}");
        c = static_cast<Symbol>(4 - c);
    }
    return out;
}

RootSet enumerate_RV() {
    RootSet via_h;
    for (const auto& u : enumerate_RU()) via_h.insert(apply_h(u));
    RootSet direct;
    for (const auto& s : backward_roots()) direct.insert(s.begin(), s.end());
    if (via_h != direct) throw std::logic_error("R(V) mismatch between mirror image and backward fixpoint");
    return direct;
}

Seq DominanceMap::apply(const Seq& s) const {
    Seq out;
    out.reserve(s.size());
    for (Symbol c : s) out.push_back(eta.at(c));
    return out;
}

std::optional<DominanceMap> find_dominance(const Seq& s, const Seq& t) {
    if (s.size() != t.size()) throw SeqError("dominance needs equal lengths");
    DominanceMap m;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto [it, fresh] = m.eta.emplace(s[i], t[i]);
        if (!fresh && it->second != t[i]) return std::nullopt;
    }
    return m;
}

RootSet window_roots_01234(int q_hat) {
    if (q_hat < 5) throw std::invalid_argument("q_hat must be at least 5");
    const auto& F = forward_roots();
    const auto& B = backward_roots();
    RootSet out;
    for (const auto& e : build_fa5().edges()) {
        for (const auto& ru : F[static_cast<std::size_t>(e.from)])
            for (const auto& rv : B[static_cast<std::size_t>(e.to)])
                for (int a = 0; a < q_hat; ++a) {
                    if (a == e.label) continue;
                    Seq z = ru;
                    z.push_back(static_cast<Symbol>(a));
                    z.insert(z.end(), rv.begin(), rv.end());
                    out.insert(dedup_root(z));
                }
    }
    return out;
}

// ----- window table -----

WindowRootTable::WindowRootTable(int q) : q_(q) {
    if (q < 3 || q > 64) throw std::invalid_argument("window table needs 3 <= q <= 64");
}

std::vector<Seq> WindowRootTable::compute(const Window& t) const {
    // Leading/trailing sentinel runs of the window.
    std::size_t lead = 0, trail = 0;
    while (lead < 5 && (t[lead] == kSentL1 || t[lead] == kSentL2)) ++lead;
    while (trail < 5 && (t[4 - trail] == kSentR1 || t[4 - trail] == kSentR2)) ++trail;
    for (std::size_t i = lead; i + trail < 5; ++i)
        if (t[i] >= q_) throw std::invalid_argument("window symbol outside alphabet");

    // η: i ↦ t[i] maps descendants of 01234 onto descendants of t.
    auto eta = [&t](const Seq& s) {
        Seq out;
        out.reserve(s.size() + 1);
        for (Symbol c : s) out.push_back(t[c]);
        return out;
    };
    // Sentinels must stay exactly where they are (never duplicated).
    auto physical = [&](const Seq& z) {
        if (z.size() < lead + trail) return false;
        for (std::size_t i = 0; i < lead; ++i)
            if (z[i] != t[i]) return false;
        for (std::size_t i = 0; i < trail; ++i)
            if (z[z.size() - 1 - i] != t[4 - i]) return false;
        for (std::size_t i = lead; i + trail < z.size(); ++i)
            if (is_sentinel(z[i])) return false;
        return true;
    };

    const auto& F = forward_roots();
    const auto& B = backward_roots();
    std::vector<std::vector<Seq>> Fimg(Fa5::kNumStates), Bimg(Fa5::kNumStates);
    for (int s = 0; s < Fa5::kNumStates; ++s) {
        for (const auto& r : F[static_cast<std::size_t>(s)]) Fimg[static_cast<std::size_t>(s)].push_back(eta(r));
        for (const auto& r : B[static_cast<std::size_t>(s)]) Bimg[static_cast<std::size_t>(s)].push_back(eta(r));
    }
    std::set<Seq> out;
    Seq z;
    for (const auto& e : build_fa5().edges()) {
        const Symbol orig = t[e.label];
        if (is_sentinel(orig)) continue;
        for (const auto& ru : Fimg[static_cast<std::size_t>(e.from)])
            for (const auto& rv : Bimg[static_cast<std::size_t>(e.to)])
                for (int a = 0; a < q_; ++a) {
                    if (a == orig) continue;
                    z = ru;
                    z.push_back(static_cast<Symbol>(a));
                    z.insert(z.end(), rv.begin(), rv.end());
                    if (!physical(z)) continue;
                    out.insert(dedup_root(z));
                }
    }
    return {out.begin(), out.end()};
}

const std::vector<Seq>& WindowRootTable::entry(const Window& t) const {
    {
        std::lock_guard lock(*mu_);
        auto it = entries_.find(t);
        if (it != entries_.end()) return it->second;
    }
    auto value = compute(t);
    std::lock_guard lock(*mu_);
    return entries_.emplace(t, std::move(value)).first->second;
}

std::size_t WindowRootTable::cached_windows() const {
    std::lock_guard lock(*mu_);
    return entries_.size();
}

void WindowRootTable::build_all() {
    const Seq lefts[3] = {{}, {kSentL2}, {kSentL1, kSentL2}};
    const Seq rights[3] = {{}, {kSentR1}, {kSentR1, kSentR2}};
    for (const auto& l : lefts)
        for (const auto& r : rights) {
            const std::size_t core = 5 - l.size() - r.size();
            if (core < 1) continue;
            const BigInt cnt = count_irr(q_, core);
            for (BigInt i = 0; i < cnt; ++i) {
                Seq w = concat(concat(l, unrank_irr(q_, core, i)), r);
                Window t;
                std::copy(w.begin(), w.end(), t.begin());
                entry(t);
            }
        }
}

void WindowRootTable::save(std::ostream& os) const {
    std::lock_guard lock(*mu_);
    os << "dupcodes-window-table " << kFormatVersion << " q=" << q_ << "\n";
    auto put = [&os](const auto& s) {
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << int(s[i]);
    };
    for (const auto& [t, vals] : entries_) {
        put(t);
        os << "\t";
        for (std::size_t k = 0; k < vals.size(); ++k) {
            if (k) os << " ";
            put(vals[k]);
        }
        os << "\n";
    }
}

WindowRootTable WindowRootTable::load(std::istream& is) {
    std::string magic;
    int version = 0;
    std::string qfield;
    is >> magic >> version >> qfield;
    if (magic != "dupcodes-window-table" || version != kFormatVersion || qfield.rfind("q=", 0) != 0)
        throw std::runtime_error("window table cache: unsupported format");
    WindowRootTable table(std::stoi(qfield.substr(2)));
    std::string line;
    std::getline(is, line);
    auto parse = [](const std::string& s) {
        Seq out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(static_cast<Symbol>(std::stoi(tok)));
        return out;
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        Seq w = parse(line.substr(0, tab));
        if (w.size() != 5) throw std::runtime_error("window table cache: bad window");
        Window t;
        std::copy(w.begin(), w.end(), t.begin());
        std::vector<Seq> vals;
        std::stringstream ss(line.substr(tab + 1));
        std::string tok;
        while (ss >> tok) vals.push_back(parse(tok));
        table.entries_.emplace(t, std::move(vals));
    }
    return table;
}

WindowRootTable build_window_root_table(int q) {
    WindowRootTable t(q);
    t.build_all();
    return t;
}

const WindowRootTable& window_table_for(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<WindowRootTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[q];
    if (!slot) slot = std::make_unique<WindowRootTable>(q);
    return *slot;
}

Seq pad_with_sentinels(const Seq& x) {
    Seq p{kSentL1, kSentL2};
    p.insert(p.end(), x.begin(), x.end());
    p.push_back(kSentR1);
    p.push_back(kSentR2);
    return p;
}

Seq strip_sentinels(const Seq& x) {
    Seq out;
    for (Symbol c : x)
        if (!is_sentinel(c)) out.push_back(c);
    return out;
}

}  // namespace tdc
