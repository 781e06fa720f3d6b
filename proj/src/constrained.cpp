#include "tdc/constrained.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace tdc {

DeBruijnIrrGraph::DeBruijnIrrGraph(int q) : q_(q) {
    if (q < 2 || q > 64) throw std::invalid_argument("alphabet size out of range");
    std::unordered_map<Seq, int, SeqHash> index;
    words_.push_back({});
    index.emplace(Seq{}, 0);
    // BFS over histories; transitions discovered on the fly
    std::vector<std::array<int, 2>> pending;
    for (std::size_t s = 0; s < words_.size(); ++s) {
        for (int a = 0; a < q; ++a) {
            Seq w = words_[s];
            w.push_back(static_cast<Symbol>(a));
            int target = kNone;
            if (!ends_with_repeat(w)) {
                if (w.size() > 5) w.erase(w.begin());
                auto [it, fresh] = index.emplace(w, static_cast<int>(words_.size()));
                if (fresh) words_.push_back(w);
                target = it->second;
            }
            trans_.push_back(target);
        }
    }
}

int DeBruijnIrrGraph::walk(const Seq& s, int from) const {
    int st = from;
    for (Symbol c : s) {
        if (c >= q_) return kNone;
        st = next(st, c);
        if (st == kNone) return kNone;
    }
    return st;
}

int DeBruijnIrrGraph::find_state(const Seq& suffix) const {
    for (int i = 0; i < num_states(); ++i)
        if (words_[static_cast<std::size_t>(i)] == suffix) return i;
    return kNone;
}

std::vector<int> DeBruijnIrrGraph::vertices() const {
    std::vector<int> v;
    for (int i = 0; i < num_states(); ++i)
        if (words_[static_cast<std::size_t>(i)].size() == 5) v.push_back(i);
    return v;
}

int DeBruijnIrrGraph::out_degree(int state) const {
    int d = 0;
    for (int a = 0; a < q_; ++a) d += next(state, static_cast<Symbol>(a)) != kNone;
    return d;
}

std::shared_ptr<const DeBruijnIrrGraph> graph_for(int q) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const DeBruijnIrrGraph>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[q];
    if (!slot) slot = std::make_shared<const DeBruijnIrrGraph>(q);
    return slot;
}

IrrCounter::IrrCounter(int q) : g_(graph_for(q)) {
    ways_.emplace_back(static_cast<std::size_t>(g_->num_states()), BigInt(1));
}

const std::vector<BigInt>& IrrCounter::ways(std::size_t k) {
    std::lock_guard lock(mu_);
    while (ways_.size() <= k) {
        const auto& prev = ways_.back();
        std::vector<BigInt> cur(prev.size());
        for (int s = 0; s < g_->num_states(); ++s) {
            BigInt acc = 0;
            for (int a = 0; a < g_->q(); ++a) {
                int t = g_->next(s, static_cast<Symbol>(a));
                if (t != DeBruijnIrrGraph::kNone) acc += prev[static_cast<std::size_t>(t)];
            }
            cur[static_cast<std::size_t>(s)] = std::move(acc);
        }
        ways_.push_back(std::move(cur));
    }
    return ways_[k];
}

BigInt IrrCounter::count(std::size_t n) { return ways(n)[static_cast<std::size_t>(g_->start())]; }

Seq IrrCounter::unrank(std::size_t n, const BigInt& i) {
    if (i < 0 || i >= count(n)) throw std::out_of_range("rank out of range");
    for (std::size_t k = 0; k <= n; ++k) ways(k);  // materialize the table once
    BigInt rem = i;
    Seq out;
    int st = g_->start();
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t left = n - pos - 1;
        bool placed = false;
        for (int a = 0; a < g_->q(); ++a) {
            int t = g_->next(st, static_cast<Symbol>(a));
            if (t == DeBruijnIrrGraph::kNone) continue;
            const BigInt& w = ways_[left][static_cast<std::size_t>(t)];
            if (rem < w) {
                out.push_back(static_cast<Symbol>(a));
                st = t;
                placed = true;
                break;
            }
            rem -= w;
        }
        if (!placed) throw std::logic_error("unrank walked off the table");
    }
    return out;
}

BigInt IrrCounter::rank(const Seq& x) {
    for (std::size_t k = 0; k <= x.size(); ++k) ways(k);
    BigInt r = 0;
    int st = g_->start();
    for (std::size_t pos = 0; pos < x.size(); ++pos) {
        const std::size_t left = x.size() - pos - 1;
        for (int a = 0; a < x[pos]; ++a) {
            int t = g_->next(st, static_cast<Symbol>(a));
            if (t != DeBruijnIrrGraph::kNone) r += ways_[left][static_cast<std::size_t>(t)];
        }
        st = x[pos] < g_->q() ? g_->next(st, x[pos]) : DeBruijnIrrGraph::kNone;
        if (st == DeBruijnIrrGraph::kNone) throw std::invalid_argument("rank of a reducible sequence");
    }
    return r;
}

IrrCounter& counter_for(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<IrrCounter>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[q];
    if (!slot) slot = std::make_unique<IrrCounter>(q);
    return *slot;
}

BigInt count_irr(int q, std::size_t n) { return counter_for(q).count(n); }
Seq unrank_irr(int q, std::size_t n, const BigInt& i) { return counter_for(q).unrank(n, i); }
BigInt rank_irr(const Seq& x, int q) { return counter_for(q).rank(x); }

double growth_rate(int q) {
    if (q < 4) throw std::invalid_argument("growth_rate needs q >= 4");
    const double Q = q;
    auto f = [Q](double x) { return ((x - (Q - 2)) * x - (Q - 3)) * x - (Q - 2); };
    // f(q-2) < 0 < f(q) and f is increasing beyond its critical points there
    double lo = Q - 2, hi = Q;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

int buffer_length(int q) {
    switch (q) {
    case 3: return 13;
    case 4: return 7;
    case 5: return 6;
    default: return 5;
    }
}

const Seq& default_sigma() {
    static const Seq s{0, 1, 0, 2, 0};
    return s;
}

std::vector<Symbol> buffer_symbol_order(int q) {
    std::vector<Symbol> order;
    for (int a = 3; a <= 5 && a < q; ++a) order.push_back(static_cast<Symbol>(a));
    for (int a = 0; a < q; ++a)
        if (a < 3 || a > 5) order.push_back(static_cast<Symbol>(a));
    return order;
}

std::optional<Seq> find_buffer_from_state(const DeBruijnIrrGraph& g, int state, const Seq& sigma, int c) {
    // good[k] = states from which k free symbols followed by sigma stay legal
    const auto ns = static_cast<std::size_t>(g.num_states());
    std::vector<std::vector<char>> good(static_cast<std::size_t>(c) + 1, std::vector<char>(ns, 0));
    for (std::size_t s = 0; s < ns; ++s) good[0][s] = g.walk(sigma, static_cast<int>(s)) != DeBruijnIrrGraph::kNone;
    for (int k = 1; k <= c; ++k)
        for (std::size_t s = 0; s < ns; ++s)
            for (int a = 0; a < g.q() && !good[k][s]; ++a) {
                int t = g.next(static_cast<int>(s), static_cast<Symbol>(a));
                if (t != DeBruijnIrrGraph::kNone && good[k - 1][static_cast<std::size_t>(t)]) good[k][s] = 1;
            }
    if (!good[static_cast<std::size_t>(c)][static_cast<std::size_t>(state)]) return std::nullopt;
    const auto order = buffer_symbol_order(g.q());
    Seq b;
    int st = state;
    for (int k = c; k > 0; --k) {
        for (Symbol a : order) {
            int t = g.next(st, a);
            if (t != DeBruijnIrrGraph::kNone && good[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(t)]) {
                b.push_back(a);
                st = t;
                break;
            }
        }
    }
    return b;
}

Seq find_buffer(const Seq& x, const Seq& sigma, int q) {
    const auto g = graph_for(q);
    const int st = g->walk(x);
    if (st == DeBruijnIrrGraph::kNone) throw std::invalid_argument("find_buffer: x is not irreducible");
    auto b = find_buffer_from_state(*g, st, sigma, buffer_length(q));
    if (!b) throw std::logic_error("no buffer of the expected length exists");
    return *b;
}

}  // namespace tdc
