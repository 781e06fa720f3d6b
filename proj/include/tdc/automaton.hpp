#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tdc/core.hpp"

namespace tdc {

// Automaton for D*(01234): 20 named states, accepting state S9.
class Fa5 {
public:
    enum State : int { Start = 0, S1, S2, S3, S4, S5, S6, S7, S8, S9, S10, T2, T3, T4, T5, T6, T7, T8, T9, T10, kNumStates };
    static constexpr int kDead = -1;
    static constexpr int kAccept = S9;

    struct Edge {
        int from;
        Symbol label;
        int to;
    };

    Fa5();
    const std::vector<Edge>& edges() const { return edges_; }
    int next(int state, Symbol a) const;
    bool accepts(const Seq& w) const;
    static std::string state_name(int s);

private:
    std::vector<Edge> edges_;
    std::array<std::array<int, 5>, kNumStates> trans_{};
};

const Fa5& build_fa5();

using RootSet = std::set<Seq>;

// Roots of path labels Start→s (forward) and s→S9 (backward), per state.
const std::vector<RootSet>& forward_roots();
const std::vector<RootSet>& backward_roots();

RootSet enumerate_RU();
RootSet enumerate_RV();

Seq apply_h(const Seq& s);

struct DominanceMap {
    std::map<Symbol, Symbol> eta;
    Seq apply(const Seq& s) const;
    bool operator==(const DominanceMap&) const = default;
};

std::optional<DominanceMap> find_dominance(const Seq& s, const Seq& t);

RootSet window_roots_01234(int q_hat);

// Reserved boundary symbols (outside every supported alphabet).
constexpr Symbol kSentL1 = 250, kSentL2 = 251, kSentR1 = 252, kSentR2 = 253;
inline bool is_sentinel(Symbol c) { return c >= kSentL1 && c <= kSentR2; }

using Window = std::array<Symbol, 5>;

// Per-window replacement sets R(D^{s,1}(t)) for the alphabet Σ_q. Entries are
// computed lazily and memoized; the table is safe to share between threads.
class WindowRootTable {
public:
    static constexpr int kFormatVersion = 1;

    explicit WindowRootTable(int q);
    int q() const { return q_; }
    const std::vector<Seq>& entry(const Window& t) const;
    std::size_t cached_windows() const;

    // Fill the entries for every interior window and every padded boundary window.
    void build_all();
    void save(std::ostream& os) const;
    static WindowRootTable load(std::istream& is);

private:
    std::vector<Seq> compute(const Window& t) const;
    int q_;
    std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
    mutable std::map<Window, std::vector<Seq>> entries_;
};

WindowRootTable build_window_root_table(int q);
// Shared per-q table, built on first use.
const WindowRootTable& window_table_for(int q);

// The padded form L1 L2 x R1 R2 used for window extraction.
Seq pad_with_sentinels(const Seq& x);
Seq strip_sentinels(const Seq& x);

}  // namespace tdc
