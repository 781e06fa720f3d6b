#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "tdc/core.hpp"

namespace tdc {

using BigInt = boost::multiprecision::cpp_int;

// Irreducibility as a finite-state constraint. A state is the last min(len, 5)
// symbols written so far; appending a is legal iff no repeat ends at a. The
// length-5 states with their transitions form the De Bruijn subgraph G_q.
class DeBruijnIrrGraph {
public:
    static constexpr int kNone = -1;

    explicit DeBruijnIrrGraph(int q);

    int q() const { return q_; }
    int start() const { return 0; }  // the empty history
    int num_states() const { return static_cast<int>(words_.size()); }
    int next(int state, Symbol a) const { return trans_[static_cast<std::size_t>(state) * q_ + a]; }
    const Seq& word(int state) const { return words_[static_cast<std::size_t>(state)]; }
    // state reached after writing s from the start (kNone if s is reducible)
    int walk(const Seq& s, int from = 0) const;
    int find_state(const Seq& suffix) const;

    // vertices of G_q, i.e. Irr_q(5)
    std::vector<int> vertices() const;
    int out_degree(int state) const;

private:
    int q_;
    std::vector<Seq> words_;
    std::vector<int> trans_;
};

std::shared_ptr<const DeBruijnIrrGraph> graph_for(int q);

// Exact counts ‖Irr_q(n)‖ together with the completion table used by rank/unrank.
class IrrCounter {
public:
    explicit IrrCounter(int q);
    int q() const { return g_->q(); }
    BigInt count(std::size_t n);
    Seq unrank(std::size_t n, const BigInt& i);
    BigInt rank(const Seq& x);
    const DeBruijnIrrGraph& graph() const { return *g_; }

private:
    // ways_[k][s] = number of legal continuations of length k from state s
    const std::vector<BigInt>& ways(std::size_t k);
    std::shared_ptr<const DeBruijnIrrGraph> g_;
    std::vector<std::vector<BigInt>> ways_;
    std::mutex mu_;
};

IrrCounter& counter_for(int q);

BigInt count_irr(int q, std::size_t n);
Seq unrank_irr(int q, std::size_t n, const BigInt& i);
BigInt rank_irr(const Seq& x, int q);

double growth_rate(int q);

int buffer_length(int q);  // c_q
const Seq& default_sigma();  // 01020

// Buffer b of length c_q with x·b·σ irreducible, found by an exact-depth path
// search in G_q. Throws std::logic_error if none exists.
Seq find_buffer(const Seq& x, const Seq& sigma, int q);
// Same search starting from a graph state, for exhaustive verification.
std::optional<Seq> find_buffer_from_state(const DeBruijnIrrGraph& g, int state, const Seq& sigma, int c);

// Preferred symbol order for buffer search: 3, 4, 5 first, the rest ascending.
std::vector<Symbol> buffer_symbol_order(int q);

}  // namespace tdc
