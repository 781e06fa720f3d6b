#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "tdc/automaton.hpp"
#include "tdc/constrained.hpp"

namespace tdc {

using SeqSet = std::unordered_set<Seq, SeqHash>;

constexpr std::size_t kLocality = 17;  // L of the substring-edit reduction

enum class Variant { A, BStrict, BAnchored };
std::string variant_name(Variant v);

struct ConfusableReport {
    Seq x;
    int q = 4;
    int p = 0;
    std::size_t L = kLocality;
    Variant variant = Variant::A;
    std::vector<Seq> members;  // sorted
    BigInt bound;

    std::string to_json() const;
};

// One DSD(1) step on roots: R(D^{s,≤1}(x)), identity included.
// With only_len > 0, results of any other length are dropped early.
SeqSet step_substitute(const Seq& x, const WindowRootTable& table, std::size_t only_len = 0);
// All results of ≤ L-substring edits that stay irreducible, identity included.
SeqSet step_substring_edit(const Seq& x, std::size_t L, int q);

struct StepModel {
    const WindowRootTable* table = nullptr;
    std::size_t direct_edit_L = 0;  // 0 disables direct substring edits
    int q = 4;
    SeqSet step(const Seq& x) const;
    SeqSet closure(const SeqSet& start, int steps) const;
};

ConfusableReport confusable_superset_A(const Seq& x, int p, int q);

struct StrictOptions {
    std::size_t L = 3;
    std::uint64_t work_limit = 1u << 20;  // cap on q^{2pL}
};

class WorkLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Strict pipeline: p forward steps, suffix deletions ≤ 2pL, irreducible suffix
// extensions ≤ 2pL, p more steps, restricted to Irr_q(n). Forward steps use the
// window table together with direct ≤ L-substring edits.
ConfusableReport confusable_superset_B_strict(const Seq& x, int p, int q, const StrictOptions& opt);

// Candidates the anchored decoder would produce from a received prefix s.
SeqSet anchored_candidates(const Seq& s, const Seq& tail, std::size_t n, int p, int q);
// The received prefixes s (length n - pL) that can arise from x.
SeqSet anchored_prefixes(const Seq& x, int p, int q, std::size_t L = kLocality);
std::size_t anchored_tail_length(std::size_t n, int p, std::size_t L = kLocality);
ConfusableReport confusable_superset_B_anchored(const Seq& x, int p, int q);

// Bounded brute-force witness of confusability: roots of descendants with at
// most dup_cap duplications and p substitutions.
SeqSet oracle_roots(const Seq& x, int p, std::size_t dup_cap, int q, std::size_t work_limit = 5'000'000);
bool brute_force_confusable_oracle(const Seq& x, const Seq& y, int p, std::size_t dup_cap, int q);

BigInt bound_step(int q, std::size_t n);                           // 968qn + 1
BigInt bound_A(int q, std::size_t n, int p, std::size_t L = kLocality);  // (968q(n+pL)+1)^{2p}
BigInt bound_B_strict(int q, std::size_t n, int p, std::size_t L);  // q^{4pL}(n+pL)^{2p}
BigInt bound_B_anchored(int q, std::size_t n, int p, std::size_t L = kLocality);

struct Rational {
    BigInt num;
    BigInt den;
    double to_double() const;
};
Rational gv_lower_bound(int q, std::size_t n, int p, std::size_t L = kLocality);

}  // namespace tdc
