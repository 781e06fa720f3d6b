#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdc/constrained.hpp"
#include "tdc/rs.hpp"

namespace tdc {

using Bits = std::vector<bool>;

class AuxParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class AuxDecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameters of the marker/block/Reed–Solomon code C_E.
struct AuxParams {
    int q = 4;
    Seq sigma = default_sigma();
    std::size_t m = 18;   // block length
    int p_tilde = 3;      // substring-edit budget
    int T = 9;            // colors per group
    int N_hat = 15;       // RS length (number of groups)
    int gamma = 4;        // field exponent
    std::size_t L = 17;

    int redundancy() const { return 4 * p_tilde; }
    std::size_t capacity_bits() const;
    std::size_t codeword_length() const;  // N̂·T·(m+5) − 5

    // Throws AuxParamError naming the first violated constraint.
    void validate() const;

    std::string to_config() const;
    static AuxParams parse_config(const std::string& text);
    static AuxParams load(const std::string& path);
};

// Shortest valid parameters (over the field exponent and N̂) that carry `bits`
// with T = 3·p_tilde and block length m.
AuxParams aux_params_for_payload(int q, int p_tilde, std::size_t bits, std::size_t m = 18);

// B_σ^m: blocks B of length m with σBσ irreducible and containing σ exactly
// twice, ordered lexicographically and handled through rank/unrank. Color j
// (0-based) is the contiguous rank range [⌊jM/T⌋, ⌊(j+1)M/T⌋).
class BlockSet {
public:
    BlockSet(int q, const Seq& sigma, std::size_t m, int colors);

    int q() const { return g_->q(); }
    std::size_t m() const { return m_; }
    const Seq& sigma() const { return sigma_; }
    int colors() const { return colors_; }
    std::uint64_t size() const;
    std::uint64_t color_begin(int j) const;
    std::uint64_t color_size(int j) const { return color_begin(j + 1) - color_begin(j); }
    std::uint64_t min_color_size() const;

    Seq unrank(std::uint64_t i) const;
    std::optional<std::uint64_t> rank(const Seq& b) const;  // nullopt if not a member
    bool contains(const Seq& b) const { return rank(b).has_value(); }
    std::optional<int> color_of(const Seq& b) const;

    Seq zeta(int j, std::uint32_t beta) const;  // β-th block of color j
    std::optional<std::uint32_t> zeta_inv(int j, const Seq& b, std::uint32_t field_size) const;

    // Full list; only sensible for small m.
    std::vector<Seq> enumerate() const;

private:
    std::shared_ptr<const DeBruijnIrrGraph> g_;
    Seq sigma_;
    std::size_t m_;
    int colors_;
    int sigma_state_ = DeBruijnIrrGraph::kNone;  // state right after the leading σ
    std::vector<std::vector<std::uint64_t>> ways_;  // ways_[k][s]: completions with k block symbols left
    std::vector<char> closes_;                      // state may be followed by the closing σ
};

std::shared_ptr<const BlockSet> block_set_for(int q, const Seq& sigma, std::size_t m, int colors);

Seq encode_CE(const Bits& msg, const AuxParams& params);

struct GroupScan {
    std::size_t blocks = 0;    // maximal non-σ blocks
    std::size_t m_blocks = 0;
    std::size_t groups = 0;     // T-groups found anywhere
    std::size_t collisions = 0; // slots matched by more than one T-group
    // per slot: index of the first m-block of the assigned group, or nullopt
    std::vector<std::optional<std::size_t>> slot_group;
    std::vector<std::optional<std::vector<Seq>>> slots;  // T blocks per filled slot
};

GroupScan scan_T_groups(const Seq& y, const AuxParams& params);

struct CEDecodeResult {
    bool ok = false;
    Bits bits;  // full capacity
    int erased_slots = 0;
    int symbol_erasures = 0;
    int corrected = 0;
    std::size_t collisions = 0;
    std::string error;
};

CEDecodeResult decode_CE_detailed(const Seq& y, const AuxParams& params);
Bits decode_CE(const Seq& y, const AuxParams& params);  // throws AuxDecodeError

// Reversed placement: reverse of a C_E codeword built with marker reverse(σ),
// so that σ·encode_E1(u) is irreducible and groups are read from the end.
Seq encode_E1(const Bits& msg, const AuxParams& params);
// Recovers u from the trailing |r| + 5 + p̃L symbols of a root w.
CEDecodeResult decode_E1_tail(const Seq& w, const AuxParams& params);

}  // namespace tdc
