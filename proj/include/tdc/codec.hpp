#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdc/auxcode.hpp"
#include "tdc/confusable.hpp"

namespace tdc {

// Canonical injective labeling: x read as a base-q number.
BigInt label(const Seq& x, int q);
// U(x): row r holds bit r (most significant first) of every symbol.
std::vector<Bits> label_matrix(const Seq& x, int q);
std::uint64_t label_mod(const Seq& x, int q, std::uint64_t a);

class ModulusOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Smallest a >= 2 with fx ≢ fy (mod a) for every fy in others.
std::uint64_t find_modulus(const BigInt& fx, const std::vector<BigInt>& others);

enum class Mode { Anchored, Strict };
std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct SyndromeRecord {
    std::uint64_t a_prime = 2;
    std::uint64_t residue = 0;
    std::optional<Seq> tail;

    // 64-bit a′, 64-bit residue, then tail_slots symbols of ⌈log₂ q⌉ bits each.
    Bits to_bits(int q, std::size_t tail_slots) const;
    static SyndromeRecord from_bits(const Bits& bits, int q, std::size_t tail_slots, std::size_t tail_len);
    bool operator==(const SyndromeRecord&) const = default;
};

std::size_t bits_per_symbol(int q);
std::size_t data_capacity_bits(int q, std::size_t n);  // ⌊log₂ ‖Irr_q(n)‖⌋
Seq data_to_seq(const Bits& data, int q, std::size_t n);
Bits seq_to_data(const Seq& x, int q, std::size_t n);

enum class Failure { None, BadInput, AuxDecode, NoSurvivor, MultipleSurvivors };
std::string failure_name(Failure f);

struct DecodeReport {
    bool ok = false;
    Failure failure = Failure::None;
    std::string error;
    Bits data;
    Seq x;
    std::size_t candidates = 0;
    std::size_t survivors = 0;
    std::optional<SyndromeRecord> record;
    std::string to_json(int q) const;
};

// ---- Construction A: (x, r) with r over an error-free side channel

struct EncodedA {
    Seq x;
    SyndromeRecord r;
    std::size_t confusable_size = 0;
};

EncodedA encode_A(const Bits& data, int q, std::size_t n, int p);
DecodeReport decode_A(const Seq& y, const SyndromeRecord& r, int q, std::size_t n, int p);

// ---- Construction B: x·b·σ·r over a single noisy channel

struct BOptions {
    Mode mode = Mode::Anchored;
    std::size_t strict_L = 3;
    std::uint64_t work_limit = 1u << 20;
    std::optional<AuxParams> aux;  // used when it fits the payload; otherwise sized automatically
};

struct CodewordB {
    Seq x, b, sigma, r;
    SyndromeRecord record;
    AuxParams aux;
    std::size_t confusable_size = 0;
    Seq full() const;
};

std::size_t record_tail_slots(int q, std::size_t n, int p, Mode mode);
std::size_t record_bits(int q, std::size_t n, int p, Mode mode);
AuxParams codec_aux_params(int q, std::size_t n, int p, const BOptions& opt);
std::size_t codeword_B_length(int q, std::size_t n, int p, const BOptions& opt);

CodewordB encode_B(const Bits& data, int q, std::size_t n, int p, const BOptions& opt);
CodewordB encode_B_seq(const Seq& x, int p, int q, const BOptions& opt);
DecodeReport decode_B(const Seq& y, int q, std::size_t n, int p, const BOptions& opt);

// Candidate generators used by decode_B for a received prefix s.
SeqSet strict_candidates(const Seq& s, std::size_t n, int p, int q, std::size_t L);
bool strict_prefix_reachable(const Seq& y, const Seq& s, int p, int q, std::size_t L);

struct AuditReport {
    std::size_t trials = 0;
    std::size_t misses = 0;
    std::vector<std::uint64_t> miss_seeds;
    std::size_t max_candidates = 0;
    double mean_candidates = 0;
    std::string to_json() const;
};

// Runs channels (≤ max_dups duplications, p edits of rotating kinds) on
// x·b·σ followed by a short stretch of aux code and checks that the decoder's
// candidate generator always contains x.
AuditReport candidate_generator_completeness_audit(const Seq& x, int p, int q, std::size_t trials,
                                                   std::uint64_t seed, std::size_t max_dups = 10,
                                                   Mode mode = Mode::Anchored, std::size_t strict_L = 3);

}  // namespace tdc
