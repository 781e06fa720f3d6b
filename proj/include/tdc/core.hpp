#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdc {

using Symbol = std::uint8_t;
// Symbols are plain small integers; the alphabet size q travels separately.
using Seq = std::vector<Symbol>;

struct Repeat {
    std::size_t pos = 0;
    std::size_t len = 0;  // |v| of the repeat vv
    bool operator==(const Repeat&) const = default;
};

struct DuplicationEvent {
    std::size_t pos = 0;
    std::size_t len = 1;
};

enum class EditKind { Substitution, Insertion, Deletion };

struct Edit {
    EditKind kind = EditKind::Substitution;
    std::size_t pos = 0;
    Symbol symbol = 0;
};

struct ChannelSpec {
    std::size_t max_dups = 0;
    std::size_t num_edits = 0;
    std::vector<EditKind> edit_kinds{EditKind::Substitution};
    std::uint64_t seed = 0;
};

class SeqError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

constexpr std::size_t kMaxDupLen = 3;

std::optional<Repeat> find_shortest_repeat(const Seq& s);
bool is_irreducible(const Seq& s);

// True if s ends with a repeat vv, |v| <= 3. Used for incremental checks.
bool ends_with_repeat(const Seq& s);

// Appends a to an irreducible stack and deduplicates; keeps the stack irreducible.
void root_push(Seq& stack, Symbol a);

Seq dedup_root(const Seq& s);
// Removes repeats in a random order until none remain (used to test confluence).
Seq dedup_root_random_order(Seq s, std::mt19937_64& rng);

Seq apply_duplication(const Seq& s, const DuplicationEvent& d);
Seq apply_edit(const Seq& s, const Edit& e, int q);

Seq run_channel(const Seq& x, const ChannelSpec& spec, int q);

bool check_substring_edits(const Seq& a, const Seq& b, int p, std::size_t L);

// --- sequence text I/O ---
std::string to_string(const Seq& s, int q);
Seq parse_seq(const std::string& text, int q);
std::string to_dna(const Seq& s);
Seq from_dna(const std::string& text);

inline Seq seq_of(const std::string& digits) {
    Seq s;
    for (char c : digits)
        if (c >= '0' && c <= '9') s.push_back(static_cast<Symbol>(c - '0'));
    return s;
}

inline Seq concat(const Seq& a, const Seq& b) {
    Seq r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline Seq slice(const Seq& s, std::size_t from, std::size_t to) {
    return Seq(s.begin() + static_cast<std::ptrdiff_t>(from), s.begin() + static_cast<std::ptrdiff_t>(to));
}

struct SeqHash {
    std::size_t operator()(const Seq& s) const noexcept {
        std::uint64_t h = 1469598103934665603ull ^ s.size();
        for (Symbol c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

}  // namespace tdc
