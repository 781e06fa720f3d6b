#include "tdc/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tdc {

namespace {

bool is_repeat_at(const Seq& s, std::size_t pos, std::size_t k) {
    if (pos + 2 * k > s.size()) return false;
    for (std::size_t i = 0; i < k; ++i)
        if (s[pos + i] != s[pos + k + i]) return false;
    return true;
}

std::size_t lcp(const Seq& a, const Seq& b) {
    std::size_t n = std::min(a.size(), b.size()), i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

std::size_t lcs(const Seq& a, const Seq& b, std::size_t cap) {
    std::size_t i = 0;
    while (i < cap && a[a.size() - 1 - i] == b[b.size() - 1 - i]) ++i;
    return i;
}

// Exact test for a single substring edit: strip the longest common prefix and
// then the longest non-overlapping common suffix; what remains is optimal.
bool one_edit_suffices(const Seq& a, const Seq& b, std::size_t L) {
    std::size_t d = lcp(a, b);
    std::size_t s = lcs(a, b, std::min(a.size(), b.size()) - d);
    return std::max(a.size(), b.size()) - d - s <= L;
}

bool edits_rec(const Seq& a, const Seq& b, int p, std::size_t L) {
    if (a == b) return true;
    if (p <= 0) return false;
    if (one_edit_suffices(a, b, L)) return true;
    if (p == 1) return false;
    const std::size_t d = lcp(a, b);
    const std::size_t lo = d >= L - 1 ? d - (L - 1) : 0;
    Seq next;
    for (std::size_t i = lo; i <= d; ++i) {
        for (std::size_t lu = 0; lu <= L && i + lu <= a.size(); ++lu) {
            for (std::size_t lv = 0; lv <= L && i + lv <= b.size(); ++lv) {
                if (lu == 0 && lv == 0) continue;
                next.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
                next.insert(next.end(), b.begin() + static_cast<std::ptrdiff_t>(i),
                            b.begin() + static_cast<std::ptrdiff_t>(i + lv));
                next.insert(next.end(), a.begin() + static_cast<std::ptrdiff_t>(i + lu), a.end());
                if (edits_rec(next, b, p - 1, L)) return true;
            }
        }
    }
    return false;
}

}  // namespace

std::optional<Repeat> find_shortest_repeat(const Seq& s) {
    for (std::size_t k = 1; k <= kMaxDupLen; ++k)
        for (std::size_t i = 0; i + 2 * k <= s.size(); ++i)
            if (is_repeat_at(s, i, k)) return Repeat{i, k};
    return std::nullopt;
}

bool is_irreducible(const Seq& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t k = 1; k <= kMaxDupLen; ++k)
            if (is_repeat_at(s, i, k)) return false;
    return true;
}

bool ends_with_repeat(const Seq& s) {
    const std::size_t n = s.size();
    for (std::size_t k = 1; k <= kMaxDupLen && 2 * k <= n; ++k)
        if (is_repeat_at(s, n - 2 * k, k)) return true;
    return false;
}

void root_push(Seq& stack, Symbol a) {
    stack.push_back(a);
    const std::size_t n = stack.size();
    for (std::size_t k = 1; k <= kMaxDupLen && 2 * k <= n; ++k) {
        if (is_repeat_at(stack, n - 2 * k, k)) {
            // the remainder is a prefix of the previous (irreducible) stack
            stack.resize(n - k);
            return;
        }
    }
}

Seq dedup_root(const Seq& s) {
    // Left-to-right stack reduction. Every step removes a genuine repeat, so by
    // uniqueness of the root this equals repeated leftmost-shortest removal.
    Seq st;
    st.reserve(s.size());
    for (Symbol c : s) root_push(st, c);
    return st;
}

Seq dedup_root_random_order(Seq s, std::mt19937_64& rng) {
    std::vector<Repeat> reps;
    for (;;) {
        reps.clear();
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t k = 1; k <= kMaxDupLen; ++k)
                if (is_repeat_at(s, i, k)) reps.push_back({i, k});
        if (reps.empty()) return s;
        const Repeat r = reps[std::uniform_int_distribution<std::size_t>(0, reps.size() - 1)(rng)];
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(r.pos + r.len),
                s.begin() + static_cast<std::ptrdiff_t>(r.pos + 2 * r.len));
    }
}

Seq apply_duplication(const Seq& s, const DuplicationEvent& d) {
    if (d.len < 1 || d.len > kMaxDupLen || d.pos + d.len > s.size())
        throw SeqError("duplication out of bounds");
    Seq out;
    out.reserve(s.size() + d.len);
    out.insert(out.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(d.pos + d.len));
    out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(d.pos),
               s.begin() + static_cast<std::ptrdiff_t>(d.pos + d.len));
    out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(d.pos + d.len), s.end());
    return out;
}

Seq apply_edit(const Seq& s, const Edit& e, int q) {
    Seq out = s;
    switch (e.kind) {
    case EditKind::Substitution:
        if (e.pos >= s.size()) throw SeqError("substitution out of bounds");
        if (e.symbol >= q) throw SeqError("symbol outside alphabet");
        if (s[e.pos] == e.symbol) throw SeqError("identity substitution");
        out[e.pos] = e.symbol;
        break;
    case EditKind::Insertion:
        if (e.pos > s.size()) throw SeqError("insertion out of bounds");
        if (e.symbol >= q) throw SeqError("symbol outside alphabet");
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(e.pos), e.symbol);
        break;
    case EditKind::Deletion:
        if (e.pos >= s.size()) throw SeqError("deletion out of bounds");
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(e.pos));
        break;
    }
    return out;
}

Seq run_channel(const Seq& x, const ChannelSpec& spec, int q) {
    std::mt19937_64 rng(spec.seed);
    auto uni = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t ndups = uni(0, spec.max_dups);
    // true = edit, false = duplication; shuffled for a random interleaving
    std::vector<bool> order(ndups, false);
    order.insert(order.end(), spec.num_edits, true);
    std::shuffle(order.begin(), order.end(), rng);

    Seq s = x;
    for (bool is_edit : order) {
        if (!is_edit) {
            if (s.empty()) continue;
            const std::size_t len = uni(1, std::min<std::size_t>(kMaxDupLen, s.size()));
            s = apply_duplication(s, {uni(0, s.size() - len), len});
            continue;
        }
        EditKind kind = spec.edit_kinds.empty()
                            ? EditKind::Substitution
                            : spec.edit_kinds[uni(0, spec.edit_kinds.size() - 1)];
        if (s.empty() && kind != EditKind::Insertion) kind = EditKind::Insertion;
        Edit e{kind, 0, 0};
        if (kind == EditKind::Insertion) {
            e.pos = uni(0, s.size());
            e.symbol = static_cast<Symbol>(uni(0, static_cast<std::size_t>(q - 1)));
        } else {
            e.pos = uni(0, s.size() - 1);
            if (kind == EditKind::Substitution) {
                auto sym = static_cast<Symbol>(uni(0, static_cast<std::size_t>(q - 2)));
                if (sym >= s[e.pos]) ++sym;
                e.symbol = sym;
            }
        }
        s = apply_edit(s, e, q);
    }
    return s;
}

bool check_substring_edits(const Seq& a, const Seq& b, int p, std::size_t L) {
    if (L < 1) throw SeqError("L must be positive");
    return edits_rec(a, b, p, L);
}

std::string to_string(const Seq& s, int q) {
    std::string out;
    if (q <= 10) {
        for (Symbol c : s) out.push_back(static_cast<char>('0' + c));
        return out;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(s[i]);
    }
    return out;
}

Seq parse_seq(const std::string& text, int q) {
    Seq s;
    if (q <= 10 && text.find(',') == std::string::npos) {
        for (char c : text) {
            if (c == '\n' || c == '\r' || c == ' ') continue;
            if (c < '0' || c > '9' || c - '0' >= q) throw SeqError(std::string("bad symbol '") + c + "'");
            s.push_back(static_cast<Symbol>(c - '0'));
        }
        return s;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                  tok.end());
        if (tok.empty()) continue;
        if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw SeqError("bad token '" + tok + "'");
        const int v = std::stoi(tok);
        if (v >= q) throw SeqError("symbol " + tok + " outside alphabet");
        s.push_back(static_cast<Symbol>(v));
    }
    return s;
}

std::string to_dna(const Seq& s) {
    static const char kDna[] = "ACGT";
    std::string out;
    for (Symbol c : s) {
        if (c > 3) throw SeqError("DNA rendering requires q = 4");
        out.push_back(kDna[c]);
    }
    return out;
}

Seq from_dna(const std::string& text) {
    Seq s;
    for (char c : text) {
        switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'A': s.push_back(0); break;
        case 'C': s.push_back(1); break;
        case 'G': s.push_back(2); break;
        case 'T': s.push_back(3); break;
        case '\n': case '\r': case ' ': break;
        default: throw SeqError(std::string("bad DNA symbol '") + c + "'");
        }
    }
    return s;
}

}  // namespace tdc
