#include "tdc/auxcode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace tdc {

// ---------------------------------------------------------------- parameters

std::size_t AuxParams::capacity_bits() const {
    return static_cast<std::size_t>(N_hat - redundancy()) * static_cast<std::size_t>(T) * static_cast<std::size_t>(gamma);
}

std::size_t AuxParams::codeword_length() const {
    return static_cast<std::size_t>(N_hat) * static_cast<std::size_t>(T) * (m + sigma.size()) - sigma.size();
}

void AuxParams::validate() const {
    auto fail = [](const std::string& what) { throw AuxParamError("invalid aux parameters: " + what); };
    if (q < 2 || q > 64) fail("q out of range");
    if (sigma.size() != 5) fail("marker must have length 5");
    for (Symbol c : sigma)
        if (c >= q) fail("marker symbol outside the alphabet");
    if (!is_irreducible(sigma)) fail("marker is not irreducible");
    if (p_tilde < 0) fail("p_tilde < 0");
    if (m <= L) fail("need m > L");
    if (m <= sigma.size()) fail("need m > |sigma|");
    if (T < std::max(1, 3 * p_tilde)) fail("need T >= 3 p_tilde");
    if (N_hat < redundancy() + 1) fail("need N_hat >= 4 p_tilde + 1");
    if (gamma < 2 || gamma > 16) fail("gamma must be in [2, 16]");
    if (static_cast<std::uint64_t>(N_hat) > (1ull << gamma) - 1) fail("need N_hat <= 2^gamma - 1");
    if (static_cast<double>(m) * std::log2(static_cast<double>(q)) >= 63.0) fail("q^m does not fit in 64 bits");
    const auto bs = block_set_for(q, sigma, m, T);
    const auto need = static_cast<std::uint64_t>(24 * p_tilde * p_tilde + 15 * p_tilde);
    if (bs->size() < need) fail("need M >= 24 p^2 + 15 p");
    if ((1ull << gamma) > bs->min_color_size()) fail("need 2^gamma <= smallest color size");
}

std::string AuxParams::to_config() const {
    std::ostringstream os;
    os << "q = " << q << "\nsigma = " << to_string(sigma, q) << "\nm = " << m << "\np_tilde = " << p_tilde
       << "\nT = " << T << "\nN_hat = " << N_hat << "\ngamma = " << gamma << "\nL = " << L << "\n";
    return os.str();
}

AuxParams AuxParams::parse_config(const std::string& text) {
    AuxParams p;
    std::istringstream in(text);
    std::string line;
    std::string sigma_text;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw AuxParamError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "q") p.q = std::stoi(val);
            else if (key == "sigma") sigma_text = val;
            else if (key == "m") p.m = std::stoul(val);
            else if (key == "p_tilde") p.p_tilde = std::stoi(val);
            else if (key == "T") p.T = std::stoi(val);
            else if (key == "N_hat") p.N_hat = std::stoi(val);
            else if (key == "gamma") p.gamma = std::stoi(val);
            else if (key == "L") p.L = std::stoul(val);
            else throw AuxParamError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const AuxParamError*>(&e)) throw;
            throw AuxParamError("config line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    if (!sigma_text.empty()) p.sigma = parse_seq(sigma_text, p.q);
    return p;
}

AuxParams AuxParams::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AuxParamError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

AuxParams aux_params_for_payload(int q, int p_tilde, std::size_t bits, std::size_t m) {
    AuxParams best;
    std::size_t best_len = 0;
    AuxParams p;
    p.q = q;
    p.p_tilde = p_tilde;
    p.T = std::max(1, 3 * p_tilde);
    const auto need = static_cast<std::uint64_t>(24 * p_tilde * p_tilde + 15 * p_tilde);
    // small alphabets need longer blocks before the color classes are big enough
    for (std::size_t mm = m; static_cast<double>(mm) * std::log2(static_cast<double>(q)) < 63.0; ++mm) {
        if (best_len && static_cast<std::size_t>(4 * p_tilde + 1) * static_cast<std::size_t>(p.T) * (mm + 5) >= best_len)
            break;
        p.m = mm;
        const auto bs = block_set_for(q, p.sigma, mm, p.T);
        if (bs->size() < need) continue;
        for (int gamma = 2; gamma <= 16; ++gamma) {
            if ((1ull << gamma) > bs->min_color_size()) break;
            const std::size_t per_slot = static_cast<std::size_t>(p.T) * static_cast<std::size_t>(gamma);
            const std::size_t k = std::max<std::size_t>(1, (bits + per_slot - 1) / per_slot);
            p.gamma = gamma;
            p.N_hat = p.redundancy() + static_cast<int>(k);
            if (static_cast<std::uint64_t>(p.N_hat) > (1ull << gamma) - 1) continue;
            const std::size_t len = p.codeword_length();
            if (best_len == 0 || len < best_len) {
                best = p;
                best_len = len;
            }
        }
    }
    if (best_len == 0) throw AuxParamError("no aux parameters carry the requested payload");
    best.validate();
    return best;
}

// ---------------------------------------------------------------- blocks

BlockSet::BlockSet(int q, const Seq& sigma, std::size_t m, int colors)
    : g_(graph_for(q)), sigma_(sigma), m_(m), colors_(colors) {
    if (sigma.size() != 5) throw AuxParamError("marker must have length 5");
    if (colors < 1) throw AuxParamError("need at least one color");
    if (static_cast<double>(m) * std::log2(static_cast<double>(q)) >= 63.0)
        throw AuxParamError("q^m does not fit in 64 bits");
    sigma_state_ = g_->walk(sigma);
    if (sigma_state_ == DeBruijnIrrGraph::kNone) throw AuxParamError("marker is not irreducible");
    const auto ns = static_cast<std::size_t>(g_->num_states());
    closes_.assign(ns, 0);
    for (std::size_t s = 0; s < ns; ++s) {
        int st = static_cast<int>(s);
        bool ok = true;
        for (std::size_t i = 0; i < sigma.size() && ok; ++i) {
            st = g_->next(st, sigma[i]);
            ok = st != DeBruijnIrrGraph::kNone && (i + 1 == sigma.size() || st != sigma_state_);
        }
        closes_[s] = ok;
    }
    ways_.assign(m + 1, std::vector<std::uint64_t>(ns, 0));
    for (std::size_t s = 0; s < ns; ++s) ways_[0][s] = closes_[s];
    for (std::size_t k = 1; k <= m; ++k)
        for (std::size_t s = 0; s < ns; ++s) {
            std::uint64_t acc = 0;
            for (int a = 0; a < q; ++a) {
                const int t = g_->next(static_cast<int>(s), static_cast<Symbol>(a));
                if (t != DeBruijnIrrGraph::kNone && t != sigma_state_) acc += ways_[k - 1][static_cast<std::size_t>(t)];
            }
            ways_[k][s] = acc;
        }
}

std::uint64_t BlockSet::size() const { return ways_[m_][static_cast<std::size_t>(sigma_state_)]; }

std::uint64_t BlockSet::color_begin(int j) const {
    if (j < 0 || j > colors_) throw std::out_of_range("color index");
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(size()) * static_cast<unsigned>(j) /
                                      static_cast<unsigned>(colors_));
}

std::uint64_t BlockSet::min_color_size() const {
    std::uint64_t best = color_size(0);
    for (int j = 1; j < colors_; ++j) best = std::min(best, color_size(j));
    return best;
}

Seq BlockSet::unrank(std::uint64_t i) const {
    if (i >= size()) throw std::out_of_range("block rank out of range");
    Seq b;
    int st = sigma_state_;
    for (std::size_t pos = 0; pos < m_; ++pos) {
        const std::size_t left = m_ - pos - 1;
        bool placed = false;
        for (int a = 0; a < q() && !placed; ++a) {
            const int t = g_->next(st, static_cast<Symbol>(a));
            if (t == DeBruijnIrrGraph::kNone || t == sigma_state_) continue;
            const std::uint64_t w = ways_[left][static_cast<std::size_t>(t)];
            if (i < w) {
                b.push_back(static_cast<Symbol>(a));
                st = t;
                placed = true;
            } else {
                i -= w;
            }
        }
        if (!placed) throw std::logic_error("block unrank walked off the table");
    }
    return b;
}

std::optional<std::uint64_t> BlockSet::rank(const Seq& b) const {
    if (b.size() != m_) return std::nullopt;
    std::uint64_t r = 0;
    int st = sigma_state_;
    for (std::size_t pos = 0; pos < m_; ++pos) {
        if (b[pos] >= q()) return std::nullopt;
        const std::size_t left = m_ - pos - 1;
        for (int a = 0; a < b[pos]; ++a) {
            const int t = g_->next(st, static_cast<Symbol>(a));
            if (t != DeBruijnIrrGraph::kNone && t != sigma_state_) r += ways_[left][static_cast<std::size_t>(t)];
        }
        st = g_->next(st, b[pos]);
        if (st == DeBruijnIrrGraph::kNone || st == sigma_state_) return std::nullopt;
    }
    if (!closes_[static_cast<std::size_t>(st)]) return std::nullopt;
    return r;
}

std::optional<int> BlockSet::color_of(const Seq& b) const {
    const auto r = rank(b);
    if (!r) return std::nullopt;
    // color_begin is monotone; the estimate ⌊rT/M⌋ is off by at most one
    int j = static_cast<int>(static_cast<unsigned __int128>(*r) * static_cast<unsigned>(colors_) / size());
    while (j + 1 < colors_ && color_begin(j + 1) <= *r) ++j;
    while (j > 0 && color_begin(j) > *r) --j;
    return j;
}

Seq BlockSet::zeta(int j, std::uint32_t beta) const {
    if (beta >= color_size(j)) throw std::out_of_range("symbol exceeds color size");
    return unrank(color_begin(j) + beta);
}

std::optional<std::uint32_t> BlockSet::zeta_inv(int j, const Seq& b, std::uint32_t field_size) const {
    const auto r = rank(b);
    if (!r || *r < color_begin(j) || *r >= color_begin(j + 1)) return std::nullopt;
    const std::uint64_t beta = *r - color_begin(j);
    if (beta >= field_size) return std::nullopt;
    return static_cast<std::uint32_t>(beta);
}

std::vector<Seq> BlockSet::enumerate() const {
    std::vector<Seq> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t i = 0; i < size(); ++i) out.push_back(unrank(i));
    return out;
}

std::shared_ptr<const BlockSet> block_set_for(int q, const Seq& sigma, std::size_t m, int colors) {
    static std::mutex mu;
    static std::map<std::tuple<int, Seq, std::size_t, int>, std::shared_ptr<const BlockSet>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{q, sigma, m, colors}];
    if (!slot) slot = std::make_shared<const BlockSet>(q, sigma, m, colors);
    return slot;
}

// ---------------------------------------------------------------- C_E

namespace {

std::vector<std::uint32_t> bits_to_symbols(const Bits& bits, std::size_t count, int gamma) {
    std::vector<std::uint32_t> out(count, 0);
    for (std::size_t s = 0; s < count; ++s)
        for (int b = 0; b < gamma; ++b) {
            const std::size_t idx = s * static_cast<std::size_t>(gamma) + static_cast<std::size_t>(b);
            out[s] = (out[s] << 1) | (idx < bits.size() && bits[idx] ? 1u : 0u);
        }
    return out;
}

Bits symbols_to_bits(const std::vector<std::uint32_t>& syms, int gamma) {
    Bits out;
    for (auto v : syms)
        for (int b = gamma - 1; b >= 0; --b) out.push_back((v >> b) & 1u);
    return out;
}

AuxParams reversed_marker(const AuxParams& p) {
    AuxParams r = p;
    std::reverse(r.sigma.begin(), r.sigma.end());
    return r;
}

}  // namespace

Seq encode_CE(const Bits& msg, const AuxParams& params) {
    params.validate();
    if (msg.size() > params.capacity_bits()) throw std::length_error("message exceeds aux code capacity");
    const auto bs = block_set_for(params.q, params.sigma, params.m, params.T);
    const int k = params.N_hat - params.redundancy();
    const ReedSolomon rs(params.gamma, params.N_hat, k);
    const auto T = static_cast<std::size_t>(params.T);
    const auto syms = bits_to_symbols(msg, static_cast<std::size_t>(k) * T, params.gamma);
    std::vector<std::vector<std::uint32_t>> cw(T);
    for (std::size_t j = 0; j < T; ++j) {
        std::vector<std::uint32_t> part(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < part.size(); ++i) part[i] = syms[i * T + j];
        cw[j] = rs.encode(part);
    }
    Seq out;
    out.reserve(params.codeword_length());
    for (int slot = 0; slot < params.N_hat; ++slot)
        for (std::size_t j = 0; j < T; ++j) {
            if (!out.empty()) out.insert(out.end(), params.sigma.begin(), params.sigma.end());
            const Seq b = bs->zeta(static_cast<int>(j), cw[j][static_cast<std::size_t>(slot)]);
            out.insert(out.end(), b.begin(), b.end());
        }
    return out;
}

GroupScan scan_T_groups(const Seq& y, const AuxParams& params) {
    const auto bs = block_set_for(params.q, params.sigma, params.m, params.T);
    const Seq& sigma = params.sigma;
    const std::size_t l = sigma.size();
    GroupScan res;

    std::vector<char> covered(y.size(), 0);
    for (std::size_t i = 0; i + l <= y.size(); ++i)
        if (std::equal(sigma.begin(), sigma.end(), y.begin() + static_cast<std::ptrdiff_t>(i)))
            std::fill(covered.begin() + static_cast<std::ptrdiff_t>(i),
                      covered.begin() + static_cast<std::ptrdiff_t>(i + l), 1);

    std::vector<std::size_t> starts;  // m-blocks only
    for (std::size_t i = 0; i < y.size();) {
        if (covered[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < y.size() && !covered[j]) ++j;
        ++res.blocks;
        if (j - i == params.m) starts.push_back(i);
        i = j;
    }
    res.m_blocks = starts.size();

    const auto T = static_cast<std::size_t>(params.T);
    std::vector<int> color(starts.size(), -1);
    std::vector<Seq> block(starts.size());
    for (std::size_t k = 0; k < starts.size(); ++k) {
        block[k].assign(y.begin() + static_cast<std::ptrdiff_t>(starts[k]),
                        y.begin() + static_cast<std::ptrdiff_t>(starts[k] + params.m));
        if (auto c = bs->color_of(block[k])) color[k] = *c;
    }
    std::vector<std::size_t> groups;
    for (std::size_t k = 0; k + T <= starts.size(); ++k) {
        bool ok = true;
        for (std::size_t j = 0; j < T && ok; ++j) {
            ok = color[k + j] == static_cast<int>(j);
            if (ok && j > 0) ok = starts[k + j] == starts[k + j - 1] + params.m + l;
        }
        if (ok) groups.push_back(k);
    }
    res.groups = groups.size();

    res.slot_group.assign(static_cast<std::size_t>(params.N_hat), std::nullopt);
    res.slots.assign(static_cast<std::size_t>(params.N_hat), std::nullopt);
    const long pt = params.p_tilde;
    for (long slot = 0; slot < params.N_hat; ++slot) {
        const long lo = slot * static_cast<long>(T) - 2 * pt;
        // with no edits allowed the window degenerates; keep the exact position
        const long hi = slot * static_cast<long>(T) + std::max(pt, 1L) - 1;
        std::optional<std::size_t> pick;
        int hits = 0;
        for (std::size_t k : groups)
            if (static_cast<long>(k) >= lo && static_cast<long>(k) <= hi) {
                ++hits;
                pick = k;
            }
        if (hits > 1) {
            ++res.collisions;
            continue;
        }
        if (!pick) continue;
        res.slot_group[static_cast<std::size_t>(slot)] = pick;
        res.slots[static_cast<std::size_t>(slot)] =
            std::vector<Seq>(block.begin() + static_cast<std::ptrdiff_t>(*pick),
                             block.begin() + static_cast<std::ptrdiff_t>(*pick + T));
    }
    return res;
}

CEDecodeResult decode_CE_detailed(const Seq& y, const AuxParams& params) {
    CEDecodeResult res;
    try {
        params.validate();
    } catch (const AuxParamError& e) {
        res.error = e.what();
        return res;
    }
    const auto bs = block_set_for(params.q, params.sigma, params.m, params.T);
    const GroupScan scan = scan_T_groups(y, params);
    res.collisions = scan.collisions;
    const int k = params.N_hat - params.redundancy();
    const ReedSolomon rs(params.gamma, params.N_hat, k);
    const auto T = static_cast<std::size_t>(params.T);
    const auto N = static_cast<std::size_t>(params.N_hat);
    for (const auto& s : scan.slots) res.erased_slots += !s.has_value();

    std::vector<std::uint32_t> syms(static_cast<std::size_t>(k) * T, 0);
    for (std::size_t j = 0; j < T; ++j) {
        std::vector<std::uint32_t> recv(N, 0);
        std::vector<bool> erased(N, true);
        for (std::size_t slot = 0; slot < N; ++slot) {
            if (!scan.slots[slot]) continue;
            if (auto v = bs->zeta_inv(static_cast<int>(j), (*scan.slots[slot])[j], rs.field().size())) {
                recv[slot] = *v;
                erased[slot] = false;
            }
        }
        const auto dec = rs.decode(recv, erased);
        res.symbol_erasures += dec.erasures;
        if (!dec.ok) {
            res.error = "Reed-Solomon decoding failed for color " + std::to_string(j) + " (" +
                        std::to_string(res.erased_slots) + " erased slots)";
            return res;
        }
        res.corrected += dec.corrected_errors;
        for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) syms[i * T + j] = dec.message[i];
    }
    res.bits = symbols_to_bits(syms, params.gamma);
    res.ok = true;
    return res;
}

Bits decode_CE(const Seq& y, const AuxParams& params) {
    auto r = decode_CE_detailed(y, params);
    if (!r.ok) throw AuxDecodeError(r.error);
    return r.bits;
}

Seq encode_E1(const Bits& msg, const AuxParams& params) {
    Seq c = encode_CE(msg, reversed_marker(params));
    std::reverse(c.begin(), c.end());
    return c;
}

CEDecodeResult decode_E1_tail(const Seq& w, const AuxParams& params) {
    const std::size_t want = params.codeword_length() + params.sigma.size() +
                             static_cast<std::size_t>(params.p_tilde) * params.L;
    const std::size_t take = std::min(want, w.size());
    Seq tail(w.end() - static_cast<std::ptrdiff_t>(take), w.end());
    std::reverse(tail.begin(), tail.end());
    return decode_CE_detailed(tail, reversed_marker(params));
}

}  // namespace tdc
