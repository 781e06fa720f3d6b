#include "tdc/rs.hpp"

#include <stdexcept>

namespace tdc {

namespace {
using Poly = std::vector<std::uint32_t>;  // low degree first
}

std::uint32_t GaloisField::primitive_poly(int gamma) {
    static const std::uint32_t table[17] = {0,      0,      0x7,    0xB,    0x13,   0x25,   0x43,   0x89,  0x11D,
                                            0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};
    if (gamma < 2 || gamma > 16) throw std::invalid_argument("gamma must be in [2, 16]");
    return table[gamma];
}

GaloisField::GaloisField(int gamma)
    : gamma_(gamma), size_(1u << gamma), poly_(primitive_poly(gamma)), exp_(2 * (1u << gamma)), log_(1u << gamma) {
    std::uint32_t v = 1;
    for (std::uint32_t i = 0; i + 1 < size_; ++i) {
        if (i > 0 && v == 1) throw std::logic_error("polynomial is not primitive");
        exp_[i] = v;
        log_[v] = i;
        v <<= 1;
        if (v & size_) v ^= poly_;
    }
    if (v != 1) throw std::logic_error("polynomial is not primitive");
    for (std::uint32_t i = size_ - 1; i < exp_.size(); ++i) exp_[i] = exp_[i - (size_ - 1)];
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

std::uint32_t GaloisField::div(std::uint32_t a, std::uint32_t b) const {
    if (b == 0) throw std::domain_error("division by zero in GF(2^m)");
    if (a == 0) return 0;
    return exp_[log_[a] + (size_ - 1) - log_[b]];
}

std::uint32_t GaloisField::inv(std::uint32_t a) const { return div(1, a); }

std::uint32_t GaloisField::pow_alpha(long e) const {
    const long ord = static_cast<long>(size_ - 1);
    e %= ord;
    if (e < 0) e += ord;
    return exp_[static_cast<std::size_t>(e)];
}

std::uint32_t GaloisField::log(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
}

ReedSolomon::ReedSolomon(int gamma, int n, int k) : gf_(gamma), n_(n), k_(k) {
    if (n < 1 || k < 1 || k > n || static_cast<std::uint32_t>(n) > gf_.size() - 1)
        throw std::invalid_argument("invalid Reed-Solomon parameters");
    gen_ = {1};
    for (int i = 1; i <= n - k; ++i) {
        const std::uint32_t root = gf_.pow_alpha(i);
        Poly next(gen_.size() + 1, 0);
        for (std::size_t j = 0; j < gen_.size(); ++j) {
            next[j + 1] ^= gen_[j];
            next[j] ^= gf_.mul(gen_[j], root);
        }
        gen_ = std::move(next);
    }
}

std::vector<std::uint32_t> ReedSolomon::encode(const std::vector<std::uint32_t>& msg) const {
    if (static_cast<int>(msg.size()) != k_) throw std::invalid_argument("message length must equal k");
    const int r = n_ - k_;
    std::vector<std::uint32_t> cw(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < k_; ++i) {
        if (msg[static_cast<std::size_t>(i)] >= gf_.size()) throw std::invalid_argument("symbol outside field");
        cw[static_cast<std::size_t>(r + i)] = msg[static_cast<std::size_t>(i)];
    }
    // remainder of m(x)·x^r modulo g(x), long division from the top
    Poly rem(cw.begin(), cw.end());
    for (int i = n_ - 1; i >= r; --i) {
        const std::uint32_t coef = rem[static_cast<std::size_t>(i)];
        if (coef == 0) continue;
        for (int j = 0; j <= r; ++j)
            rem[static_cast<std::size_t>(i - r + j)] ^= gf_.mul(coef, gen_[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < r; ++i) cw[static_cast<std::size_t>(i)] = rem[static_cast<std::size_t>(i)];
    return cw;
}

RsDecodeResult ReedSolomon::decode(const std::vector<std::uint32_t>& received, const std::vector<bool>& erased) const {
    RsDecodeResult res;
    if (static_cast<int>(received.size()) != n_ || static_cast<int>(erased.size()) != n_)
        throw std::invalid_argument("received word has wrong length");
    const int r = n_ - k_;
    std::vector<std::uint32_t> word(received);
    std::vector<int> erasures;
    for (int i = 0; i < n_; ++i) {
        if (erased[static_cast<std::size_t>(i)]) {
            word[static_cast<std::size_t>(i)] = 0;
            erasures.push_back(i);
        } else if (word[static_cast<std::size_t>(i)] >= gf_.size()) {
            throw std::invalid_argument("symbol outside field");
        }
    }
    res.erasures = static_cast<int>(erasures.size());
    if (res.erasures > r) return res;

    auto eval = [&](const Poly& p, std::uint32_t x) {
        std::uint32_t acc = 0;
        for (std::size_t i = p.size(); i-- > 0;) acc = gf_.mul(acc, x) ^ p[i];
        return acc;
    };
    Poly S(static_cast<std::size_t>(r));
    bool all_zero = true;
    for (int j = 0; j < r; ++j) {
        S[static_cast<std::size_t>(j)] = eval(word, gf_.pow_alpha(j + 1));
        all_zero &= S[static_cast<std::size_t>(j)] == 0;
    }
    auto finish = [&](const std::vector<std::uint32_t>& cw) {
        res.message.assign(cw.begin() + r, cw.end());
        res.ok = true;
        return res;
    };
    if (all_zero) return finish(word);

    // Berlekamp–Massey seeded with the erasure locator.
    Poly lambda{1};
    for (int pos : erasures) {
        const std::uint32_t X = gf_.pow_alpha(pos);
        Poly next(lambda.size() + 1, 0);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            next[i] ^= lambda[i];
            next[i + 1] ^= gf_.mul(lambda[i], X);
        }
        lambda = std::move(next);
    }
    Poly B = lambda;
    int L = res.erasures;
    const int e = res.erasures;
    for (int k = e; k < r; ++k) {
        std::uint32_t delta = 0;
        for (std::size_t i = 0; i < lambda.size() && static_cast<int>(i) <= k; ++i)
            delta ^= gf_.mul(lambda[i], S[static_cast<std::size_t>(k - static_cast<int>(i))]);
        // B ← x·B
        B.insert(B.begin(), 0);
        if (delta == 0) continue;
        Poly T = lambda;
        if (T.size() < B.size()) T.resize(B.size(), 0);
        for (std::size_t i = 0; i < B.size(); ++i) T[i] ^= gf_.mul(delta, B[i]);
        if (2 * L <= k + e) {
            L = k + e + 1 - L;
            const std::uint32_t dinv = gf_.inv(delta);
            B = lambda;
            for (auto& c : B) c = gf_.mul(c, dinv);
        }
        lambda = std::move(T);
    }
    while (lambda.size() > 1 && lambda.back() == 0) lambda.pop_back();
    const int deg = static_cast<int>(lambda.size()) - 1;
    if (deg != L || 2 * (L - e) + e > r) return res;

    // Chien search restricted to the (shortened) positions.
    std::vector<int> locs;
    for (int i = 0; i < n_; ++i)
        if (eval(lambda, gf_.pow_alpha(-i)) == 0) locs.push_back(i);
    if (static_cast<int>(locs.size()) != deg) return res;

    // Forney: Ω = S·Λ mod x^r, e_k = Ω(X^{-1}) / Λ'(X^{-1}).
    Poly omega(static_cast<std::size_t>(r), 0);
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (std::size_t j = 0; j < S.size() && i + j < omega.size(); ++j) omega[i + j] ^= gf_.mul(lambda[i], S[j]);
    Poly dlambda;
    for (std::size_t i = 1; i < lambda.size(); ++i) dlambda.push_back(i % 2 ? lambda[i] : 0);
    for (int pos : locs) {
        const std::uint32_t xinv = gf_.pow_alpha(-pos);
        const std::uint32_t den = eval(dlambda, xinv);
        if (den == 0) return res;
        const std::uint32_t mag = gf_.div(eval(omega, xinv), den);
        word[static_cast<std::size_t>(pos)] ^= mag;
    }
    for (int j = 0; j < r; ++j)
        if (eval(word, gf_.pow_alpha(j + 1)) != 0) return res;
    res.corrected_errors = deg - e;
    return finish(word);
}

}  // namespace tdc
