#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace tdc {

// GF(2^gamma) with log/antilog tables, 2 <= gamma <= 16.
class GaloisField {
public:
    explicit GaloisField(int gamma);
    int gamma() const { return gamma_; }
    std::uint32_t size() const { return size_; }  // 2^gamma
    std::uint32_t poly() const { return poly_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow_alpha(long e) const;  // α^e
    std::uint32_t log(std::uint32_t a) const;

    // Primitive polynomial used for each gamma (bit i = coefficient of x^i).
    static std::uint32_t primitive_poly(int gamma);

private:
    int gamma_;
    std::uint32_t size_;
    std::uint32_t poly_;
    std::vector<std::uint32_t> exp_, log_;
};

struct RsDecodeResult {
    bool ok = false;
    std::vector<std::uint32_t> message;
    int corrected_errors = 0;
    int erasures = 0;
};

// Systematic (possibly shortened) Reed–Solomon code of length n and
// redundancy r = n - k over GF(2^gamma), roots α^1..α^r. Codeword layout:
// positions [0, r) parity, [r, n) message.
class ReedSolomon {
public:
    ReedSolomon(int gamma, int n, int k);
    int n() const { return n_; }
    int k() const { return k_; }
    const GaloisField& field() const { return gf_; }

    std::vector<std::uint32_t> encode(const std::vector<std::uint32_t>& msg) const;
    // erased[i] marks position i as an erasure; values at erased positions are ignored.
    RsDecodeResult decode(const std::vector<std::uint32_t>& received, const std::vector<bool>& erased) const;

private:
    GaloisField gf_;
    int n_, k_;
    std::vector<std::uint32_t> gen_;  // generator polynomial, low degree first
};

}  // namespace tdc
