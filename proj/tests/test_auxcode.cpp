#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "tdc/auxcode.hpp"
#include "test_util.hpp"

using namespace tdc;

namespace {

std::size_t count_sigma(const Seq& s, const Seq& sigma) {
    std::size_t c = 0;
    for (std::size_t i = 0; i + sigma.size() <= s.size(); ++i)
        c += std::equal(sigma.begin(), sigma.end(), s.begin() + static_cast<std::ptrdiff_t>(i));
    return c;
}

Bits random_bits(std::size_t n, std::mt19937_64& rng) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = rng() & 1;
    return b;
}

}  // namespace

TEST_CASE("block set matches an exhaustive filter at m = 8") {
    const Seq& sigma = default_sigma();
    std::vector<Seq> brute;
    for (const auto& b : testutil::all_strings(4, 8)) {
        const Seq w = concat(concat(sigma, b), sigma);
        if (is_irreducible(w) && count_sigma(w, sigma) == 2) brute.push_back(b);
    }
    const BlockSet bs(4, sigma, 8, 3);
    REQUIRE(bs.size() == brute.size());
    const auto listed = bs.enumerate();
    CHECK(listed == brute);
    for (std::size_t i = 0; i < brute.size(); ++i) {
        CHECK(bs.unrank(i) == brute[i]);
        CHECK(bs.rank(brute[i]) == i);
    }
    CHECK_FALSE(bs.contains(seq_of("01020333")));
    // colors are contiguous and near-equal
    CHECK(bs.color_begin(0) == 0);
    CHECK(bs.color_begin(3) == bs.size());
    for (int j = 0; j < 3; ++j) {
        CHECK(bs.color_of(bs.unrank(bs.color_begin(j))) == j);
        CHECK(bs.color_size(j) >= bs.size() / 3);
    }
}

TEST_CASE("block count grows past the lower bound") {
    // each position outside a fixed skeleton has at least q − 2 choices
    for (std::size_t m : {10u, 14u, 18u}) {
        const BlockSet bs(4, default_sigma(), m, 9);
        const double lower = std::pow(2.0, static_cast<double>(m) - buffer_length(4));
        CHECK(static_cast<double>(bs.size()) >= lower);
    }
}

TEST_CASE("rank round trip on the production block length") {
    const auto bs = block_set_for(4, default_sigma(), 18, 9);
    std::mt19937_64 rng(51);
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t i = rng() % bs->size();
        const Seq b = bs->unrank(i);
        CHECK(b.size() == 18);
        CHECK(bs->rank(b) == i);
        const int j = static_cast<int>(rng() % 9);
        const auto beta = static_cast<std::uint32_t>(rng() % 16);
        CHECK(bs->zeta_inv(j, bs->zeta(j, beta), 16) == beta);
        CHECK(bs->color_of(bs->zeta(j, beta)) == j);
    }
}

TEST_CASE("parameter validation and config files") {
    AuxParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.codeword_length() == 3100);
    CHECK(p.capacity_bits() == 108);
    AuxParams bad = p;
    bad.N_hat = 16;  // longer than the field allows
    CHECK_THROWS_AS(bad.validate(), AuxParamError);
    bad = p;
    bad.m = 17;
    CHECK_THROWS_AS(bad.validate(), AuxParamError);
    bad = p;
    bad.sigma = seq_of("01010");
    CHECK_THROWS_AS(bad.validate(), AuxParamError);

    p.gamma = 5;
    p.N_hat = 20;
    const AuxParams back = AuxParams::parse_config("# comment\n" + p.to_config());
    CHECK(back.gamma == 5);
    CHECK(back.N_hat == 20);
    CHECK(back.m == p.m);
    CHECK(back.sigma == p.sigma);
    CHECK_THROWS_AS(AuxParams::parse_config("gamma = x\n"), AuxParamError);
    CHECK_THROWS_AS(AuxParams::parse_config("colour = 3\n"), AuxParamError);
}

TEST_CASE("parameters sized for a payload") {
    const AuxParams a = aux_params_for_payload(4, 3, 230);
    CHECK(a.capacity_bits() >= 230);
    CHECK(a.T == 9);
    CHECK_NOTHROW(a.validate());
    // no other valid field size gives a shorter code at the same block length
    for (int g = 2; g <= 16; ++g) {
        AuxParams b = a;
        b.gamma = g;
        b.N_hat = a.redundancy() + static_cast<int>((230 + b.T * g - 1) / (b.T * g));
        try {
            b.validate();
        } catch (const AuxParamError&) {
            continue;
        }
        CHECK(b.codeword_length() >= a.codeword_length());
    }
    const AuxParams c = aux_params_for_payload(3, 3, 230);
    CHECK(c.m > 18);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("codeword structure") {
    const AuxParams p;
    std::mt19937_64 rng(52);
    const Seq c = encode_CE(random_bits(p.capacity_bits(), rng), p);
    CHECK(c.size() == p.codeword_length());
    CHECK(is_irreducible(c));
    CHECK(count_sigma(c, p.sigma) == static_cast<std::size_t>(p.N_hat * p.T - 1));
    const auto bs = block_set_for(p.q, p.sigma, p.m, p.T);
    for (std::size_t i = 0; i < static_cast<std::size_t>(p.N_hat * p.T); ++i) {
        const Seq b = slice(c, i * (p.m + 5), i * (p.m + 5) + p.m);
        CHECK(bs->color_of(b) == static_cast<int>(i % static_cast<std::size_t>(p.T)));
    }
    CHECK_THROWS(encode_CE(Bits(p.capacity_bits() + 1), p));
}

TEST_CASE("clean codewords decode with every slot filled") {
    const AuxParams p;
    std::mt19937_64 rng(53);
    for (int t = 0; t < 5; ++t) {
        const Bits u = random_bits(p.capacity_bits(), rng);
        const auto r = decode_CE_detailed(encode_CE(u, p), p);
        REQUIRE(r.ok);
        CHECK(r.bits == u);
        CHECK(r.erased_slots == 0);
        CHECK(r.corrected == 0);
    }
}

TEST_CASE("one edit damages at most two slots") {
    const AuxParams p;
    std::mt19937_64 rng(54);
    const Bits u = random_bits(p.capacity_bits(), rng);
    const Seq c = encode_CE(u, p);
    for (int t = 0; t < 40; ++t) {
        ChannelSpec spec;
        spec.max_dups = 20;
        spec.num_edits = 1;
        spec.edit_kinds = {EditKind::Substitution, EditKind::Insertion, EditKind::Deletion};
        spec.seed = static_cast<std::uint64_t>(t);
        const auto r = decode_CE_detailed(dedup_root(run_channel(c, spec, 4)), p);
        REQUIRE(r.ok);
        CHECK(r.bits == u);
        CHECK(r.erased_slots + r.corrected <= 2);
    }
}

TEST_CASE("p̃ edits stay within the correction radius") {
    const AuxParams p;
    std::mt19937_64 rng(55);
    for (int t = 0; t < 30; ++t) {
        const Bits u = random_bits(p.capacity_bits(), rng);
        ChannelSpec spec;
        spec.max_dups = 30;
        spec.num_edits = static_cast<std::size_t>(p.p_tilde);
        spec.edit_kinds = {EditKind::Substitution, EditKind::Insertion, EditKind::Deletion};
        spec.seed = 1000 + static_cast<std::uint64_t>(t);
        const auto r = decode_CE_detailed(dedup_root(run_channel(encode_CE(u, p), spec, 4)), p);
        REQUIRE(r.ok);
        CHECK(r.bits == u);
        CHECK(2 * r.corrected + r.erased_slots <= p.redundancy());
    }
}

TEST_CASE("garbage does not decode") {
    const AuxParams p;
    std::mt19937_64 rng(56);
    const auto r = decode_CE_detailed(testutil::random_irr(4, 3100, rng), p);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.error.empty());
    CHECK_THROWS_AS(decode_CE(testutil::random_irr(4, 500, rng), p), AuxDecodeError);
}

TEST_CASE("reversed placement after the marker") {
    const AuxParams p;
    std::mt19937_64 rng(57);
    for (int t = 0; t < 5; ++t) {
        const Bits u = random_bits(p.capacity_bits(), rng);
        const Seq e1 = encode_E1(u, p);
        CHECK(e1.size() == p.codeword_length());
        const Seq x = testutil::random_irr(4, 20, rng);
        const Seq head = concat(concat(x, find_buffer(x, p.sigma, 4)), p.sigma);
        const Seq w = concat(head, e1);
        CHECK(is_irreducible(w));
        const auto r = decode_E1_tail(w, p);
        REQUIRE(r.ok);
        CHECK(r.bits == u);
    }
}
