#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "tdc/constrained.hpp"
#include "test_util.hpp"

using namespace tdc;

TEST_CASE("transfer-matrix counts equal an exhaustive filter") {
    for (int q : {3, 4}) {
        for (std::size_t n = 0; n <= (q == 3 ? 10u : 8u); ++n) {
            std::size_t brute = 0;
            for (const auto& s : testutil::all_strings(q, n)) brute += testutil::naive_irreducible(s);
            CHECK(count_irr(q, n) == brute);
        }
    }
}

TEST_CASE("unrank walks the irreducible strings in lexicographic order") {
    for (int q : {3, 4}) {
        const std::size_t n = 7;
        std::vector<Seq> irr;
        for (const auto& s : testutil::all_strings(q, n))
            if (testutil::naive_irreducible(s)) irr.push_back(s);
        REQUIRE(BigInt(irr.size()) == count_irr(q, n));
        for (std::size_t i = 0; i < irr.size(); ++i) {
            CHECK(unrank_irr(q, n, i) == irr[i]);
            CHECK(rank_irr(irr[i], q) == i);
        }
        CHECK_THROWS_AS(unrank_irr(q, n, BigInt(irr.size())), std::out_of_range);
        CHECK_THROWS_AS(rank_irr(seq_of("0110000"), q), std::invalid_argument);
    }
}

TEST_CASE("rank/unrank round trip at large n") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const Seq x = testutil::random_irr(4, 200, rng);
        CHECK(is_irreducible(x));
        CHECK(unrank_irr(4, 200, rank_irr(x, 4)) == x);
    }
}

TEST_CASE("growth rate of Irr_4") {
    CHECK(std::abs(growth_rate(4) - 2.6590) <= 5e-5);
    // the counts grow at the same rate
    const double r = growth_rate(4);
    const BigInt a = count_irr(4, 61), b = count_irr(4, 60);
    const double ratio = static_cast<double>(BigInt(a * 1000000 / b)) / 1e6;
    CHECK(std::abs(ratio - r) < 1e-3);
    // rate grows with q and stays below q
    CHECK(growth_rate(5) > r);
    CHECK(growth_rate(5) < 5.0);
}

TEST_CASE("graph states carry the last five symbols") {
    const auto g = graph_for(4);
    CHECK(g->vertices().size() == 264);  // ‖Irr_4(5)‖
    const int st = g->walk(seq_of("0120310"));
    REQUIRE(st != DeBruijnIrrGraph::kNone);
    CHECK(g->word(st) == seq_of("20310"));
    CHECK(g->walk(seq_of("012012")) == DeBruijnIrrGraph::kNone);
}

TEST_CASE("buffers have length c_q and close x with the marker") {
    CHECK(buffer_length(3) == 13);
    CHECK(buffer_length(4) == 7);
    CHECK(buffer_length(5) == 6);
    CHECK(buffer_length(6) == 5);
    CHECK(buffer_length(9) == 5);
    std::mt19937_64 rng(12);
    for (int q = 3; q <= 7; ++q)
        for (int t = 0; t < 40; ++t) {
            const Seq x = testutil::random_irr(q, 6 + rng() % 30, rng);
            const Seq b = find_buffer(x, default_sigma(), q);
            CHECK(b.size() == static_cast<std::size_t>(buffer_length(q)));
            CHECK(is_irreducible(concat(concat(x, b), default_sigma())));
        }
    CHECK_THROWS_AS(find_buffer(seq_of("0110"), default_sigma(), 4), std::invalid_argument);
}

TEST_CASE("buffer search prefers the symbols outside the marker") {
    const auto order = buffer_symbol_order(7);
    CHECK(order == std::vector<Symbol>{3, 4, 5, 0, 1, 2, 6});
    CHECK(buffer_symbol_order(3) == std::vector<Symbol>{0, 1, 2});
    const Seq b = find_buffer(seq_of("0120"), default_sigma(), 4);
    CHECK(b.front() == 3);
}
