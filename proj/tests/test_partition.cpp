#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jackmap/oracle.hpp"
#include "jackmap/partition.hpp"

using namespace jackmap;

namespace {
Partition P(std::vector<int> v) { return Partition(std::move(v)); }
}

TEST_CASE("z factor") {
    CHECK(z_factor(P({})) == 1);
    CHECK(z_factor(P({1, 1})) == 2);
    CHECK(z_factor(P({3, 2, 2, 1})) == 24);
    CHECK(z_factor(P({2})) == 2);
}

TEST_CASE("dominance") {
    CHECK(dominance_leq(P({1, 1}), P({2})));
    CHECK_FALSE(dominance_leq(P({2}), P({1, 1})));
    CHECK_FALSE(dominance_leq(P({2}), P({3})));
}

TEST_CASE("dominance is a partial order on each grade") {
    for (int n = 0; n <= 8; ++n) {
        auto ps = partitions_of(n);
        for (auto& a : ps) {
            CHECK(dominance_leq(a, a));
            for (auto& b : ps) {
                if (dominance_leq(a, b) && dominance_leq(b, a)) CHECK(a == b);
                for (auto& c : ps)
                    if (dominance_leq(a, b) && dominance_leq(b, c))
                        CHECK(dominance_leq(a, c));
            }
        }
    }
}

TEST_CASE("enumeration order and counts") {
    CHECK(partitions_of(0) == std::vector<Partition>{P({})});
    CHECK(partitions_of(3) == std::vector<Partition>{P({3}), P({2, 1}), P({1, 1, 1})});
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(8).size() == 22);
    // canonical order is strictly increasing under the library comparison
    auto all = partitions_up_to(6);
    for (size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
}

TEST_CASE("strip, pad, union") {
    CHECK(P({3, 1, 1}).strip_ones() == P({3}));
    CHECK(P({2}).pad_ones(2) == P({2, 1, 1}));
    CHECK(P({2, 1}).union_with(P({2})) == P({2, 2, 1}));
    for (auto& pi : partitions_up_to(8))
        CHECK(pi.strip_ones().pad_ones(pi.mult(1)) == pi);
}

TEST_CASE("split multiplicity") {
    CHECK(split_multiplicity(P({1, 1}), P({1})) == 2);
    CHECK(split_multiplicity(P({2, 1}), P({2})) == 1);
    CHECK(split_multiplicity(P({2}), P({1})) == 0);
    // sum over sub-multisets is prod 2^{m_i}
    for (auto& la : partitions_up_to(7)) {
        mpz_class total = 0;
        for (auto& xi : sub_partitions(la)) total += split_multiplicity(la, xi);
        mpz_class expect = 1;
        for (auto& [p, m] : la.mult_map()) expect <<= m;
        CHECK(total == expect);
    }
}

TEST_CASE("class sizes against direct permutation enumeration") {
    for (int n = 1; n <= 6; ++n) {
        std::map<Partition, long> counts;
        for_each_permutation(n, [&](const Perm& s) { ++counts[s.cycle_type()]; });
        mpz_class total = 0;
        for (auto& la : partitions_of(n)) {
            CHECK(mpz_class(counts[la]) == conjugacy_class_size(la));
            total += counts[la];
        }
        CHECK(total == factorial(n));
    }
}

TEST_CASE("multiset helpers") {
    CHECK(P({3, 2, 2, 1}).minus(P({2, 1})) == P({3, 2}));
    CHECK(P({3, 2}).contains(P({2})));
    CHECK_FALSE(P({3, 2}).contains(P({1})));
    CHECK_THROWS(P({2}).remove_part(1));
    CHECK_THROWS(Partition({0}));
}
