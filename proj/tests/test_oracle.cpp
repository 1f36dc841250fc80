#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jackmap/oracle.hpp"
#include "jackmap/structure.hpp"

using namespace jackmap;

namespace {
Partition P(std::vector<int> v) { return Partition(std::move(v)); }
}

TEST_CASE("factorization counts") {
    CHECK(count_factorizations(P({1}), P({1}), P({1})) == 1);
    CHECK(count_factorizations(P({1, 1}), P({2}), P({2})) == 1);
    CHECK(count_factorizations(P({2}), P({2}), P({2})) == 0);
    CHECK_THROWS(count_factorizations(P({2}), P({1}), P({2})));
}

TEST_CASE("representative scaling equals full double enumeration") {
    for (int n = 1; n <= 4; ++n)
        for (auto& mu : partitions_of(n))
            for (auto& nu : partitions_of(n)) {
                std::map<Partition, mpz_class> full;
                for_each_permutation(n, [&](const Perm& sp) {
                    if (!(sp.cycle_type() == mu)) return;
                    for_each_permutation(n, [&](const Perm& sm) {
                        if (sm.cycle_type() == nu) ++full[sp.compose(sm).cycle_type()];
                    });
                });
                for (auto& pi : partitions_of(n))
                    CHECK(count_factorizations(pi, mu, nu) == full[pi]);
            }
}

TEST_CASE("class sum consistency") {
    for (int n = 1; n <= 5; ++n)
        for (auto& mu : partitions_of(n))
            for (auto& nu : partitions_of(n)) {
                mpz_class total = 0;
                for (auto& pi : partitions_of(n)) total += count_factorizations(pi, mu, nu);
                CHECK(total == conjugacy_class_size(mu) * conjugacy_class_size(nu));
            }
}

TEST_CASE("hypermap counts match c at alpha = 1") {
    StructureContext ctx;
    for (int n = 0; n <= 5; ++n)
        for (auto& pi : partitions_of(n))
            for (auto& mu : partitions_of(n))
                for (auto& nu : partitions_of(n))
                    CHECK(hypermap_count_alpha1(pi, mu, nu) ==
                          ctx.tau().c_coefficient(pi, mu, nu).eval_at_alpha(1));
}

TEST_CASE("marked counts, small frozen values") {
    CHECK(marked_hypermap_count(P({1}), P({1}), P({})) == 1);
    CHECK(marked_hypermap_count(P({1}), P({1}), P({1})) == 1);
    CHECK_THROWS(marked_hypermap_count(P({1}), P({2}), P({})));
    // equal sizes reduce to the unmarked count
    for (int n = 1; n <= 3; ++n)
        for (auto& pi : partitions_of(n))
            for (auto& mu : partitions_of(n))
                for (auto& nu : partitions_of(n))
                    CHECK(Rat(marked_hypermap_count(pi, mu, nu)) ==
                          hypermap_count_alpha1(pi, mu, nu));
}

TEST_CASE("marked counting formula equals explicit subset enumeration") {
    // explicit subsets over the common fixed points, n <= 4
    for (int n = 1; n <= 4; ++n)
        for (auto& pi : partitions_of(n))
            for (int a = 0; a <= n; ++a)
                for (auto& mu : partitions_of(n - a))
                    for (int b = 0; b <= n; ++b)
                        for (auto& nu : partitions_of(n - b)) {
                            Partition mubar = mu.pad_ones(a), nubar = nu.pad_ones(b);
                            mpz_class raw = 0;
                            for_each_permutation(n, [&](const Perm& sp) {
                                if (!(sp.cycle_type() == mubar)) return;
                                for_each_permutation(n, [&](const Perm& sm) {
                                    if (!(sm.cycle_type() == nubar)) return;
                                    if (!(sp.compose(sm).cycle_type() == pi)) return;
                                    auto fp = sp.fixed_points(), fm = sm.fixed_points();
                                    int np = static_cast<int>(fp.size());
                                    int nm = static_cast<int>(fm.size());
                                    for (int maskp = 0; maskp < (1 << np); ++maskp) {
                                        if (__builtin_popcount(unsigned(maskp)) != a) continue;
                                        for (int maskm = 0; maskm < (1 << nm); ++maskm) {
                                            if (__builtin_popcount(unsigned(maskm)) != b)
                                                continue;
                                            bool disjoint = true;
                                            for (int i = 0; i < np && disjoint; ++i)
                                                if (maskp >> i & 1)
                                                    for (int j = 0; j < nm; ++j)
                                                        if ((maskm >> j & 1) && fm[size_t(j)] == fp[size_t(i)])
                                                            disjoint = false;
                                            if (disjoint) ++raw;
                                        }
                                    }
                                });
                            });
                            mpz_class num = raw * z_factor(pi);
                            mpz_class den = factorial(n);
                            REQUIRE(num % den == 0);
                            CHECK(marked_hypermap_count(pi, mu, nu) == num / den);
                        }
}

TEST_CASE("marked counts equal g at alpha = 1") {
    StructureContext ctx;
    for (int n = 0; n <= 4; ++n)
        for (auto& pi : partitions_of(n))
            for (int a = 0; a <= n; ++a)
                for (auto& mu : partitions_of(a))
                    for (int b = std::max(0, n - a); b <= n; ++b)
                        for (auto& nu : partitions_of(b))
                            CHECK(Rat(marked_hypermap_count(pi, mu, nu)) ==
                                  ctx.g(pi, mu, nu).eval_at_alpha(1));
}

TEST_CASE("pre-hypermap integrality") {
    StructureContext ctx;
    for (auto& e : ctx.build_table(5, "c")) {
        Rat v = e.g.eval_at_alpha(1) * Rat(factorial(e.mu.size() + e.nu.size())) /
                Rat(z_factor(e.pi));
        v.canonicalize();
        CHECK(v.get_den() == 1);
        CHECK(v >= 0);
    }
}
