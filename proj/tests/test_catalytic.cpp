#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jackmap/catalytic.hpp"

using namespace jackmap;

namespace {
Partition P(std::vector<int> v) { return Partition(std::move(v)); }
const ScalarQb A = ScalarQb::alpha();
const ScalarQb B = ScalarQb::b();

// the displayed B_2 operator, implemented directly as a test oracle
UGradedPExpr b2_display(const PExpr& f) {
    UGradedPExpr out;
    out[2] = f.multiply_by_p(2) * A.inv();
    PExpr u1 = f * ((B * PExpr::p(P({2})) + PExpr::p(P({1, 1}))) * A.inv());
    PExpr u0;
    int deg = f.max_degree();
    for (int i = 1; i <= deg; ++i) {
        PExpr di = f.derivative(i) * ScalarQb(i);
        if (di.is_zero()) continue;
        u1 += di.multiply_by_p(i + 2) * ScalarQb(2);
        u0 += di.multiply_by_p(i + 2) * (ScalarQb(i + 1) * B);
        for (int j = 1; j <= i + 1; ++j) u0 += di.multiply_by_p(j).multiply_by_p(i + 2 - j);
        for (int j = 1; j <= deg; ++j) {
            PExpr dij = di.derivative(j) * ScalarQb(j);
            if (!dij.is_zero()) u0 += dij.multiply_by_p(i + j + 2) * A;
        }
    }
    if (!u0.is_zero()) out[0] = u0;
    if (!u1.is_zero()) out[1] = u1;
    return out;
}

// explicit 2^n word expansion, the engine's independent oracle at small n
UGradedPExpr b_n_words(int n, const PExpr& f) {
    UGradedPExpr out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        CatalyticExpr state;
        for (auto& [la, c] : f.terms()) state.add_cat(0, la, c / A);
        int ys = 0;
        for (int step = 0; step < n; ++step) {
            if (mask >> step & 1) {
                state = apply_y_plus(state);
                ++ys;
            } else {
                state = apply_gamma(state);
            }
        }
        PExpr v = apply_theta(state);
        if (!v.is_zero()) out[ys] += v;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}
}  // namespace

TEST_CASE("catalytic letters at the boundary") {
    CatalyticExpr y0 = CatalyticExpr::cat_monomial(0, P({}), 1);
    CHECK(apply_y_plus(y0) == CatalyticExpr::cat_monomial(1, P({}), 1));
    CHECK(apply_gamma(y0).is_zero());
    CHECK(apply_theta(CatalyticExpr::cat_monomial(2, P({1}), 1)) == PExpr::p(P({2, 1})));
    CHECK(apply_theta(y0).is_zero());
    CHECK_THROWS(apply_y_plus(CatalyticExpr::from_plain(PExpr::one())));
    CHECK_THROWS(apply_gamma(CatalyticExpr::from_plain(PExpr::one())));
}

TEST_CASE("displayed B_1 and B_2") {
    OpCache ops;
    UGradedPExpr b1 = ops.b_n_apply(1, PExpr::one());
    CHECK(b1.size() == 1);
    CHECK(b1.at(1) == PExpr::p(P({1})) * A.inv());

    UGradedPExpr b2 = ops.b_n_apply(2, PExpr::one());
    CHECK(b2.at(2) == PExpr::p(P({2})) * A.inv());
    CHECK(b2.at(1) == (PExpr::p(P({2})) * B + PExpr::p(P({1, 1}))) * A.inv());
    CHECK(b2.count(0) == 0);

    UGradedPExpr b1p = ops.b_n_apply(1, PExpr::p(P({1})));
    CHECK(b1p.at(1) == PExpr::p(P({1, 1})) * A.inv());
    CHECK(b1p.at(0) == PExpr::p(P({2})));

    // engine equals the displayed B_2 on every p_la with |la| <= 4
    for (auto& la : partitions_up_to(4))
        CHECK(ops.b_n_apply(2, PExpr::p(la)) == b2_display(PExpr::p(la)));
}

TEST_CASE("word expansion oracle and word counts") {
    OpCache ops;
    for (int n = 1; n <= 4; ++n)
        for (auto& la : partitions_up_to(3))
            CHECK(ops.b_n_apply(n, PExpr::p(la)) == b_n_words(n, PExpr::p(la)));
    // words with exactly l raising letters number C(n, l)
    for (int n = 1; n <= 5; ++n) {
        std::map<int, long> counts;
        for (int mask = 0; mask < (1 << n); ++mask)
            ++counts[__builtin_popcount(static_cast<unsigned>(mask))];
        for (int l = 0; l <= n; ++l) CHECK(mpz_class(counts[l]) == binomial(n, l));
    }
}

TEST_CASE("grading of B_n and its dual") {
    OpCache ops;
    for (int n = 1; n <= 3; ++n)
        for (auto& la : partitions_up_to(3)) {
            for (auto& [u, g] : ops.b_n_apply(n, PExpr::p(la))) {
                CHECK(u <= n);
                CHECK(g.homogeneous_degree() == la.size() + n);
            }
            for (auto& [u, g] : ops.b_n_dual_apply(n, PExpr::p(la))) {
                CHECK(u <= n);
                CHECK(g.homogeneous_degree() == la.size() - n);
            }
            if (la.size() < n) CHECK(ops.b_n_dual_apply(n, PExpr::p(la)).empty());
        }
}

TEST_CASE("dual displays") {
    OpCache ops;
    UGradedPExpr d = ops.b_n_dual_apply(1, PExpr::p(P({1})));
    CHECK(d.size() == 1);
    CHECK(d.at(1) == PExpr::one());
}

TEST_CASE("adjointness per u-layer") {
    OpCache ops;
    for (int n = 1; n <= 3; ++n)
        for (auto& g : partitions_up_to(5)) {
            if (g.size() < n) continue;
            for (auto& f : partitions_of(g.size() - n)) {
                UGradedPExpr bf = ops.b_n_apply(n, PExpr::p(f));
                UGradedPExpr bg = ops.b_n_dual_apply(n, PExpr::p(g));
                for (int u = 0; u <= n; ++u) {
                    ScalarQb lhs = bf.count(u) ? hall_inner(bf.at(u), PExpr::p(g)) : ScalarQb(0);
                    ScalarQb rhs = bg.count(u) ? hall_inner(PExpr::p(f), bg.at(u)) : ScalarQb(0);
                    CHECK(lhs == rhs);
                }
            }
        }
}

TEST_CASE("C_l slices") {
    OpCache ops;
    // C_1(t) . 1 through t^2
    TGradedPExpr c1 = ops.c_ell_apply(1, PExpr::one(), 2);
    CHECK(c1.at(1) == PExpr::p(P({1})) * A.inv());
    CHECK(c1.at(2) == (PExpr::p(P({2})) * B + PExpr::p(P({1, 1}))) * (A * ScalarQb(2)).inv());
    // C_0(t) . 1 = 0 (the first letter must raise)
    CHECK(ops.c_ell_apply(0, PExpr::one(), 5).empty());
    // [t^l] C_l . f = p_l f / (alpha l)
    for (int l = 1; l <= 4; ++l)
        for (auto& la : partitions_up_to(3)) {
            TGradedPExpr cl = ops.c_ell_apply(l, PExpr::p(la), l);
            CHECK(cl.at(l) == PExpr::p(la.add_part(l)) * (A * ScalarQb(l)).inv());
        }
}

TEST_CASE("closed forms C_{l,k}") {
    OpCache ops;
    // frozen spot values
    CHECK(c_ell_k_closed(1, 0, PExpr::p(P({3}))) == PExpr::p(P({3, 1})) * A.inv());
    CHECK(c_ell_k_closed(1, 1, PExpr::one()) ==
          (PExpr::p(P({2})) * B + PExpr::p(P({1, 1}))) * A.inv());
    CHECK_THROWS(c_ell_k_closed(1, 3, PExpr::one()));
    // engine agreement, unit-test sizes (the acceptance suite runs l <= 4, |la| <= 4)
    for (int l = 1; l <= 3; ++l)
        for (int k = 0; k <= 2; ++k)
            for (auto& la : partitions_up_to(3))
                CHECK(ops.c_ell_k_engine(l, k, PExpr::p(la)) ==
                      c_ell_k_closed(l, k, PExpr::p(la)));
}

TEST_CASE("commutation relations") {
    OpCache ops;
    CHECK(commutator_check(ops, 1, 2, 3, 6).pass);
    CHECK(commutator_check(ops, 0, 1, 3, 5).pass);
    CHECK(commutator_check(ops, 2, 3, 2, 6).pass);
}
