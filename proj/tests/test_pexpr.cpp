#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jackmap/mseries.hpp"
#include "jackmap/pexpr.hpp"

using namespace jackmap;

namespace {
Partition P(std::vector<int> v) { return Partition(std::move(v)); }
const ScalarQb A = ScalarQb::alpha();
}

TEST_CASE("hall inner product") {
    CHECK(hall_inner(PExpr::p(P({2})), PExpr::p(P({2}))) == ScalarQb(2) * A);
    CHECK(hall_inner(PExpr::p(P({1, 1})), PExpr::p(P({2}))).is_zero());
    CHECK(hall_inner(PExpr::p(P({1, 1})), PExpr::p(P({1, 1}))) == ScalarQb(2) * A * A);
    // normalized diagonal is exactly 1
    for (auto& la : partitions_up_to(8)) {
        PExpr f = PExpr::p(la);
        ScalarQb norm = hall_inner(f, f) / (ScalarQb(z_factor(la)) * A.pow(la.length()));
        CHECK(norm.is_one());
    }
    // symmetry and bilinearity on a small combination
    PExpr f = PExpr::p(P({2, 1})) + PExpr::p(P({3})) * ScalarQb::b();
    PExpr g = PExpr::p(P({3})) - PExpr::p(P({1, 1, 1})) * ScalarQb(2);
    CHECK(hall_inner(f, g) == hall_inner(g, f));
    CHECK(hall_inner(f + g, g) == hall_inner(f, g) + hall_inner(g, g));
}

TEST_CASE("p to m") {
    auto m = p_to_m(PExpr::p(P({2})), 2);
    CHECK(m.size() == 1);
    CHECK(m.at(P({2})) == ScalarQb(1));
    m = p_to_m(PExpr::p(P({1, 1})), 2);
    CHECK(m.at(P({2})) == ScalarQb(1));
    CHECK(m.at(P({1, 1})) == ScalarQb(2));
    // m_{1,1} = (p_{1,1} - p_2)/2
    PExpr f = m_to_p({{P({1, 1}), ScalarQb(1)}}, 2);
    CHECK(f == (PExpr::p(P({1, 1})) - PExpr::p(P({2}))) * (ScalarQb(1) / ScalarQb(2)));
    CHECK_THROWS(p_to_m(PExpr::p(P({2})) + PExpr::p(P({1})), 2));
}

TEST_CASE("p to m round trip through degree 7") {
    for (int n = 0; n <= 7; ++n)
        for (auto& mu : partitions_of(n)) {
            PExpr back = m_to_p(p_to_m(PExpr::p(mu), n), n);
            CHECK(back == PExpr::p(mu));
            auto again = p_to_m(monomial_in_p(mu), n);
            CHECK(again.size() == 1);
            CHECK(again.at(mu) == ScalarQb(1));
        }
}

TEST_CASE("derivative and multiplication") {
    CHECK(PExpr::p(P({1, 1})).derivative(1) == PExpr::p(P({1})) * ScalarQb(2));
    CHECK(PExpr::p(P({2, 2, 1})).derivative(2) == PExpr::p(P({2, 1})) * ScalarQb(2));
    CHECK(PExpr::p(P({2})).multiply_by_p(1) == PExpr::p(P({2, 1})));
    // Leibniz rule on random small expressions
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, 5), cf(-3, 3);
    auto all = partitions_up_to(4);
    for (int trial = 0; trial < 50; ++trial) {
        PExpr f, g;
        for (int j = 0; j < 3; ++j) {
            f.add_term(all[static_cast<size_t>(pick(rng)) % all.size()], ScalarQb(cf(rng)));
            g.add_term(all[static_cast<size_t>(pick(rng)) % all.size()], ScalarQb(cf(rng)));
        }
        for (int i = 1; i <= 3; ++i) {
            PExpr lhs = (f * g).derivative(i);
            PExpr rhs = f.derivative(i) * g + f * g.derivative(i);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("multiseries product, log, exp") {
    MSCaps caps{4, 4, 4};
    MultiSeries one = MultiSeries::one(3, caps);
    MultiSeries x(3, caps);
    x.add_term(MSKey{1, {P({1}), P({1}), P({1})}}, ScalarQb::b());
    CHECK(one * x == x);
    // log(1+x) = x - x^2/2 + ... for a single term
    MultiSeries lg = series_log(one + x);
    CHECK(lg.coeff(MSKey{1, {P({1}), P({1}), P({1})}}) == ScalarQb::b());
    CHECK(lg.coeff(MSKey{2, {P({1, 1}), P({1, 1}), P({1, 1})}}) ==
          -(ScalarQb::b() * ScalarQb::b()) / ScalarQb(2));
    // exp(log(A)) = A on a random-ish small series
    MultiSeries a = one + x;
    MultiSeries y(3, caps);
    y.add_term(MSKey{0, {P({2}), Partition(), P({1})}}, ScalarQb(1) / ScalarQb::alpha());
    y.add_term(MSKey{2, {Partition(), P({1}), P({1})}}, ScalarQb(3));
    a += y;
    CHECK(series_exp(series_log(a)) == a);
    CHECK_THROWS(series_log(x));
    CHECK_THROWS(series_exp(a));
    // cap mismatch is rejected
    MultiSeries other(3, MSCaps{3, 4, 4});
    CHECK_THROWS(void(one * other));
    // inserting beyond the caps is rejected
    MultiSeries z(3, MSCaps{1, 1, 1});
    CHECK_THROWS(z.add_term(MSKey{0, {P({2}), Partition(), Partition()}}, ScalarQb(1)));
}

TEST_CASE("multiseries log and exp are inverse on randomized series") {
    std::mt19937 rng(424242);
    MSCaps caps{3, 3, 3};
    auto all = partitions_up_to(2);
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    std::uniform_int_distribution<int> cf(-3, 3), tdeg(0, 2);
    for (int trial = 0; trial < 20; ++trial) {
        MultiSeries a(3, caps);
        for (int j = 0; j < 4; ++j) {
            MSKey k{tdeg(rng), {all[pick(rng)], all[pick(rng)], all[pick(rng)]}};
            if (!a.key_in_caps(k)) continue;
            a.add_term(k, ScalarQb(cf(rng)));
        }
        MSKey k0{0, {Partition(), Partition(), Partition()}};
        MultiSeries shifted = a;
        ScalarQb c0 = a.coeff(k0);
        shifted.add_term_truncating(k0, ScalarQb(1) - c0);  // force constant term 1
        CHECK(series_exp(series_log(shifted)) == shifted);
        MultiSeries zeroed = a;
        zeroed.add_term_truncating(k0, -c0);  // force constant term 0
        CHECK(series_log(series_exp(zeroed)) == zeroed);
    }
}

TEST_CASE("multiseries derivative and variable multiplication") {
    MSCaps caps{4, 4, 4};
    MultiSeries s(3, caps);
    s.add_term(MSKey{0, {Partition(), P({1, 1}), Partition()}}, ScalarQb(1));
    MultiSeries d = s.partial_derivative(1, 1);
    CHECK(d.coeff(MSKey{0, {Partition(), P({1}), Partition()}}) == ScalarQb(2));
    CHECK(s.multiply_by_variable(2, 2).coeff(MSKey{0, {Partition(), P({1, 1}), P({2})}}) ==
          ScalarQb(1));
}
