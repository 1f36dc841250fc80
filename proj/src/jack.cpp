#include "jackmap/jack.hpp"

#include <algorithm>

namespace jackmap {

void JackCache::extend_to(int n) {
    if (n > degree_cap_)
        throw std::invalid_argument("JackCache: degree " + std::to_string(n) +
                                    " exceeds the configured cap " +
                                    std::to_string(degree_cap_));
    for (int d = max_degree_ + 1; d <= n; ++d) build_degree(d);
    max_degree_ = std::max(max_degree_, n);
}

void JackCache::build_degree(int n) {
    std::vector<Partition> parts = partitions_of(n);
    // ascending lexicographic = a linear extension of dominance from below
    std::reverse(parts.begin(), parts.end());
    std::vector<Partition> built;
    for (const Partition& la : parts) {
        PExpr f = monomial_in_p(la);
        for (const Partition& mu : built) {
            ScalarQb proj = hall_inner(f, polys_[mu]) / norms_[mu];
            if (!proj.is_zero()) f -= polys_[mu] * proj;
        }
        ScalarQb lead = f.coeff(Partition(std::vector<int>(static_cast<size_t>(n), 1)));
        if (lead.is_zero()) throw std::logic_error("Jack construction: [p_{1^n}] vanished");
        f = f * lead.inv();
        ScalarQb nrm = hall_inner(f, f);

        if (verify_on_insert_) {
            for (const Partition& mu : built)
                if (!hall_inner(f, polys_[mu]).is_zero())
                    throw std::logic_error("Jack characterization: orthogonality failed");
            for (auto& [mu, c] : p_to_m(f, n))
                if (!dominance_leq(mu, la))
                    throw std::logic_error("Jack characterization: triangularity failed");
        }
        polys_[la] = std::move(f);
        norms_[la] = std::move(nrm);
        built.push_back(la);
    }
}

const PExpr& JackCache::poly(const Partition& la) {
    extend_to(la.size());
    return polys_.at(la);
}

const ScalarQb& JackCache::norm(const Partition& la) {
    extend_to(la.size());
    return norms_.at(la);
}

ScalarQb jack_character(JackCache& jc, const Partition& mu, const Partition& la) {
    if (la.size() < mu.size()) return 0;
    int pad = la.size() - mu.size();
    ScalarQb coeff = jc.poly(la).coeff(mu.pad_ones(pad));
    return coeff * ScalarQb(binomial(pad + mu.mult(1), mu.mult(1)));
}

void TauCache::ensure(int n) {
    for (int d = 0; d <= n; ++d) {
        if (layers_.count(d)) continue;
        std::map<Key, ScalarQb> layer;
        if (d == 0) {
            layer[{Partition(), Partition(), Partition()}] = 1;
        } else {
            jc_.extend_to(d);
            for (const Partition& th : partitions_of(d)) {
                const PExpr& J = jc_.poly(th);
                ScalarQb inv_norm = jc_.norm(th).inv();
                for (auto& [pi, a] : J.terms())
                    for (auto& [mu, b] : J.terms()) {
                        ScalarQb ab = a * b * inv_norm;
                        for (auto& [nu, c] : J.terms()) {
                            Key k{pi, mu, nu};
                            auto [it, fresh] = layer.try_emplace(k, ab * c);
                            if (!fresh) it->second += ab * c;
                        }
                    }
            }
            std::erase_if(layer, [](const auto& kv) { return kv.second.is_zero(); });
        }
        layers_.emplace(d, std::move(layer));
    }
}

const std::map<TauCache::Key, ScalarQb>& TauCache::layer(int n) {
    ensure(n);
    return layers_.at(n);
}

ScalarQb TauCache::tau_coeff(const Partition& pi, const Partition& mu, const Partition& nu) {
    if (pi.size() != mu.size() || pi.size() != nu.size())
        throw std::invalid_argument("tau_coeff: sizes must agree");
    const auto& lay = layer(pi.size());
    auto it = lay.find({pi, mu, nu});
    return it == lay.end() ? ScalarQb(0) : it->second;
}

ScalarQb TauCache::c_coefficient(const Partition& pi, const Partition& mu,
                                 const Partition& nu) {
    return tau_coeff(pi, mu, nu) * ScalarQb(z_factor(pi)) *
           ScalarQb::alpha().pow(pi.length());
}

MultiSeries tau_series(JackCache& jc, int n_max) {
    TauCache tc(jc);
    MultiSeries s(3, MSCaps{n_max, n_max, 2 * n_max});
    for (int n = 0; n <= n_max; ++n)
        for (auto& [k, c] : tc.layer(n)) s.add_term(MSKey{n, {k[0], k[1], k[2]}}, c);
    return s;
}

namespace {

// t-graded, u-graded states for exp(B_inf(-t, p, u)) computations
using TUState = std::map<int, UGradedPExpr>;

TUState apply_binf_neg_t(OpCache& ops, const TUState& state, int t_max) {
    TUState out;
    for (auto& [t0, ulayers] : state)
        for (auto& [u0, f] : ulayers)
            for (int n = 1; n <= t_max - t0; ++n) {
                ScalarQb w = ScalarQb::from_rat(Rat(n % 2 ? -1 : 1, n));
                for (auto& [du, g] : ops.b_n_apply(n, f)) {
                    PExpr add = g * w;
                    if (!add.is_zero()) out[t0 + n][u0 + du] += add;
                }
            }
    return out;
}

}  // namespace

std::vector<ScalarQb> skew_character(OpCache& ops, const Partition& mu, const Partition& nu) {
    if (nu.size() > mu.size()) return {};
    int N = mu.size() - nu.size();
    TUState acc, term;
    term[0][0] = PExpr::p(nu);
    acc = term;
    for (long k = 1; k <= N && !term.empty(); ++k) {
        // term_k = B_inf(term_{k-1}) / k, so that term_k = B_inf^k(f) / k!
        TUState next = apply_binf_neg_t(ops, term, N);
        term.clear();
        for (auto& [t, ul] : next)
            for (auto& [u, f] : ul) {
                PExpr g = f * ScalarQb::from_rat(Rat(1, k));
                if (g.is_zero()) continue;
                acc[t][u] += g;
                term[t][u] = std::move(g);
            }
    }
    // collect [t^N p_mu] per u-layer, substitute u -> -alpha v
    std::vector<ScalarQb> poly;
    auto it = acc.find(N);
    if (it != acc.end()) {
        const ScalarQb neg_alpha = -ScalarQb::alpha();
        for (auto& [u, f] : it->second) {
            ScalarQb c = f.coeff(mu);
            if (c.is_zero()) continue;
            if (static_cast<int>(poly.size()) <= u) poly.resize(static_cast<size_t>(u) + 1, 0);
            poly[static_cast<size_t>(u)] += c * neg_alpha.pow(u);
        }
    }
    while (!poly.empty() && poly.back().is_zero()) poly.pop_back();
    return poly;
}

ScalarQb eval_poly_v(const std::vector<ScalarQb>& poly, const ScalarQb& v) {
    ScalarQb acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * v + *it;
    return acc;
}

ScalarQb jack_character_via_operators(OpCache& ops, const Partition& mu, const Partition& la) {
    int N = mu.size();
    // t-graded state, u substituted factor by factor (rightmost factor first)
    TGradedPExpr state;
    state[0] = PExpr::one();
    for (int s = la.length() - 1; s >= 0; --s) {
        ScalarQb usub = -ScalarQb::alpha() * ScalarQb(la.part(s));
        TGradedPExpr acc = state, term = state;
        for (long k = 1; k <= N; ++k) {
            TGradedPExpr next;
            for (auto& [t0, f] : term)
                for (int n = 1; n <= N - t0; ++n) {
                    ScalarQb w = ScalarQb::from_rat(Rat(n % 2 ? -1 : 1, n * k));
                    for (auto& [du, g] : ops.b_n_apply(n, f)) {
                        PExpr add = g * (w * usub.pow(du));
                        if (!add.is_zero()) next[t0 + n] += add;
                    }
                }
            std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
            for (auto& [t, f] : next) acc[t] += f;
            term = std::move(next);
            if (term.empty()) break;
        }
        state = std::move(acc);
    }
    auto it = state.find(N);
    return it == state.end() ? ScalarQb(0) : it->second.coeff(mu);
}

}  // namespace jackmap
