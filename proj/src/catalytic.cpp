#include "jackmap/catalytic.hpp"

#include <functional>

namespace jackmap {

CatalyticExpr CatalyticExpr::from_plain(PExpr f) {
    CatalyticExpr e;
    e.plain_ = std::move(f);
    return e;
}

CatalyticExpr CatalyticExpr::cat_monomial(int y, const Partition& la, const ScalarQb& c) {
    CatalyticExpr e;
    e.add_cat(y, la, c);
    return e;
}

void CatalyticExpr::add_cat(int y, const Partition& la, const ScalarQb& c) {
    if (c.is_zero()) return;
    if (y < 0) throw std::invalid_argument("CatalyticExpr: negative y index");
    CatKey k{y, la};
    auto [it, fresh] = cat_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) cat_.erase(it);
    }
}

namespace {
void require_pure_cat(const CatalyticExpr& f, const char* op) {
    if (!f.plain_is_zero())
        throw std::invalid_argument(std::string(op) + ": nonzero plain component");
}
}  // namespace

CatalyticExpr apply_y_plus(const CatalyticExpr& f) {
    require_pure_cat(f, "Y_+");
    CatalyticExpr r;
    for (auto& [k, c] : f.cat()) r.add_cat(k.first + 1, k.second, c);
    return r;
}

CatalyticExpr apply_gamma(const CatalyticExpr& f) {
    require_pure_cat(f, "Gamma_Y");
    const ScalarQb alpha = ScalarQb::alpha();  // 1 + b
    const ScalarQb bvar = ScalarQb::b();
    CatalyticExpr r;
    for (auto& [k, c] : f.cat()) {
        auto [y, la] = k;
        // (1+b) sum_{i,j>=1} y_{i+j} j d^2/(dy_{i-1} dp_j):  y -> y+j+1, remove a part j
        for (auto& [j, m] : la.mult_map())
            r.add_cat(y + j + 1, la.remove_part(j), c * alpha * ScalarQb(long(j) * m));
        // sum_{i,j>=1} y_i p_j d/dy_{i+j-1}:  y -> y+1-j, append a part j  (j <= y)
        for (int j = 1; j <= y; ++j) r.add_cat(y + 1 - j, la.add_part(j), c);
        // b sum_{i>=1} y_{i+1} i d/dy_i
        if (y >= 1) r.add_cat(y + 1, la, c * bvar * ScalarQb(y));
    }
    return r;
}

PExpr apply_theta(const CatalyticExpr& f) {
    require_pure_cat(f, "Theta_Y");
    PExpr r;
    for (auto& [k, c] : f.cat())
        if (k.first >= 1) r.add_term(k.second.add_part(k.first), c);
    return r;
}

CatalyticExpr apply_y_plus_dual(const CatalyticExpr& f) {
    require_pure_cat(f, "Y_+ dual");
    CatalyticExpr r;
    for (auto& [k, c] : f.cat())
        if (k.first >= 1) r.add_cat(k.first - 1, k.second, c);
    return r;
}

CatalyticExpr apply_gamma_dual(const CatalyticExpr& f) {
    require_pure_cat(f, "Gamma_Y dual");
    const ScalarQb alpha = ScalarQb::alpha();
    const ScalarQb bvar = ScalarQb::b();
    CatalyticExpr r;
    for (auto& [k, c] : f.cat()) {
        auto [y, la] = k;
        // sum_{i,j>=1} y_{i-1} p_j d/dy_{i+j}:  y -> y-j-1, append a part j
        for (int j = 1; j <= y - 1; ++j) r.add_cat(y - j - 1, la.add_part(j), c);
        // (1+b) sum_{i,j>=1} y_{i+j-1} j d^2/(dy_i dp_j):  y -> y+j-1, remove a part j
        if (y >= 1)
            for (auto& [j, m] : la.mult_map())
                r.add_cat(y + j - 1, la.remove_part(j), c * alpha * ScalarQb(long(j) * m));
        // b sum_{i>=2} y_{i-1} (i-1) d/dy_i
        if (y >= 2) r.add_cat(y - 1, la, c * bvar * ScalarQb(y - 1));
    }
    return r;
}

CatalyticExpr apply_theta_dual(const PExpr& f) {
    CatalyticExpr r;
    for (auto& [la, c] : f.terms())
        for (auto& [i, m] : la.mult_map())
            r.add_cat(i, la.remove_part(i), c * ScalarQb(long(i) * m));
    return r;
}

namespace {

using UGradedCat = std::map<int, CatalyticExpr>;

UGradedCat word_step(const UGradedCat& state, bool dual) {
    UGradedCat next;
    for (auto& [u, e] : state) {
        CatalyticExpr g = dual ? apply_gamma_dual(e) : apply_gamma(e);
        CatalyticExpr yp = dual ? apply_y_plus_dual(e) : apply_y_plus(e);
        for (auto& [k, c] : g.cat()) next[u].add_cat(k.first, k.second, c);
        for (auto& [k, c] : yp.cat()) next[u + 1].add_cat(k.first, k.second, c);
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    return next;
}

}  // namespace

const UGradedPExpr& OpCache::b_n_basis(int n, const Partition& la) {
    std::pair<int, Partition> key{n, la};
    {
        std::lock_guard<std::mutex> lock(mtx_);
        auto it = bn_.find(key);
        if (it != bn_.end()) return it->second;
    }
    UGradedCat state;
    state[0] = CatalyticExpr::cat_monomial(0, la, ScalarQb(1) / ScalarQb::alpha());
    for (int s = 0; s < n; ++s) state = word_step(state, false);
    UGradedPExpr out;
    for (auto& [u, e] : state) {
        PExpr v = apply_theta(e);
        if (!v.is_zero()) out[u] = std::move(v);
    }
    std::lock_guard<std::mutex> lock(mtx_);
    return bn_.emplace(std::move(key), std::move(out)).first->second;
}

const UGradedPExpr& OpCache::b_n_dual_basis(int n, const Partition& la) {
    std::pair<int, Partition> key{n, la};
    {
        std::lock_guard<std::mutex> lock(mtx_);
        auto it = bn_dual_.find(key);
        if (it != bn_dual_.end()) return it->second;
    }
    UGradedCat state;
    state[0] = apply_theta_dual(PExpr::p(la));
    for (int s = 0; s < n; ++s) state = word_step(state, true);
    UGradedPExpr out;
    for (auto& [u, e] : state) {
        PExpr v;
        for (auto& [k, c] : e.cat())
            if (k.first == 0) v.add_term(k.second, c);  // d/dy_0 extraction
        if (!v.is_zero()) out[u] = std::move(v);
    }
    std::lock_guard<std::mutex> lock(mtx_);
    return bn_dual_.emplace(std::move(key), std::move(out)).first->second;
}

namespace {
UGradedPExpr combine_linear(const PExpr& f,
                            const std::function<const UGradedPExpr&(const Partition&)>& basis) {
    UGradedPExpr out;
    for (auto& [la, c] : f.terms())
        for (auto& [u, g] : basis(la)) {
            PExpr scaled = g * c;
            auto it = out.find(u);
            if (it == out.end())
                out.emplace(u, std::move(scaled));
            else
                it->second += scaled;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}
}  // namespace

UGradedPExpr OpCache::b_n_apply(int n, const PExpr& f) {
    if (n < 1) throw std::invalid_argument("b_n_apply: n must be >= 1");
    return combine_linear(f, [&](const Partition& la) -> const UGradedPExpr& {
        return b_n_basis(n, la);
    });
}

UGradedPExpr OpCache::b_n_dual_apply(int n, const PExpr& f) {
    if (n < 1) throw std::invalid_argument("b_n_dual_apply: n must be >= 1");
    return combine_linear(f, [&](const Partition& la) -> const UGradedPExpr& {
        return b_n_dual_basis(n, la);
    });
}

TGradedPExpr OpCache::c_ell_apply(int l, const PExpr& f, int t_max) {
    if (l < 0 || t_max < 0) throw std::invalid_argument("c_ell_apply: bad arguments");
    TGradedPExpr out;
    for (int n = std::max(l, 1); n <= t_max; ++n) {
        UGradedPExpr bn = b_n_apply(n, f);
        auto it = bn.find(l);
        if (it == bn.end()) continue;
        PExpr layer = it->second * ScalarQb::from_rat(Rat(1, n));
        if (!layer.is_zero()) out[n] = std::move(layer);
    }
    return out;
}

TGradedPExpr OpCache::c_ell_dual_apply(int l, const PExpr& f, int t_max) {
    if (l < 0 || t_max < 0) throw std::invalid_argument("c_ell_dual_apply: bad arguments");
    TGradedPExpr out;
    int deg = f.max_degree();
    for (int n = std::max(l, 1); n <= std::min(t_max, deg); ++n) {
        UGradedPExpr bn = b_n_dual_apply(n, f);
        auto it = bn.find(l);
        if (it == bn.end()) continue;
        PExpr layer = it->second * ScalarQb::from_rat(Rat(1, n));
        if (!layer.is_zero()) out[n] = std::move(layer);
    }
    return out;
}

PExpr OpCache::c_ell_k_engine(int l, int k, const PExpr& f) {
    if (l + k < 1) throw std::invalid_argument("c_ell_k_engine: l + k must be >= 1");
    UGradedPExpr bn = b_n_apply(l + k, f);
    auto it = bn.find(l);
    return it == bn.end() ? PExpr() : it->second;
}

PExpr c_ell_k_closed(int l, int k, const PExpr& f) {
    if (l < 1) throw std::invalid_argument("c_ell_k_closed: l must be >= 1");
    if (k < 0 || k > 2)
        throw std::invalid_argument("c_ell_k_closed: only k <= 2 has a closed form");
    const ScalarQb alpha = ScalarQb::alpha();
    const ScalarQb bvar = ScalarQb::b();
    PExpr out;
    if (k == 0) {
        return f.multiply_by_p(l) * alpha.inv();
    }
    if (k == 1) {
        out += f.multiply_by_p(l + 1) * (ScalarQb(binomial(l + 1, 2)) * bvar / alpha);
        for (auto& [la, c] : f.terms())
            for (auto& [m, mm] : la.mult_map())
                out.add_term(la.remove_part(m).add_part(m + l + 1),
                             c * ScalarQb(long(l + 1) * m * mm));
        ScalarQb half = ScalarQb(l + 1) / (ScalarQb(2) * alpha);
        for (int i = 1; i <= l; ++i)
            out += f.multiply_by_p(i).multiply_by_p(l + 1 - i) * half;
        return out;
    }
    // k == 2, the appendix display
    ScalarQb c22 = ScalarQb(binomial(l + 2, 2));
    for (int i1 = 1; i1 <= l; ++i1)
        for (int i2 = 1; i1 + i2 <= l + 1; ++i2) {
            int i3 = l + 2 - i1 - i2;
            out += f.multiply_by_p(i1).multiply_by_p(i2).multiply_by_p(i3) *
                   (c22 / (ScalarQb(3) * alpha));
        }
    out += f.multiply_by_p(l + 2) *
           (ScalarQb(binomial(l + 2, 3)) * ScalarQb(3 * l + 5) * bvar * bvar /
            (ScalarQb(4) * alpha));
    for (auto& [la, c] : f.terms()) {
        // alpha C(l+2,2) sum_{k',m} p_{l+k'+m+2} (m d/dp_m)(k' d/dp_k')
        PExpr base = PExpr::monomial(la, c);
        for (auto& [kk, km] : la.mult_map()) {
            PExpr dk = base.derivative(kk) * ScalarQb(kk);
            for (auto& [mu, cc] : dk.terms())
                for (auto& [m, mm2] : mu.mult_map())
                    out.add_term(mu.remove_part(m).add_part(l + kk + m + 2),
                                 cc * alpha * c22 * ScalarQb(long(m) * mm2));
        }
        // C(l+2,2) sum_m b (l+m+1) p_{m+l+2} m d/dp_m
        for (auto& [m, mm] : la.mult_map())
            out.add_term(la.remove_part(m).add_part(m + l + 2),
                         c * c22 * bvar * ScalarQb(long(l + m + 1) * m * mm));
        // C(l+2,2) sum_m sum_{i1+i2=l+m+2} p_{i1} p_{i2} m d/dp_m
        for (auto& [m, mm] : la.mult_map()) {
            Partition red = la.remove_part(m);
            for (int i1 = 1; i1 <= l + m + 1; ++i1) {
                int i2 = l + m + 2 - i1;
                out.add_term(red.add_part(i1).add_part(i2), c * c22 * ScalarQb(long(m) * mm));
            }
        }
    }
    // the displayed 1/(2 alpha) is over unordered pairs {i1, i2}; running over
    // ordered compositions halves it again (cf. the appendix symmetrization)
    for (int i1 = 1; i1 <= l + 1; ++i1) {
        int i2 = l + 2 - i1;
        ScalarQb w = bvar * ScalarQb(l + 2) *
                     ScalarQb(long(l + 1) * (l + 1) - long(i1) * i2) /
                     (ScalarQb(4) * alpha);
        out += f.multiply_by_p(i1).multiply_by_p(i2) * w;
    }
    out += f.multiply_by_p(l + 2) * ScalarQb(binomial(l + 3, 4));
    return out;
}

Report commutator_check(OpCache& ops, int l, int m, int basis_degree, int t_max) {
    if (m < 1) throw std::invalid_argument("commutator_check: m must be positive");
    Report rep;
    for (auto& la : partitions_up_to(basis_degree)) {
        PExpr f = PExpr::p(la);
        // [C_l, C_m] f, t-layer by t-layer
        TGradedPExpr cm = ops.c_ell_apply(m, f, t_max);
        TGradedPExpr cl = ops.c_ell_apply(l, f, t_max);
        TGradedPExpr comm;
        for (auto& [n1, g] : cm)
            for (auto& [n2, h] : ops.c_ell_apply(l, g, t_max - n1))
                comm[n1 + n2] += h;
        for (auto& [n1, g] : cl)
            for (auto& [n2, h] : ops.c_ell_apply(m, g, t_max - n1))
                comm[n1 + n2] -= h;
        TGradedPExpr expect;
        if (l == 0)
            for (auto& [n, g] : ops.c_ell_apply(m + 1, f, t_max))
                expect[n] = g * ScalarQb(m + 1);
        for (int n = 0; n <= t_max; ++n) {
            PExpr lhs = comm.count(n) ? comm[n] : PExpr();
            PExpr rhs = expect.count(n) ? expect[n] : PExpr();
            ++rep.checked;
            if (!(lhs == rhs))
                rep.fail("[C_" + std::to_string(l) + ",C_" + std::to_string(m) +
                         "] on p" + la.to_string() + " at t^" + std::to_string(n));
        }
    }
    return rep;
}

}  // namespace jackmap
