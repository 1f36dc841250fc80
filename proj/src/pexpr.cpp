#include "jackmap/pexpr.hpp"

#include <algorithm>
#include <mutex>

namespace jackmap {

PExpr PExpr::monomial(const Partition& la, ScalarQb c) {
    PExpr f;
    f.add_term(la, c);
    return f;
}

ScalarQb PExpr::coeff(const Partition& la) const {
    auto it = terms_.find(la);
    return it == terms_.end() ? ScalarQb(0) : it->second;
}

void PExpr::add_term(const Partition& la, const ScalarQb& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(la, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PExpr PExpr::operator+(const PExpr& o) const {
    PExpr r = *this;
    r += o;
    return r;
}

PExpr& PExpr::operator+=(const PExpr& o) {
    for (auto& [la, c] : o.terms_) add_term(la, c);
    return *this;
}

PExpr PExpr::operator-(const PExpr& o) const {
    PExpr r = *this;
    r -= o;
    return r;
}

PExpr& PExpr::operator-=(const PExpr& o) {
    for (auto& [la, c] : o.terms_) add_term(la, -c);
    return *this;
}

PExpr PExpr::operator*(const PExpr& o) const {
    PExpr r;
    for (auto& [la, c] : terms_)
        for (auto& [mu, d] : o.terms_) r.add_term(la.union_with(mu), c * d);
    return r;
}

PExpr PExpr::operator*(const ScalarQb& c) const {
    PExpr r;
    if (c.is_zero()) return r;
    for (auto& [la, v] : terms_) r.add_term(la, v * c);
    return r;
}

PExpr PExpr::multiply_by_p(int i) const {
    PExpr r;
    for (auto& [la, c] : terms_) r.add_term(la.add_part(i), c);
    return r;
}

PExpr PExpr::derivative(int i) const {
    PExpr r;
    for (auto& [la, c] : terms_) {
        int m = la.mult(i);
        if (m > 0) r.add_term(la.remove_part(i), c * ScalarQb(m));
    }
    return r;
}

int PExpr::homogeneous_degree() const {
    int deg = -1;
    for (auto& [la, c] : terms_) {
        if (deg == -1)
            deg = la.size();
        else if (deg != la.size())
            throw std::invalid_argument("PExpr: not homogeneous");
    }
    return deg;
}

int PExpr::max_degree() const {
    int deg = -1;
    for (auto& [la, c] : terms_) deg = std::max(deg, la.size());
    return deg;
}

std::string PExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    // reverse canonical order: p[1,1] prints before p[2], as in table output
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        auto& [la, c] = *it;
        if (!s.empty()) s += " + ";
        std::string cs = c.to_string();
        if (cs == "1") {
            s += "p" + la.to_string();
        } else {
            // sums, differences and fractions get parenthesized
            bool wrap = cs.find_first_of("+-/") != std::string::npos;
            s += (wrap ? "(" + cs + ")" : cs) + "*p" + la.to_string();
        }
    }
    return s;
}

ScalarQb hall_inner(const PExpr& f, const PExpr& g) {
    ScalarQb r = 0;
    const ScalarQb alpha = ScalarQb::alpha();
    for (auto& [la, c] : f.terms()) {
        auto it = g.terms().find(la);
        if (it == g.terms().end()) continue;
        r += c * it->second * ScalarQb(z_factor(la)) * alpha.pow(la.length());
    }
    return r;
}

namespace {

// Per-degree transition data between the p and m bases, built by expanding
// p_mu in n explicit variables (exact, fine for the tiny degrees used here).
struct MonomialTransition {
    std::vector<Partition> parts;                       // partitions of n, canonical order
    std::map<Partition, std::map<Partition, Int>> p_in_m;    // row mu: p_mu = sum A m_la
    std::map<Partition, PExpr> m_in_p;                  // m_mu in p basis
};

std::map<Partition, Int> expand_p_in_m(const Partition& mu, int n) {
    // monomial = exponent vector over exactly n variables, kept sorted desc
    std::map<std::vector<int>, Int> cur;
    cur[std::vector<int>(static_cast<size_t>(n), 0)] = 1;
    for (int k : mu.parts()) {
        std::map<std::vector<int>, Int> next;
        for (auto& [e, c] : cur) {
            for (size_t i = 0; i < e.size(); ++i) {
                std::vector<int> e2 = e;
                e2[i] += k;
                std::sort(e2.begin(), e2.end(), std::greater<int>());
                next[e2] += c;
            }
        }
        cur = std::move(next);
    }
    std::map<Partition, Int> out;
    for (auto& [e, c] : cur) {
        // all monomials of one orbit were folded onto the sorted representative,
        // so divide by the orbit size to recover the m-basis coefficient
        std::map<int, int> valcount;
        for (int v : e) ++valcount[v];
        Int orbit = factorial(static_cast<long>(e.size()));
        for (auto& [v, k] : valcount) orbit /= factorial(k);
        std::vector<int> nz;
        for (int v : e)
            if (v > 0) nz.push_back(v);
        if (c % orbit != 0) throw std::logic_error("p_to_m: non-integral orbit division");
        out[Partition(std::move(nz))] = c / orbit;
    }
    return out;
}

const MonomialTransition& transition(int n) {
    static std::map<int, MonomialTransition> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    MonomialTransition tr;
    tr.parts = partitions_of(n);
    for (auto& mu : tr.parts) tr.p_in_m[mu] = expand_p_in_m(mu, n);

    // invert the transition by Gaussian elimination over Q(b) (entries are
    // integers; the matrix is unitriangular-up-to-diagonal in dominance order)
    size_t N = tr.parts.size();
    std::vector<std::vector<ScalarQb>> A(N, std::vector<ScalarQb>(2 * N, ScalarQb(0)));
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = 0; j < N; ++j) {
            auto& row = tr.p_in_m[tr.parts[i]];
            auto f = row.find(tr.parts[j]);
            if (f != row.end()) A[i][j] = ScalarQb(f->second);
        }
        A[i][N + i] = 1;
    }
    for (size_t col = 0; col < N; ++col) {
        size_t piv = col;
        while (piv < N && A[piv][col].is_zero()) ++piv;
        if (piv == N) throw std::logic_error("monomial transition singular");
        std::swap(A[piv], A[col]);
        ScalarQb d = A[col][col];
        for (auto& v : A[col]) v /= d;
        for (size_t r = 0; r < N; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            ScalarQb f = A[r][col];
            for (size_t c2 = 0; c2 < 2 * N; ++c2) A[r][c2] -= f * A[col][c2];
        }
    }
    // inverse rows now give m in terms of p: m_la = sum_mu inv[la][mu] p_mu
    for (size_t i = 0; i < N; ++i) {
        PExpr f;
        for (size_t j = 0; j < N; ++j) f.add_term(tr.parts[j], A[i][N + j]);
        tr.m_in_p[tr.parts[i]] = std::move(f);
    }
    auto [ins, ok] = cache.emplace(n, std::move(tr));
    return ins->second;
}

}  // namespace

std::map<Partition, ScalarQb> p_to_m(const PExpr& f, int n) {
    if (!f.is_zero() && f.homogeneous_degree() != n)
        throw std::invalid_argument("p_to_m: input not homogeneous of the stated degree");
    const auto& tr = transition(n);
    std::map<Partition, ScalarQb> out;
    for (auto& [mu, c] : f.terms())
        for (auto& [la, a] : tr.p_in_m.at(mu)) {
            auto [it, fresh] = out.try_emplace(la, c * ScalarQb(a));
            if (!fresh) it->second += c * ScalarQb(a);
        }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

PExpr m_to_p(const std::map<Partition, ScalarQb>& mcoeffs, int n) {
    const auto& tr = transition(n);
    PExpr f;
    for (auto& [mu, c] : mcoeffs) {
        if (mu.size() != n) throw std::invalid_argument("m_to_p: key of wrong degree");
        f += tr.m_in_p.at(mu) * c;
    }
    return f;
}

const PExpr& monomial_in_p(const Partition& mu) {
    return transition(mu.size()).m_in_p.at(mu);
}

}  // namespace jackmap
