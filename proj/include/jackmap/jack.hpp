#pragma once

#include <array>

#include "jackmap/catalytic.hpp"
#include "jackmap/mseries.hpp"
#include "jackmap/pexpr.hpp"

namespace jackmap {

/// Jack polynomials in the J normalization, built degree by degree from the
/// characterization (orthogonality for the alpha-Hall product, monomial
/// triangularity under dominance, [p_{1^n}] = 1) by Gram-Schmidt over Q(b).
/// A completed degree layer is immutable and safe to share.
class JackCache {
public:
    explicit JackCache(bool verify_on_insert = false, int degree_cap = 12)
        : verify_on_insert_(verify_on_insert), degree_cap_(degree_cap) {}

    /// Builds all layers up to n; throws beyond the configured cap (the
    /// monomial transition grows superpolynomially, so runaway degrees are a
    /// configuration error, not something to attempt).
    void extend_to(int n);
    int max_degree() const { return max_degree_; }
    int degree_cap() const { return degree_cap_; }

    const PExpr& poly(const Partition& la);      // J_la in the p basis
    const ScalarQb& norm(const Partition& la);   // j_la = <J_la, J_la>

private:
    void build_degree(int n);
    int max_degree_ = -1;
    bool verify_on_insert_;
    int degree_cap_;
    std::map<Partition, PExpr> polys_;
    std::map<Partition, ScalarQb> norms_;
};

/// theta_mu(la): 0 when |la| < |mu|, else the binomial-weighted coefficient
/// extraction C(|la|-|mu|+m_1(mu), m_1(mu)) [p_{mu u 1^{|la|-|mu|}}] J_la.
ScalarQb jack_character(JackCache& jc, const Partition& mu, const Partition& la);

/// Goulden-Jackson triple series tau = sum_n t^n sum_{th |- n} J J J / j_th,
/// with layers cached; c^pi_{mu,nu} = z_pi alpha^{l(pi)} [t^n p q r] tau.
class TauCache {
public:
    explicit TauCache(JackCache& jc) : jc_(jc) {}
    using Key = std::array<Partition, 3>;

    void ensure(int n);
    const std::map<Key, ScalarQb>& layer(int n);
    /// tau coefficient of p_pi q_mu r_nu at t^{|pi|} (sizes must agree).
    ScalarQb tau_coeff(const Partition& pi, const Partition& mu, const Partition& nu);
    ScalarQb c_coefficient(const Partition& pi, const Partition& mu, const Partition& nu);

private:
    JackCache& jc_;
    std::map<int, std::map<Key, ScalarQb>> layers_;
};

/// The triple series as a MultiSeries through t-degree n_max.
MultiSeries tau_series(JackCache& jc, int n_max);

/// Skew Jack character theta_{mu/nu}(v) as a polynomial in v (constant term
/// first), computed by the operator route
/// [t^{|mu|-|nu|} p_mu] exp(B_inf(-t, p, -alpha v)) . p_nu.
std::vector<ScalarQb> skew_character(OpCache& ops, const Partition& mu, const Partition& nu);

/// Evaluate a v-polynomial at a ScalarQb value.
ScalarQb eval_poly_v(const std::vector<ScalarQb>& poly, const ScalarQb& v);

/// theta_mu(la) by the differential construction
/// [t^{|mu|} p_mu] prod_s exp(B_inf(-t, p, -alpha la_s)) . 1 — an independent
/// route used as a cross-check of jack_character.
ScalarQb jack_character_via_operators(OpCache& ops, const Partition& mu, const Partition& la);

}  // namespace jackmap
