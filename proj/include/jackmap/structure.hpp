#pragma once

#include <mutex>
#include <vector>

#include "jackmap/jack.hpp"

namespace jackmap {

/// Homogeneous two-alphabet image sum_{mu,nu} c q_mu r_nu of the operator
/// form of the G series; the t-exponent of each term is |mu|+|nu|-|pi| and is
/// therefore not stored.
using TwoAlphabet = std::map<std::pair<Partition, Partition>, ScalarQb>;

struct TableEntry {
    Partition pi, mu, nu;
    ScalarQb g;
    std::string provenance;  // via_c | via_recursion | via_explicit_sum
};

struct ScanResult {
    long entries = 0;
    std::vector<std::string> violations;  // negative-coefficient findings
};

/// Owns every cache the structure-coefficient computations share: the Jack
/// cache, the tau layers, the operator engine, and the a/d/g memo tables.
class StructureContext {
public:
    explicit StructureContext(int jack_degree_cap = 12)
        : jack_(false, jack_degree_cap), tau_(jack_) {}

    JackCache& jack() { return jack_; }
    TauCache& tau() { return tau_; }
    OpCache& ops() { return ops_; }

    // --- operator-product coefficients -------------------------------------
    ScalarQb a_coefficient(const Partition& la, const Partition& xi);
    ScalarQb d_coefficient(const Partition& la, const Partition& mu, const Partition& nu);
    /// d by its other face: [t^{|mu|+|nu|} q_mu r_nu] prod alpha la_i (C(q)+C(r)) . 1
    ScalarQb d_via_operators(const Partition& la, const Partition& mu, const Partition& nu);

    // --- the three g routes -------------------------------------------------
    ScalarQb g_via_c(const Partition& pi, const Partition& mu, const Partition& nu);
    ScalarQb g_via_recursion(const Partition& pi, const Partition& mu, const Partition& nu);
    ScalarQb g_explicit_sum(const Partition& pi, const Partition& mu, const Partition& nu);
    /// Default (route 1, memoized).
    ScalarQb g(const Partition& pi, const Partition& mu, const Partition& nu);
    /// Pre-seed the route-1 memo (resuming from persisted shards).
    void seed_g(const Partition& pi, const Partition& mu, const Partition& nu,
                const ScalarQb& value);

    std::vector<TableEntry> build_table(int max_total, const std::string& route,
                                        int jobs = 1);

    // --- series and operator forms ------------------------------------------
    MultiSeries g_series(const MSCaps& caps);
    /// Operator image 𝒢 . p_pi restricted to |mu|+|nu| <= s.
    TwoAlphabet g_op_image(const Partition& pi, int s);
    /// Homogeneous layer: sum over |mu|+|nu| = |pi|+k of g q_mu r_nu.
    TwoAlphabet g_operator_apply(int k, const Partition& pi);
    /// Closed differential forms of the k = 0,1,2 layers applied to p_pi.
    TwoAlphabet g_low_closed(int k, const Partition& pi);

    // --- verifiers -----------------------------------------------------------
    /// Main differential equation, u-layer l, series form, window |mu|+|nu| <= s.
    Report verify_main_equation(int l, int s);
    /// Commutation form on basis elements p_pi, |pi| <= p_max (Theorem form).
    Report verify_commutation_basis(int l, int p_max, int s);
    /// Iterated product form for a partition of operator indices.
    Report verify_product_commutation(const Partition& la, int p_max, int s);
    Report verify_low_terms(int p_max);
    Report verify_shift_identity(int s);  // c <-> g binomial relation, all |pi| <= s

    // --- A_mu isomorphism ----------------------------------------------------
    PExpr a_mu_symfun(const Partition& mu, int deg_cap);
    Report verify_iso(const Partition& mu, const Partition& nu);

    // --- connected series ----------------------------------------------------
    MultiSeries g_hat(int s);  // alpha log G within total size s
    ScalarQb ghat_coefficient(const Partition& pi, const Partition& mu, const Partition& nu);
    ScalarQb h_coefficient(const Partition& pi, const Partition& mu, const Partition& nu);
    Report verify_connected_relation(int s);
    Report verify_connected_degree_bound(int s);
    Report verify_connected_equation(int s, int n_max);

    // --- constellations -------------------------------------------------------
    ScalarQb constellation_g(const Partition& pi, const std::vector<Partition>& mus);
    MultiSeries constellation_series(int k, int s);
    Report verify_constellation_equation(int k, int s, int l_max);

    // --- scans and identity checks --------------------------------------------
    ScanResult conjecture_scan(int max_total);
    Report verify_defining_identity(int mu_nu_total_max, int lambda_max);
    Report verify_skew_composition(int size_max);

private:
    const TGradedPExpr& a_product(const Partition& la, int t_max);
    /// One u-layer of B_inf(-t, alphabet, u) applied to a series, all alphabets.
    MultiSeries apply_c_ell_neg_t(const MultiSeries& s, int alphabet, int l);
    MultiSeries apply_c_ell_dual_neg_t(const MultiSeries& s, int l);
    Report verify_binf_layer_equation(const MultiSeries& s, int l);

    JackCache jack_;
    TauCache tau_;
    OpCache ops_;
    std::map<std::pair<Partition, Partition>, ScalarQb> a_memo_;
    std::map<std::array<Partition, 3>, ScalarQb> d_memo_, gc_memo_, grec_memo_;
    std::map<Partition, std::pair<int, TGradedPExpr>> aprod_;
    std::mutex mtx_;
};

}  // namespace jackmap
