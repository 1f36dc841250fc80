#pragma once

#include <mutex>

#include "jackmap/pexpr.hpp"

namespace jackmap {

/// Element of P + P_Y: a plain symmetric-function part and a catalytic part
/// whose monomials y_i p_la carry exactly one catalytic variable.
class CatalyticExpr {
public:
    using CatKey = std::pair<int, Partition>;  // (y index, partition)

    CatalyticExpr() = default;
    static CatalyticExpr from_plain(PExpr f);
    static CatalyticExpr cat_monomial(int y, const Partition& la, const ScalarQb& c);

    const PExpr& plain() const { return plain_; }
    const std::map<CatKey, ScalarQb>& cat() const { return cat_; }
    bool plain_is_zero() const { return plain_.is_zero(); }
    bool is_zero() const { return plain_.is_zero() && cat_.empty(); }

    void add_plain(const PExpr& f) { plain_ += f; }
    void add_cat(int y, const Partition& la, const ScalarQb& c);

    bool operator==(const CatalyticExpr&) const = default;

private:
    PExpr plain_;
    std::map<CatKey, ScalarQb> cat_;
};

/// u-graded element of P: layers[k] is the coefficient of u^k.
using UGradedPExpr = std::map<int, PExpr>;
/// t-graded element of P: layers[n] is the coefficient of t^n.
using TGradedPExpr = std::map<int, PExpr>;

/// Y_+ = sum_{i>=0} y_{i+1} d/dy_i. The displayed sum starts at i = 1, but
/// y_0 -> y_1 is required for B_1 . 1 = u p_1 / alpha; see the repo notes.
CatalyticExpr apply_y_plus(const CatalyticExpr& f);
/// Gamma_Y, acting on the catalytic part only (plain part must be zero).
CatalyticExpr apply_gamma(const CatalyticExpr& f);
/// Theta_Y = sum_{i>=1} p_i d/dy_i : P_Y -> P (kills y_0 terms).
PExpr apply_theta(const CatalyticExpr& f);

/// Duals with respect to <,>_Y.
CatalyticExpr apply_y_plus_dual(const CatalyticExpr& f);
CatalyticExpr apply_gamma_dual(const CatalyticExpr& f);
CatalyticExpr apply_theta_dual(const PExpr& f);  // sum y_i (i d/dp_i)

class Report {
public:
    bool pass = true;
    long checked = 0;
    std::string first_mismatch;
    void fail(std::string what) {
        if (pass) first_mismatch = std::move(what);
        pass = false;
    }
};

/// Memoizing engine for B_n, its dual, and the u-slices C_l. Safe for
/// concurrent use (idempotent inserts under a lock).
class OpCache {
public:
    /// B_n . f = Theta_Y (Gamma_Y + u Y_+)^n (y_0 f / (1+b)), graded by u.
    UGradedPExpr b_n_apply(int n, const PExpr& f);
    /// B_n^perp . f = d/dy_0 (Gamma_Y^perp + u Y_+^perp)^n Theta_Y^perp f.
    UGradedPExpr b_n_dual_apply(int n, const PExpr& f);

    /// C_l(t,.) f = sum_{n>=l} (t^n/n) [u^l] B_n f, through t_max.
    TGradedPExpr c_ell_apply(int l, const PExpr& f, int t_max);
    TGradedPExpr c_ell_dual_apply(int l, const PExpr& f, int t_max);

    /// C_{l,k} = (l+k) [t^{l+k}] C_l(t,.) = [u^l] B_{l+k}.
    PExpr c_ell_k_engine(int l, int k, const PExpr& f);

private:
    const UGradedPExpr& b_n_basis(int n, const Partition& la);
    const UGradedPExpr& b_n_dual_basis(int n, const Partition& la);
    std::map<std::pair<int, Partition>, UGradedPExpr> bn_, bn_dual_;
    std::mutex mtx_;
};

/// C_{l,k} via the closed differential formulas (l >= 1, k <= 2).
PExpr c_ell_k_closed(int l, int k, const PExpr& f);

/// [C_l, C_m] on all p_la with |la| <= basis_degree, coefficient-wise in t
/// through t_max: zero for l, m >= 1 and (m+1) C_{m+1} for l = 0 < m.
Report commutator_check(OpCache& ops, int l, int m, int basis_degree, int t_max);

}  // namespace jackmap
