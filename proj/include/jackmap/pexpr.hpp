#pragma once

#include <map>

#include "jackmap/partition.hpp"
#include "jackmap/scalar.hpp"

namespace jackmap {

/// Finite ScalarQb-linear combination of power-sum monomials p_lambda in one
/// abstract alphabet. p_{} is the constant 1. No zero coefficients are stored.
class PExpr {
public:
    PExpr() = default;
    static PExpr one() { return monomial(Partition(), 1); }
    static PExpr p(const Partition& la) { return monomial(la, 1); }
    static PExpr monomial(const Partition& la, ScalarQb c);

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Partition, ScalarQb>& terms() const { return terms_; }
    ScalarQb coeff(const Partition& la) const;

    void add_term(const Partition& la, const ScalarQb& c);

    PExpr operator+(const PExpr&) const;
    PExpr operator-(const PExpr&) const;
    PExpr operator*(const PExpr&) const;
    PExpr operator*(const ScalarQb& c) const;
    PExpr& operator+=(const PExpr& o);
    PExpr& operator-=(const PExpr& o);
    bool operator==(const PExpr&) const = default;

    PExpr multiply_by_p(int i) const;  // append a part of size i
    PExpr derivative(int i) const;     // d/dp_i
    /// -1 if zero, degree if homogeneous, throws otherwise.
    int homogeneous_degree() const;
    int max_degree() const;

    std::string to_string() const;  // "p[1,1] + (b+1)*p[2]"

private:
    std::map<Partition, ScalarQb> terms_;
};

inline PExpr operator*(const ScalarQb& c, const PExpr& f) { return f * c; }

/// alpha-deformed Hall scalar product: <p_la, p_mu> = delta z_la alpha^{l(la)}.
ScalarQb hall_inner(const PExpr& f, const PExpr& g);

/// Expansion of a homogeneous degree-n element in the monomial basis m_mu.
/// Rejects non-homogeneous input.
std::map<Partition, ScalarQb> p_to_m(const PExpr& f, int n);

/// Inverse: expand sum of c_mu m_mu (all mu of size n) in the p basis.
PExpr m_to_p(const std::map<Partition, ScalarQb>& mcoeffs, int n);

/// m_mu in the p basis (cached per degree).
const PExpr& monomial_in_p(const Partition& mu);

}  // namespace jackmap
