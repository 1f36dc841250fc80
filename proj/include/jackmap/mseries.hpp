#pragma once

#include <vector>

#include "jackmap/pexpr.hpp"

namespace jackmap {

/// Key of a multi-alphabet monomial t^k p_{ps[0]} q_{ps[1]} r_{ps[2]} ...;
/// alphabet 0 is always the "p" slot, alphabets 1.. are the output slots
/// (q, r for hypermaps; q^(0)..q^(k) for constellations).
struct MSKey {
    int t = 0;
    std::vector<Partition> ps;
    auto operator<=>(const MSKey&) const = default;
};

struct MSCaps {
    int t_max = 0;    // max t-degree
    int p_max = 0;    // max |ps[0]|
    int out_max = 0;  // max sum of |ps[i]|, i >= 1
    bool operator==(const MSCaps&) const = default;
};

/// Truncated ScalarQb-linear combination of t^k p q r ... monomials. The caps
/// are part of the value: binary operations require identical caps, and any
/// key that an operation pushes past the caps is dropped (quotient-ring
/// semantics: graded truncation, so dropped keys can never flow back under).
class MultiSeries {
public:
    MultiSeries(int arity, MSCaps caps) : arity_(arity), caps_(caps) {}
    static MultiSeries one(int arity, MSCaps caps);

    int arity() const { return arity_; }
    const MSCaps& caps() const { return caps_; }
    const std::map<MSKey, ScalarQb>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    ScalarQb coeff(const MSKey& k) const;
    ScalarQb constant_term() const;

    bool key_in_caps(const MSKey& k) const;
    /// Throws on an out-of-cap or wrong-arity key: constructing a series never
    /// silently discards what the caller inserts.
    void add_term(const MSKey& k, const ScalarQb& c);
    /// Accumulate, dropping keys past the caps (for operator images).
    void add_term_truncating(const MSKey& k, const ScalarQb& c);

    MultiSeries operator+(const MultiSeries&) const;
    MultiSeries operator-(const MultiSeries&) const;
    MultiSeries operator*(const MultiSeries&) const;  // caps must match
    MultiSeries operator*(const ScalarQb& c) const;
    MultiSeries& operator+=(const MultiSeries& o);
    bool operator==(const MultiSeries&) const = default;

    /// d/dx_i in the given alphabet (0 = p, 1 = q, ...).
    MultiSeries partial_derivative(int alphabet, int i) const;
    /// Multiply by the variable x_i of the given alphabet.
    MultiSeries multiply_by_variable(int alphabet, int i) const;
    MultiSeries multiply_by_t(int k) const;

private:
    void check_compatible(const MultiSeries& o) const;
    int arity_;
    MSCaps caps_;
    std::map<MSKey, ScalarQb> terms_;
};

/// log of a series with constant term 1, within its caps.
MultiSeries series_log(const MultiSeries& a);
/// exp of a series with constant term 0, within its caps.
MultiSeries series_exp(const MultiSeries& a);

}  // namespace jackmap
