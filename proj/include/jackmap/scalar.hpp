#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace jackmap {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense univariate polynomial over Z in the deformation variable b = alpha-1.
/// Coefficients are stored constant-term first; no trailing zeros; the empty
/// vector is the zero polynomial.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long> coeffs);
    explicit IntPoly(std::vector<Int> coeffs);
    static IntPoly constant(Int c);
    static IntPoly var();  // b

    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& lc() const;  // leading coefficient; poly must be nonzero
    Int coeff(int k) const { return k >= 0 && k < (int)c_.size() ? c_[k] : Int(0); }

    IntPoly operator+(const IntPoly&) const;
    IntPoly operator-(const IntPoly&) const;
    IntPoly operator*(const IntPoly&) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly&) const = default;

    Int content() const;          // gcd of coefficients, >= 0 (0 for zero poly)
    IntPoly primitive_part() const;
    Rat eval(const Rat& x) const;
    std::string to_string() const;  // e.g. "b^2+2*b+1"

private:
    void trim();
    std::vector<Int> c_;
};

/// gcd in Z[b], primitive with positive leading coefficient (1 for coprime).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);
/// exact division; throws if the division leaves a remainder.
IntPoly poly_divexact(const IntPoly& a, const IntPoly& d);

/// Exact rational function in b = alpha - 1 over Z: every coefficient of the
/// library lives here. Canonical form: gcd(num, den) a unit, den != 0 with
/// positive leading coefficient, integer contents reduced. Equality of
/// canonical forms is plain field equality.
class ScalarQb {
public:
    ScalarQb() : num_(), den_{1} {}
    ScalarQb(long v) : num_(IntPoly::constant(v)), den_{1} {}
    ScalarQb(const Int& v) : num_(IntPoly::constant(v)), den_{1} {}
    ScalarQb(IntPoly num, IntPoly den);

    static ScalarQb from_rat(const Rat& q);
    static ScalarQb b() { return ScalarQb(IntPoly::var(), IntPoly{1}); }
    static ScalarQb alpha() { return ScalarQb(IntPoly{1, 1}, IntPoly{1}); }  // b+1

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    ScalarQb operator+(const ScalarQb&) const;
    ScalarQb operator-(const ScalarQb&) const;
    ScalarQb operator*(const ScalarQb&) const;
    ScalarQb operator/(const ScalarQb&) const;  // throws on zero divisor
    ScalarQb operator-() const;
    ScalarQb& operator+=(const ScalarQb& o) { return *this = *this + o; }
    ScalarQb& operator-=(const ScalarQb& o) { return *this = *this - o; }
    ScalarQb& operator*=(const ScalarQb& o) { return *this = *this * o; }
    ScalarQb& operator/=(const ScalarQb& o) { return *this = *this / o; }
    ScalarQb inv() const;
    ScalarQb pow(int e) const;  // e >= 0
    bool operator==(const ScalarQb&) const = default;

    /// Coefficient list in b (constant first) iff the denominator is constant.
    std::optional<std::vector<Rat>> as_polynomial() const;
    /// Substitute b = alpha0 - 1; throws on a pole.
    Rat eval_at_alpha(const Rat& alpha0) const;

    std::string to_string() const;

private:
    void canonicalize();
    IntPoly num_, den_;
};

inline ScalarQb operator*(long c, const ScalarQb& x) { return ScalarQb(c) * x; }

}  // namespace jackmap
