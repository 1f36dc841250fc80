#include "jackmap/scalar.hpp"

#include <algorithm>

namespace jackmap {

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(Int c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

IntPoly IntPoly::var() { return IntPoly{0, 1}; }

bool IntPoly::is_one() const { return c_.size() == 1 && c_[0] == 1; }

const Int& IntPoly::lc() const {
    if (c_.empty()) throw std::logic_error("lc of zero polynomial");
    return c_.back();
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
    std::vector<Int> r = c_;
    for (auto& v : r) v = -v;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (c_.empty() || o.c_.empty()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    Int g = content();
    std::vector<Int> r = c_;
    for (auto& v : r) v /= g;
    return IntPoly(std::move(r));
}

Rat IntPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        const Int& a = c_[static_cast<size_t>(k)];
        if (a == 0) continue;
        Int mag = abs(a);
        if (!s.empty())
            s += (a > 0) ? "+" : "-";
        else if (a < 0)
            s += "-";
        bool unit = (mag == 1);
        if (k == 0) {
            s += mag.get_str();
        } else {
            if (!unit) s += mag.get_str() + "*";
            s += (k == 1) ? "b" : "b^" + std::to_string(k);
        }
    }
    return s;
}

namespace {

// rational-coefficient long division helpers used only by gcd/divexact;
// a QPoly is a dense constant-first vector of Rat without trailing zeros
using QPoly = std::vector<Rat>;

QPoly to_q(const IntPoly& p) {
    QPoly q;
    for (const auto& v : p.coeffs()) q.emplace_back(v);
    return q;
}

void q_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// in-place remainder of a by d (d nonzero); quotient optionally collected
void q_divrem(QPoly& a, const QPoly& d, QPoly* quot) {
    if (quot) quot->assign(a.size() > d.size() ? a.size() - d.size() + 1 : 1, Rat(0));
    while (a.size() >= d.size() && !a.empty()) {
        Rat f = a.back() / d.back();
        size_t shift = a.size() - d.size();
        if (quot) (*quot)[shift] = f;
        for (size_t i = 0; i < d.size(); ++i) a[shift + i] -= f * d[i];
        q_trim(a);
        if (a.size() < d.size()) break;
    }
    if (quot) q_trim(*quot);
}

IntPoly q_to_primitive_int(const QPoly& q) {
    if (q.empty()) return IntPoly();
    Int l = 1;
    for (const auto& v : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Int> c;
    for (const auto& v : q) {
        Rat w = v * Rat(l);
        w.canonicalize();
        c.emplace_back(w.get_num());
    }
    return IntPoly(std::move(c)).primitive_part();
}

}  // namespace

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) return IntPoly();
    QPoly u = to_q(a), v = to_q(b);
    while (!v.empty()) {
        q_divrem(u, v, nullptr);
        std::swap(u, v);
    }
    IntPoly g = q_to_primitive_int(u);
    if (!g.is_zero() && g.lc() < 0) g = -g;
    return g;
}

IntPoly poly_divexact(const IntPoly& a, const IntPoly& d) {
    if (d.is_zero()) throw std::invalid_argument("poly_divexact: zero divisor");
    if (a.is_zero()) return IntPoly();
    QPoly rem = to_q(a), quot;
    q_divrem(rem, to_q(d), &quot);
    if (!rem.empty()) throw std::logic_error("poly_divexact: nonzero remainder");
    std::vector<Int> c;
    for (auto& v : quot) {
        v.canonicalize();
        if (v.get_den() != 1) throw std::logic_error("poly_divexact: non-integral quotient");
        c.emplace_back(v.get_num());
    }
    return IntPoly(std::move(c));
}

ScalarQb::ScalarQb(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("ScalarQb: zero denominator");
    canonicalize();
}

ScalarQb ScalarQb::from_rat(const Rat& q) {
    return ScalarQb(IntPoly::constant(Int(q.get_num())), IntPoly::constant(Int(q.get_den())));
}

void ScalarQb::canonicalize() {
    if (num_.is_zero()) {
        den_ = IntPoly{1};
        return;
    }
    IntPoly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
        num_ = poly_divexact(num_, g);
        den_ = poly_divexact(den_, g);
    }
    Int cn = num_.content(), cd = den_.content();
    Int cg;
    mpz_gcd(cg.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (cg > 1) {
        std::vector<Int> n = num_.coeffs(), d = den_.coeffs();
        for (auto& v : n) v /= cg;
        for (auto& v : d) v /= cg;
        num_ = IntPoly(std::move(n));
        den_ = IntPoly(std::move(d));
    }
    if (den_.lc() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

ScalarQb ScalarQb::operator+(const ScalarQb& o) const {
    return ScalarQb(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ScalarQb ScalarQb::operator-(const ScalarQb& o) const {
    return ScalarQb(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

ScalarQb ScalarQb::operator*(const ScalarQb& o) const {
    return ScalarQb(num_ * o.num_, den_ * o.den_);
}

ScalarQb ScalarQb::operator/(const ScalarQb& o) const {
    if (o.is_zero()) throw std::domain_error("ScalarQb: division by zero");
    return ScalarQb(num_ * o.den_, den_ * o.num_);
}

ScalarQb ScalarQb::operator-() const {
    ScalarQb r = *this;
    r.num_ = -r.num_;
    return r;
}

ScalarQb ScalarQb::inv() const {
    if (is_zero()) throw std::domain_error("ScalarQb: inverse of zero");
    return ScalarQb(den_, num_);
}

ScalarQb ScalarQb::pow(int e) const {
    if (e < 0) throw std::invalid_argument("ScalarQb::pow: negative exponent");
    ScalarQb r = 1, base = *this;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::optional<std::vector<Rat>> ScalarQb::as_polynomial() const {
    if (den_.degree() > 0) return std::nullopt;
    std::vector<Rat> out;
    if (num_.is_zero()) return out;
    Rat d(den_.lc());
    for (const auto& c : num_.coeffs()) {
        Rat v = Rat(c) / d;
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

Rat ScalarQb::eval_at_alpha(const Rat& alpha0) const {
    Rat x = alpha0 - 1;
    Rat d = den_.eval(x);
    if (d == 0) throw std::domain_error("ScalarQb: pole at alpha = " + alpha0.get_str());
    Rat r = num_.eval(x) / d;
    r.canonicalize();
    return r;
}

std::string ScalarQb::to_string() const {
    if (den_.is_one()) return num_.to_string();
    std::string n = num_.to_string();
    std::string d = den_.to_string();
    int nz = 0;
    for (const auto& c : num_.coeffs())
        if (c != 0) ++nz;
    if (nz > 1) n = "(" + n + ")";
    if (den_.degree() > 0) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace jackmap
