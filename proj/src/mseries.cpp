#include "jackmap/mseries.hpp"

#include <numeric>

namespace jackmap {

namespace {
int out_size(const MSKey& k) {
    int s = 0;
    for (size_t i = 1; i < k.ps.size(); ++i) s += k.ps[i].size();
    return s;
}
MSKey empty_key(int arity) {
    MSKey k;
    k.ps.resize(static_cast<size_t>(arity));
    return k;
}
}  // namespace

MultiSeries MultiSeries::one(int arity, MSCaps caps) {
    MultiSeries s(arity, caps);
    s.add_term(empty_key(arity), 1);
    return s;
}

ScalarQb MultiSeries::coeff(const MSKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? ScalarQb(0) : it->second;
}

ScalarQb MultiSeries::constant_term() const { return coeff(empty_key(arity_)); }

bool MultiSeries::key_in_caps(const MSKey& k) const {
    if (static_cast<int>(k.ps.size()) != arity_) return false;
    return k.t >= 0 && k.t <= caps_.t_max && k.ps[0].size() <= caps_.p_max &&
           out_size(k) <= caps_.out_max;
}

void MultiSeries::add_term(const MSKey& k, const ScalarQb& c) {
    if (static_cast<int>(k.ps.size()) != arity_)
        throw std::invalid_argument("MultiSeries: key arity mismatch");
    if (!key_in_caps(k)) throw std::invalid_argument("MultiSeries: key exceeds caps");
    add_term_truncating(k, c);
}

void MultiSeries::add_term_truncating(const MSKey& k, const ScalarQb& c) {
    if (c.is_zero() || !key_in_caps(k)) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiSeries::check_compatible(const MultiSeries& o) const {
    if (arity_ != o.arity_ || !(caps_ == o.caps_))
        throw std::invalid_argument("MultiSeries: incompatible caps or arity");
}

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
    MultiSeries r = *this;
    r += o;
    return r;
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& o) {
    check_compatible(o);
    for (auto& [k, c] : o.terms_) add_term_truncating(k, c);
    return *this;
}

MultiSeries MultiSeries::operator-(const MultiSeries& o) const {
    check_compatible(o);
    MultiSeries r = *this;
    for (auto& [k, c] : o.terms_) r.add_term_truncating(k, -c);
    return r;
}

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
    check_compatible(o);
    MultiSeries r(arity_, caps_);
    for (auto& [ka, ca] : terms_)
        for (auto& [kb, cb] : o.terms_) {
            MSKey k;
            k.t = ka.t + kb.t;
            if (k.t > caps_.t_max) continue;
            k.ps.reserve(static_cast<size_t>(arity_));
            for (int i = 0; i < arity_; ++i)
                k.ps.push_back(ka.ps[static_cast<size_t>(i)].union_with(
                    kb.ps[static_cast<size_t>(i)]));
            r.add_term_truncating(k, ca * cb);
        }
    return r;
}

MultiSeries MultiSeries::operator*(const ScalarQb& c) const {
    MultiSeries r(arity_, caps_);
    if (c.is_zero()) return r;
    for (auto& [k, v] : terms_) r.add_term_truncating(k, v * c);
    return r;
}

MultiSeries MultiSeries::partial_derivative(int alphabet, int i) const {
    MultiSeries r(arity_, caps_);
    for (auto& [k, c] : terms_) {
        const Partition& la = k.ps[static_cast<size_t>(alphabet)];
        int m = la.mult(i);
        if (m == 0) continue;
        MSKey k2 = k;
        k2.ps[static_cast<size_t>(alphabet)] = la.remove_part(i);
        r.add_term_truncating(k2, c * ScalarQb(m));
    }
    return r;
}

MultiSeries MultiSeries::multiply_by_variable(int alphabet, int i) const {
    MultiSeries r(arity_, caps_);
    for (auto& [k, c] : terms_) {
        MSKey k2 = k;
        k2.ps[static_cast<size_t>(alphabet)] = k.ps[static_cast<size_t>(alphabet)].add_part(i);
        r.add_term_truncating(k2, c);
    }
    return r;
}

MultiSeries MultiSeries::multiply_by_t(int k) const {
    MultiSeries r(arity_, caps_);
    for (auto& [key, c] : terms_) {
        MSKey k2 = key;
        k2.t += k;
        r.add_term_truncating(k2, c);
    }
    return r;
}

MultiSeries series_log(const MultiSeries& a) {
    if (!a.constant_term().is_one())
        throw std::invalid_argument("series_log: constant term must be 1");
    MultiSeries x = a;  // x = a - 1
    MSKey k0;
    k0.ps.resize(static_cast<size_t>(a.arity()));
    x.add_term_truncating(k0, ScalarQb(-1));
    MultiSeries out(a.arity(), a.caps());
    MultiSeries pw = x;
    long sign = 1;
    for (long k = 1; !pw.is_zero(); ++k) {
        out += pw * ScalarQb::from_rat(Rat(sign, k));
        pw = pw * x;
        sign = -sign;
        // every key of x has positive total grade, so pw must die out
        if (k > 4L * (a.caps().t_max + a.caps().p_max + a.caps().out_max) + 8)
            throw std::logic_error("series_log: no convergence within caps");
    }
    return out;
}

MultiSeries series_exp(const MultiSeries& a) {
    if (!a.constant_term().is_zero())
        throw std::invalid_argument("series_exp: constant term must be 0");
    MultiSeries out = MultiSeries::one(a.arity(), a.caps());
    MultiSeries pw = a;
    Rat fact = 1;
    for (long k = 1; !pw.is_zero(); ++k) {
        fact *= k;
        out += pw * ScalarQb::from_rat(Rat(1) / fact);
        pw = pw * a;
        if (k > 4L * (a.caps().t_max + a.caps().p_max + a.caps().out_max) + 8)
            throw std::logic_error("series_exp: no convergence within caps");
    }
    return out;
}

}  // namespace jackmap
