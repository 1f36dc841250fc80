#include "jackmap/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace jackmap {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
    for (int p : parts_)
        if (p <= 0) throw std::invalid_argument("Partition: parts must be positive");
}

int Partition::size() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

int Partition::mult(int i) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
}

std::map<int, int> Partition::mult_map() const {
    std::map<int, int> m;
    for (int p : parts_) ++m[p];
    return m;
}

Partition Partition::strip_ones() const {
    std::vector<int> v;
    for (int p : parts_)
        if (p != 1) v.push_back(p);
    return Partition(std::move(v));
}

Partition Partition::pad_ones(int k) const {
    if (k < 0) throw std::invalid_argument("pad_ones: negative count");
    std::vector<int> v = parts_;
    v.insert(v.end(), static_cast<size_t>(k), 1);
    return Partition(std::move(v));
}

Partition Partition::union_with(const Partition& other) const {
    std::vector<int> v = parts_;
    v.insert(v.end(), other.parts_.begin(), other.parts_.end());
    return Partition(std::move(v));
}

Partition Partition::add_part(int i) const {
    std::vector<int> v = parts_;
    v.push_back(i);
    return Partition(std::move(v));
}

Partition Partition::remove_part(int i) const {
    std::vector<int> v = parts_;
    auto it = std::find(v.begin(), v.end(), i);
    if (it == v.end()) throw std::invalid_argument("remove_part: no such part");
    v.erase(it);
    return Partition(std::move(v));
}

Partition Partition::minus(const Partition& xi) const {
    if (!contains(xi)) throw std::invalid_argument("minus: not a sub-multiset");
    auto m = mult_map();
    for (auto& [p, c] : xi.mult_map()) m[p] -= c;
    std::vector<int> v;
    for (auto& [p, c] : m) v.insert(v.end(), static_cast<size_t>(c), p);
    return Partition(std::move(v));
}

bool Partition::contains(const Partition& xi) const {
    auto m = mult_map();
    for (auto& [p, c] : xi.mult_map()) {
        auto it = m.find(p);
        if (it == m.end() || it->second < c) return false;
    }
    return true;
}

std::strong_ordering Partition::operator<=>(const Partition& o) const {
    int sa = size(), sb = o.size();
    if (sa != sb) return sa <=> sb;
    // reverse-lexicographic within a grade: larger first part comes first
    size_t n = std::min(parts_.size(), o.parts_.size());
    for (size_t i = 0; i < n; ++i)
        if (parts_[i] != o.parts_[i]) return o.parts_[i] <=> parts_[i];
    return o.parts_.size() <=> parts_.size();
}

std::string Partition::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + "]";
}

mpz_class z_factor(const Partition& la) {
    mpz_class z = 1;
    for (auto& [i, m] : la.mult_map()) {
        z *= factorial(m);
        mpz_class ipow;
        mpz_ui_pow_ui(ipow.get_mpz_t(), static_cast<unsigned long>(i),
                      static_cast<unsigned long>(m));
        z *= ipow;
    }
    return z;
}

mpz_class factorial(long n) {
    mpz_class r;
    if (n < 0) throw std::invalid_argument("factorial: negative");
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

bool dominance_leq(const Partition& mu, const Partition& la) {
    if (mu.size() != la.size()) return false;
    long pm = 0, pl = 0;
    size_t n = std::max(mu.parts().size(), la.parts().size());
    for (size_t i = 0; i < n; ++i) {
        pm += i < mu.parts().size() ? mu.parts()[i] : 0;
        pl += i < la.parts().size() ? la.parts()[i] : 0;
        if (pm > pl) return false;
    }
    return true;
}

namespace {
void gen_parts(int n, int maxpart, std::vector<int>& cur,
               std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(std::vector<int>(cur));
        return;
    }
    for (int k = std::min(n, maxpart); k >= 1; --k) {
        cur.push_back(k);
        gen_parts(n - k, k, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative");
    std::vector<Partition> out;
    std::vector<int> cur;
    gen_parts(n, n, cur, out);
    return out;
}

std::vector<Partition> partitions_up_to(int n) {
    std::vector<Partition> out;
    for (int k = 0; k <= n; ++k)
        for (auto& p : partitions_of(k)) out.push_back(p);
    return out;
}

mpz_class split_multiplicity(const Partition& la, const Partition& xi) {
    if (!la.contains(xi)) return 0;
    mpz_class r = 1;
    auto ml = la.mult_map();
    for (auto& [p, c] : xi.mult_map()) r *= binomial(ml[p], c);
    return r;
}

std::vector<Partition> sub_partitions(const Partition& la) {
    std::vector<Partition> out;
    auto mmap = la.mult_map();
    std::vector<std::pair<int, int>> mm(mmap.begin(), mmap.end());
    std::vector<int> cur;
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == mm.size()) {
            out.emplace_back(std::vector<int>(cur));
            return;
        }
        auto [p, c] = mm[idx];
        for (int take = 0; take <= c; ++take) {
            for (int j = 0; j < take; ++j) cur.push_back(p);
            rec(idx + 1);
            for (int j = 0; j < take; ++j) cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace jackmap
