#include "jackmap/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace jackmap {

Perm::Perm(int n) : img_(static_cast<size_t>(n)) {
    std::iota(img_.begin(), img_.end(), 0);
}

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
        if (v < 0 || v >= static_cast<int>(img_.size()) || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("Perm: not a bijection");
        seen[static_cast<size_t>(v)] = true;
    }
}

Perm Perm::compose(const Perm& other) const {
    if (n() != other.n()) throw std::invalid_argument("Perm: size mismatch");
    std::vector<int> r(img_.size());
    for (size_t i = 0; i < img_.size(); ++i)
        r[i] = img_[static_cast<size_t>(other.img_[i])];
    return Perm(std::move(r));
}

Partition Perm::cycle_type() const {
    std::vector<bool> seen(img_.size(), false);
    std::vector<int> cycles;
    for (size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<size_t>(img_[j]);
            ++len;
        }
        cycles.push_back(len);
    }
    return Partition(std::move(cycles));
}

std::vector<int> Perm::fixed_points() const {
    std::vector<int> f;
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] == static_cast<int>(i)) f.push_back(static_cast<int>(i));
    return f;
}

Perm class_representative(const Partition& la) {
    std::vector<int> img(static_cast<size_t>(la.size()));
    int pos = 0;
    for (int part : la.parts()) {
        for (int j = 0; j < part; ++j)
            img[static_cast<size_t>(pos + j)] = pos + (j + 1) % part;
        pos += part;
    }
    return Perm(std::move(img));
}

mpz_class conjugacy_class_size(const Partition& la) {
    return factorial(la.size()) / z_factor(la);
}

void for_each_permutation(int n, const std::function<void(const Perm&)>& f) {
    std::vector<int> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    do {
        f(Perm(std::vector<int>(img)));
    } while (std::next_permutation(img.begin(), img.end()));
}

mpz_class count_factorizations(const Partition& pi, const Partition& mu, const Partition& nu) {
    int n = pi.size();
    if (mu.size() != n || nu.size() != n)
        throw std::invalid_argument("count_factorizations: sizes must agree");
    if (n == 0) return 1;
    // conjugation invariance: fix one s+ in C_mu, scale by the class size
    Perm rep = class_representative(mu);
    mpz_class hits = 0;
    for_each_permutation(n, [&](const Perm& sm) {
        if (sm.cycle_type() == nu && rep.compose(sm).cycle_type() == pi) ++hits;
    });
    return hits * conjugacy_class_size(mu);
}

Rat hypermap_count_alpha1(const Partition& pi, const Partition& mu, const Partition& nu) {
    Rat r(z_factor(pi));
    r /= Rat(factorial(pi.size()));
    r *= Rat(count_factorizations(pi, mu, nu));
    r.canonicalize();
    return r;
}

mpz_class marked_hypermap_count(const Partition& pi, const Partition& mu, const Partition& nu) {
    int n = pi.size();
    if (n < mu.size() || n < nu.size())
        throw std::invalid_argument("marked_hypermap_count: |pi| must dominate |mu|, |nu|");
    if (n == 0) return 1;
    Partition mubar = mu.pad_ones(n - mu.size());
    Partition nubar = nu.pad_ones(n - nu.size());
    long a = n - mu.size();  // marked (+) faces
    long b = n - nu.size();  // marked (-) faces
    Perm rep = class_representative(mubar);
    long fplus = static_cast<long>(rep.fixed_points().size());
    mpz_class raw = 0;
    for_each_permutation(n, [&](const Perm& sm) {
        if (!(sm.cycle_type() == nubar) || !(rep.compose(sm).cycle_type() == pi)) return;
        auto fixm = sm.fixed_points();
        long fminus = static_cast<long>(fixm.size());
        long common = 0;
        for (int v : fixm)
            if (rep(v) == v) ++common;
        // choose disjoint marked sets S+ (from Fix s+) and S- (from Fix s-);
        // only the common fixed points interact
        mpz_class ways = 0;
        for (long i = 0; i <= std::min(common, a); ++i)
            ways += binomial(common, i) * binomial(fplus - common, a - i) *
                    binomial(fminus - i, b);
        raw += ways;
    });
    raw *= conjugacy_class_size(mubar);
    // vertex labelling: z_pi / n!
    mpz_class num = raw * z_factor(pi);
    mpz_class den = factorial(n);
    if (num % den != 0)
        throw std::logic_error("marked_hypermap_count: normalization is not integral");
    return num / den;
}

}  // namespace jackmap
