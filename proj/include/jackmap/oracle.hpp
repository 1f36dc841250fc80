#pragma once

#include "jackmap/partition.hpp"
#include "jackmap/scalar.hpp"

namespace jackmap {

/// Permutation of {0..n-1} by its image table.
class Perm {
public:
    explicit Perm(int n);
    explicit Perm(std::vector<int> images);
    int n() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
    Perm compose(const Perm& other) const;  // this after other
    Partition cycle_type() const;
    std::vector<int> fixed_points() const;
    bool operator==(const Perm&) const = default;

private:
    std::vector<int> img_;
};

/// One representative of the conjugacy class of cycle type la in S_{|la|}.
Perm class_representative(const Partition& la);
/// |C_la| = n! / z_la.
mpz_class conjugacy_class_size(const Partition& la);
/// Visit every permutation of S_n.
void for_each_permutation(int n, const std::function<void(const Perm&)>& f);

/// |{(s+, s-) : type(s+) = mu, type(s-) = nu, type(s+ s-) = pi}|; sizes must
/// agree. Computed over one representative of mu's class scaled by |C_mu|.
mpz_class count_factorizations(const Partition& pi, const Partition& mu, const Partition& nu);

/// (z_pi / n!) count_factorizations: the vertex-labelled hypermap count, which
/// must equal c^pi_{mu,nu}(1).
Rat hypermap_count_alpha1(const Partition& pi, const Partition& mu, const Partition& nu);

/// Marked count |OH^pi_{mu,nu}|: factorization pairs of the padded types with
/// disjoint marked fixed-point sets (|pi|-|mu| on the (+) side, |pi|-|nu| on
/// the (-) side), normalized by z_pi / n!. Must equal g^pi_{mu,nu}(1).
mpz_class marked_hypermap_count(const Partition& pi, const Partition& mu, const Partition& nu);

}  // namespace jackmap
