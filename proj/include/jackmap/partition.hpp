#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace jackmap {

/// Integer partition: weakly decreasing list of positive parts. The empty
/// partition is valid and denotes the unit index everywhere (p_{} = 1, z = 1).
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const;               // |lambda|
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int part(int idx) const { return parts_.at(static_cast<size_t>(idx)); }
    int max_part() const { return parts_.empty() ? 0 : parts_.front(); }

    int mult(int i) const;          // m_i(lambda)
    std::map<int, int> mult_map() const;

    Partition strip_ones() const;             // lambda \ 1^{m_1}
    Partition pad_ones(int k) const;          // lambda u 1^k
    Partition union_with(const Partition& other) const;
    Partition add_part(int i) const;
    Partition remove_part(int i) const;       // erase one part == i; throws if absent
    Partition minus(const Partition& xi) const;  // multiset difference; xi must be contained
    bool contains(const Partition& xi) const; // sub-multiset test

    bool operator==(const Partition&) const = default;
    // Canonical total order: graded by size, then reverse-lexicographic within
    // a grade, so that partitions_of(3) reads [3], [2,1], [1,1,1]. Map
    // iteration in this order is what makes all table output deterministic.
    std::strong_ordering operator<=>(const Partition& o) const;

    std::string to_string() const;  // "[3,2,1]", "[]" for the empty partition

private:
    std::vector<int> parts_;
};

mpz_class z_factor(const Partition& la);
mpz_class factorial(long n);
mpz_class binomial(long n, long k);

/// true iff |mu| = |la| and every prefix sum of mu is <= that of la.
bool dominance_leq(const Partition& mu, const Partition& la);

/// All partitions of n, canonical (reverse-lexicographic) order; n = 0 -> {[]}.
std::vector<Partition> partitions_of(int n);

/// All partitions of 0..n in the canonical graded order.
std::vector<Partition> partitions_up_to(int n);

/// prod_i C(m_i(la), m_i(xi)) if xi is a sub-multiset of la, else 0: the
/// number of ways to pick part positions of la realizing the split xi u (la\xi).
mpz_class split_multiplicity(const Partition& la, const Partition& xi);

/// All distinct sub-multisets of la's parts (as partitions), canonical order.
std::vector<Partition> sub_partitions(const Partition& la);

}  // namespace jackmap
