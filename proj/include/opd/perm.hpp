#pragma once

#include <string>
#include <vector>

namespace opd {

/// Permutation of {0..n-1} in one-line notation: i -> p[i].
class Perm {
public:
    Perm() = default;
    explicit Perm(int n) : p_(n) {
        for (int i = 0; i < n; ++i) p_[i] = i;
    }
    static Perm fromOneLine(std::vector<int> p);
    /// Adjacent transposition s_i swapping i and i+1 (0-based) in Σ_n.
    static Perm transposition(int n, int i);

    int n() const { return static_cast<int>(p_.size()); }
    int operator()(int i) const { return p_[i]; }
    const std::vector<int>& oneLine() const { return p_; }

    /// Composition of functions: (a*b)(i) = a(b(i)).
    Perm operator*(const Perm& o) const;
    Perm inverse() const;
    int sign() const;
    bool isIdentity() const;

    bool operator==(const Perm& o) const { return p_ == o.p_; }
    bool operator<(const Perm& o) const { return p_ < o.p_; }

    /// Factorization into adjacent transpositions, composition order:
    /// *this == s_{w[0]} * s_{w[1]} * ... * s_{w.back()}.
    std::vector<int> adjacentWord() const;

    /// Cycle type as a partition (weakly decreasing).
    std::vector<int> cycleType() const;

    std::string str() const;

    /// All elements of Σ_n in lexicographic one-line order (memoized, n <= 8).
    static const std::vector<Perm>& all(int n);

private:
    std::vector<int> p_;
};

/// Partitions of n, each weakly decreasing, listed in lexicographically
/// sorted order (the canonical conjugacy-class order).
const std::vector<std::vector<int>>& partitions_of(int n);

/// A permutation with the given cycle type, cycles on consecutive blocks.
Perm class_representative(const std::vector<int>& partition);

/// |centralizer| of the class: prod(i^{m_i} m_i!).
long z_of_partition(const std::vector<int>& partition);

long factorial(int n);
long binomial(int n, int k);

/// Elements of the Young subgroup of Σ_n with the given blocks
/// (blocks: disjoint position sets covering a subset of {0..n-1}; positions
/// outside any block are fixed).
std::vector<Perm> young_elements(int n, const std::vector<std::vector<int>>& blocks);

/// Koszul sign of rearranging factors x_0 ⊗ … ⊗ x_{m-1} with degrees degs
/// into x_{pi(0)} ⊗ … ⊗ x_{pi(m-1)}: product of (-1)^{degs[pi(i)]*degs[pi(j)]}
/// over pairs i < j with pi(i) > pi(j).
int koszul_sign(const std::vector<int>& degs, const std::vector<int>& pi);

/// Stable sort order of keys: returns pi with keys[pi[0]] <= keys[pi[1]] <= ...
std::vector<int> sorting_order(const std::vector<int>& keys);

}  // namespace opd
