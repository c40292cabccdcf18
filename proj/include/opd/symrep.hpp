#pragma once

#include <string>
#include <vector>

#include "opd/perm.hpp"
#include "opd/sparse.hpp"

namespace opd {

/// A representation of Σ_n on a graded basis. Generator matrices are those
/// of the adjacent transpositions s_0..s_{n-2}; they preserve the degree of
/// every basis vector.
struct SymRep {
    int n = 1;
    std::vector<int> deg;              // degree per basis vector
    std::vector<std::string> labels;   // optional; empty or size dim()
    std::vector<SparseMatrix> gens;    // n-1 matrices, dim x dim

    int dim() const { return static_cast<int>(deg.size()); }

    static SymRep trivial(int n, int degree = 0);
    static SymRep sign(int n, int degree = 0);
    static SymRep regular(int n);
    static SymRep zero(int n) { return SymRep{n, {}, {}, std::vector<SparseMatrix>(std::max(0, n - 1))}; }

    /// Matrix of g via its factorization into adjacent transpositions.
    /// Functorial: act(g*h) = act(g) * act(h).
    SparseMatrix act(const Perm& g) const;

    /// Exact Coxeter-relation check; returns a human-readable failure list.
    std::vector<std::string> checkRelations() const;

    /// Trace of a class representative per partition of n (ungraded).
    Rat character(const std::vector<int>& partition) const;
    /// Graded trace: degree -> trace restricted to that degree.
    std::vector<std::pair<int, Rat>> gradedCharacter(const std::vector<int>& partition) const;
};

/// Induction Ind_{Σ_a x Σ_b}^{Σ_{a+b}} (A ⊗ B) on the basis
/// (S, x, y): S an a-subset of {0..a+b-1} in lexicographic order, x, y basis
/// vectors of A, B. Degrees add.
SymRep induce(const SymRep& a, const SymRep& b);

/// Coinvariants data: proj * sect = id, sect * proj = averaging idempotent.
struct Coinv {
    int dim = 0;
    std::vector<int> deg;   // degrees of the chosen basis
    SparseMatrix proj;      // ambient -> coinvariants
    SparseMatrix sect;      // coinvariants -> ambient
};

/// Coinvariants of rep under the subgroup generated by the listed elements
/// (pass the full element list, e.g. Perm::all(n) or young_elements).
/// Characteristic-zero only: uses the averaging idempotent; the chosen basis
/// consists of the first independent columns of the idempotent.
Coinv coinvariants(const SymRep& rep, const std::vector<Perm>& subgroupElements);

/// Coinvariants of V ⊗ x^{⊗w} under Σ_w, where V is a Σ_w-representation and
/// x is a graded space given by (degree, multiplicity) pairs expanded into a
/// basis list xdeg. Ambient basis: (f, v) with f: w -> x-basis, column index
/// fIdx * dimV + v, functions enumerated lexicographically.
/// Σ_w permutes tensor positions with Koszul signs and acts on V.
Coinv tensor_power_coinvariants(const SymRep& V, const std::vector<int>& xdeg, int w);

}  // namespace opd
