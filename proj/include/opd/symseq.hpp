#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opd/characters.hpp"
#include "opd/symrep.hpp"

namespace opd {

/// Finite-dimensional integer-graded dimensions.
struct GradedSpace {
    std::map<int, int> dims;  // degree -> dim, entries positive

    int total() const {
        int t = 0;
        for (auto& [d, n] : dims) t += n;
        return t;
    }
    void add(int degree, int n = 1) {
        if (n == 0) return;
        dims[degree] += n;
        if (dims[degree] == 0) dims.erase(degree);
    }
    bool operator==(const GradedSpace& o) const { return dims == o.dims; }
    std::string str() const;
};

/// Arity-truncated symmetric sequence: terms 1..maxArity, arity 0 is zero.
/// Each term is a graded Σ_n-representation.
struct SymSeq {
    int maxArity = 0;
    std::vector<SymRep> terms;  // size maxArity+1, index 0 unused (zero)

    static SymSeq zero(int maxArity);
    /// The unit sequence: one-dimensional arity 1 in degree 0.
    static SymSeq unit(int maxArity);

    const SymRep& term(int n) const { return terms.at(n); }
    SymRep& term(int n) { return terms.at(n); }
    GradedSpace graded(int n) const;
    int dim(int n) const { return n <= maxArity ? terms[n].dim() : 0; }
    bool isZero() const;

    ClassFunction characterAt(int n) const { return character_of(terms[n]); }
    std::vector<ClassFunction> characters() const;

    /// Exact Coxeter-relation check across all terms.
    std::vector<std::string> checkActions() const;
};

/// Day convolution (A ⊗ B)(n) = ⊕_{a+b=n} Ind_{Σ_a x Σ_b}(A(a) ⊗ B(b)).
SymSeq day_convolution(const SymSeq& a, const SymSeq& b);

/// Levelwise tensor (A ⊗_lev B)(n) = A(n) ⊗ B(n), diagonal action.
SymSeq levelwise_tensor(const SymSeq& a, const SymSeq& b);

/// Basis bookkeeping of the composition product (A∘B)(n):
/// one summand A(j) for each set partition of {1..n} into j labeled blocks,
/// a B-basis element per block, blocks ordered by minimal element.
struct ComposeBasisElt {
    std::vector<std::vector<int>> blocks;  // sorted blocks, ordered by min
    std::vector<int> bIdx;                 // B-basis index per block
    int aIdx = 0;                          // A(j)-basis index
    int degree = 0;
};

struct ComposeTerm {
    std::vector<ComposeBasisElt> basis;
    std::map<std::string, int> index;  // encoded label -> basis position
};

std::string encode_compose_elt(const ComposeBasisElt& e);

/// The composition product A ∘ B. When withActions is false only dimensions,
/// degrees and labels are produced (generator matrices left empty).
SymSeq compose(const SymSeq& a, const SymSeq& b, bool withActions = true,
               std::vector<ComposeTerm>* basisOut = nullptr);

/// free_A(X) = ⊕_{1<=n<=maxArity} (A(n) ⊗ X^{⊗n})_{Σ_n}; the sum is truncated
/// at the sequence's arity bound. X is given by its graded dimensions.
GradedSpace free_algebra(const SymSeq& a, const GradedSpace& x);

/// Operadic suspension of the underlying sequence: degree shift k(n-1) and a
/// sign twist sgn^k at arity n. k may be negative.
SymSeq suspend(const SymSeq& a, int k);

/// Termwise dual: degrees negated, actions transposed.
SymSeq termwise_dual(const SymSeq& a);

/// Canonical JSON serialization (sorted keys, rationals as "num/den").
std::string symseq_to_json(const SymSeq& s);
SymSeq symseq_from_json(const std::string& text);

}  // namespace opd
