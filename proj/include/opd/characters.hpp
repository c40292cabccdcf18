#pragma once

#include <map>
#include <vector>

#include "opd/rational.hpp"
#include "opd/symrep.hpp"

namespace opd {

/// Laurent polynomial in the degree variable t with rational coefficients.
using DegPoly = std::map<int, Rat>;

DegPoly dp_add(const DegPoly& a, const DegPoly& b);
DegPoly dp_mul(const DegPoly& a, const DegPoly& b);
DegPoly dp_scale(const DegPoly& a, const Rat& c);

/// Graded class function on Σ_n: one Laurent polynomial per partition of n,
/// partitions in lexicographically sorted order (see partitions_of).
struct ClassFunction {
    int n = 0;
    std::vector<DegPoly> values;  // aligned with partitions_of(n)

    /// Value at the identity class = graded dimension.
    DegPoly dimension() const;
};

ClassFunction character_of(const SymRep& rep);

/// Symmetric function with graded coefficients, expressed in the power-sum
/// basis and truncated above the given weight: map partition -> coefficient.
/// The empty partition indexes the constant term.
class SymFun {
public:
    explicit SymFun(int truncation) : trunc_(truncation) {}

    int truncation() const { return trunc_; }
    void add(const std::vector<int>& mu, const DegPoly& c);
    const std::map<std::vector<int>, DegPoly>& terms() const { return terms_; }

    SymFun operator+(const SymFun& o) const;
    SymFun operator*(const SymFun& o) const;

    /// Frobenius characteristic of a graded Σ_n-character.
    static SymFun characteristic(const ClassFunction& chi, int truncation);

    /// Plethystic substitution F[G]; G must have no constant term. Degrees
    /// follow the super convention p_k[t^d x] = (-1)^{d(k-1)} t^{kd} p_k[x].
    SymFun plethysm(const SymFun& g) const;

    /// n! times the coefficient of p_1^n: the graded dimension of the
    /// underlying Σ_n-object in weight n.
    DegPoly dimensionAt(int n) const;

    /// Evaluation at p_k := 1 for all k, weight-n part: the graded dimension
    /// of the Σ_n-coinvariants of the underlying object.
    DegPoly coinvariantDimensionAt(int n) const;

private:
    int trunc_;
    std::map<std::vector<int>, DegPoly> terms_;
};

/// Graded dimension of (A∘B)(n) predicted by plethysm of Frobenius
/// characteristics; an oracle independent of the linear-algebra composition
/// product. Characters must be supplied for every arity 1..n.
DegPoly plethysm_dim(const std::vector<ClassFunction>& outer,
                     const std::vector<ClassFunction>& inner, int n);

}  // namespace opd
