#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "opd/symseq.hpp"

namespace opd {

class Operad;
using OperadPtr = std::shared_ptr<const Operad>;

/// Binary construction tree for a basis element: internal nodes name an
/// arity-2 basis element, leaves carry input letters (0-based).
struct Recipe {
    int gen2 = -1;  // arity-2 basis index, or -1 at a leaf
    int leaf = -1;
    std::vector<Recipe> kids;

    static Recipe leafOf(int letter) {
        Recipe r;
        r.leaf = letter;
        return r;
    }
    static Recipe node(int gen2, Recipe l, Recipe r) {
        Recipe n;
        n.gen2 = gen2;
        n.kids = {std::move(l), std::move(r)};
        return n;
    }
};

/// An operad presented by partial compositions on a chosen basis.
/// Reduced: term 1 is one-dimensional in degree 0, spanned by the unit.
/// Structure matrices are built lazily and memoized; the matrix for
/// (m, i, q) maps O(m) ⊗ O(q) -> O(m+q-1) with column index a*dim(q) + b.
class Operad {
public:
    using Builder = std::function<SparseMatrix(const Operad&, int, int, int)>;

    Operad(std::string name, SymSeq seq, Builder builder,
           std::vector<std::vector<Recipe>> recipes = {});

    const std::string& name() const { return name_; }
    const SymSeq& seq() const { return seq_; }
    int maxArity() const { return seq_.maxArity; }
    int dim(int n) const { return seq_.dim(n); }
    const SymRep& term(int n) const { return seq_.term(n); }

    /// Partial composition matrix, slot i in 1..m; memoized.
    const SparseMatrix& comp(int m, int i, int q) const;

    /// a o_i b for coordinate vectors.
    SparseVec compose2(int m, int i, const SparseVec& a, int q, const SparseVec& b) const;

    /// Full composition gamma(x; y_1..y_j) via left-to-right partial
    /// compositions (no interchange signs arise in this order).
    SparseVec gammaAll(int j, const SparseVec& x,
                       const std::vector<std::pair<int, SparseVec>>& args) const;

    bool hasRecipes() const { return !recipes_.empty(); }
    const Recipe& recipe(int arity, int idx) const { return recipes_.at(arity).at(idx); }

private:
    std::string name_;
    SymSeq seq_;
    Builder builder_;
    std::vector<std::vector<Recipe>> recipes_;
    mutable std::map<std::tuple<int, int, int>, SparseMatrix> cache_;
    mutable std::recursive_mutex mu_;
};

/// Exhaustive axiom check up to maxArity: unit laws, sequential and parallel
/// associativity (with Koszul signs), equivariance against the generators.
/// Returns the list of violated identities; empty = pass.
std::vector<std::string> check_operad_axioms(const Operad& o, int maxArity);

/// The block permutation of Σ_{m+q-1} induced by (sigma, tau) at slot i:
/// sigma permutes the m slots with slot i fattened to width q, tau acts
/// inside the block. Slots 1-based; permutations 0-based on slot indices.
Perm composition_block_perm(const Perm& sigma, const Perm& tau, int i, int m, int q);

/// Degree-0 map of underlying sequences compatible with composition.
struct Morphism {
    OperadPtr source, target;
    std::vector<SparseMatrix> maps;  // index 1..N; maps[n]: dim_tgt(n) x dim_src(n)

    SparseVec apply(int arity, const SparseVec& v) const { return maps.at(arity).apply(v); }
    /// Violated identities (empty = valid operad morphism).
    std::vector<std::string> validate() const;
};

Morphism identity_morphism(const OperadPtr& o);
Morphism compose_morphisms(const Morphism& g, const Morphism& f);  // g after f
Morphism suspend_morphism(const Morphism& f, int k);

/// Unique multiplicative extension of arity-2 generator images along the
/// source's recipes. Throws if a recipe fails to reproduce its basis element.
Morphism morphism_from_gen2(const OperadPtr& source, const OperadPtr& target,
                            const std::vector<SparseVec>& gen2Images);

enum class Side { Left, Right };

/// A one-sided module presented by restriction: the target operad P viewed
/// as a module over f's source along a validated morphism f: O -> P.
struct SideModule {
    Side side = Side::Left;
    OperadPtr over;    // O
    OperadPtr target;  // P
    Morphism f;        // O -> P
};

SideModule module_along(const Morphism& f, Side side);

// ---- built-in operads (all reduced, arity-truncated) ----

OperadPtr one_operad(int N);
OperadPtr com_operad(int N);
OperadPtr ass_operad(int N);
/// actionTier: arities above it carry dimensions and labels but no action
/// matrices (kept lazy for large tables).
OperadPtr lie_operad(int N, int actionTier = -1);
/// Operadic suspension s^k O via the levelwise twist; k may be negative.
OperadPtr suspend_operad(const OperadPtr& o, int k);
/// Homology shadow of the spectral Lie operad: suspend(Lie, -1).
OperadPtr spectral_lie_operad(int N);
/// n-Poisson operad: Com ∘ s^{n-1}Lie with Leibniz-rule composition.
/// n = 1 aliases the associative operad.
OperadPtr pois_operad(int N, int n);

/// Registry lookup by name: "One", "Com", "Ass", "Lie", "SpectralLie",
/// "Pois2".."Pois9"; case-insensitive. Throws on unknown names.
OperadPtr builtin_operad(const std::string& name, int N);

// ---- built-in morphisms ----

Morphism augmentation(const OperadPtr& o, int N);
/// Classical bracket -> commutator embedding shadow.
Morphism lie_to_ass(int N);
/// Shadow of the stabilization inclusion: Pois(m) -> Pois(m+n), or -> Com
/// for n = infinity (pass n < 0). iota(m, 0) is the identity.
Morphism iota_shadow(int m, int n, int N);
/// Shadow of the bar-induced map: Pois(n+1) -> s Pois(n) for n >= 1, or
/// Ass -> One for n = 0. The bracket generator maps with the given scale.
Morphism beta_shadow(int n, int N, const Rat& scale = Rat(1));
/// Shadow of the suspension map O -> sO: identity in arity 1, zero above.
Morphism suspension_morphism_shadow(const OperadPtr& o);

}  // namespace opd
