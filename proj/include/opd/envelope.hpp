#pragma once

#include <map>
#include <string>
#include <vector>

#include "opd/sparse.hpp"
#include "opd/symseq.hpp"

namespace opd {

/// A finite-dimensional Lie algebra by structure constants:
/// [e_i, e_j] = sum_k c_{ij}^k e_k. Indices 0-based internally.
struct LiePresentation {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<SparseVec>> bracket;  // bracket[i][j]

    /// Violations of antisymmetry or the Jacobi identity (exact check).
    std::vector<std::string> validate() const;

    /// JSON: {"dim": d, "labels": [...], "brackets": [[i, j, [[k, "c"], ...]], ...]}
    /// with 1-based generator indices; omitted pairs have zero bracket.
    static LiePresentation parseJson(const std::string& text);
    std::string toJson() const;

    static LiePresentation abelian(int d);
    static LiePresentation heisenberg();
    static LiePresentation sl2();
    /// free two-step nilpotent algebra on g generators
    static LiePresentation nilpotent2(int generators);
};

/// The enveloping algebra with its ordered-monomial model up to total
/// weight W: straightening e_j e_i -> e_i e_j + [e_j, e_i] for j > i.
class Envelope {
public:
    Envelope(LiePresentation g, int maxWeight);

    int maxWeight() const { return W_; }
    const LiePresentation& algebra() const { return g_; }
    /// ordered monomials (weakly increasing index words), by weight then word
    const std::vector<std::vector<int>>& monomials() const { return monos_; }
    int monomialIndex(const std::vector<int>& mono) const;

    /// normal form of an arbitrary word (length <= W) in monomial coordinates
    SparseVec normalize(const std::vector<int>& word) const;

    /// product of two basis monomials
    SparseVec multiply(int a, int b) const;

    /// Diamond-lemma check: every overlap e_k e_j e_i (k > j > i) resolves
    /// identically along both rewriting routes; failures name the overlap.
    std::vector<std::string> checkConfluence() const;

    /// F_w as a subspace of the weight-<=W monomial space: the span of the
    /// normal forms of all words of length <= w.
    SparseMatrix filtrationSpan(int w) const;

private:
    LiePresentation g_;
    int W_;
    std::vector<std::vector<int>> monos_;
    std::map<std::vector<int>, int> monoIdx_;
    mutable std::map<std::vector<int>, SparseVec> nfMemo_;
};

struct PbwWeightRow {
    int weight = 0;
    long symDim = 0;      // dim Sym^w = C(w+d-1, d-1)
    int grDim = 0;        // dim F_w - dim F_{w-1}, exact ranks
    int comparisonRank = 0;  // rank of ordered products modulo F_{w-1}
    bool match = false;
};

struct PbwReport {
    std::string algebra;
    int maxWeight = 0;
    std::vector<std::string> jacobiFailures;
    std::vector<std::string> confluenceFailures;
    std::vector<PbwWeightRow> rows;
    bool exhaustive = false;  // F_W spans the whole weight-<=W model
    bool pass = false;
    /// degree-shift convention note carried in every report
    std::string conventionNote;
};

/// The PBW certificate: per weight <= W, dim Sym^w(g), dim gr_w U(g), and
/// the rank of the ordered-monomial comparison map, all by exact ranks.
PbwReport pbw_certificate(const LiePresentation& g, int maxWeight);

// ---- relative envelopes at the symmetric-sequence level ----

struct EnvelopeGrRow {
    int weight = 0;
    std::map<int, int> predicted;  // free functor on the dual suspended sequence
    std::map<int, int> viaBar;     // bar homology with its residual action, against x
    bool match = false;
};

struct EnvelopeGrReport {
    int k = 0, n = 0;
    std::vector<EnvelopeGrRow> rows;
    bool pass = false;
    std::string conventionNote;
};

/// Associated-graded dimensions of the relative envelope on the free algebra
/// over x: the predicted side is free over the k-fold suspension of the dual
/// k-Poisson sequence; the other side goes through the bar homology.
EnvelopeGrReport envelope_gr_dims(int k, int n, const GradedSpace& x, int maxWeight);

}  // namespace opd
