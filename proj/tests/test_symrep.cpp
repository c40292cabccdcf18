#include "doctest.h"
#include "opd/characters.hpp"
#include "opd/symrep.hpp"

using namespace opd;

TEST_CASE("permutation basics") {
    Perm id(4);
    CHECK(id.isIdentity());
    Perm c = class_representative({3});  // 3-cycle
    CHECK(c.sign() == 1);
    CHECK(c.cycleType() == std::vector<int>{3});
    // factorization reproduces the permutation
    for (const Perm& g : Perm::all(4)) {
        Perm prod(4);
        for (int i : g.adjacentWord()) prod = prod * Perm::transposition(4, i);
        CHECK(prod == g);
    }
    CHECK(Perm::all(4).size() == 24);
    CHECK(partitions_of(5).size() == 7);
    CHECK(z_of_partition({1, 1, 1}) == 6);
    CHECK(z_of_partition({2, 1}) == 2);
    CHECK(z_of_partition({3}) == 3);
}

TEST_CASE("representations act functorially") {
    SymRep reg = SymRep::regular(3);
    CHECK(reg.checkRelations().empty());
    for (const Perm& g : Perm::all(3))
        for (const Perm& h : Perm::all(3)) CHECK(reg.act(g * h) == reg.act(g) * reg.act(h));

    // identity acts as identity
    CHECK(reg.act(Perm(3)) == SparseMatrix::identity(6));

    // sign rep of Σ_3 on a 3-cycle: even, so [1]
    SymRep sgn = SymRep::sign(3);
    CHECK(sgn.act(class_representative({3})) == SparseMatrix::identity(1));

    // regular rep of Σ_2, swap: the 2x2 exchange matrix
    SymRep reg2 = SymRep::regular(2);
    SparseMatrix swap = reg2.act(Perm::transposition(2, 0));
    CHECK(swap.get(0, 1) == Rat(1));
    CHECK(swap.get(1, 0) == Rat(1));
    CHECK(swap.get(0, 0).isZero());
}

TEST_CASE("induction dimensions and structure") {
    // trivial ⊗ trivial of Σ_1 x Σ_1 induces the regular rep of Σ_2
    SymRep t1 = SymRep::trivial(1);
    SymRep ind = induce(t1, t1);
    CHECK(ind.n == 2);
    CHECK(ind.dim() == 2);
    CHECK(ind.checkRelations().empty());
    SparseMatrix swap = ind.act(Perm::transposition(2, 0));
    CHECK(swap.get(0, 0).isZero());  // permutes the two cosets

    // trivial Σ_1 ⊗ trivial Σ_2 -> 3-dim permutation rep of Σ_3
    SymRep ind3 = induce(SymRep::trivial(1), SymRep::trivial(2));
    CHECK(ind3.dim() == 3);
    CHECK(ind3.checkRelations().empty());
    // permutation character: values at classes (1,1,1),(2,1),(3) are 3,1,0
    CHECK(ind3.character({1, 1, 1}) == Rat(3));
    CHECK(ind3.character({2, 1}) == Rat(1));
    CHECK(ind3.character({3}) == Rat(0));
}

namespace {
// Induced character by the Frobenius formula, as an independent oracle:
// chi_Ind(g) = (1/|H|) sum over x in G with x^-1 g x in H of chi_H(x^-1 g x).
Rat induced_character_oracle(const SymRep& a, const SymRep& b, const Perm& g) {
    int na = a.n, nb = b.n, n = na + nb;
    Rat sum;
    for (const Perm& x : Perm::all(n)) {
        Perm c = x.inverse() * g * x;
        bool inH = true;
        for (int i = 0; i < na; ++i) inH &= c(i) < na;
        if (!inH) continue;
        std::vector<int> la(na), lb(nb);
        for (int i = 0; i < na; ++i) la[i] = c(i);
        for (int i = 0; i < nb; ++i) lb[i] = c(na + i) - na;
        SparseMatrix ma = a.act(Perm::fromOneLine(la));
        SparseMatrix mb = b.act(Perm::fromOneLine(lb));
        Rat tra, trb;
        for (int i = 0; i < a.dim(); ++i) tra += ma.get(i, i);
        for (int i = 0; i < b.dim(); ++i) trb += mb.get(i, i);
        sum += tra * trb;
    }
    return sum / Rat(factorial(na) * factorial(nb));
}
}  // namespace

TEST_CASE("induction character matches Frobenius formula") {
    SymRep s2 = SymRep::sign(2);
    SymRep ind = induce(s2, s2);  // sign x sign induced to Σ_4
    CHECK(ind.dim() == 6);
    CHECK(ind.checkRelations().empty());
    for (const auto& mu : partitions_of(4)) {
        Perm g = class_representative(mu);
        CHECK(ind.character(mu) == induced_character_oracle(s2, s2, g));
    }
}

TEST_CASE("induction associative on characters") {
    SymRep a = SymRep::regular(2), b = SymRep::trivial(1), c = SymRep::sign(2);
    SymRep left = induce(induce(a, b), c);
    SymRep right = induce(a, induce(b, c));
    for (const auto& mu : partitions_of(5)) CHECK(left.character(mu) == right.character(mu));
}

TEST_CASE("coinvariants") {
    // trivial rep: dimension unchanged
    SymRep t = SymRep::trivial(3);
    Coinv c = coinvariants(t, Perm::all(3));
    CHECK(c.dim == 1);

    // sign rep of Σ_2 under Σ_2: dim 0
    CHECK(coinvariants(SymRep::sign(2), Perm::all(2)).dim == 0);

    // regular rep of Σ_3 under Σ_3: dim 1
    SymRep reg = SymRep::regular(3);
    Coinv cr = coinvariants(reg, Perm::all(3));
    CHECK(cr.dim == 1);
    // e = sect*proj is idempotent and act(g)-invariant
    SparseMatrix e = cr.sect * cr.proj;
    CHECK(e * e == e);
    for (const Perm& g : Perm::all(3)) CHECK(reg.act(g) * e == e);

    // Young subgroup Σ_2 x Σ_1 inside Σ_3 on the regular rep: dim 3
    auto young = young_elements(3, {{0, 1}});
    CHECK(young.size() == 2);
    CHECK(coinvariants(reg, young).dim == 3);
}

TEST_CASE("tensor power coinvariants with Koszul signs") {
    // V = trivial Σ_2-rep, x one odd generator: x⊗x has a sign-swap, so
    // coinvariants vanish; with an even generator they survive.
    SymRep triv2 = SymRep::trivial(2);
    Coinv odd = tensor_power_coinvariants(triv2, {1}, 2);
    CHECK(odd.dim == 0);
    Coinv even = tensor_power_coinvariants(triv2, {0}, 2);
    CHECK(even.dim == 1);
    // sign rep with odd generator: swap acts by (-1)*(-1) = +1
    Coinv so = tensor_power_coinvariants(SymRep::sign(2), {1}, 2);
    CHECK(so.dim == 1);
    CHECK(so.deg == std::vector<int>{2});

    // regular rep of Σ_3 against a 2-dim even space: coinvariants of
    // QΣ_3 ⊗ x^{⊗3} have dimension (number of functions) = 8
    Coinv big = tensor_power_coinvariants(SymRep::regular(3), {0, 0}, 3);
    CHECK(big.dim == 8);
}

TEST_CASE("plethysm oracle basics") {
    // characters of Com (trivial in every arity)
    auto comChars = [](int N) {
        std::vector<ClassFunction> v;
        for (int a = 1; a <= N; ++a) v.push_back(character_of(SymRep::trivial(a)));
        return v;
    };
    auto assChars = [](int N) {
        std::vector<ClassFunction> v;
        for (int a = 1; a <= N; ++a) v.push_back(character_of(SymRep::regular(a)));
        return v;
    };
    // dim (Com∘Com)(2) = Bell(2) = 2
    auto d = plethysm_dim(comChars(2), comChars(2), 2);
    CHECK(d == DegPoly{{0, Rat(2)}});
    // dim (Com∘Com)(3) = Bell(3) = 5
    CHECK(plethysm_dim(comChars(3), comChars(3), 3) == DegPoly{{0, Rat(5)}});
    // dim (Ass∘Ass)(n) = 2^{n-1} n!
    CHECK(plethysm_dim(assChars(2), assChars(2), 2) == DegPoly{{0, Rat(4)}});
    CHECK(plethysm_dim(assChars(3), assChars(3), 3) == DegPoly{{0, Rat(24)}});
    CHECK(plethysm_dim(assChars(4), assChars(4), 4) == DegPoly{{0, Rat(192)}});
    // unit law: (A∘1)(n) = A(n) with 1 concentrated in arity 1
    auto unitChars = [](int N) {
        std::vector<ClassFunction> v;
        for (int a = 1; a <= N; ++a) {
            if (a == 1) {
                v.push_back(character_of(SymRep::trivial(1)));
            } else {
                ClassFunction z;
                z.n = a;
                z.values.assign(partitions_of(a).size(), DegPoly{});
                v.push_back(z);
            }
        }
        return v;
    };
    CHECK(plethysm_dim(assChars(4), unitChars(4), 4) == DegPoly{{0, Rat(24)}});
    CHECK(plethysm_dim(unitChars(4), assChars(4), 4) == DegPoly{{0, Rat(24)}});
}

TEST_CASE("graded plethysm respects Koszul rule") {
    // inner: one odd generator in arity 1; outer: trivial Σ_2.
    // (Com∘x)(2) = coinvariant-free two-fold product piece: dimension t^2
    // (the 2-dim induced space has a signed swap with a 1-dim quotient).
    std::vector<ClassFunction> outer, inner;
    for (int a = 1; a <= 2; ++a) outer.push_back(character_of(SymRep::trivial(a)));
    inner.push_back(character_of(SymRep::trivial(1, 1)));  // odd degree 1
    ClassFunction z;
    z.n = 2;
    z.values.assign(partitions_of(2).size(), DegPoly{});
    inner.push_back(z);
    CHECK(plethysm_dim(outer, inner, 2) == DegPoly{{2, Rat(1)}});
}
