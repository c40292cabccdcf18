#include <functional>

#include "doctest.h"
#include "opd/operad.hpp"
#include "opd/symseq.hpp"

using namespace opd;

namespace {

SymSeq concentrated(int N, int arity, int dim, int degree) {
    SymSeq s = SymSeq::zero(N);
    SymRep r;
    r.n = arity;
    r.deg.assign(dim, degree);
    for (int i = 0; i < dim; ++i) r.labels.push_back("x" + std::to_string(i));
    r.gens.assign(std::max(0, arity - 1), SparseMatrix::identity(dim));
    s.terms[arity] = std::move(r);
    return s;
}

SymSeq signSeq(int N) {
    SymSeq s = SymSeq::zero(N);
    for (int n = 1; n <= N; ++n) s.terms[n] = SymRep::sign(n);
    return s;
}

long bell(int n) {
    // brute-force set partition count
    std::function<long(int)> rec = [&](int m) -> long {
        if (m == 0) return 1;
        long total = 0;
        for (int k = 0; k < m; ++k) total += binomial(m - 1, k) * rec(k);
        return total;
    };
    return rec(n);
}

bool charsEqual(const SymSeq& a, const SymSeq& b) {
    if (a.maxArity != b.maxArity) return false;
    for (int n = 1; n <= a.maxArity; ++n) {
        ClassFunction ca = a.characterAt(n), cb = b.characterAt(n);
        if (ca.values != cb.values) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("day convolution dimensions") {
    // both concentrated in arity 1, dims 2 and 3: arity-2 term has dim 2*2*3
    SymSeq a = concentrated(3, 1, 2, 0), b = concentrated(3, 1, 3, 0);
    SymSeq d = day_convolution(a, b);
    CHECK(d.dim(1) == 0);
    CHECK(d.dim(2) == 12);
    CHECK(d.checkActions().empty());

    CHECK(day_convolution(a, SymSeq::zero(3)).isZero());

    SymSeq com = com_operad(3)->seq();
    SymSeq dc = day_convolution(com, com);
    CHECK(dc.dim(2) == 2);  // C(2,1)*1*1
    CHECK(dc.dim(3) == 6);  // C(3,1) + C(3,2) = 3 + 3
}

TEST_CASE("day convolution is symmetric on characters") {
    SymSeq A = ass_operad(4)->seq();
    SymSeq L = lie_operad(4)->seq();
    SymSeq ab = day_convolution(A, L), ba = day_convolution(L, A);
    CHECK(charsEqual(ab, ba));
}

TEST_CASE("levelwise tensor") {
    SymSeq trivAll = com_operad(4)->seq();  // one-dimensional trivial in every arity
    SymSeq A = ass_operad(4)->seq();
    SymSeq t = levelwise_tensor(A, trivAll);
    CHECK(charsEqual(t, A));  // unit for the levelwise product

    // sign twist squares to the trivial twist
    SymSeq s2 = levelwise_tensor(signSeq(4), signSeq(4));
    CHECK(charsEqual(s2, trivAll));

    // Ass ⊗_lev Ass at arity 2: 4-dimensional, character of regular ⊗ regular
    SymSeq aa = levelwise_tensor(A, A);
    CHECK(aa.dim(2) == 4);
    CHECK(aa.characterAt(2).dimension() == DegPoly{{0, Rat(4)}});
    CHECK(aa.characterAt(2).values[1] == DegPoly{});  // swap class has trace 0*0
    CHECK(aa.checkActions().empty());
}

TEST_CASE("compose dimensions against brute force and plethysm") {
    const int N = 4;
    SymSeq com = com_operad(N)->seq();
    SymSeq ass = ass_operad(N)->seq();
    SymSeq lie = lie_operad(N)->seq();
    SymSeq one = SymSeq::unit(N);

    SymSeq cc = compose(com, com);
    for (int n = 1; n <= N; ++n) CHECK(cc.dim(n) == bell(n));

    SymSeq aa = compose(ass, ass);
    CHECK(aa.dim(2) == 4);
    CHECK(aa.dim(3) == 24);

    // unit laws
    SymSeq au = compose(ass, one), ua = compose(one, ass);
    CHECK(charsEqual(au, ass));
    CHECK(charsEqual(ua, ass));

    // plethysm oracle agreement, including graded cases
    std::vector<SymSeq> seqs{one, com, ass, lie, spectral_lie_operad(N)->seq(),
                             pois_operad(N, 2)->seq()};
    for (auto& A : seqs)
        for (auto& B : seqs) {
            SymSeq ab = compose(A, B, false);
            auto pred = [&](int n) { return plethysm_dim(A.characters(), B.characters(), n); };
            for (int n = 1; n <= N; ++n) {
                DegPoly expect = pred(n);
                DegPoly got;
                for (int d : ab.term(n).deg) got[d] += Rat(1);
                CHECK(got == expect);
            }
        }
}

TEST_CASE("compose actions are genuine representations and associative in character") {
    const int N = 4;
    SymSeq com = com_operad(N)->seq();
    SymSeq lie = lie_operad(N)->seq();
    SymSeq cl = compose(com, lie);
    CHECK(cl.checkActions().empty());

    SymSeq left = compose(cl, com);
    SymSeq right = compose(com, compose(lie, com));
    CHECK(left.checkActions().empty());
    CHECK(charsEqual(left, right));
}

TEST_CASE("suspension of sequences") {
    const int N = 4;
    SymSeq com = com_operad(N)->seq();
    SymSeq s = suspend(com, 1);
    for (int n = 1; n <= N; ++n) {
        CHECK(s.term(n).dim() == 1);
        CHECK(s.term(n).deg[0] == n - 1);
        if (n >= 2) CHECK(s.term(n).gens[0].get(0, 0) == Rat(-1));  // sign action
    }
    CHECK(suspend(com, 0).term(3).deg == com.term(3).deg);

    // round trip
    SymSeq rt = suspend(suspend(com, 2), -2);
    CHECK(charsEqual(rt, com));

    // spectral-Lie shadow degrees: arity k in degree 1-k, dim (k-1)!
    SymSeq sl = suspend(lie_operad(N)->seq(), -1);
    for (int k = 1; k <= N; ++k) {
        CHECK(sl.dim(k) == factorial(k - 1));
        CHECK(sl.term(k).deg[0] == 1 - k);
    }

    // total dimension preserved, degrees shifted by exactly k(n-1)
    SymSeq p2 = pois_operad(N, 2)->seq();
    SymSeq sp = suspend(p2, 3);
    for (int n = 1; n <= N; ++n) {
        CHECK(sp.dim(n) == p2.dim(n));
        for (int i = 0; i < sp.dim(n); ++i) CHECK(sp.term(n).deg[i] == p2.term(n).deg[i] + 3 * (n - 1));
    }
}

TEST_CASE("termwise dual") {
    const int N = 4;
    SymSeq com = com_operad(N)->seq();
    CHECK(charsEqual(termwise_dual(com), com));  // degree-0 sequences unchanged

    SymSeq s = suspend(com, 1);
    SymSeq ds = termwise_dual(s);
    for (int n = 1; n <= N; ++n) CHECK(ds.term(n).deg[0] == -(n - 1));

    SymSeq p2 = pois_operad(N, 2)->seq();
    SymSeq dp = termwise_dual(p2);
    GradedSpace g3 = dp.graded(3);
    CHECK(g3.dims == std::map<int, int>{{0, 1}, {-1, 3}, {-2, 2}});

    // double dual is the identity on dims and characters
    CHECK(charsEqual(termwise_dual(dp), p2));
    CHECK(dp.checkActions().empty());
}

TEST_CASE("free algebra dimensions") {
    const int N = 4;
    GradedSpace x;
    x.add(0, 1);

    GradedSpace fc = free_algebra(com_operad(N)->seq(), x);
    CHECK(fc.dims == std::map<int, int>{{0, 4}});  // one monomial per weight 1..4

    GradedSpace fa = free_algebra(ass_operad(3)->seq(), x);
    CHECK(fa.total() == 3);  // one word-class per length

    CHECK(free_algebra(ass_operad(3)->seq(), GradedSpace{}).total() == 0);

    // oracle: coinvariant dimension from the characteristic
    GradedSpace x2;
    x2.add(0, 2);
    SymSeq lie = lie_operad(N)->seq();
    GradedSpace fl = free_algebra(lie, x2);
    SymFun f(N), g(N);
    for (auto& chi : lie.characters()) f = f + SymFun::characteristic(chi, N);
    ClassFunction cx;
    cx.n = 1;
    cx.values = {DegPoly{{0, Rat(2)}}};
    g = g + SymFun::characteristic(cx, N);
    SymFun comp = f.plethysm(g);
    DegPoly expect;
    for (int n = 1; n <= N; ++n) expect = dp_add(expect, comp.coinvariantDimensionAt(n));
    DegPoly got;
    for (auto& [d, m] : fl.dims) got[d] = Rat(m);
    CHECK(got == expect);

    // graded input with odd generator: free Com is the free graded-commutative
    // algebra: odd square vanishes, so weights 2..N contribute nothing
    GradedSpace odd;
    odd.add(1, 1);
    GradedSpace fo = free_algebra(com_operad(N)->seq(), odd);
    CHECK(fo.dims == std::map<int, int>{{1, 1}});
}

TEST_CASE("symseq json round trip") {
    SymSeq p2 = pois_operad(3, 2)->seq();
    SymSeq back = symseq_from_json(symseq_to_json(p2));
    CHECK(back.maxArity == p2.maxArity);
    for (int n = 1; n <= 3; ++n) {
        CHECK(back.term(n).deg == p2.term(n).deg);
        CHECK(back.term(n).labels == p2.term(n).labels);
        for (int t = 0; t + 1 < n; ++t) CHECK(back.term(n).gens[t] == p2.term(n).gens[t]);
    }
    // serialization is deterministic
    CHECK(symseq_to_json(p2) == symseq_to_json(back));
}
