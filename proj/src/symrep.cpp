#include "opd/symrep.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opd {

SymRep SymRep::trivial(int n, int degree) {
    SymRep r;
    r.n = n;
    r.deg = {degree};
    r.labels = {"1"};
    r.gens.assign(std::max(0, n - 1), SparseMatrix::identity(1));
    return r;
}

SymRep SymRep::sign(int n, int degree) {
    SymRep r;
    r.n = n;
    r.deg = {degree};
    r.labels = {"sgn"};
    SparseMatrix m(1, 1);
    m.set(0, 0, Rat(-1));
    r.gens.assign(std::max(0, n - 1), m);
    return r;
}

SymRep SymRep::regular(int n) {
    const auto& elems = Perm::all(n);
    SymRep r;
    r.n = n;
    r.deg.assign(elems.size(), 0);
    std::map<Perm, int> idx;
    for (size_t i = 0; i < elems.size(); ++i) {
        idx[elems[i]] = static_cast<int>(i);
        r.labels.push_back(elems[i].str());
    }
    for (int t = 0; t + 1 < n; ++t) {
        Perm s = Perm::transposition(n, t);
        SparseMatrix m(static_cast<int>(elems.size()), static_cast<int>(elems.size()));
        for (size_t j = 0; j < elems.size(); ++j) m.set(idx[s * elems[j]], static_cast<int>(j), Rat(1));
        r.gens.push_back(std::move(m));
    }
    return r;
}

SparseMatrix SymRep::act(const Perm& g) const {
    if (g.n() != n) throw std::invalid_argument("SymRep::act: arity mismatch");
    SparseMatrix m = SparseMatrix::identity(dim());
    for (int i : g.adjacentWord()) m = m * gens[i];
    return m;
}

std::vector<std::string> SymRep::checkRelations() const {
    std::vector<std::string> bad;
    SparseMatrix id = SparseMatrix::identity(dim());
    for (int i = 0; i + 1 < n; ++i) {
        if (!(gens[i] * gens[i] == id)) bad.push_back("s_" + std::to_string(i) + "^2 != id");
        for (int j = i + 1; j + 1 < n; ++j) {
            SparseMatrix prod = gens[i] * gens[j];
            if (j == i + 1) {
                if (!(prod * prod * prod == id))
                    bad.push_back("braid relation fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            } else if (!(prod * prod == id)) {
                bad.push_back("commuting relation fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    return bad;
}

Rat SymRep::character(const std::vector<int>& partition) const {
    SparseMatrix m = act(class_representative(partition));
    Rat tr;
    for (int i = 0; i < dim(); ++i) tr += m.get(i, i);
    return tr;
}

std::vector<std::pair<int, Rat>> SymRep::gradedCharacter(const std::vector<int>& partition) const {
    SparseMatrix m = act(class_representative(partition));
    std::map<int, Rat> tr;
    for (int i = 0; i < dim(); ++i) tr[deg[i]] += m.get(i, i);
    std::vector<std::pair<int, Rat>> out;
    for (auto& [d, v] : tr)
        if (!v.isZero()) out.emplace_back(d, v);
    return out;
}

namespace {

// Minimal-length representative of the coset S(Σ_a x Σ_b) for an a-subset S:
// {0..a-1} -> sorted S, {a..a+b-1} -> sorted complement.
Perm shuffle_rep(const std::vector<int>& S, int nTotal) {
    std::vector<bool> inS(nTotal, false);
    for (int s : S) inS[s] = true;
    std::vector<int> line;
    line.reserve(nTotal);
    for (int s : S) line.push_back(s);
    for (int i = 0; i < nTotal; ++i)
        if (!inS[i]) line.push_back(i);
    return Perm::fromOneLine(line);
}

void subsets_rec(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets_rec(n, k, 0, cur, out);
    return out;
}

}  // namespace

SymRep induce(const SymRep& a, const SymRep& b) {
    const int na = a.n, nb = b.n, n = na + nb;
    const auto subs = subsets(n, na);
    const int dimA = a.dim(), dimB = b.dim();
    std::map<std::vector<int>, int> subIdx;
    for (size_t i = 0; i < subs.size(); ++i) subIdx[subs[i]] = static_cast<int>(i);

    SymRep r;
    r.n = n;
    for (auto& S : subs) {
        std::ostringstream tag;
        tag << "{";
        for (size_t i = 0; i < S.size(); ++i) tag << (i ? "," : "") << S[i] + 1;
        tag << "}";
        for (int x = 0; x < dimA; ++x)
            for (int y = 0; y < dimB; ++y) {
                r.deg.push_back(a.deg[x] + b.deg[y]);
                std::string la = a.labels.empty() ? std::to_string(x) : a.labels[x];
                std::string lb = b.labels.empty() ? std::to_string(y) : b.labels[y];
                r.labels.push_back(tag.str() + "(" + la + "|" + lb + ")");
            }
    }
    const int D = static_cast<int>(r.deg.size());

    for (int t = 0; t + 1 < n; ++t) {
        Perm st = Perm::transposition(n, t);
        SparseMatrix m(D, D);
        std::map<Perm, std::pair<SparseMatrix, SparseMatrix>> hCache;
        for (size_t si = 0; si < subs.size(); ++si) {
            const auto& S = subs[si];
            std::vector<int> T;
            for (int s : S) T.push_back(st(s));
            std::sort(T.begin(), T.end());
            int ti = subIdx.at(T);
            Perm h = shuffle_rep(T, n).inverse() * st * shuffle_rep(S, n);
            auto it = hCache.find(h);
            if (it == hCache.end()) {
                std::vector<int> lineA(na), lineB(nb);
                for (int i = 0; i < na; ++i) {
                    if (h(i) >= na) throw std::logic_error("induce: coset factor not block-preserving");
                    lineA[i] = h(i);
                }
                for (int i = 0; i < nb; ++i) {
                    if (h(na + i) < na) throw std::logic_error("induce: coset factor not block-preserving");
                    lineB[i] = h(na + i) - na;
                }
                SparseMatrix ma = a.act(Perm::fromOneLine(lineA));
                SparseMatrix mb = b.act(Perm::fromOneLine(lineB));
                it = hCache.emplace(h, std::make_pair(std::move(ma), std::move(mb))).first;
            }
            const SparseMatrix& ma = it->second.first;
            const SparseMatrix& mb = it->second.second;
            for (int x = 0; x < dimA; ++x)
                for (int y = 0; y < dimB; ++y) {
                    int col = (static_cast<int>(si) * dimA + x) * dimB + y;
                    for (auto& [x2, va] : ma.column(x))
                        for (auto& [y2, vb] : mb.column(y))
                            m.add((ti * dimA + x2) * dimB + y2, col, va * vb);
                }
        }
        r.gens.push_back(std::move(m));
    }
    return r;
}

namespace {

Coinv coinv_from_idempotent(const SparseMatrix& e, const std::vector<int>& degs) {
    Coinv c;
    std::vector<int> cols = independent_columns(e);
    c.dim = static_cast<int>(cols.size());
    c.sect = e.selectCols(cols);
    for (int j : cols) c.deg.push_back(degs[j]);
    if (c.dim == 0) {
        c.proj = SparseMatrix(0, e.cols());
        return c;
    }
    Echelon el = eliminate(c.sect);
    std::vector<int> rowSel = el.pivotRows;
    std::sort(rowSel.begin(), rowSel.end());
    SparseMatrix inv = invert(c.sect.selectRows(rowSel));
    c.proj = inv * e.selectRows(rowSel);
    if (!(c.proj * c.sect == SparseMatrix::identity(c.dim)))
        throw std::logic_error("coinvariants: projection/section mismatch");
    return c;
}

}  // namespace

Coinv coinvariants(const SymRep& rep, const std::vector<Perm>& subgroupElements) {
    if (subgroupElements.empty()) throw std::invalid_argument("coinvariants: empty subgroup");
    SparseMatrix e(rep.dim(), rep.dim());
    for (const Perm& g : subgroupElements) e = e + rep.act(g);
    e = e.scaled(Rat(1, static_cast<long>(subgroupElements.size())));
    if (!(e * e == e)) throw std::logic_error("coinvariants: averaging operator not idempotent");
    return coinv_from_idempotent(e, rep.deg);
}

Coinv tensor_power_coinvariants(const SymRep& V, const std::vector<int>& xdeg, int w) {
    const int dx = static_cast<int>(xdeg.size());
    const int dimV = V.dim();
    if (V.n != w) throw std::invalid_argument("tensor_power_coinvariants: arity mismatch");

    // enumerate functions f: [w] -> [dx] lexicographically
    long nf = 1;
    for (int i = 0; i < w; ++i) nf *= dx;
    auto fOf = [&](long idx) {
        std::vector<int> f(w);
        for (int i = w - 1; i >= 0; --i) {
            f[i] = static_cast<int>(idx % dx);
            idx /= dx;
        }
        return f;
    };
    auto idxOf = [&](const std::vector<int>& f) {
        long idx = 0;
        for (int v : f) idx = idx * dx + v;
        return idx;
    };

    const auto& G = Perm::all(w);
    const int ambient = static_cast<int>(nf) * dimV;

    Coinv out;
    std::vector<std::vector<std::pair<int, Rat>>> projRows;
    std::vector<SparseVec> sectColsV;
    std::vector<int> outDeg;

    std::vector<bool> seen(nf, false);
    for (long repIdx = 0; repIdx < nf; ++repIdx) {
        if (seen[repIdx]) continue;
        auto f0 = fOf(repIdx);
        std::vector<int> sorted = f0;
        std::sort(sorted.begin(), sorted.end());
        if (f0 != sorted) continue;  // orbit representative = weakly increasing f

        std::vector<int> fdeg(w);
        for (int i = 0; i < w; ++i) fdeg[i] = xdeg[f0[i]];

        // stabilizer elements with their Koszul characters
        std::vector<std::pair<Perm, int>> stab;
        // orbit: f -> (g with g.rep = eps.f, eps)
        std::map<long, std::pair<Perm, int>> orbit;
        for (const Perm& g : G) {
            Perm gi = g.inverse();
            std::vector<int> f(w);
            for (int j = 0; j < w; ++j) f[j] = f0[gi(j)];
            int eps = koszul_sign(fdeg, gi.oneLine());
            long fi = idxOf(f);
            if (fi == repIdx) stab.emplace_back(g, eps);
            if (!orbit.count(fi)) orbit.emplace(fi, std::make_pair(g, eps));
        }
        for (auto& [fi, ge] : orbit) seen[fi] = true;

        // character must be well-defined; if some h fixes f0 with eps = -1 and
        // also +1 the averaging operator below is still the right projector.
        SparseMatrix echi(dimV, dimV);
        for (auto& [h, eps] : stab) echi = echi + V.act(h).scaled(Rat(eps));
        echi = echi.scaled(Rat(1, static_cast<long>(stab.size())));
        if (!(echi * echi == echi))
            throw std::logic_error("tensor_power_coinvariants: orbit operator not idempotent");
        Coinv local = coinv_from_idempotent(echi, V.deg);
        if (local.dim == 0) continue;

        int base = static_cast<int>(outDeg.size());
        int fdegSum = 0;
        for (int d : fdeg) fdegSum += d;
        for (int j = 0; j < local.dim; ++j) outDeg.push_back(local.deg[j] + fdegSum);

        // section: place local section at the representative slot
        for (int j = 0; j < local.dim; ++j) {
            SparseVec col;
            for (auto& [r, v] : local.sect.column(j)) col.emplace_back(repIdx * dimV + r, v);
            sectColsV.push_back(std::move(col));
        }
        // projection: for ambient (f, v) with f in this orbit:
        //   pi(f, v) = eps_f * localProj(act(g_f^{-1}) v)
        projRows.resize(base + local.dim);
        for (auto& [fi, ge] : orbit) {
            SparseMatrix m = local.proj * V.act(ge.first.inverse()).scaled(Rat(ge.second));
            for (int r = 0; r < local.dim; ++r)
                for (auto& [vIdx, val] : m.row(r))
                    projRows[base + r].emplace_back(static_cast<int>(fi) * dimV + vIdx, val);
        }
    }

    out.dim = static_cast<int>(outDeg.size());
    out.deg = std::move(outDeg);
    out.sect = SparseMatrix(ambient, out.dim);
    for (int j = 0; j < out.dim; ++j) out.sect.setColumn(j, sectColsV[j]);
    out.proj = SparseMatrix(out.dim, ambient);
    for (int r = 0; r < out.dim; ++r)
        for (auto& [c, v] : projRows[r]) out.proj.add(r, c, v);
    if (out.dim > 0 && !(out.proj * out.sect == SparseMatrix::identity(out.dim)))
        throw std::logic_error("tensor_power_coinvariants: projection/section mismatch");
    return out;
}

}  // namespace opd
