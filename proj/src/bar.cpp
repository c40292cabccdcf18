#include "opd/bar.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "opd/symrep.hpp"

namespace opd {

namespace {

std::string veckey(const std::vector<int>& v) {
    std::string s;
    for (int x : v) {
        s += std::to_string(x);
        s += ',';
    }
    return s;
}

void for_each_partition(int n, const std::function<void(const std::vector<std::vector<int>>&)>& f) {
    std::vector<int> rgs(n);
    std::function<void(int, int)> rec = [&](int pos, int maxUsed) {
        if (pos == n) {
            std::vector<std::vector<int>> blocks(maxUsed + 1);
            for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(i);
            f(blocks);
            return;
        }
        for (int v = 0; v <= maxUsed + 1; ++v) {
            rgs[pos] = v;
            rec(pos + 1, std::max(maxUsed, v));
        }
    };
    rec(0, -1);
}

}  // namespace

struct BarComplex::Impl {
    SideModule M, N;
    OperadPtr O;
    int k = 0;
    int maxLevel = 0;

    struct Sub {
        int atom = 0;
        int atomArity = 0;
        std::vector<std::pair<std::vector<int>, int>> kids;
        int degree = 0;
        unsigned mask = 0;  // bit r: local O-row r+1 consists of units only
    };
    struct Tree {
        int mAtom = 0;
        int mArity = 0;
        std::vector<std::pair<std::vector<int>, int>> kids;
        int degree = 0;
    };

    std::vector<std::vector<std::vector<Sub>>> tab;       // tab[t][a]
    std::vector<std::vector<std::map<std::string, int>>> tabIdx;
    std::vector<std::vector<Tree>> trees;                 // per level
    std::vector<std::map<std::string, int>> treeIdx;

    using Combo = std::vector<std::pair<int, Rat>>;
    std::map<std::tuple<int, int, int, int>, Combo> faceMemo;
    std::map<std::pair<int, std::string>, SparseMatrix> actMemoO, actMemoM, actMemoN;
    std::map<std::tuple<int, int, std::string>, SparseMatrix> actTabMemo;

    std::string subKey(const Sub& s) const {
        std::string key = std::to_string(s.atom) + ";";
        for (auto& kc : s.kids) key += veckey(kc.first) + ":" + std::to_string(kc.second) + ";";
        return key;
    }
    std::string treeKey(const Tree& t) const {
        std::string key = std::to_string(t.mAtom) + "|";
        for (auto& kc : t.kids) key += veckey(kc.first) + ":" + std::to_string(kc.second) + ";";
        return key;
    }

    const SparseMatrix& cachedAct(std::map<std::pair<int, std::string>, SparseMatrix>& memo,
                                  const SymRep& rep, int arity, const Perm& g) {
        auto key = std::make_pair(arity, veckey(g.oneLine()));
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, rep.act(g)).first;
        return it->second;
    }
    const SparseMatrix& actO(int arity, const Perm& g) { return cachedAct(actMemoO, O->term(arity), arity, g); }
    const SparseMatrix& actM(int arity, const Perm& g) { return cachedAct(actMemoM, M.target->term(arity), arity, g); }
    const SparseMatrix& actN(int arity, const Perm& g) { return cachedAct(actMemoN, N.target->term(arity), arity, g); }

    void buildTables() {
        tab.assign(maxLevel + 1, {});
        tabIdx.assign(maxLevel + 1, {});
        for (int t = 0; t <= maxLevel; ++t) {
            tab[t].resize(k + 1);
            tabIdx[t].resize(k + 1);
            for (int a = 1; a <= k; ++a) {
                auto& list = tab[t][a];
                auto& idx = tabIdx[t][a];
                if (t == 0) {
                    for (int i = 0; i < N.target->dim(a); ++i) {
                        Sub s{i, a, {}, N.target->term(a).deg[i], 0};
                        idx[subKey(s)] = static_cast<int>(list.size());
                        list.push_back(std::move(s));
                    }
                    continue;
                }
                for_each_partition(a, [&](const std::vector<std::vector<int>>& blocks) {
                    int j = static_cast<int>(blocks.size());
                    if (O->dim(j) == 0) return;
                    for (auto& b : blocks)
                        if (tab[t - 1][b.size()].empty()) return;
                    std::vector<int> choice(blocks.size(), 0);
                    while (true) {
                        for (int o = 0; o < O->dim(j); ++o) {
                            Sub s;
                            s.atom = o;
                            s.atomArity = j;
                            s.degree = O->term(j).deg[o];
                            unsigned andMask = ~0u;
                            for (size_t c = 0; c < blocks.size(); ++c) {
                                const Sub& kid = tab[t - 1][blocks[c].size()][choice[c]];
                                s.kids.emplace_back(blocks[c], choice[c]);
                                s.degree += kid.degree;
                                andMask &= kid.mask;
                            }
                            s.mask = (j == 1 ? 1u : 0u) | ((andMask << 1) & ((1u << t) - 1));
                            idx[subKey(s)] = static_cast<int>(list.size());
                            list.push_back(std::move(s));
                        }
                        int c = static_cast<int>(blocks.size()) - 1;
                        while (c >= 0) {
                            if (++choice[c] < static_cast<int>(tab[t - 1][blocks[c].size()].size())) break;
                            choice[c] = 0;
                            --c;
                        }
                        if (c < 0) break;
                    }
                });
            }
        }
    }

    void buildTrees() {
        trees.assign(maxLevel + 1, {});
        treeIdx.assign(maxLevel + 1, {});
        for (int s = 0; s <= maxLevel; ++s) {
            for_each_partition(k, [&](const std::vector<std::vector<int>>& blocks) {
                int j0 = static_cast<int>(blocks.size());
                if (M.target->dim(j0) == 0) return;
                for (auto& b : blocks)
                    if (tab[s][b.size()].empty()) return;
                std::vector<int> choice(blocks.size(), 0);
                while (true) {
                    unsigned andMask = ~0u;
                    int kidDeg = 0;
                    for (size_t c = 0; c < blocks.size(); ++c) {
                        const Sub& kid = tab[s][blocks[c].size()][choice[c]];
                        andMask &= kid.mask;
                        kidDeg += kid.degree;
                    }
                    bool degenerate = s > 0 && (andMask & ((1u << s) - 1)) != 0;
                    if (!degenerate) {
                        for (int m = 0; m < M.target->dim(j0); ++m) {
                            Tree t;
                            t.mAtom = m;
                            t.mArity = j0;
                            t.degree = M.target->term(j0).deg[m] + kidDeg;
                            for (size_t c = 0; c < blocks.size(); ++c)
                                t.kids.emplace_back(blocks[c], choice[c]);
                            treeIdx[s][treeKey(t)] = static_cast<int>(trees[s].size());
                            trees[s].push_back(std::move(t));
                        }
                    }
                    int c = static_cast<int>(blocks.size()) - 1;
                    while (c >= 0) {
                        if (++choice[c] < static_cast<int>(tab[s][blocks[c].size()].size())) break;
                        choice[c] = 0;
                        --c;
                    }
                    if (c < 0) break;
                }
            });
        }
    }

    static int gatherSign(const std::vector<int>& atomDeg, const std::vector<int>& deeperDeg) {
        int sign = 1, acc = 0;
        for (size_t c = 0; c < atomDeg.size(); ++c) {
            if ((atomDeg[c] & 1) && (acc & 1)) sign = -sign;
            acc += deeperDeg[c];
        }
        return sign;
    }

    struct MergedTerm {
        Rat coeff;
        int newAtom = 0;
        std::vector<std::pair<std::vector<int>, int>> kids;
    };

    // Composes a node with the atoms of its kids: gather signs, gamma-fold,
    // block remapping, canonical resort with Koszul sign and relabel action.
    std::vector<MergedTerm> mergeNode(
        const Operad& nodeOperad, const SparseVec& nodeVec, int nodeArity,
        const std::vector<std::vector<int>>& blocks, const std::vector<SparseVec>& kidAtomVecs,
        const std::vector<int>& kidAtomArity, const std::vector<int>& kidAtomDeg,
        const std::vector<int>& kidDeeperDeg,
        const std::vector<std::vector<std::pair<std::vector<int>, int>>>& grandkids,
        const std::vector<std::vector<int>>& grandkidDegs,
        const std::function<const SparseMatrix&(int, const Perm&)>& actFn) {
        std::vector<MergedTerm> out;
        int sign = gatherSign(kidAtomDeg, kidDeeperDeg);
        std::vector<std::pair<int, SparseVec>> args;
        for (size_t c = 0; c < kidAtomVecs.size(); ++c)
            args.emplace_back(kidAtomArity[c], kidAtomVecs[c]);
        SparseVec v = nodeOperad.gammaAll(nodeArity, nodeVec, args);
        if (v.empty()) return out;
        std::vector<std::pair<std::vector<int>, int>> newKids;
        std::vector<int> newDegs;
        for (size_t c = 0; c < grandkids.size(); ++c) {
            for (size_t g = 0; g < grandkids[c].size(); ++g) {
                std::vector<int> mapped;
                for (int p : grandkids[c][g].first) mapped.push_back(blocks[c][p]);
                newKids.emplace_back(std::move(mapped), grandkids[c][g].second);
                newDegs.push_back(grandkidDegs[c][g]);
            }
        }
        std::vector<int> mins;
        for (auto& kc : newKids) mins.push_back(kc.first[0]);
        std::vector<int> pi = sorting_order(mins);
        bool sorted = true;
        for (size_t i = 0; i < pi.size(); ++i) sorted &= pi[i] == static_cast<int>(i);
        Rat total(sign);
        if (!sorted) {
            Perm piInv = Perm::fromOneLine(pi).inverse();
            std::vector<int> degsSorted(newDegs.size());
            for (size_t u = 0; u < pi.size(); ++u) degsSorted[u] = newDegs[pi[u]];
            total *= Rat(koszul_sign(degsSorted, piInv.oneLine()));
            v = actFn(static_cast<int>(newKids.size()), piInv).apply(v);
            std::vector<std::pair<std::vector<int>, int>> sortedKids;
            for (int i : pi) sortedKids.push_back(newKids[i]);
            newKids = std::move(sortedKids);
        }
        for (auto& [atomIdx, coef] : v) out.push_back(MergedTerm{coef * total, atomIdx, newKids});
        return out;
    }

    Combo faceSub(int t, int r, int a, int idx) {
        auto key = std::make_tuple(t, r, a, idx);
        auto it = faceMemo.find(key);
        if (it != faceMemo.end()) return it->second;
        const Sub& s = tab[t][a][idx];
        std::map<int, Rat> acc;
        if (r > 1) {
            std::vector<Combo> kidCombos;
            for (auto& kc : s.kids)
                kidCombos.push_back(faceSub(t - 1, r - 1, static_cast<int>(kc.first.size()), kc.second));
            std::vector<size_t> pick(kidCombos.size(), 0);
            bool any = true;
            for (auto& kc : kidCombos) any &= !kc.empty();
            while (any) {
                Rat coef(1);
                Sub ns;
                ns.atom = s.atom;
                ns.atomArity = s.atomArity;
                for (size_t c = 0; c < kidCombos.size(); ++c) {
                    ns.kids.emplace_back(s.kids[c].first, kidCombos[c][pick[c]].first);
                    coef *= kidCombos[c][pick[c]].second;
                }
                auto f = tabIdx[t - 1][a].find(subKey(ns));
                if (f == tabIdx[t - 1][a].end()) throw std::logic_error("bar: face target missing");
                acc[f->second] += coef;
                int c = static_cast<int>(kidCombos.size()) - 1;
                while (c >= 0) {
                    if (++pick[c] < kidCombos[c].size()) break;
                    pick[c] = 0;
                    --c;
                }
                if (c < 0) break;
            }
        } else if (t >= 2) {
            std::vector<std::vector<int>> blocks;
            std::vector<SparseVec> kidVecs;
            std::vector<int> kidArity, kidDeg, kidDeeper;
            std::vector<std::vector<std::pair<std::vector<int>, int>>> grandkids;
            std::vector<std::vector<int>> grandDegs;
            for (auto& kc : s.kids) {
                const Sub& kid = tab[t - 1][kc.first.size()][kc.second];
                blocks.push_back(kc.first);
                kidVecs.push_back(unit_vec(kid.atom));
                kidArity.push_back(kid.atomArity);
                int ad = O->term(kid.atomArity).deg[kid.atom];
                kidDeg.push_back(ad);
                kidDeeper.push_back(kid.degree - ad);
                grandkids.push_back(kid.kids);
                std::vector<int> gd;
                for (auto& g : kid.kids) gd.push_back(tab[t - 2][g.first.size()][g.second].degree);
                grandDegs.push_back(std::move(gd));
            }
            auto merged = mergeNode(*O, unit_vec(s.atom), s.atomArity, blocks, kidVecs, kidArity,
                                    kidDeg, kidDeeper, grandkids, grandDegs,
                                    [&](int w, const Perm& g) -> const SparseMatrix& { return actO(w, g); });
            for (auto& term : merged) {
                Sub ns;
                ns.atom = term.newAtom;
                ns.atomArity = static_cast<int>(term.kids.size());
                ns.kids = term.kids;
                auto f = tabIdx[t - 1][a].find(subKey(ns));
                if (f == tabIdx[t - 1][a].end()) throw std::logic_error("bar: merged sub missing");
                acc[f->second] += term.coeff;
            }
        } else {
            // t == 1: compose the bottom operad row into the left-module row
            SparseVec fo = N.f.apply(s.atomArity, unit_vec(s.atom));
            if (!fo.empty()) {
                std::vector<std::pair<int, SparseVec>> args;
                std::vector<int> packed;
                for (auto& kc : s.kids) {
                    args.emplace_back(static_cast<int>(kc.first.size()),
                                      unit_vec(tab[0][kc.first.size()][kc.second].atom));
                    packed.insert(packed.end(), kc.first.begin(), kc.first.end());
                }
                SparseVec v = N.target->gammaAll(s.atomArity, fo, args);
                // the fold packs slot letters block by block; relabel the
                // result onto the sorted leaf set when blocks interleave
                bool sortedLeaves = std::is_sorted(packed.begin(), packed.end());
                if (!sortedLeaves && !v.empty())
                    v = actN(a, Perm::fromOneLine(packed)).apply(v);
                for (auto& [atomIdx, coef] : v) {
                    Sub ns{atomIdx, a, {}, 0, 0};
                    auto f = tabIdx[0][a].find(subKey(ns));
                    if (f == tabIdx[0][a].end())
                        throw std::logic_error("bar: module face target missing");
                    acc[f->second] += coef;
                }
            }
        }
        Combo combo(acc.begin(), acc.end());
        faceMemo.emplace(key, combo);
        return combo;
    }

    std::vector<std::vector<SparseMatrix>> buildFaces() {
        std::vector<std::vector<SparseMatrix>> faces(maxLevel + 1);
        for (int s = 1; s <= maxLevel; ++s) {
            faces[s].assign(s + 1, SparseMatrix(static_cast<int>(trees[s - 1].size()),
                                                static_cast<int>(trees[s].size())));
            for (int col = 0; col < static_cast<int>(trees[s].size()); ++col) {
                const Tree& tr = trees[s][col];
                {
                    // t = 0: compose the right-module row with the first O-row
                    std::vector<std::vector<int>> blocks;
                    std::vector<SparseVec> kidVecs;
                    std::vector<int> kidArity, kidDeg, kidDeeper;
                    std::vector<std::vector<std::pair<std::vector<int>, int>>> grandkids;
                    std::vector<std::vector<int>> grandDegs;
                    for (auto& kc : tr.kids) {
                        const Sub& kid = tab[s][kc.first.size()][kc.second];
                        blocks.push_back(kc.first);
                        kidVecs.push_back(M.f.apply(kid.atomArity, unit_vec(kid.atom)));
                        kidArity.push_back(kid.atomArity);
                        int ad = O->term(kid.atomArity).deg[kid.atom];
                        kidDeg.push_back(ad);
                        kidDeeper.push_back(kid.degree - ad);
                        grandkids.push_back(kid.kids);
                        std::vector<int> gd;
                        for (auto& g : kid.kids)
                            gd.push_back(tab[s - 1][g.first.size()][g.second].degree);
                        grandDegs.push_back(std::move(gd));
                    }
                    auto merged = mergeNode(*M.target, unit_vec(tr.mAtom), tr.mArity, blocks,
                                            kidVecs, kidArity, kidDeg, kidDeeper, grandkids,
                                            grandDegs, [&](int w, const Perm& g) -> const SparseMatrix& {
                                                return actM(w, g);
                                            });
                    for (auto& term : merged) {
                        Tree nt;
                        nt.mAtom = term.newAtom;
                        nt.mArity = static_cast<int>(term.kids.size());
                        nt.kids = term.kids;
                        auto f = treeIdx[s - 1].find(treeKey(nt));
                        // missing targets are degenerate (normalized model)
                        if (f != treeIdx[s - 1].end()) faces[s][0].add(f->second, col, term.coeff);
                    }
                }
                for (int t = 1; t <= s; ++t) {
                    std::vector<Combo> kidCombos;
                    for (auto& kc : tr.kids)
                        kidCombos.push_back(faceSub(s, t, static_cast<int>(kc.first.size()), kc.second));
                    std::vector<size_t> pick(kidCombos.size(), 0);
                    bool any = true;
                    for (auto& kc : kidCombos) any &= !kc.empty();
                    while (any) {
                        Rat coef(1);
                        Tree nt;
                        nt.mAtom = tr.mAtom;
                        nt.mArity = tr.mArity;
                        for (size_t c = 0; c < kidCombos.size(); ++c) {
                            nt.kids.emplace_back(tr.kids[c].first, kidCombos[c][pick[c]].first);
                            coef *= kidCombos[c][pick[c]].second;
                        }
                        auto f = treeIdx[s - 1].find(treeKey(nt));
                        if (f != treeIdx[s - 1].end()) faces[s][t].add(f->second, col, coef);
                        int c = static_cast<int>(kidCombos.size()) - 1;
                        while (c >= 0) {
                            if (++pick[c] < kidCombos[c].size()) break;
                            pick[c] = 0;
                            --c;
                        }
                        if (c < 0) break;
                    }
                }
            }
        }
        return faces;
    }

    const SparseMatrix& actTab(int t, int a, const Perm& h) {
        auto key = std::make_tuple(t, a, veckey(h.oneLine()));
        auto it = actTabMemo.find(key);
        if (it != actTabMemo.end()) return it->second;
        int dim = static_cast<int>(tab[t][a].size());
        SparseMatrix m(dim, dim);
        if (t == 0) {
            const SparseMatrix& am = actN(a, h);
            for (int colIdx = 0; colIdx < dim; ++colIdx)
                for (auto& [row, v] : am.column(tab[t][a][colIdx].atom)) m.add(row, colIdx, v);
        } else {
            for (int colIdx = 0; colIdx < dim; ++colIdx) {
                const Sub& s = tab[t][a][colIdx];
                relabelNode<Sub>(
                    s.kids, s.atom, h,
                    [&](int arity, const Perm& g) -> const SparseMatrix& { return actO(arity, g); },
                    [&](int c) { return tab[t - 1][s.kids[c].first.size()][s.kids[c].second].degree; },
                    [&](int c, const Perm& hc) -> Combo {
                        Combo kc;
                        const SparseMatrix& kidAct =
                            actTab(t - 1, static_cast<int>(s.kids[c].first.size()), hc);
                        for (auto& [row, v] : kidAct.column(s.kids[c].second)) kc.emplace_back(row, v);
                        return kc;
                    },
                    [&](const Sub& ns, const Rat& coef) {
                        auto f = tabIdx[t][a].find(subKey(ns));
                        if (f == tabIdx[t][a].end())
                            throw std::logic_error("bar: action image missing");
                        m.add(f->second, colIdx, coef);
                    },
                    s.atomArity);
            }
        }
        return actTabMemo.emplace(key, std::move(m)).first->second;
    }

    // shared relabeling machinery for subs and trees
    template <typename NodeT>
    void relabelNode(const std::vector<std::pair<std::vector<int>, int>>& kids, int atom,
                     const Perm& h,
                     const std::function<const SparseMatrix&(int, const Perm&)>& nodeAct,
                     const std::function<int(int)>& kidDegree,
                     const std::function<Combo(int, const Perm&)>& kidTransform,
                     const std::function<void(const NodeT&, const Rat&)>& emit, int atomArity) {
        int j = static_cast<int>(kids.size());
        std::vector<std::vector<int>> newBlocks(j);
        std::vector<Combo> kidCombos(j);
        std::vector<int> degs(j), mins(j);
        for (int c = 0; c < j; ++c) {
            std::vector<int> img;
            for (int x : kids[c].first) img.push_back(h(x));
            std::vector<int> sortedImg = img;
            std::sort(sortedImg.begin(), sortedImg.end());
            std::vector<int> line(img.size());
            for (size_t u = 0; u < img.size(); ++u)
                line[u] = static_cast<int>(
                    std::lower_bound(sortedImg.begin(), sortedImg.end(), img[u]) - sortedImg.begin());
            kidCombos[c] = kidTransform(c, Perm::fromOneLine(line));
            newBlocks[c] = std::move(sortedImg);
            degs[c] = kidDegree(c);
            mins[c] = newBlocks[c][0];
        }
        std::vector<int> pi = sorting_order(mins);
        Perm piInv = Perm::fromOneLine(pi).inverse();
        std::vector<int> degsSorted(j);
        for (int u = 0; u < j; ++u) degsSorted[u] = degs[pi[u]];
        int eps = koszul_sign(degsSorted, piInv.oneLine());
        const SparseMatrix& am = nodeAct(atomArity, piInv);
        std::vector<size_t> pick(j, 0);
        bool any = true;
        for (auto& kc : kidCombos) any &= !kc.empty();
        while (any) {
            Rat coef(eps);
            NodeT nt;
            for (int u = 0; u < j; ++u) {
                int src = pi[u];
                nt.kids.emplace_back(newBlocks[src], kidCombos[src][pick[src]].first);
                coef *= kidCombos[src][pick[src]].second;
            }
            for (auto& [row, av] : am.column(atom)) {
                setNodeAtom(nt, row, atomArity);
                emit(nt, coef * av);
            }
            int c = j - 1;
            while (c >= 0) {
                if (++pick[c] < kidCombos[c].size()) break;
                pick[c] = 0;
                --c;
            }
            if (c < 0) break;
        }
    }
    static void setNodeAtom(Sub& s, int atom, int arity) {
        s.atom = atom;
        s.atomArity = arity;
    }
    static void setNodeAtom(Tree& t, int atom, int arity) {
        t.mAtom = atom;
        t.mArity = arity;
    }

    SparseMatrix levelActionMatrix(int s, const Perm& g) {
        int dim = static_cast<int>(trees[s].size());
        SparseMatrix m(dim, dim);
        for (int colIdx = 0; colIdx < dim; ++colIdx) {
            const Tree& tr = trees[s][colIdx];
            relabelNode<Tree>(
                tr.kids, tr.mAtom, g,
                [&](int arity, const Perm& p) -> const SparseMatrix& { return actM(arity, p); },
                [&](int c) { return tab[s][tr.kids[c].first.size()][tr.kids[c].second].degree; },
                [&](int c, const Perm& hc) -> Combo {
                    Combo kc;
                    const SparseMatrix& kidAct = actTab(s, static_cast<int>(tr.kids[c].first.size()), hc);
                    for (auto& [row, v] : kidAct.column(tr.kids[c].second)) kc.emplace_back(row, v);
                    return kc;
                },
                [&](const Tree& nt, const Rat& coef) {
                    auto f = treeIdx[s].find(treeKey(nt));
                    if (f == treeIdx[s].end())
                        throw std::logic_error("bar: level action image missing");
                    m.add(f->second, colIdx, coef);
                },
                tr.mArity);
        }
        return m;
    }
};

BarComplex::BarComplex(const SideModule& m, const OperadPtr& o, const SideModule& n, int arity,
                       bool checks)
    : impl_(std::make_shared<Impl>()), arity_(arity) {
    if (m.side != Side::Right || n.side != Side::Left)
        throw std::invalid_argument("BarComplex: need a right module and a left module");
    if (m.over->name() != o->name() || n.over->name() != o->name())
        throw std::invalid_argument("BarComplex: modules are not over the given operad");
    if (arity < 1 || arity > o->maxArity() || arity > m.target->maxArity() ||
        arity > n.target->maxArity())
        throw std::invalid_argument("BarComplex: arity out of range");
    impl_->M = m;
    impl_->N = n;
    impl_->O = o;
    impl_->k = arity;
    impl_->maxLevel = std::max(0, arity - 1);
    impl_->buildTables();
    impl_->buildTrees();
    faces_ = impl_->buildFaces();

    for (int s = 0; s <= impl_->maxLevel; ++s) {
        levelDims_.push_back(static_cast<int>(impl_->trees[s].size()));
        std::vector<int> degs;
        for (auto& t : impl_->trees[s]) degs.push_back(t.degree);
        levelDeg_.push_back(std::move(degs));
    }

    if (checks) {
        for (int s = 2; s <= impl_->maxLevel; ++s)
            for (int i = 0; i <= s; ++i)
                for (int j = i + 1; j <= s; ++j)
                    if (!(faces_[s - 1][i] * faces_[s][j] == faces_[s - 1][j - 1] * faces_[s][i]))
                        throw std::logic_error("BarComplex: simplicial identity fails at (i,j,s)=(" +
                                               std::to_string(i) + "," + std::to_string(j) + "," +
                                               std::to_string(s) + ")");
    }

    std::map<int, std::vector<std::pair<int, int>>> slots;
    std::map<std::pair<int, int>, int> offset;
    for (int s = 0; s <= impl_->maxLevel; ++s)
        for (int i = 0; i < levelDims_[s]; ++i) {
            int T = levelDeg_[s][i] + s;
            offset[{s, i}] = static_cast<int>(slots[T].size());
            slots[T].push_back({s, i});
        }
    for (auto& [T, list] : slots) total_.dims[T] = static_cast<int>(list.size());
    for (auto& [T, list] : slots) {
        int rows = total_.dims.count(T - 1) ? total_.dims[T - 1] : 0;
        SparseMatrix d(rows, static_cast<int>(list.size()));
        for (int colIdx = 0; colIdx < static_cast<int>(list.size()); ++colIdx) {
            auto [s, i] = list[colIdx];
            if (s == 0) continue;
            for (int t = 0; t <= s; ++t) {
                Rat sign((t & 1) ? -1 : 1);
                for (auto& [row, v] : faces_[s][t].column(i)) {
                    auto it = offset.find({s - 1, row});
                    if (it == offset.end()) throw std::logic_error("BarComplex: totalization slot missing");
                    d.add(it->second, colIdx, sign * v);
                }
            }
        }
        if (rows > 0 || d.cols() > 0) total_.diff[T] = std::move(d);
    }
    if (checks) total_.validate();
}

GradedSpace BarComplex::levelGraded(int s) const {
    GradedSpace g;
    for (int d : levelDeg_.at(s)) g.add(d);
    return g;
}

std::string BarComplex::treeLabel(int s, int i) const {
    const auto& tr = impl_->trees[s][i];
    std::function<std::string(int, const std::vector<int>&, int)> subLabel =
        [&](int t, const std::vector<int>& block, int idx) -> std::string {
        const auto& sub = impl_->tab[t][block.size()][idx];
        std::ostringstream os;
        os << (t == 0 ? "n" : "o") << sub.atom << "{";
        for (size_t u = 0; u < block.size(); ++u) os << (u ? "," : "") << block[u];
        os << "}";
        if (!sub.kids.empty()) {
            os << "(";
            for (size_t c = 0; c < sub.kids.size(); ++c) {
                std::vector<int> mapped;
                for (int p : sub.kids[c].first) mapped.push_back(block[p]);
                os << (c ? " " : "") << subLabel(t - 1, mapped, sub.kids[c].second);
            }
            os << ")";
        }
        return os.str();
    };
    std::ostringstream os;
    os << "m" << tr.mAtom << "(";
    for (size_t c = 0; c < tr.kids.size(); ++c)
        os << (c ? " " : "") << subLabel(s, tr.kids[c].first, tr.kids[c].second);
    os << ")";
    return os.str();
}

std::vector<SparseMatrix> BarComplex::levelAction(int s) const {
    std::vector<SparseMatrix> gens;
    for (int t = 0; t + 1 < arity_; ++t)
        gens.push_back(impl_->levelActionMatrix(s, Perm::transposition(arity_, t)));
    return gens;
}

SymRep BarComplex::totalDegreeRep(int totalDegree) const {
    std::vector<std::pair<int, int>> slots;
    for (int s = 0; s < levels(); ++s)
        for (int i = 0; i < levelDims_[s]; ++i)
            if (levelDeg_[s][i] + s == totalDegree) slots.push_back({s, i});
    SymRep rep;
    rep.n = arity_;
    rep.deg.assign(slots.size(), totalDegree);
    std::map<int, std::map<int, int>> pos;
    for (size_t p = 0; p < slots.size(); ++p) pos[slots[p].first][slots[p].second] = static_cast<int>(p);
    for (int t = 0; t + 1 < arity_; ++t) {
        SparseMatrix m(static_cast<int>(slots.size()), static_cast<int>(slots.size()));
        std::map<int, SparseMatrix> perLevel;
        for (auto& [s, idxMap] : pos)
            perLevel.emplace(s, impl_->levelActionMatrix(s, Perm::transposition(arity_, t)));
        for (size_t p = 0; p < slots.size(); ++p) {
            auto [s, i] = slots[p];
            for (auto& [row, v] : perLevel.at(s).column(i)) {
                auto it = pos[s].find(row);
                if (it == pos[s].end())
                    throw std::logic_error("BarComplex: action left the degree piece");
                m.add(it->second, static_cast<int>(p), v);
            }
        }
        rep.gens.push_back(std::move(m));
    }
    return rep;
}

std::map<int, SymRep> BarComplex::homologyReps() const {
    auto hb = homology_basis(total_);
    std::map<int, SymRep> out;
    for (auto& [T, hs] : hb) {
        if (hs.dim() == 0) continue;
        SymRep amb = totalDegreeRep(T);
        SymRep rep;
        rep.n = arity_;
        rep.deg.assign(hs.dim(), T);
        for (int t = 0; t + 1 < arity_; ++t) {
            SparseMatrix m(hs.dim(), hs.dim());
            for (int c = 0; c < hs.dim(); ++c) {
                SparseVec img = amb.gens[t].apply(hs.reps()[c]);
                for (auto& [row, v] : hs.coords(img)) m.add(row, c, v);
            }
            rep.gens.push_back(std::move(m));
        }
        out.emplace(T, std::move(rep));
    }
    return out;
}

std::vector<std::map<int, int>> relative_composition_homology(const SideModule& m,
                                                              const OperadPtr& o,
                                                              const SideModule& n, int maxArity) {
    std::vector<std::map<int, int>> out(maxArity + 1);
    for (int a = 1; a <= maxArity; ++a) out[a] = BarComplex(m, o, n, a).homologyDims();
    return out;
}

// ---------------------------------------------------------------------------
// named squares

namespace {

Morphism unit_inclusion(const OperadPtr& p) {
    Morphism f;
    f.source = one_operad(p->maxArity());
    f.target = p;
    f.maps.resize(p->maxArity() + 1);
    f.maps[1] = SparseMatrix::identity(1);
    for (int n = 2; n <= p->maxArity(); ++n) f.maps[n] = SparseMatrix(p->dim(n), 0);
    return f;
}

Morphism sigma_power(const OperadPtr& o, int n) {
    if (n == 0) return identity_morphism(o);
    Morphism f;
    f.source = o;
    f.target = suspend_operad(o, n);
    f.maps.resize(o->maxArity() + 1);
    f.maps[1] = SparseMatrix::identity(1);
    for (int a = 2; a <= o->maxArity(); ++a) f.maps[a] = SparseMatrix(o->dim(a), o->dim(a));
    auto bad = f.validate();
    if (!bad.empty()) throw std::logic_error("sigma_power: validation failed: " + bad.front());
    return f;
}

Morphism beta_power(int k, int m, int N, const Rat& scale) {
    if (k == 0) return identity_morphism(m >= 1 ? pois_operad(N, m) : one_operad(N));
    Morphism step = beta_shadow(k + m - 1, N, scale);
    if (k == 1) return step;
    Morphism rest = beta_power(k - 1, m, N, scale);
    return compose_morphisms(suspend_morphism(rest, 1), step);
}

}  // namespace

SquareReport square_check(const std::string& name, int k, int m, int n, int maxArity,
                          const Rat& betaScale) {
    const int N = maxArity;
    SquareReport rep;
    rep.name = name;
    rep.maxArity = maxArity;

    OperadPtr O;
    SideModule left, right;
    SymSeq expectedSeq = SymSeq::zero(N);

    std::string lname = name;
    for (auto& c : lname) c = static_cast<char>(std::tolower(c));

    if (lname == "main-pbw") {
        O = lie_operad(N);
        right = module_along(lie_to_ass(N), Side::Right);
        left = module_along(augmentation(O, N), Side::Left);
        expectedSeq = com_operad(N)->seq();
        rep.normalization = "target dims are the commutative class sequence, degree 0";
    } else if (lname == "en") {
        if (k < 0 || m < 0 || n < 0 || k + m + n < 1 || k + m + n > 4 || k + m > 3)
            throw std::invalid_argument("square En: unsupported parameters");
        rep.params = {{"k", k}, {"m", m}, {"n", n}};
        O = (k + m >= 1) ? pois_operad(N, k + m) : one_operad(N);
        right = (k + m >= 1) ? module_along(beta_power(k, m, N, betaScale), Side::Right)
                             : module_along(identity_morphism(one_operad(N)), Side::Right);
        left = (k + m >= 1) ? module_along(iota_shadow(k + m, n, N), Side::Left)
                            : module_along(unit_inclusion(pois_operad(N, std::max(n, 1))), Side::Left);
        SymSeq base = (m + n >= 1) ? pois_operad(N, m + n)->seq() : SymSeq::unit(N);
        expectedSeq = suspend(base, k);
        rep.normalization = "expected = k-fold suspension of the (m+n)-Poisson sequence";
    } else if (lname == "lie-to-en") {
        if (n < 1 || n > 3) throw std::invalid_argument("square lie-to-en: unsupported n");
        rep.params = {{"n", n}};
        O = spectral_lie_operad(N);
        right = module_along(augmentation(O, N), Side::Right);
        left = module_along(sigma_power(O, n), Side::Left);
        expectedSeq = pois_operad(N, n)->seq();
        rep.normalization = "expected = n-Poisson sequence, no global suspension shift";
    } else if (lname == "en-to-comm") {
        if (n < 1 || n > 3) throw std::invalid_argument("square en-to-comm: unsupported n");
        rep.params = {{"n", n}};
        O = pois_operad(N, n);
        right = module_along(augmentation(O, N), Side::Right);
        left = module_along(iota_shadow(n, -1, N), Side::Left);
        expectedSeq = suspend(com_operad(N)->seq(), n);
        rep.normalization = "expected = n-fold suspension of the commutative sequence";
    } else if (lname == "envelope") {
        if (k < 1 || n < 0 || k + n > 3)
            throw std::invalid_argument("square envelope: unsupported parameters");
        rep.params = {{"k", k}, {"n", n}};
        O = pois_operad(N, k + n);
        right = module_along(beta_power(k, n, N, betaScale), Side::Right);
        left = module_along(augmentation(O, N), Side::Left);
        expectedSeq = suspend(termwise_dual(pois_operad(N, k)->seq()), k);
        rep.normalization =
            "expected = k-fold suspension of the termwise dual of the k-Poisson sequence";
    } else {
        throw std::invalid_argument("unknown square: " + name);
    }

    rep.match = true;
    for (int a = 1; a <= maxArity; ++a) {
        SquareArityResult r;
        r.arity = a;
        for (auto& [d, c] : expectedSeq.graded(a).dims) r.expected[d] = c;
        r.computed = BarComplex(right, O, left, a).homologyDims();
        r.match = (r.expected == r.computed);
        rep.match &= r.match;
        rep.results.push_back(std::move(r));
    }
    return rep;
}

std::vector<std::map<int, int>> koszul_shadow(const OperadPtr& o, int maxArity) {
    SideModule right = module_along(augmentation(o, maxArity), Side::Right);
    SideModule left = module_along(augmentation(o, maxArity), Side::Left);
    return relative_composition_homology(right, o, left, maxArity);
}

// ---------------------------------------------------------------------------
// skeletal filtration page

std::vector<E1Page> skeletal_e1_page(int n, const GradedSpace& x, int maxWeight) {
    if (n < 1 || n > 3) throw std::invalid_argument("skeletal_e1_page: unsupported n");
    std::vector<E1Page> out;
    std::vector<int> xdeg;
    for (auto& [d, c] : x.dims)
        for (int i = 0; i < c; ++i) xdeg.push_back(d);

    const int N = std::max(2, maxWeight);
    auto O = spectral_lie_operad(N);
    SideModule right = module_along(augmentation(O, N), Side::Right);
    SideModule left = module_along(sigma_power(O, n), Side::Left);
    auto pois = pois_operad(N, n);

    for (int w = 1; w <= maxWeight; ++w) {
        E1Page page;
        page.weight = w;
        if (xdeg.empty()) {
            out.push_back(std::move(page));
            continue;
        }
        BarComplex bar(right, O, left, w);
        std::vector<Coinv> coinv;
        for (int s = 0; s < bar.levels(); ++s) {
            SymRep rep;
            rep.n = w;
            rep.deg = bar.levelDegrees(s);
            rep.gens = bar.levelAction(s);
            Coinv c = tensor_power_coinvariants(rep, xdeg, w);
            std::map<int, int> dims;
            for (size_t i = 0; i < c.deg.size(); ++i) ++dims[c.deg[i] + s];
            page.e1.push_back(std::move(dims));
            coinv.push_back(std::move(c));
        }
        long fcount = 1;
        for (int i = 0; i < w; ++i) fcount *= static_cast<long>(xdeg.size());
        page.d1rank.resize(bar.levels());
        std::vector<SparseMatrix> transported(bar.levels());
        for (int s = 1; s < bar.levels(); ++s) {
            SparseMatrix total(bar.levelDim(s - 1), bar.levelDim(s));
            for (int t = 0; t <= s; ++t)
                total = total + bar.face(s, t).scaled(Rat((t & 1) ? -1 : 1));
            SparseMatrix big(bar.levelDim(s - 1) * static_cast<int>(fcount),
                             bar.levelDim(s) * static_cast<int>(fcount));
            for (long f = 0; f < fcount; ++f)
                for (int r = 0; r < total.rows(); ++r)
                    for (auto& [c, v] : total.row(r))
                        big.add(static_cast<int>(f) * total.rows() + r,
                                static_cast<int>(f) * total.cols() + c, v);
            transported[s] = coinv[s - 1].proj * big * coinv[s].sect;
            std::map<int, std::vector<int>> colsByDeg, rowsByDeg;
            for (int c = 0; c < transported[s].cols(); ++c)
                colsByDeg[coinv[s].deg[c] + s].push_back(c);
            for (int r = 0; r < transported[s].rows(); ++r)
                rowsByDeg[coinv[s - 1].deg[r] + s - 1].push_back(r);
            for (auto& [T, cols] : colsByDeg) {
                auto it = rowsByDeg.find(T - 1);
                SparseMatrix blockM = transported[s].selectCols(cols);
                if (it != rowsByDeg.end()) blockM = blockM.selectRows(it->second);
                else blockM = SparseMatrix(0, static_cast<int>(cols.size()));
                int rk = rank(blockM);
                if (rk > 0) page.d1rank[s][T] = rk;
            }
        }
        {
            ChainComplex cpx;
            std::map<std::pair<int, int>, int> off;
            std::map<int, std::vector<std::pair<int, int>>> slots;
            for (int s = 0; s < bar.levels(); ++s)
                for (int c = 0; c < coinv[s].dim; ++c) {
                    int T = coinv[s].deg[c] + s;
                    off[{s, c}] = static_cast<int>(slots[T].size());
                    slots[T].push_back({s, c});
                }
            for (auto& [T, list] : slots) cpx.dims[T] = static_cast<int>(list.size());
            for (auto& [T, list] : slots) {
                int rows = cpx.dims.count(T - 1) ? cpx.dims[T - 1] : 0;
                SparseMatrix d(rows, static_cast<int>(list.size()));
                for (int colIdx = 0; colIdx < static_cast<int>(list.size()); ++colIdx) {
                    auto [s, c] = list[colIdx];
                    if (s == 0) continue;
                    for (auto& [r, v] : transported[s].column(c)) {
                        auto it = off.find({s - 1, r});
                        if (it == off.end()) throw std::logic_error("e1page: slot missing");
                        d.add(it->second, colIdx, v);
                    }
                }
                cpx.diff[T] = std::move(d);
            }
            page.abutment = homology_dims(cpx);
            page.e2.resize(bar.levels());
            for (int s = 0; s < bar.levels(); ++s) {
                std::map<int, int> e2s;
                std::map<int, int> byDeg;
                for (int c = 0; c < coinv[s].dim; ++c) ++byDeg[coinv[s].deg[c] + s];
                for (auto& [T, dim] : byDeg) {
                    int rkOut = page.d1rank[s].count(T) ? page.d1rank[s][T] : 0;
                    int rkIn = (s + 1 < bar.levels() && page.d1rank[s + 1].count(T + 1))
                                   ? page.d1rank[s + 1][T + 1]
                                   : 0;
                    int h = dim - rkOut - rkIn;
                    if (h != 0) e2s[T] = h;
                }
                page.e2[s] = std::move(e2s);
            }
        }
        {
            Coinv c = tensor_power_coinvariants(pois->term(w), xdeg, w);
            for (int d : c.deg) ++page.freeAlgebra[d];
        }
        page.match = (page.abutment == page.freeAlgebra);
        out.push_back(std::move(page));
    }
    return out;
}

std::vector<NonPushoutRow> non_pushout_report(int maxN) {
    std::vector<NonPushoutRow> rows;
    if (maxN < 2) return rows;
    auto com = com_operad(maxN);
    auto ass = ass_operad(maxN);
    auto lie = lie_operad(maxN, std::min(maxN, 6));
    for (int n = 2; n <= maxN; ++n) {
        NonPushoutRow r;
        r.n = n;
        r.rankCom = com->dim(n);
        r.rankAss = ass->dim(n);
        r.rankLie = lie->dim(n);
        r.chi = r.rankCom - r.rankAss + r.rankLie;
        r.vanishes = (r.chi == 0);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace opd
