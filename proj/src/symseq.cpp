#include "opd/symseq.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace opd {

std::string GradedSpace::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [d, n] : dims) {
        if (!first) os << ", ";
        os << d << ": " << n;
        first = false;
    }
    os << "}";
    return os.str();
}

SymSeq SymSeq::zero(int maxArity) {
    SymSeq s;
    s.maxArity = maxArity;
    s.terms.resize(maxArity + 1);
    for (int n = 0; n <= maxArity; ++n) s.terms[n] = SymRep::zero(n);
    return s;
}

SymSeq SymSeq::unit(int maxArity) {
    SymSeq s = zero(maxArity);
    s.terms[1] = SymRep::trivial(1);
    s.terms[1].labels = {"id"};
    return s;
}

GradedSpace SymSeq::graded(int n) const {
    GradedSpace g;
    if (n >= 1 && n <= maxArity)
        for (int d : terms[n].deg) g.add(d);
    return g;
}

bool SymSeq::isZero() const {
    for (int n = 1; n <= maxArity; ++n)
        if (terms[n].dim() > 0) return false;
    return true;
}

std::vector<ClassFunction> SymSeq::characters() const {
    std::vector<ClassFunction> out;
    for (int n = 1; n <= maxArity; ++n) out.push_back(characterAt(n));
    return out;
}

std::vector<std::string> SymSeq::checkActions() const {
    std::vector<std::string> bad;
    for (int n = 1; n <= maxArity; ++n)
        for (auto& msg : terms[n].checkRelations())
            bad.push_back("arity " + std::to_string(n) + ": " + msg);
    return bad;
}

SymSeq day_convolution(const SymSeq& a, const SymSeq& b) {
    if (a.maxArity != b.maxArity) throw std::invalid_argument("day_convolution: truncation mismatch");
    SymSeq out = SymSeq::zero(a.maxArity);
    for (int n = 1; n <= a.maxArity; ++n) {
        std::vector<SymRep> parts;
        for (int p = 1; p < n; ++p) {
            if (a.dim(p) == 0 || b.dim(n - p) == 0) continue;
            parts.push_back(induce(a.term(p), b.term(n - p)));
        }
        if (parts.empty()) continue;
        // direct sum
        SymRep sum;
        sum.n = n;
        int total = 0;
        for (auto& r : parts) total += r.dim();
        sum.gens.assign(std::max(0, n - 1), SparseMatrix(total, total));
        int base = 0;
        for (auto& r : parts) {
            for (int i = 0; i < r.dim(); ++i) {
                sum.deg.push_back(r.deg[i]);
                sum.labels.push_back(r.labels.empty() ? "" : r.labels[i]);
            }
            for (int t = 0; t + 1 < n; ++t)
                for (int c = 0; c < r.dim(); ++c)
                    for (auto& [rr, v] : r.gens[t].column(c)) sum.gens[t].add(base + rr, base + c, v);
            base += r.dim();
        }
        out.terms[n] = std::move(sum);
    }
    return out;
}

SymSeq levelwise_tensor(const SymSeq& a, const SymSeq& b) {
    if (a.maxArity != b.maxArity) throw std::invalid_argument("levelwise_tensor: truncation mismatch");
    SymSeq out = SymSeq::zero(a.maxArity);
    for (int n = 1; n <= a.maxArity; ++n) {
        const SymRep& ra = a.term(n);
        const SymRep& rb = b.term(n);
        if (ra.dim() == 0 || rb.dim() == 0) continue;
        SymRep r;
        r.n = n;
        for (int i = 0; i < ra.dim(); ++i)
            for (int j = 0; j < rb.dim(); ++j) {
                r.deg.push_back(ra.deg[i] + rb.deg[j]);
                std::string la = ra.labels.empty() ? std::to_string(i) : ra.labels[i];
                std::string lb = rb.labels.empty() ? std::to_string(j) : rb.labels[j];
                r.labels.push_back(la + "*" + lb);
            }
        for (int t = 0; t + 1 < n; ++t) r.gens.push_back(ra.gens[t].kron(rb.gens[t]));
        out.terms[n] = std::move(r);
    }
    return out;
}

namespace {

/// Set partitions of {0..n-1} via restricted growth strings; blocks come out
/// ordered by minimal element, enumeration order is canonical.
void for_each_set_partition(int n, const std::function<void(const std::vector<std::vector<int>>&)>& f) {
    std::vector<int> rgs(n);
    std::function<void(int, int)> rec = [&](int pos, int maxUsed) {
        if (pos == n) {
            int j = maxUsed + 1;
            std::vector<std::vector<int>> blocks(j);
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

std::string encode_compose_elt(const ComposeBasisElt& e) {
    std::ostringstream os;
    for (size_t i = 0; i < e.blocks.size(); ++i) {
        os << "{";
        for (size_t u = 0; u < e.blocks[i].size(); ++u) os << (u ? "," : "") << e.blocks[i][u];
        os << "}b" << e.bIdx[i];
    }
    os << "a" << e.aIdx;
    return os.str();
}

SymSeq compose(const SymSeq& a, const SymSeq& b, bool withActions,
               std::vector<ComposeTerm>* basisOut) {
    if (a.maxArity != b.maxArity) throw std::invalid_argument("compose: truncation mismatch");
    const int N = a.maxArity;
    SymSeq out = SymSeq::zero(N);
    if (basisOut) basisOut->assign(N + 1, ComposeTerm{});

    for (int n = 1; n <= N; ++n) {
        ComposeTerm term;
        for_each_set_partition(n, [&](const std::vector<std::vector<int>>& blocks) {
            int j = static_cast<int>(blocks.size());
            if (a.dim(j) == 0) return;
            for (auto& blk : blocks)
                if (b.dim(static_cast<int>(blk.size())) == 0) return;
            // B-basis choices per block, lexicographic
            std::vector<int> choice(blocks.size(), 0);
            while (true) {
                int bdeg = 0;
                for (size_t i = 0; i < blocks.size(); ++i)
                    bdeg += b.term(static_cast<int>(blocks[i].size())).deg[choice[i]];
                for (int x = 0; x < a.dim(j); ++x) {
                    ComposeBasisElt e{blocks, choice, x, bdeg + a.term(j).deg[x]};
                    term.index[encode_compose_elt(e)] = static_cast<int>(term.basis.size());
                    term.basis.push_back(std::move(e));
                }
                int i = static_cast<int>(blocks.size()) - 1;
                while (i >= 0) {
                    if (++choice[i] < b.dim(static_cast<int>(blocks[i].size()))) break;
                    choice[i] = 0;
                    --i;
                }
                if (i < 0) break;
            }
        });

        SymRep rep;
        rep.n = n;
        for (auto& e : term.basis) {
            rep.deg.push_back(e.degree);
            rep.labels.push_back(encode_compose_elt(e));
        }
        const int D = rep.dim();

        if (withActions && D > 0) {
            std::map<Perm, SparseMatrix> aActCache;
            for (int t = 0; t + 1 < n; ++t) {
                Perm st = Perm::transposition(n, t);
                SparseMatrix m(D, D);
                for (int col = 0; col < D; ++col) {
                    const auto& e = term.basis[col];
                    const int j = static_cast<int>(e.blocks.size());
                    // relabeled blocks and per-block action expansions
                    std::vector<std::vector<int>> newBlocks(j);
                    std::vector<SparseVec> vecs(j);
                    std::vector<int> degs(j), mins(j);
                    for (int i = 0; i < j; ++i) {
                        std::vector<int> q;
                        for (int leaf : e.blocks[i]) q.push_back(st(leaf));
                        std::vector<int> sorted = q;
                        std::sort(sorted.begin(), sorted.end());
                        std::vector<int> hLine(q.size());
                        for (size_t u = 0; u < q.size(); ++u)
                            hLine[u] = static_cast<int>(
                                std::lower_bound(sorted.begin(), sorted.end(), q[u]) - sorted.begin());
                        Perm h = Perm::fromOneLine(hLine);
                        const SymRep& rb = b.term(static_cast<int>(q.size()));
                        if (h.isIdentity()) vecs[i] = unit_vec(e.bIdx[i]);
                        else vecs[i] = rb.act(h).column(e.bIdx[i]);
                        newBlocks[i] = std::move(sorted);
                        degs[i] = rb.deg[e.bIdx[i]];
                        mins[i] = newBlocks[i][0];
                    }
                    std::vector<int> sortPi = sorting_order(mins);
                    Perm pi = Perm::fromOneLine(sortPi);
                    Perm piInv = pi.inverse();
                    std::vector<int> degsSorted(j);
                    for (int u = 0; u < j; ++u) degsSorted[u] = degs[sortPi[u]];
                    int eps = koszul_sign(degsSorted, piInv.oneLine());
                    auto it = aActCache.find(piInv);
                    if (it == aActCache.end()) it = aActCache.emplace(piInv, a.term(j).act(piInv)).first;
                    const SparseMatrix& am = it->second;
                    // combinations of block-vector entries
                    std::vector<size_t> pick(j, 0);
                    bool any = true;
                    for (int i = 0; i < j; ++i) any &= !vecs[i].empty();
                    while (any) {
                        Rat coef(eps);
                        ComposeBasisElt img;
                        img.blocks.resize(j);
                        img.bIdx.resize(j);
                        for (int u = 0; u < j; ++u) {
                            int src = sortPi[u];
                            img.blocks[u] = newBlocks[src];
                            img.bIdx[u] = vecs[src][pick[src]].first;
                            coef *= vecs[src][pick[src]].second;
                        }
                        for (auto& [x2, ca] : am.column(e.aIdx)) {
                            img.aIdx = x2;
                            auto f = term.index.find(encode_compose_elt(img));
                            if (f == term.index.end()) throw std::logic_error("compose: image label missing");
                            m.add(f->second, col, coef * ca);
                        }
                        int i = j - 1;
                        while (i >= 0) {
                            if (++pick[i] < vecs[i].size()) break;
                            pick[i] = 0;
                            --i;
                        }
                        if (i < 0) break;
                    }
                }
                rep.gens.push_back(std::move(m));
            }
        } else {
            rep.gens.assign(std::max(0, n - 1), SparseMatrix(D, D));
        }
        out.terms[n] = std::move(rep);
        if (basisOut) (*basisOut)[n] = std::move(term);
    }
    return out;
}

GradedSpace free_algebra(const SymSeq& a, const GradedSpace& x) {
    GradedSpace out;
    std::vector<int> xdeg;
    for (auto& [d, n] : x.dims)
        for (int i = 0; i < n; ++i) xdeg.push_back(d);
    if (xdeg.empty()) return out;
    for (int n = 1; n <= a.maxArity; ++n) {
        if (a.dim(n) == 0) continue;
        Coinv c = tensor_power_coinvariants(a.term(n), xdeg, n);
        for (int d : c.deg) out.add(d);
    }
    return out;
}

SymSeq suspend(const SymSeq& a, int k) {
    SymSeq out = a;
    if (k == 0) return out;
    for (int n = 1; n <= a.maxArity; ++n) {
        SymRep& r = out.terms[n];
        int shift = k * (n - 1);
        for (auto& d : r.deg) d += shift;
        if (k % 2 != 0)
            for (auto& g : r.gens) g = g.scaled(Rat(-1));
    }
    return out;
}

SymSeq termwise_dual(const SymSeq& a) {
    SymSeq out = a;
    for (int n = 1; n <= a.maxArity; ++n) {
        SymRep& r = out.terms[n];
        for (auto& d : r.deg) d = -d;
        for (auto& g : r.gens) g = g.transpose();
        for (auto& l : r.labels) l += "^";
    }
    return out;
}

namespace {

nlohmann::json matrix_to_json(const SparseMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    nlohmann::json ents = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (auto& [c, v] : m.row(r)) ents.push_back({r, c, v.str()});
    j["entries"] = std::move(ents);
    return j;
}

SparseMatrix matrix_from_json(const nlohmann::json& j) {
    SparseMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (auto& e : j.at("entries"))
        m.set(e.at(0).get<int>(), e.at(1).get<int>(), Rat::parse(e.at(2).get<std::string>()));
    return m;
}

}  // namespace

std::string symseq_to_json(const SymSeq& s) {
    nlohmann::json j;
    j["maxArity"] = s.maxArity;
    nlohmann::json terms = nlohmann::json::object();
    for (int n = 1; n <= s.maxArity; ++n) {
        const SymRep& r = s.terms[n];
        nlohmann::json t;
        t["degrees"] = r.deg;
        t["labels"] = r.labels;
        nlohmann::json gens = nlohmann::json::array();
        for (auto& g : r.gens) gens.push_back(matrix_to_json(g));
        t["generators"] = std::move(gens);
        terms[std::to_string(n)] = std::move(t);
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

SymSeq symseq_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SymSeq s = SymSeq::zero(j.at("maxArity").get<int>());
    for (int n = 1; n <= s.maxArity; ++n) {
        auto key = std::to_string(n);
        if (!j.at("terms").contains(key)) continue;
        const auto& t = j.at("terms").at(key);
        SymRep r;
        r.n = n;
        r.deg = t.at("degrees").get<std::vector<int>>();
        r.labels = t.at("labels").get<std::vector<std::string>>();
        for (auto& g : t.at("generators")) r.gens.push_back(matrix_from_json(g));
        s.terms[n] = std::move(r);
    }
    return s;
}

}  // namespace opd
