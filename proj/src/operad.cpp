#include "opd/operad.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opd {

Operad::Operad(std::string name, SymSeq seq, Builder builder,
               std::vector<std::vector<Recipe>> recipes)
    : name_(std::move(name)), seq_(std::move(seq)), builder_(std::move(builder)),
      recipes_(std::move(recipes)) {
    if (seq_.maxArity < 1 || seq_.dim(1) != 1 || seq_.term(1).deg[0] != 0)
        throw std::invalid_argument("Operad: must be reduced with one-dimensional arity 1");
}

const SparseMatrix& Operad::comp(int m, int i, int q) const {
    if (m < 1 || q < 1 || i < 1 || i > m || m + q - 1 > maxArity())
        throw std::out_of_range("Operad::comp: bad (m, i, q)");
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_tuple(m, i, q);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        SparseMatrix built = builder_(*this, m, i, q);
        if (built.rows() != dim(m + q - 1) || built.cols() != dim(m) * dim(q))
            throw std::logic_error("Operad::comp: builder shape mismatch in " + name_);
        it = cache_.emplace(key, std::move(built)).first;
    }
    return it->second;
}

SparseVec Operad::compose2(int m, int i, const SparseVec& a, int q, const SparseVec& b) const {
    if (a.empty() || b.empty() || dim(m + q - 1) == 0) return {};
    const SparseMatrix& M = comp(m, i, q);
    const int dq = dim(q);
    SparseVec pair;
    for (auto& [ai, av] : a)
        for (auto& [bi, bv] : b) pair.emplace_back(ai * dq + bi, av * bv);
    std::sort(pair.begin(), pair.end());
    return M.apply(pair);
}

SparseVec Operad::gammaAll(int j, const SparseVec& x,
                           const std::vector<std::pair<int, SparseVec>>& args) const {
    if (static_cast<int>(args.size()) != j) throw std::invalid_argument("gammaAll: arity mismatch");
    SparseVec v = x;
    int m = j, pos = 1;
    for (auto& [q, y] : args) {
        v = compose2(m, pos, v, q, y);
        m += q - 1;
        pos += q;
        if (v.empty()) return {};
    }
    return v;
}

Perm composition_block_perm(const Perm& sigma, const Perm& tau, int i, int m, int q) {
    const int i0 = i - 1;
    const int i1 = sigma(i0);
    std::vector<int> line(m + q - 1);
    auto outPos = [&](int c) { return c < i1 ? c : c + q - 1; };
    for (int c = 0; c < m; ++c) {
        if (c == i0) continue;
        int in = c < i0 ? c : c + q - 1;
        line[in] = outPos(sigma(c));
    }
    for (int d = 0; d < q; ++d) line[i0 + d] = i1 + tau(d);
    return Perm::fromOneLine(line);
}

std::vector<std::string> check_operad_axioms(const Operad& o, int maxArity) {
    std::vector<std::string> bad;
    const int N = std::min(maxArity, o.maxArity());
    auto basis = [&](int n) { return o.dim(n); };
    SparseVec unit = unit_vec(0);

    // unit laws
    for (int m = 1; m <= N; ++m) {
        for (int x = 0; x < basis(m); ++x) {
            SparseVec ex = unit_vec(x);
            if (o.compose2(1, 1, unit, m, ex) != ex)
                bad.push_back("unit law fails: unit o_1 e" + std::to_string(x) + " at arity " +
                              std::to_string(m));
            for (int i = 1; i <= m; ++i)
                if (o.compose2(m, i, ex, 1, unit) != ex)
                    bad.push_back("unit law fails: e" + std::to_string(x) + " o_" + std::to_string(i) +
                                  " unit at arity " + std::to_string(m));
        }
    }

    // sequential and parallel associativity
    for (int m = 1; m <= N; ++m)
        for (int q = 1; q <= N; ++q)
            for (int r = 1; r <= N; ++r) {
                if (m + q + r - 2 > N) continue;
                if (basis(m) == 0 || basis(q) == 0 || basis(r) == 0) continue;
                for (int x = 0; x < basis(m); ++x)
                    for (int y = 0; y < basis(q); ++y)
                        for (int z = 0; z < basis(r); ++z) {
                            SparseVec ex = unit_vec(x), ey = unit_vec(y), ez = unit_vec(z);
                            for (int i = 1; i <= m; ++i) {
                                // nested: (x o_i y) o_{i+j-1} z = x o_i (y o_j z)
                                for (int j = 1; j <= q; ++j) {
                                    SparseVec lhs = o.compose2(m + q - 1, i + j - 1,
                                                               o.compose2(m, i, ex, q, ey), r, ez);
                                    SparseVec rhs = o.compose2(m, i, ex, q + r - 1,
                                                               o.compose2(q, j, ey, r, ez));
                                    if (lhs != rhs)
                                        bad.push_back("sequential associativity fails at (m,q,r,i,j)=(" +
                                                      std::to_string(m) + "," + std::to_string(q) + "," +
                                                      std::to_string(r) + "," + std::to_string(i) + "," +
                                                      std::to_string(j) + "), basis (" + std::to_string(x) +
                                                      "," + std::to_string(y) + "," + std::to_string(z) + ")");
                                }
                                // disjoint: i < j:
                                for (int j = i + 1; j <= m; ++j) {
                                    SparseVec lhs = o.compose2(m + q - 1, j + q - 1,
                                                               o.compose2(m, i, ex, q, ey), r, ez);
                                    int sgn = ((o.term(q).deg[y] & 1) && (o.term(r).deg[z] & 1)) ? -1 : 1;
                                    SparseVec rhs = vec_scale(
                                        o.compose2(m + r - 1, i, o.compose2(m, j, ex, r, ez), q, ey),
                                        Rat(sgn));
                                    if (lhs != rhs)
                                        bad.push_back("parallel associativity fails at (m,q,r,i,j)=(" +
                                                      std::to_string(m) + "," + std::to_string(q) + "," +
                                                      std::to_string(r) + "," + std::to_string(i) + "," +
                                                      std::to_string(j) + "), basis (" + std::to_string(x) +
                                                      "," + std::to_string(y) + "," + std::to_string(z) + ")");
                                }
                            }
                        }
            }

    // equivariance against the adjacent-transposition generators
    for (int m = 1; m <= N; ++m)
        for (int q = 1; q <= N; ++q) {
            if (m + q - 1 > N || basis(m) == 0 || basis(q) == 0) continue;
            for (int i = 1; i <= m; ++i) {
                const SparseMatrix& M = o.comp(m, i, q);
                SparseMatrix idq = SparseMatrix::identity(basis(q));
                SparseMatrix idm = SparseMatrix::identity(basis(m));
                for (int t = 0; t + 1 < m; ++t) {
                    Perm sigma = Perm::transposition(m, t);
                    const SparseMatrix& Mi2 = o.comp(m, sigma(i - 1) + 1, q);
                    SparseMatrix lhs = Mi2 * o.term(m).gens[t].kron(idq);
                    Perm comb = composition_block_perm(sigma, Perm(q), i, m, q);
                    SparseMatrix rhs = o.term(m + q - 1).act(comb) * M;
                    if (!(lhs == rhs))
                        bad.push_back("outer equivariance fails at (m,i,q,t)=(" + std::to_string(m) + "," +
                                      std::to_string(i) + "," + std::to_string(q) + "," + std::to_string(t) + ")");
                }
                for (int u = 0; u + 1 < q; ++u) {
                    Perm tau = Perm::transposition(q, u);
                    SparseMatrix lhs = M * idm.kron(o.term(q).gens[u]);
                    Perm comb = composition_block_perm(Perm(m), tau, i, m, q);
                    SparseMatrix rhs = o.term(m + q - 1).act(comb) * M;
                    if (!(lhs == rhs))
                        bad.push_back("inner equivariance fails at (m,i,q,u)=(" + std::to_string(m) + "," +
                                      std::to_string(i) + "," + std::to_string(q) + "," + std::to_string(u) + ")");
                }
            }
        }

    return bad;
}

// ---------------------------------------------------------------------------
// morphisms

namespace {

int morphism_span(const Morphism& f) {
    return std::min(f.source->maxArity(), f.target->maxArity());
}

}  // namespace

std::vector<std::string> Morphism::validate() const {
    std::vector<std::string> bad;
    const int N = morphism_span(*this);
    if (static_cast<int>(maps.size()) < N + 1) {
        bad.push_back("morphism: missing arity maps");
        return bad;
    }
    // unit, degrees, equivariance
    if (maps[1].get(0, 0) != Rat(1)) bad.push_back("morphism: unit not preserved");
    for (int n = 1; n <= N; ++n) {
        const SymRep& rs = source->term(n);
        const SymRep& rt = target->term(n);
        if (maps[n].rows() != rt.dim() || maps[n].cols() != rs.dim()) {
            bad.push_back("morphism: shape mismatch at arity " + std::to_string(n));
            continue;
        }
        for (int r = 0; r < maps[n].rows(); ++r)
            for (auto& [c, v] : maps[n].row(r))
                if (rt.deg[r] != rs.deg[c])
                    bad.push_back("morphism: degree shift at arity " + std::to_string(n));
        for (int t = 0; t + 1 < n; ++t)
            if (!(maps[n] * rs.gens[t] == rt.gens[t] * maps[n]))
                bad.push_back("morphism: equivariance fails at arity " + std::to_string(n) +
                              ", generator " + std::to_string(t));
    }
    // compatibility with partial compositions
    for (int m = 1; m <= N; ++m)
        for (int q = 1; q <= N; ++q) {
            if (m + q - 1 > N) continue;
            if (source->dim(m) == 0 || source->dim(q) == 0) continue;
            for (int i = 1; i <= m; ++i) {
                SparseMatrix lhs = maps[m + q - 1] * source->comp(m, i, q);
                SparseMatrix rhs = target->comp(m, i, q) * maps[m].kron(maps[q]);
                if (!(lhs == rhs))
                    bad.push_back("morphism: composition fails at (m,i,q)=(" + std::to_string(m) + "," +
                                  std::to_string(i) + "," + std::to_string(q) + ")");
            }
        }
    return bad;
}

Morphism identity_morphism(const OperadPtr& o) {
    Morphism f;
    f.source = f.target = o;
    f.maps.resize(o->maxArity() + 1);
    for (int n = 1; n <= o->maxArity(); ++n) f.maps[n] = SparseMatrix::identity(o->dim(n));
    return f;
}

Morphism compose_morphisms(const Morphism& g, const Morphism& f) {
    if (g.source->name() != f.target->name())
        throw std::invalid_argument("compose_morphisms: middle operad mismatch");
    Morphism h;
    h.source = f.source;
    h.target = g.target;
    int N = std::min(morphism_span(f), morphism_span(g));
    h.maps.resize(N + 1);
    for (int n = 1; n <= N; ++n) h.maps[n] = g.maps[n] * f.maps[n];
    return h;
}

Morphism suspend_morphism(const Morphism& f, int k) {
    Morphism h;
    h.source = suspend_operad(f.source, k);
    h.target = suspend_operad(f.target, k);
    h.maps = f.maps;  // same coefficients; degrees shift uniformly
    return h;
}

namespace {

// Evaluates a recipe in O with the given arity-2 generator images; returns
// the vector together with the leaf letters in slot order.
std::pair<SparseVec, std::vector<int>> eval_recipe_raw(const Operad& O, const Recipe& r,
                                                       const std::vector<SparseVec>& gen2) {
    if (r.gen2 < 0) return {unit_vec(0), {r.leaf}};
    auto [lv, ll] = eval_recipe_raw(O, r.kids[0], gen2);
    auto [rv, rl] = eval_recipe_raw(O, r.kids[1], gen2);
    const int la = static_cast<int>(ll.size()), ra = static_cast<int>(rl.size());
    SparseVec v;
    if (!lv.empty() && !rv.empty()) {
        SparseVec mid = O.compose2(2, 1, gen2.at(r.gen2), la, lv);
        v = O.compose2(la + 1, la + 1, mid, ra, rv);
    }
    std::vector<int> letters = ll;
    letters.insert(letters.end(), rl.begin(), rl.end());
    return {std::move(v), std::move(letters)};
}

// Full evaluation with final relabeling of slots to sorted letters.
SparseVec eval_recipe(const Operad& O, const Recipe& r, const std::vector<SparseVec>& gen2) {
    auto [v, letters] = eval_recipe_raw(O, r, gen2);
    if (v.empty()) return v;
    const int k = static_cast<int>(letters.size());
    std::vector<int> rankOf(letters);
    std::vector<int> sorted(letters);
    std::sort(sorted.begin(), sorted.end());
    bool already = letters == sorted;
    if (already) return v;
    std::vector<int> line(k);
    for (int c = 0; c < k; ++c)
        line[c] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), letters[c]) -
                                   sorted.begin());
    return O.term(k).act(Perm::fromOneLine(line)).apply(v);
}

}  // namespace

Morphism morphism_from_gen2(const OperadPtr& source, const OperadPtr& target,
                            const std::vector<SparseVec>& gen2Images) {
    if (!source->hasRecipes()) throw std::invalid_argument("morphism_from_gen2: source has no recipes");
    Morphism f;
    f.source = source;
    f.target = target;
    const int N = std::min(source->maxArity(), target->maxArity());
    f.maps.resize(N + 1);
    f.maps[1] = SparseMatrix::identity(1);
    std::vector<SparseVec> idGens;
    for (int g = 0; g < source->dim(2); ++g) idGens.push_back(unit_vec(g));
    for (int n = 2; n <= N; ++n) {
        SparseMatrix m(target->dim(n), source->dim(n));
        for (int e = 0; e < source->dim(n); ++e) {
            const Recipe& r = source->recipe(n, e);
            SparseVec self = eval_recipe(*source, r, idGens);
            if (self.size() != 1 || self[0].first != e)
                throw std::logic_error("morphism_from_gen2: recipe does not reproduce basis element " +
                                       std::to_string(e) + " at arity " + std::to_string(n) + " of " +
                                       source->name());
            Rat c = self[0].second;
            SparseVec img = eval_recipe(*target, r, gen2Images);
            for (auto& [row, v] : img) m.add(row, e, v / c);
        }
        f.maps[n] = std::move(m);
    }
    return f;
}

SideModule module_along(const Morphism& f, Side side) {
    auto bad = f.validate();
    if (!bad.empty())
        throw std::invalid_argument("module_along: morphism invalid: " + bad.front());
    return SideModule{side, f.source, f.target, f};
}

// ---------------------------------------------------------------------------
// built-in operads

OperadPtr one_operad(int N) {
    SymSeq seq = SymSeq::unit(N);
    auto builder = [](const Operad& self, int m, int i, int q) {
        (void)i;
        SparseMatrix mtx(self.dim(m + q - 1), self.dim(m) * self.dim(q));
        if (m == 1 && q == 1) mtx.set(0, 0, Rat(1));
        return mtx;
    };
    std::vector<std::vector<Recipe>> recipes(N + 1);
    recipes[1] = {Recipe::leafOf(0)};
    return std::make_shared<Operad>("One", std::move(seq), builder, std::move(recipes));
}

OperadPtr com_operad(int N) {
    SymSeq seq = SymSeq::zero(N);
    for (int n = 1; n <= N; ++n) {
        seq.terms[n] = SymRep::trivial(n);
        seq.terms[n].labels = {"e"};
    }
    auto builder = [](const Operad& self, int m, int i, int q) {
        (void)i;
        SparseMatrix mtx(self.dim(m + q - 1), 1);
        mtx.set(0, 0, Rat(1));
        return mtx;
    };
    std::vector<std::vector<Recipe>> recipes(N + 1);
    recipes[1] = {Recipe::leafOf(0)};
    for (int n = 2; n <= N; ++n) {
        Recipe t = Recipe::leafOf(0);
        for (int u = 1; u < n; ++u) t = Recipe::node(0, std::move(t), Recipe::leafOf(u));
        recipes[n] = {std::move(t)};
    }
    return std::make_shared<Operad>("Com", std::move(seq), builder, std::move(recipes));
}

namespace {

std::vector<int> subst_word(const std::vector<int>& w, int L, const std::vector<int>& u) {
    const int q = static_cast<int>(u.size());
    std::vector<int> out;
    out.reserve(w.size() + u.size() - 1);
    for (int x : w) {
        if (x < L) {
            out.push_back(x);
        } else if (x == L) {
            for (int y : u) out.push_back(L + y);
        } else {
            out.push_back(x + q - 1);
        }
    }
    return out;
}

struct WordIndex {
    std::vector<std::map<std::vector<int>, int>> idx;  // per arity
    explicit WordIndex(int N) : idx(N + 1) {
        for (int n = 1; n <= N; ++n) {
            const auto& all = Perm::all(n);
            for (size_t i = 0; i < all.size(); ++i) idx[n][all[i].oneLine()] = static_cast<int>(i);
        }
    }
};

std::string word_label(const std::vector<int>& w) {
    std::ostringstream os;
    os << "w(";
    for (size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << w[i] + 1;
    os << ")";
    return os.str();
}

}  // namespace

OperadPtr ass_operad(int N) {
    SymSeq seq = SymSeq::zero(N);
    for (int n = 1; n <= N; ++n) {
        seq.terms[n] = SymRep::regular(n);
        for (size_t i = 0; i < seq.terms[n].labels.size(); ++i)
            seq.terms[n].labels[i] = word_label(Perm::all(n)[i].oneLine());
    }
    // regular() permutes by left multiplication = relabeling word letters
    auto words = std::make_shared<WordIndex>(N);
    auto builder = [words](const Operad& self, int m, int i, int q) {
        SparseMatrix mtx(self.dim(m + q - 1), self.dim(m) * self.dim(q));
        const auto& wm = Perm::all(m);
        const auto& wq = Perm::all(q);
        for (size_t a = 0; a < wm.size(); ++a)
            for (size_t b = 0; b < wq.size(); ++b) {
                auto out = subst_word(wm[a].oneLine(), i - 1, wq[b].oneLine());
                mtx.set(words->idx[m + q - 1].at(out),
                        static_cast<int>(a) * self.dim(q) + static_cast<int>(b), Rat(1));
            }
        return mtx;
    };
    std::vector<std::vector<Recipe>> recipes(N + 1);
    recipes[1] = {Recipe::leafOf(0)};
    for (int n = 2; n <= N; ++n)
        for (const Perm& w : Perm::all(n)) {
            Recipe t = Recipe::leafOf(w(0));
            for (int u = 1; u < n; ++u) t = Recipe::node(0, std::move(t), Recipe::leafOf(w(u)));
            recipes[n].push_back(std::move(t));
        }
    return std::make_shared<Operad>("Ass", std::move(seq), builder, std::move(recipes));
}

namespace {

// Left-normed bracket words with first letter 0 and their expansions into
// associative words: E([w, b]) = E(w)b - bE(w).
struct LieData {
    struct Arity {
        std::vector<std::vector<int>> words;
        std::map<std::vector<int>, int> assIdx;
        std::vector<SparseVec> expansions;         // in associative coordinates
        std::shared_ptr<ColumnSolver> solver;      // expansion matrix solver
    };
    std::vector<Arity> ar;

    explicit LieData(int N) : ar(N + 1) {
        for (int n = 1; n <= N; ++n) {
            auto& A = ar[n];
            const auto& all = Perm::all(n);
            for (size_t i = 0; i < all.size(); ++i) A.assIdx[all[i].oneLine()] = static_cast<int>(i);
            if (n == 1) {
                A.words = {{0}};
            } else {
                std::vector<int> rest(n - 1);
                std::iota(rest.begin(), rest.end(), 1);
                do {
                    std::vector<int> w{0};
                    w.insert(w.end(), rest.begin(), rest.end());
                    A.words.push_back(w);
                } while (std::next_permutation(rest.begin(), rest.end()));
            }
            for (auto& w : A.words) A.expansions.push_back(expand(w, A.assIdx));
        }
    }

    static SparseVec expand(const std::vector<int>& w, const std::map<std::vector<int>, int>& assIdx) {
        std::map<std::vector<int>, Rat> terms{{{w[0]}, Rat(1)}};
        for (size_t u = 1; u < w.size(); ++u) {
            std::map<std::vector<int>, Rat> next;
            for (auto& [word, c] : terms) {
                std::vector<int> left = word;
                left.push_back(w[u]);
                next[left] += c;
                std::vector<int> right{w[u]};
                right.insert(right.end(), word.begin(), word.end());
                next[right] -= c;
            }
            terms = std::move(next);
        }
        SparseVec v;
        for (auto& [word, c] : terms)
            if (!c.isZero()) v.emplace_back(assIdx.at(word), c);
        std::sort(v.begin(), v.end());
        return v;
    }

    const ColumnSolver& solverAt(int n) {
        auto& A = ar[n];
        if (!A.solver) {
            SparseMatrix basis(static_cast<int>(factorial(n)), static_cast<int>(A.words.size()));
            for (size_t j = 0; j < A.words.size(); ++j) basis.setColumn(static_cast<int>(j), A.expansions[j]);
            A.solver = std::make_shared<ColumnSolver>(basis);
        }
        return *A.solver;
    }
};

std::string lie_label(const std::vector<int>& w) {
    std::ostringstream os;
    for (size_t i = 0; i + 1 < w.size(); ++i) os << "[";
    for (size_t i = 0; i < w.size(); ++i) os << (i ? (i + 1 < w.size() ? "," : ",") : "") << w[i] + 1
                                             << (i ? "]" : "");
    return os.str();
}

}  // namespace

OperadPtr lie_operad(int N, int actionTier) {
    if (actionTier < 0) actionTier = std::min(N, 6);
    auto data = std::make_shared<LieData>(N);
    SymSeq seq = SymSeq::zero(N);
    for (int n = 1; n <= N; ++n) {
        auto& A = data->ar[n];
        SymRep r;
        r.n = n;
        r.deg.assign(A.words.size(), 0);
        for (auto& w : A.words) r.labels.push_back(lie_label(w));
        if (n <= actionTier) {
            const ColumnSolver& sol = data->solverAt(n);
            const auto& all = Perm::all(n);
            for (int t = 0; t + 1 < n; ++t) {
                SparseMatrix m(static_cast<int>(A.words.size()), static_cast<int>(A.words.size()));
                Perm st = Perm::transposition(n, t);
                for (size_t j = 0; j < A.words.size(); ++j) {
                    // permute letters in the expansion, re-express in the basis
                    std::map<int, Rat> img;
                    for (auto& [ai, c] : A.expansions[j]) {
                        std::vector<int> w = all[ai].oneLine();
                        for (auto& x : w) x = st(x);
                        img[A.assIdx.at(w)] += c;
                    }
                    SparseVec iv;
                    for (auto& [k, c] : img)
                        if (!c.isZero()) iv.emplace_back(k, c);
                    for (auto& [row, c] : sol.solve(iv)) m.add(row, static_cast<int>(j), c);
                }
                r.gens.push_back(std::move(m));
            }
        }
        seq.terms[n] = std::move(r);
    }
    auto builder = [data](const Operad& self, int m, int i, int q) {
        SparseMatrix mtx(self.dim(m + q - 1), self.dim(m) * self.dim(q));
        auto& Am = data->ar[m];
        auto& Aq = data->ar[q];
        auto& Ao = data->ar[m + q - 1];
        const auto& allM = Perm::all(m);
        const auto& allQ = Perm::all(q);
        const ColumnSolver& sol = const_cast<LieData&>(*data).solverAt(m + q - 1);
        for (size_t a = 0; a < Am.words.size(); ++a)
            for (size_t b = 0; b < Aq.words.size(); ++b) {
                std::map<int, Rat> img;
                for (auto& [ai, ca] : Am.expansions[a])
                    for (auto& [bi, cb] : Aq.expansions[b]) {
                        auto out = subst_word(allM[ai].oneLine(), i - 1, allQ[bi].oneLine());
                        img[Ao.assIdx.at(out)] += ca * cb;
                    }
                SparseVec iv;
                for (auto& [k, c] : img)
                    if (!c.isZero()) iv.emplace_back(k, c);
                for (auto& [row, c] : sol.solve(iv))
                    mtx.add(row, static_cast<int>(a) * self.dim(q) + static_cast<int>(b), c);
            }
        return mtx;
    };
    std::vector<std::vector<Recipe>> recipes(N + 1);
    recipes[1] = {Recipe::leafOf(0)};
    for (int n = 2; n <= N; ++n)
        for (auto& w : data->ar[n].words) {
            Recipe t = Recipe::leafOf(w[0]);
            for (size_t u = 1; u < w.size(); ++u) t = Recipe::node(0, std::move(t), Recipe::leafOf(w[u]));
            recipes[n].push_back(std::move(t));
        }
    return std::make_shared<Operad>("Lie", std::move(seq), builder, std::move(recipes));
}

OperadPtr suspend_operad(const OperadPtr& o, int k) {
    if (k == 0) return o;
    std::ostringstream name;
    name << "s";
    if (k != 1) name << "^" << k;
    name << "(" << o->name() << ")";
    const int K = std::abs(k);
    auto builder = [base = o, K](const Operad& self, int m, int i, int q) {
        const SparseMatrix& M = base->comp(m, i, q);
        SparseMatrix out(M.rows(), M.cols());
        const int dq = base->dim(q);
        for (int r = 0; r < M.rows(); ++r)
            for (auto& [c, v] : M.row(r)) {
                int bIdx = c % dq;
                long e = static_cast<long>(K) * base->term(q).deg[bIdx] * (m - 1) +
                         (static_cast<long>(K) * (K - 1) / 2) * (q - 1) * (m - 1) +
                         static_cast<long>(K) * (q - 1) * (i - 1);
                out.set(r, c, (e % 2 != 0) ? Rat(0) - v : v);
            }
        return out;
    };
    std::vector<std::vector<Recipe>> recipes;
    if (o->hasRecipes()) {
        recipes.resize(o->maxArity() + 1);
        for (int n = 1; n <= o->maxArity(); ++n)
            for (int e = 0; e < o->dim(n); ++e) recipes[n].push_back(o->recipe(n, e));
    }
    return std::make_shared<Operad>(name.str(), suspend(o->seq(), k), builder, std::move(recipes));
}

OperadPtr spectral_lie_operad(int N) {
    auto s = suspend_operad(lie_operad(N), -1);
    // rebuilt with the conventional name
    auto builder = [base = s](const Operad&, int m, int i, int q) { return base->comp(m, i, q); };
    std::vector<std::vector<Recipe>> recipes(N + 1);
    for (int n = 1; n <= N; ++n)
        for (int e = 0; e < s->dim(n); ++e) recipes[n].push_back(s->recipe(n, e));
    return std::make_shared<Operad>("SpectralLie", s->seq(), builder, std::move(recipes));
}

// ---------------------------------------------------------------------------
// the n-Poisson operad via the Leibniz distributive law

namespace {

struct PoisData {
    int n;                 // Poisson parameter; bracket degree n-1
    OperadPtr sl;          // s^{n-1} Lie, labels per block
    std::vector<ComposeTerm> basis;  // per arity

    int bracketDeg() const { return n - 1; }
};

// A monomial: coefficient times an ordered product of factors; every factor
// is a vector in sl(|letters|) attached to a sorted letter set.
struct PFactor {
    std::vector<int> letters;
    SparseVec vec;
};
struct PMono {
    Rat coef;
    std::vector<PFactor> factors;
};
using PPoly = std::vector<PMono>;

int pfactor_deg(const PoisData& D, const PFactor& f) {
    return D.bracketDeg() * (static_cast<int>(f.letters.size()) - 1);
}

// Sorts factors by minimal letter, tracking the Koszul sign.
PMono canonicalize(const PoisData& D, PMono m) {
    std::vector<int> mins, degs;
    for (auto& f : m.factors) {
        mins.push_back(f.letters.front());
        degs.push_back(pfactor_deg(D, f));
    }
    std::vector<int> pi = sorting_order(mins);
    bool sorted = true;
    for (size_t i = 0; i < pi.size(); ++i) sorted &= pi[i] == static_cast<int>(i);
    if (!sorted) {
        m.coef *= Rat(koszul_sign(degs, pi));
        std::vector<PFactor> out;
        for (int idx : pi) out.push_back(std::move(m.factors[idx]));
        m.factors = std::move(out);
    }
    return m;
}

PMono mul(const PoisData& D, const PMono& a, const PMono& b) {
    PMono m;
    m.coef = a.coef * b.coef;
    m.factors = a.factors;
    m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
    return canonicalize(D, std::move(m));
}

// Bracket of two single factors via the sl-operad.
PMono bracket_base(const PoisData& D, const PMono& a, const PMono& b) {
    const PFactor& F = a.factors[0];
    const PFactor& G = b.factors[0];
    const int la = static_cast<int>(F.letters.size());
    const int lb = static_cast<int>(G.letters.size());
    SparseVec br = unit_vec(0);  // the sl(2) bracket generator
    SparseVec mid = D.sl->compose2(2, 1, br, la, F.vec);
    SparseVec v = D.sl->compose2(la + 1, la + 1, mid, lb, G.vec);
    // relabel slots to the sorted combined letter set
    std::vector<int> letters = F.letters;
    letters.insert(letters.end(), G.letters.begin(), G.letters.end());
    std::vector<int> sorted = letters;
    std::sort(sorted.begin(), sorted.end());
    if (letters != sorted && !v.empty()) {
        std::vector<int> line(letters.size());
        for (size_t c = 0; c < letters.size(); ++c)
            line[c] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), letters[c]) -
                                       sorted.begin());
        v = D.sl->term(static_cast<int>(letters.size())).act(Perm::fromOneLine(line)).apply(v);
    }
    PMono m;
    m.coef = a.coef * b.coef;
    m.factors = {PFactor{std::move(sorted), std::move(v)}};
    return m;
}

int pmono_deg(const PoisData& D, const PMono& m) {
    int d = 0;
    for (auto& f : m.factors) d += pfactor_deg(D, f);
    return d;
}

// The left-normed word (positions within a block) of a Lie-basis element:
// first position 0, the rest enumerated in next_permutation order.
std::vector<int> lie_word_of(int size, int bIdx) {
    std::vector<int> w{0};
    if (size == 1) return w;
    std::vector<int> rest(size - 1);
    std::iota(rest.begin(), rest.end(), 1);
    for (int t = 0; t < bIdx; ++t) std::next_permutation(rest.begin(), rest.end());
    w.insert(w.end(), rest.begin(), rest.end());
    return w;
}

// Inverse of lie_word_of: the basis index of a left-normed word.
int lie_word_index(const std::vector<int>& w) {
    if (w.size() <= 1) return 0;
    std::vector<int> rest(w.begin() + 1, w.end());
    std::vector<int> symbols = rest;
    std::sort(symbols.begin(), symbols.end());
    long idx = 0;
    for (size_t u = 0; u < rest.size(); ++u) {
        auto it = std::find(symbols.begin(), symbols.end(), rest[u]);
        idx += (it - symbols.begin()) * factorial(static_cast<int>(symbols.size()) - 1);
        symbols.erase(it);
    }
    return static_cast<int>(idx);
}

}  // namespace

namespace {

// Context for the recursive composition of Poisson monomials. Every value
// reduces to pure sl-compositions, Koszul-sorted products, and the atomic
// bracket-of-product expansion A2 = br o_2 pr (A1 derived by equivariance).
struct PoisCtx {
    const PoisData& D;
    const Operad& self;
    PPoly A1, A2;
    int depth = 0;
};

SparseVec poly_to_vec(const PoisCtx& C, int arity, const PPoly& poly) {
    const auto& bas = C.D.basis[arity];
    std::map<int, Rat> acc;
    for (const PMono& mono : poly) {
        if (mono.coef.isZero()) continue;
        std::vector<size_t> pick(mono.factors.size(), 0);
        bool any = true;
        for (auto& f : mono.factors) any &= !f.vec.empty();
        while (any) {
            Rat coef = mono.coef;
            ComposeBasisElt img;
            for (size_t f = 0; f < mono.factors.size(); ++f) {
                img.blocks.push_back(mono.factors[f].letters);
                img.bIdx.push_back(mono.factors[f].vec[pick[f]].first);
                coef *= mono.factors[f].vec[pick[f]].second;
            }
            img.aIdx = 0;
            auto it = bas.index.find(encode_compose_elt(img));
            if (it == bas.index.end()) throw std::logic_error("pois: monomial missing from basis");
            acc[it->second] += coef;
            int f = static_cast<int>(mono.factors.size()) - 1;
            while (f >= 0) {
                if (++pick[f] < mono.factors[f].vec.size()) break;
                pick[f] = 0;
                --f;
            }
            if (f < 0) break;
        }
    }
    SparseVec v;
    for (auto& [i, c] : acc)
        if (!c.isZero()) v.emplace_back(i, c);
    return v;
}

PPoly vec_to_poly(const PoisCtx& C, int arity, const SparseVec& v) {
    const auto& bas = C.D.basis[arity];
    PPoly out;
    for (auto& [i, c] : v) {
        const auto& e = bas.basis[i];
        PMono m{c, {}};
        for (size_t f = 0; f < e.blocks.size(); ++f)
            m.factors.push_back(PFactor{e.blocks[f], unit_vec(e.bIdx[f])});
        out.push_back(std::move(m));
    }
    return out;
}

PPoly subst_mono(PoisCtx& C, const PMono& a, int L, const PMono& b);

PPoly subst_poly(PoisCtx& C, const PPoly& p, int L, const PMono& b) {
    PPoly out;
    for (auto& m : p)
        for (auto& t : subst_mono(C, m, L, b)) out.push_back(t);
    return out;
}

// Relabels an arity-3 pattern so slot s sits at slotLetter[s], then
// substitutes the arguments at those letters in increasing order.
PPoly apply_pattern(PoisCtx& C, const PPoly& pattern, const std::array<int, 3>& slotLetter,
                    const std::array<const PMono*, 3>& args) {
    std::vector<int> rank = sorting_order({slotLetter[0], slotLetter[1], slotLetter[2]});
    // sigma(s) = rank of slotLetter[s]
    std::vector<int> sigma(3);
    for (int pos = 0; pos < 3; ++pos) sigma[rank[pos]] = pos;
    PPoly cur;
    if (sigma == std::vector<int>{0, 1, 2}) {
        cur = pattern;
    } else {
        SparseVec v = poly_to_vec(C, 3, pattern);
        v = C.self.term(3).act(Perm::fromOneLine(sigma)).apply(v);
        cur = vec_to_poly(C, 3, v);
    }
    // monotone rename: rank r -> sorted letter
    std::array<int, 3> sortedLetters{slotLetter[rank[0]], slotLetter[rank[1]], slotLetter[rank[2]]};
    for (auto& m : cur)
        for (auto& f : m.factors)
            for (auto& l : f.letters) l = sortedLetters[l];
    // evaluating the acted pattern on arguments in position order differs
    // from the slot-order evaluation by the Koszul sign of the rearrangement
    std::vector<int> degs(3);
    for (int s = 0; s < 3; ++s) degs[s] = pmono_deg(C.D, *args[s]);
    int eps = koszul_sign(degs, rank);
    if (eps != 1)
        for (auto& m : cur) m.coef = Rat(0) - m.coef;
    // substitute arguments at their letters, ascending
    for (int r = 0; r < 3; ++r) {
        const PMono* arg = args[rank[r]];
        int letter = sortedLetters[r];
        if (arg->factors.size() == 1 && arg->factors[0].letters == std::vector<int>{letter} &&
            arg->factors[0].vec == unit_vec(0) && arg->coef == Rat(1))
            continue;  // plain letter
        cur = subst_poly(C, cur, letter, *arg);
    }
    return cur;
}

// gamma(br; P, Q) for canonical monomials.
PPoly bracket_poly(PoisCtx& C, const PMono& P, const PMono& Q) {
    if (P.factors.size() == 1 && Q.factors.size() == 1) return {bracket_base(C.D, P, Q)};
    if (Q.factors.size() >= 2) {
        PMono q1{Rat(1), {Q.factors[0]}};
        PMono q2{Q.coef, std::vector<PFactor>(Q.factors.begin() + 1, Q.factors.end())};
        PMono p1{P.coef, P.factors};
        std::array<int, 3> letters{P.factors[0].letters[0], q1.factors[0].letters[0],
                                   q2.factors[0].letters[0]};
        return apply_pattern(C, C.A2, letters, {&p1, &q1, &q2});
    }
    PMono p1{Rat(1), {P.factors[0]}};
    PMono p2{P.coef, std::vector<PFactor>(P.factors.begin() + 1, P.factors.end())};
    PMono q{Q.coef, Q.factors};
    std::array<int, 3> letters{p1.factors[0].letters[0], p2.factors[0].letters[0],
                               Q.factors[0].letters[0]};
    return apply_pattern(C, C.A1, letters, {&p1, &p2, &q});
}

PPoly subst_mono(PoisCtx& C, const PMono& a, int L, const PMono& b) {
    if (++C.depth > 500) throw std::logic_error("pois: substitution recursion too deep");
    struct Guard {
        int& d;
        ~Guard() { --d; }
    } guard{C.depth};

    size_t alpha = a.factors.size();
    for (size_t f = 0; f < a.factors.size(); ++f)
        for (int x : a.factors[f].letters)
            if (x == L) alpha = f;
    if (alpha == a.factors.size()) throw std::logic_error("pois: substitution letter missing");
    const PFactor& F = a.factors[alpha];
    const int r = static_cast<int>(F.letters.size());

    // the substituted block's result replaces the factor in place
    auto withOthers = [&](const PPoly& blockRes, const Rat& scale) {
        PPoly out;
        for (auto& m : blockRes) {
            PMono full{a.coef * b.coef * scale * m.coef, {}};
            for (size_t f = 0; f < a.factors.size(); ++f) {
                if (f == alpha)
                    full.factors.insert(full.factors.end(), m.factors.begin(), m.factors.end());
                else
                    full.factors.push_back(a.factors[f]);
            }
            out.push_back(canonicalize(C.D, std::move(full)));
        }
        return out;
    };

    // composing into the alpha-th factor's slots passes the later assembly
    // steps of the monomial: Koszul sign against the factors after alpha
    int suffixDeg = 0;
    for (size_t f = alpha + 1; f < a.factors.size(); ++f)
        suffixDeg += pfactor_deg(C.D, a.factors[f]);
    Rat passSign(((pmono_deg(C.D, b) & 1) && (suffixDeg & 1)) ? -1 : 1);

    if (b.factors.size() == 1) {
        // pure substitution straight through the sl structure maps
        const PFactor& B = b.factors[0];
        int pos = static_cast<int>(std::lower_bound(F.letters.begin(), F.letters.end(), L) -
                                   F.letters.begin());
        SparseVec v = C.D.sl->compose2(r, pos + 1, F.vec, static_cast<int>(B.letters.size()), B.vec);
        std::vector<int> combined;
        for (int p = 0; p < r; ++p) {
            if (p == pos) combined.insert(combined.end(), B.letters.begin(), B.letters.end());
            else combined.push_back(F.letters[p]);
        }
        std::vector<int> sorted = combined;
        std::sort(sorted.begin(), sorted.end());
        if (combined != sorted && !v.empty()) {
            std::vector<int> line(combined.size());
            for (size_t c = 0; c < combined.size(); ++c)
                line[c] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), combined[c]) -
                                           sorted.begin());
            v = C.D.sl->term(static_cast<int>(combined.size()))
                    .act(Perm::fromOneLine(line))
                    .apply(v);
        }
        PPoly blockRes{PMono{Rat(1), {PFactor{std::move(sorted), std::move(v)}}}};
        return withOthers(blockRes, passSign);
    }

    if (r == 1) {
        // singleton block: splice b's factors in
        PPoly blockRes{PMono{Rat(1), b.factors}};
        return withOthers(blockRes, passSign);
    }

    bool isPr = b.factors.size() == 2 && b.factors[0].letters.size() == 1 &&
                b.factors[1].letters.size() == 1 && b.factors[0].vec == unit_vec(0) &&
                b.factors[1].vec == unit_vec(0);
    if (isPr) {
        int u = b.factors[0].letters[0], vLet = b.factors[1].letters[0];
        PPoly out;
        for (auto& [bIdx, coeff] : F.vec) {
            std::vector<int> w = lie_word_of(r, bIdx);
            int tailPos = w.back();
            int tailLetter = F.letters[tailPos];
            std::vector<int> headPos(w.begin(), w.end() - 1);
            std::vector<int> sortedPos = headPos;
            std::sort(sortedPos.begin(), sortedPos.end());
            std::vector<int> headWord(headPos.size()), headLetters;
            for (size_t s = 0; s < headPos.size(); ++s)
                headWord[s] = static_cast<int>(std::lower_bound(sortedPos.begin(), sortedPos.end(),
                                                                headPos[s]) - sortedPos.begin());
            for (int p : sortedPos) headLetters.push_back(F.letters[p]);
            PMono H{Rat(1), {PFactor{headLetters, unit_vec(lie_word_index(headWord))}}};
            PMono T{Rat(1), {PFactor{{tailLetter}, unit_vec(0)}}};
            // anchor: bracket_base(H, T) = c_e * e_{bIdx}
            PMono base = bracket_base(C.D, H, T);
            if (base.factors.size() != 1 || base.factors[0].vec.size() != 1 ||
                base.factors[0].vec[0].first != bIdx)
                throw std::logic_error("pois: block decomposition anchor failed");
            Rat ce = base.factors[0].vec[0].second * base.coef;
            PPoly blockRes;
            if (L == tailLetter) {
                PMono xu{Rat(1), {PFactor{{u}, unit_vec(0)}}};
                PMono xv{Rat(1), {PFactor{{vLet}, unit_vec(0)}}};
                blockRes = apply_pattern(C, C.A2, {headLetters[0], u, vLet}, {&H, &xu, &xv});
            } else {
                PPoly inner = subst_mono(C, H, L, b);
                for (auto& m : inner)
                    for (auto& t : bracket_poly(C, m, T)) blockRes.push_back(t);
            }
            for (auto& t : withOthers(blockRes, coeff / ce)) out.push_back(std::move(t));
        }
        return out;
    }

    // general product: route through the product generator, then fill slots
    PMono b1{Rat(1), {b.factors[0]}};
    PMono b2{Rat(1), std::vector<PFactor>(b.factors.begin() + 1, b.factors.end())};
    int u = b.factors[0].letters[0], vLet = b.factors[1].letters[0];
    PMono pr{Rat(1), {PFactor{{u}, unit_vec(0)}, PFactor{{vLet}, unit_vec(0)}}};
    PMono a1 = a;
    PPoly s1 = subst_mono(C, a1, L, pr);
    PPoly s2 = subst_poly(C, s1, u, b1);
    PPoly s3 = subst_poly(C, s2, vLet, b2);
    if (b.coef != Rat(1))
        for (auto& m : s3) m.coef *= b.coef;
    return s3;
}

}  // namespace

OperadPtr pois_operad(int N, int n) {
    if (n < 1) throw std::invalid_argument("pois_operad: n must be >= 1");
    if (n == 1) return ass_operad(N);
    auto D = std::make_shared<PoisData>();
    D->n = n;
    D->sl = suspend_operad(lie_operad(N), n - 1);
    SymSeq comSeq = com_operad(N)->seq();
    SymSeq seq = compose(comSeq, D->sl->seq(), true, &D->basis);

    auto builder = [D](const Operad& self, int m, int i, int q) {
        SparseMatrix mtx(self.dim(m + q - 1), self.dim(m) * self.dim(q));
        const auto& basM = D->basis[m];
        const auto& basQ = D->basis[q];
        const int L = i - 1;

        PoisCtx C{*D, self, {}, {}, 0};
        if (m + q - 1 >= 3 && D->basis.size() > 3 && !D->basis[3].basis.empty()) {
            // atomic Leibniz value br o_2 pr = [x0,x1]x2 + [x0,x2]x1; the
            // br o_1 pr value follows from equivariance and tau.br = (-1)^n br
            auto mk = [&](std::vector<int> bl1, std::vector<int> bl2) {
                return PMono{Rat(1), {PFactor{bl1, unit_vec(0)}, PFactor{bl2, unit_vec(0)}}};
            };
            PMono t1 = mk({0, 1}, {2}), t2 = mk({0, 2}, {1});
            C.A2 = {t1, t2};
            Perm comb = composition_block_perm(Perm::transposition(2, 0), Perm(2), 2, 2, 2);
            SparseVec a2v = poly_to_vec(C, 3, C.A2);
            SparseVec a1v = self.term(3).act(comb).apply(a2v);
            if (D->n % 2 != 0) a1v = vec_scale(a1v, Rat(-1));
            C.A1 = vec_to_poly(C, 3, a1v);
        }

        for (size_t a = 0; a < basM.basis.size(); ++a) {
            const auto& ea = basM.basis[a];
            for (size_t bi = 0; bi < basQ.basis.size(); ++bi) {
                const auto& eb = basQ.basis[bi];
                // standard relabeling: a-letters x -> x (x<L) or x+q-1 (x>L);
                // b-letters y -> L+y
                PMono aM{Rat(1), {}};
                for (size_t f = 0; f < ea.blocks.size(); ++f) {
                    std::vector<int> letters;
                    for (int x : ea.blocks[f]) letters.push_back(x <= L ? x : x + q - 1);
                    aM.factors.push_back(PFactor{std::move(letters), unit_vec(ea.bIdx[f])});
                }
                PMono bM{Rat(1), {}};
                for (size_t f = 0; f < eb.blocks.size(); ++f) {
                    std::vector<int> letters;
                    for (int y : eb.blocks[f]) letters.push_back(L + y);
                    bM.factors.push_back(PFactor{std::move(letters), unit_vec(eb.bIdx[f])});
                }
                SparseVec col = poly_to_vec(C, m + q - 1, subst_mono(C, aM, L, bM));
                for (auto& [row, val] : col)
                    mtx.add(row, static_cast<int>(a) * self.dim(q) + static_cast<int>(bi), val);
            }
        }
        return mtx;
    };

    std::ostringstream name;
    name << "Pois" << n;
    // recipes: product-comb of per-block left-normed bracket combs
    std::vector<std::vector<Recipe>> recipes(N + 1);
    recipes[1] = {Recipe::leafOf(0)};
    for (int arity = 2; arity <= N; ++arity) {
        for (auto& e : D->basis[arity].basis) {
            std::vector<Recipe> blockTrees;
            for (size_t f = 0; f < e.blocks.size(); ++f) {
                const auto& blk = e.blocks[f];
                if (blk.size() == 1) {
                    blockTrees.push_back(Recipe::leafOf(blk[0]));
                    continue;
                }
                auto w = lie_word_of(static_cast<int>(blk.size()), e.bIdx[f]);
                Recipe t = Recipe::leafOf(blk[w[0]]);
                for (size_t u = 1; u < w.size(); ++u)
                    t = Recipe::node(0, std::move(t), Recipe::leafOf(blk[w[u]]));
                blockTrees.push_back(std::move(t));
            }
            Recipe t = std::move(blockTrees[0]);
            for (size_t f = 1; f < blockTrees.size(); ++f)
                t = Recipe::node(1, std::move(t), std::move(blockTrees[f]));
            recipes[arity].push_back(std::move(t));
        }
    }
    return std::make_shared<Operad>(name.str(), std::move(seq), builder, std::move(recipes));
}

OperadPtr builtin_operad(const std::string& name, int N) {
    std::string s;
    for (char c : name) s += static_cast<char>(std::tolower(c));
    if (s == "one" || s == "1") return one_operad(N);
    if (s == "com" || s == "einf") return com_operad(N);
    if (s == "ass" || s == "e1" || s == "pois1") return ass_operad(N);
    if (s == "lie") return lie_operad(N);
    if (s == "spectrallie" || s == "slie") return spectral_lie_operad(N);
    if (s.rfind("pois", 0) == 0) {
        int n = std::stoi(s.substr(4));
        return pois_operad(N, n);
    }
    throw std::invalid_argument("unknown operad name: " + name);
}

// ---------------------------------------------------------------------------
// built-in morphisms

Morphism augmentation(const OperadPtr& o, int N) {
    Morphism f;
    f.source = o;
    f.target = one_operad(std::min(N, o->maxArity()));
    f.maps.resize(f.target->maxArity() + 1);
    f.maps[1] = SparseMatrix::identity(1);
    for (int n = 2; n <= f.target->maxArity(); ++n) f.maps[n] = SparseMatrix(0, o->dim(n));
    return f;
}

Morphism lie_to_ass(int N) {
    auto src = lie_operad(N);
    auto tgt = ass_operad(N);
    SparseVec img = vec_axpy(unit_vec(0), Rat(-1), unit_vec(1));  // w(12) - w(21)
    Morphism f = morphism_from_gen2(src, tgt, {img});
    auto bad = f.validate();
    if (!bad.empty()) throw std::logic_error("lie_to_ass: validation failed: " + bad.front());
    return f;
}

Morphism iota_shadow(int m, int n, int N) {
    if (m < 1) throw std::invalid_argument("iota_shadow: m >= 1 required");
    auto src = pois_operad(N, m);
    if (n == 0) return identity_morphism(src);
    OperadPtr tgt = (n < 0) ? com_operad(N) : pois_operad(N, m + n);
    std::vector<SparseVec> images;
    // the product class of the target in arity 2
    SparseVec prod = (tgt->name() == "Com") ? unit_vec(0) : unit_vec(1);
    if (m == 1) {
        images = {prod, prod};  // both words to the commutative product
    } else {
        images = {SparseVec{}, prod};  // bracket dies, product survives
    }
    Morphism f = morphism_from_gen2(src, tgt, images);
    auto bad = f.validate();
    if (!bad.empty()) throw std::logic_error("iota_shadow: validation failed: " + bad.front());
    return f;
}

Morphism beta_shadow(int n, int N, const Rat& scale) {
    if (n == 0) return augmentation(ass_operad(N), N);
    auto src = pois_operad(N, n + 1);
    OperadPtr tgt = suspend_operad(pois_operad(N, n), 1);
    std::vector<SparseVec> images;
    if (n == 1) {
        // bracket -> the shifted commutator class, product -> 0
        SparseVec comm = vec_axpy(vec_scale(unit_vec(0), scale), Rat(0) - scale, unit_vec(1));
        images = {comm, SparseVec{}};
    } else {
        images = {vec_scale(unit_vec(0), scale), SparseVec{}};
    }
    Morphism f = morphism_from_gen2(src, tgt, images);
    auto bad = f.validate();
    if (!bad.empty())
        throw std::logic_error("beta_shadow(" + std::to_string(n) + "): validation failed: " + bad.front());
    return f;
}

Morphism suspension_morphism_shadow(const OperadPtr& o) {
    Morphism f;
    f.source = o;
    f.target = suspend_operad(o, 1);
    f.maps.resize(o->maxArity() + 1);
    f.maps[1] = SparseMatrix::identity(1);
    for (int n = 2; n <= o->maxArity(); ++n) f.maps[n] = SparseMatrix(o->dim(n), o->dim(n));
    auto bad = f.validate();
    if (!bad.empty())
        throw std::logic_error("suspension_morphism_shadow: validation failed: " + bad.front());
    return f;
}

}  // namespace opd
