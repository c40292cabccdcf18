#include "opd/envelope.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "opd/bar.hpp"
#include "opd/symrep.hpp"

namespace opd {

namespace {

SparseVec bracket_of(const LiePresentation& g, const SparseVec& x, const SparseVec& y) {
    SparseVec out;
    for (auto& [i, a] : x)
        for (auto& [j, b] : y) out = vec_axpy(out, a * b, g.bracket[i][j]);
    return out;
}

}  // namespace

std::vector<std::string> LiePresentation::validate() const {
    std::vector<std::string> bad;
    if (static_cast<int>(bracket.size()) != dim) return {"bracket table has wrong size"};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            SparseVec anti = vec_add(bracket[i][j], bracket[j][i]);
            if (!anti.empty())
                bad.push_back("antisymmetry fails at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
        }
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k) {
                SparseVec jac = bracket_of(*this, bracket[i][j], unit_vec(k));
                jac = vec_add(jac, bracket_of(*this, bracket[j][k], unit_vec(i)));
                jac = vec_add(jac, bracket_of(*this, bracket[k][i], unit_vec(j)));
                if (!jac.empty())
                    bad.push_back("Jacobi fails at (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            }
    return bad;
}

LiePresentation LiePresentation::parseJson(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LiePresentation g;
    g.dim = j.at("dim").get<int>();
    if (j.contains("labels")) g.labels = j.at("labels").get<std::vector<std::string>>();
    while (static_cast<int>(g.labels.size()) < g.dim)
        g.labels.push_back("e" + std::to_string(g.labels.size() + 1));
    g.bracket.assign(g.dim, std::vector<SparseVec>(g.dim));
    if (j.contains("brackets"))
        for (auto& row : j.at("brackets")) {
            int a = row.at(0).get<int>() - 1;
            int b = row.at(1).get<int>() - 1;
            if (a < 0 || b < 0 || a >= g.dim || b >= g.dim)
                throw std::invalid_argument("LiePresentation: index out of range");
            SparseVec v;
            for (auto& term : row.at(2)) {
                int k = term.at(0).get<int>() - 1;
                Rat c = term.at(1).is_string() ? Rat::parse(term.at(1).get<std::string>())
                                               : Rat(term.at(1).get<long>());
                if (!c.isZero()) v.emplace_back(k, c);
            }
            std::sort(v.begin(), v.end());
            g.bracket[a][b] = v;
            g.bracket[b][a] = vec_scale(v, Rat(-1));
        }
    return g;
}

std::string LiePresentation::toJson() const {
    nlohmann::json j;
    j["dim"] = dim;
    j["labels"] = labels;
    nlohmann::json rows = nlohmann::json::array();
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b) {
            if (bracket[a][b].empty()) continue;
            nlohmann::json terms = nlohmann::json::array();
            for (auto& [k, c] : bracket[a][b]) terms.push_back({k + 1, c.str()});
            rows.push_back({a + 1, b + 1, terms});
        }
    j["brackets"] = std::move(rows);
    return j.dump();
}

LiePresentation LiePresentation::abelian(int d) {
    LiePresentation g;
    g.dim = d;
    for (int i = 0; i < d; ++i) g.labels.push_back("e" + std::to_string(i + 1));
    g.bracket.assign(d, std::vector<SparseVec>(d));
    return g;
}

LiePresentation LiePresentation::heisenberg() {
    LiePresentation g = abelian(3);
    g.labels = {"x", "y", "z"};
    g.bracket[0][1] = unit_vec(2);
    g.bracket[1][0] = vec_scale(unit_vec(2), Rat(-1));
    return g;
}

LiePresentation LiePresentation::sl2() {
    LiePresentation g = abelian(3);
    g.labels = {"e", "f", "h"};
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h
    g.bracket[2][0] = SparseVec{{0, Rat(2)}};
    g.bracket[0][2] = SparseVec{{0, Rat(-2)}};
    g.bracket[2][1] = SparseVec{{1, Rat(-2)}};
    g.bracket[1][2] = SparseVec{{1, Rat(2)}};
    g.bracket[0][1] = SparseVec{{2, Rat(1)}};
    g.bracket[1][0] = SparseVec{{2, Rat(-1)}};
    return g;
}

LiePresentation LiePresentation::nilpotent2(int n) {
    // generators x_1..x_n plus central z_{ij} = [x_i, x_j] for i < j
    int pairs = n * (n - 1) / 2;
    LiePresentation g = abelian(n + pairs);
    auto zIndex = [&](int i, int j) {
        // position of pair (i, j), i < j, in lexicographic order
        int idx = 0;
        for (int a = 0; a < i; ++a) idx += n - 1 - a;
        return n + idx + (j - i - 1);
    };
    for (int i = 0; i < n; ++i) g.labels[i] = "x" + std::to_string(i + 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int z = zIndex(i, j);
            g.labels[z] = "z" + std::to_string(i + 1) + std::to_string(j + 1);
            g.bracket[i][j] = unit_vec(z);
            g.bracket[j][i] = vec_scale(unit_vec(z), Rat(-1));
        }
    return g;
}

Envelope::Envelope(LiePresentation g, int maxWeight) : g_(std::move(g)), W_(maxWeight) {
    auto bad = g_.validate();
    if (!bad.empty()) throw std::invalid_argument("Envelope: invalid structure constants: " + bad.front());
    // weakly increasing words of length 0..W
    std::vector<std::vector<int>> cur{{}};
    monoIdx_[{}] = 0;
    monos_.push_back({});
    for (int w = 1; w <= W_; ++w) {
        std::vector<std::vector<int>> next;
        std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& word, int minLetter) {
            if (static_cast<int>(word.size()) == w) {
                monoIdx_[word] = static_cast<int>(monos_.size());
                monos_.push_back(word);
                return;
            }
            for (int l = minLetter; l < g_.dim; ++l) {
                word.push_back(l);
                rec(word, l);
                word.pop_back();
            }
        };
        std::vector<int> word;
        rec(word, 0);
    }
}

int Envelope::monomialIndex(const std::vector<int>& mono) const {
    auto it = monoIdx_.find(mono);
    if (it == monoIdx_.end()) throw std::out_of_range("Envelope: unknown monomial");
    return it->second;
}

SparseVec Envelope::normalize(const std::vector<int>& word) const {
    if (static_cast<int>(word.size()) > W_)
        throw std::invalid_argument("Envelope: word exceeds the weight bound");
    auto memo = nfMemo_.find(word);
    if (memo != nfMemo_.end()) return memo->second;
    // find the first descent
    int p = -1;
    for (size_t i = 0; i + 1 < word.size(); ++i)
        if (word[i] > word[i + 1]) {
            p = static_cast<int>(i);
            break;
        }
    SparseVec out;
    if (p < 0) {
        out = unit_vec(monoIdx_.at(word));
    } else {
        std::vector<int> swapped = word;
        std::swap(swapped[p], swapped[p + 1]);
        out = normalize(swapped);
        for (auto& [k, c] : g_.bracket[word[p]][word[p + 1]]) {
            std::vector<int> shorter;
            shorter.insert(shorter.end(), word.begin(), word.begin() + p);
            shorter.push_back(k);
            shorter.insert(shorter.end(), word.begin() + p + 2, word.end());
            out = vec_axpy(out, c, normalize(shorter));
        }
    }
    nfMemo_.emplace(word, out);
    return out;
}

SparseVec Envelope::multiply(int a, int b) const {
    std::vector<int> word = monos_[a];
    word.insert(word.end(), monos_[b].begin(), monos_[b].end());
    return normalize(word);
}

std::vector<std::string> Envelope::checkConfluence() const {
    std::vector<std::string> bad;
    if (W_ < 3) return bad;
    for (int k = 0; k < g_.dim; ++k)
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < j; ++i) {
                // word (k, j, i): resolve the left pair first or the right pair
                std::vector<int> w{k, j, i};
                // left route: (k j) i -> j k i + [k,j] i, then normalize
                SparseVec left = normalize({j, k, i});
                for (auto& [t, c] : g_.bracket[k][j]) left = vec_axpy(left, c, normalize({t, i}));
                // right route: k (j i) -> k i j + k [j,i]
                SparseVec right = normalize({k, i, j});
                for (auto& [t, c] : g_.bracket[j][i]) right = vec_axpy(right, c, normalize({k, t}));
                if (left != right)
                    bad.push_back("overlap (" + std::to_string(k + 1) + "," + std::to_string(j + 1) +
                                  "," + std::to_string(i + 1) + ") does not resolve");
            }
    return bad;
}

SparseMatrix Envelope::filtrationSpan(int w) const {
    // normal forms of all words of length <= w
    std::vector<SparseVec> cols;
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& word) {
        cols.push_back(normalize(word));
        if (static_cast<int>(word.size()) == w) return;
        for (int l = 0; l < g_.dim; ++l) {
            word.push_back(l);
            rec(word);
            word.pop_back();
        }
    };
    std::vector<int> word;
    rec(word);
    SparseMatrix m(static_cast<int>(monos_.size()), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) m.setColumn(static_cast<int>(c), cols[c]);
    return m;
}

PbwReport pbw_certificate(const LiePresentation& g, int maxWeight) {
    PbwReport rep;
    rep.algebra = g.labels.empty() ? "?" : "";
    rep.maxWeight = maxWeight;
    rep.conventionNote =
        "classical weights; shifted-bracket conventions are recorded by the square checker";
    rep.jacobiFailures = g.validate();
    if (!rep.jacobiFailures.empty()) {
        rep.pass = false;
        return rep;
    }
    Envelope env(g, maxWeight);
    rep.confluenceFailures = env.checkConfluence();
    int prevRank = 0;
    SparseMatrix prevSpan(static_cast<int>(env.monomials().size()), 0);
    bool all = rep.confluenceFailures.empty();
    for (int w = 0; w <= maxWeight; ++w) {
        SparseMatrix span = env.filtrationSpan(w);
        int dimFw = rank(span);
        PbwWeightRow row;
        row.weight = w;
        row.symDim = binomial(w + g.dim - 1, g.dim - 1);
        row.grDim = dimFw - prevRank;
        // ordered products of weight w against F_{w-1}
        std::vector<int> weightW;
        for (size_t i = 0; i < env.monomials().size(); ++i)
            if (static_cast<int>(env.monomials()[i].size()) == w) weightW.push_back(static_cast<int>(i));
        SparseMatrix cmp(static_cast<int>(env.monomials().size()),
                         prevSpan.cols() + static_cast<int>(weightW.size()));
        for (int c = 0; c < prevSpan.cols(); ++c) cmp.setColumn(c, prevSpan.column(c));
        for (size_t c = 0; c < weightW.size(); ++c) {
            // class of the ordered product e_{i1} ... e_{iw}
            SparseVec nf = env.normalize(env.monomials()[weightW[c]]);
            cmp.setColumn(prevSpan.cols() + static_cast<int>(c), nf);
        }
        row.comparisonRank = rank(cmp) - prevRank;
        row.match = (row.symDim == row.grDim) && (row.grDim == row.comparisonRank);
        all &= row.match;
        rep.rows.push_back(row);
        prevRank = dimFw;
        prevSpan = span;
    }
    long total = 0;
    for (auto& row : rep.rows) total += row.symDim;
    rep.exhaustive = (prevRank == static_cast<int>(env.monomials().size())) &&
                     (total == static_cast<long>(env.monomials().size()));
    rep.pass = all && rep.exhaustive;
    return rep;
}

EnvelopeGrReport envelope_gr_dims(int k, int n, const GradedSpace& x, int maxWeight) {
    EnvelopeGrReport rep;
    rep.k = k;
    rep.n = n;
    rep.conventionNote =
        "graded side = free functor over the k-fold suspension of the dual k-Poisson sequence";
    if (k < 1 || n < 0 || k + n > 3) throw std::invalid_argument("envelope_gr_dims: unsupported range");
    std::vector<int> xdeg;
    for (auto& [d, c] : x.dims)
        for (int i = 0; i < c; ++i) xdeg.push_back(d);

    const int N = std::max(2, maxWeight);
    SymSeq dualSide = suspend(termwise_dual(pois_operad(N, k)->seq()), k);

    auto O = pois_operad(N, k + n);
    SideModule right = module_along(
        [&] {
            // bar-induced composite down to the k-fold suspension
            Morphism f = beta_shadow(k + n - 1 >= 1 ? k + n - 1 : 0, N);
            for (int step = 1; step < k; ++step)
                f = compose_morphisms(suspend_morphism(beta_shadow(k + n - 1 - step, N), step), f);
            return f;
        }(),
        Side::Right);
    SideModule left = module_along(augmentation(O, N), Side::Left);

    rep.pass = true;
    for (int w = 1; w <= maxWeight; ++w) {
        EnvelopeGrRow row;
        row.weight = w;
        if (!xdeg.empty()) {
            if (dualSide.dim(w) > 0) {
                Coinv c = tensor_power_coinvariants(dualSide.term(w), xdeg, w);
                for (int d : c.deg) ++row.predicted[d];
            }
            BarComplex bar(right, O, left, w);
            for (auto& [T, rep2] : bar.homologyReps()) {
                Coinv c = tensor_power_coinvariants(rep2, xdeg, w);
                for (int d : c.deg) ++row.viaBar[d];
            }
        }
        row.match = (row.predicted == row.viaBar);
        rep.pass &= row.match;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace opd
