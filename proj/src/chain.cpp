#include "opd/chain.hpp"

#include <stdexcept>

namespace opd {

void ChainComplex::validate() const {
    for (auto& [k, d] : diff) {
        if (d.cols() != dim(k) || d.rows() != dim(k - 1))
            throw std::domain_error("ChainComplex: differential shape mismatch at degree " +
                                    std::to_string(k));
    }
    for (auto& [k, d] : diff) {
        auto up = diff.find(k + 1);
        if (up == diff.end()) continue;
        if (!(d * up->second).isZero())
            throw std::domain_error("not a complex: d*d != 0 at degree " + std::to_string(k + 1));
    }
}

Rat ChainComplex::euler() const {
    Rat e;
    for (auto& [k, n] : dims) e += Rat((k & 1) == 0 ? n : -n);
    return e;
}

std::map<int, int> homology_dims(const ChainComplex& c) {
    c.validate();
    std::map<int, int> h;
    std::map<int, int> rk;  // rank of d_k
    for (auto& [k, d] : c.diff) rk[k] = rank(d);
    auto rankAt = [&](int k) {
        auto it = rk.find(k);
        return it == rk.end() ? 0 : it->second;
    };
    Rat eulerH;
    for (auto& [k, n] : c.dims) {
        int z = n - rankAt(k);           // dim ker d_k
        int hk = z - rankAt(k + 1);      // minus rank d_{k+1}
        if (hk < 0) throw std::logic_error("homology_dims: negative dimension");
        if (hk > 0) h[k] = hk;
        eulerH += Rat((k & 1) == 0 ? hk : -hk);
    }
    if (eulerH != c.euler()) throw std::logic_error("homology_dims: Euler characteristic mismatch");
    return h;
}

HomologySpace::HomologySpace(const std::vector<SparseVec>& kernelBasis,
                             const SparseMatrix& boundary, int ambientDim) {
    std::vector<int> bcols = independent_columns(boundary);
    boundaryRank_ = static_cast<int>(bcols.size());
    // columns: independent boundaries first, then all kernel vectors; the
    // greedy picker then selects homology representatives deterministically.
    SparseMatrix probe(ambientDim, boundaryRank_ + static_cast<int>(kernelBasis.size()));
    for (int j = 0; j < boundaryRank_; ++j) probe.setColumn(j, boundary.column(bcols[j]));
    for (size_t j = 0; j < kernelBasis.size(); ++j)
        probe.setColumn(boundaryRank_ + static_cast<int>(j), kernelBasis[j]);
    std::vector<int> chosen = independent_columns(probe);
    SparseMatrix span(ambientDim, static_cast<int>(chosen.size()));
    int j = 0;
    for (int c : chosen) {
        span.setColumn(j++, probe.column(c));
        if (c >= boundaryRank_) reps_.push_back(probe.column(c));
    }
    if (static_cast<int>(chosen.size()) != boundaryRank_ + static_cast<int>(reps_.size()))
        throw std::logic_error("HomologySpace: boundary columns not independent");
    if (span.cols() > 0) solver_ = std::make_shared<ColumnSolver>(span);
}

SparseVec HomologySpace::coords(const SparseVec& cycle) const {
    if (!solver_) {
        if (!cycle.empty()) throw std::domain_error("HomologySpace: nonzero cycle in zero space");
        return {};
    }
    SparseVec full = solver_->solve(cycle);
    SparseVec out;
    for (auto& [i, v] : full)
        if (i >= boundaryRank_) out.emplace_back(i - boundaryRank_, v);
    return out;
}

std::map<int, HomologySpace> homology_basis(const ChainComplex& c) {
    c.validate();
    std::map<int, HomologySpace> out;
    for (auto& [k, n] : c.dims) {
        if (n == 0) continue;
        std::vector<SparseVec> z;
        auto dk = c.diff.find(k);
        if (dk != c.diff.end() && dk->second.nnz() > 0) {
            z = kernel_basis(dk->second);
        } else {
            for (int i = 0; i < n; ++i) z.push_back(unit_vec(i));
        }
        auto up = c.diff.find(k + 1);
        SparseMatrix b = (up != c.diff.end()) ? up->second : SparseMatrix(n, 0);
        out.emplace(k, HomologySpace(z, b, n));
    }
    return out;
}

}  // namespace opd
