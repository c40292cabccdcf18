#include "opd/weighted.hpp"

#include <stdexcept>

#include "opd/symrep.hpp"

namespace opd {

WeightedGraded WeightedGraded::point(int weight, int dim, int degree) {
    WeightedGraded g;
    g.weights.resize(weight + 1);
    g.weights[weight].add(degree, dim);
    return g;
}

int WeightedFiltered::dimAt(int w) const {
    if (w < 0) return 0;
    if (w > maxWeight()) w = maxWeight();
    return rank(span[w]);
}

std::vector<std::string> WeightedFiltered::checkNested() const {
    std::vector<std::string> bad;
    for (int w = 0; w + 1 <= maxWeight(); ++w) {
        // F_w <= F_{w+1}: appending F_w columns to F_{w+1} must not raise rank
        SparseMatrix joint(ambientDim, span[w].cols() + span[w + 1].cols());
        for (int c = 0; c < span[w + 1].cols(); ++c) joint.setColumn(c, span[w + 1].column(c));
        for (int c = 0; c < span[w].cols(); ++c)
            joint.setColumn(span[w + 1].cols() + c, span[w].column(c));
        if (rank(joint) != rank(span[w + 1]))
            bad.push_back("filtration not nested at weight " + std::to_string(w));
    }
    return bad;
}

WeightedFiltered WeightedFiltered::constant(int dim, int maxWeight) {
    WeightedFiltered f;
    f.ambientDim = dim;
    for (int w = 0; w <= maxWeight; ++w) f.span.push_back(SparseMatrix::identity(dim));
    return f;
}

WeightedFiltered WeightedFiltered::startingInWeightOne(int dim, int maxWeight) {
    WeightedFiltered f;
    f.ambientDim = dim;
    f.span.push_back(SparseMatrix(dim, 0));
    for (int w = 1; w <= maxWeight; ++w) f.span.push_back(SparseMatrix::identity(dim));
    return f;
}

WeightedGraded weighted_day_tensor(const WeightedGraded& x, const WeightedGraded& y) {
    WeightedGraded out;
    int W = x.maxWeight() + y.maxWeight();
    out.weights.resize(W + 1);
    for (int i = 0; i <= x.maxWeight(); ++i)
        for (int j = 0; j <= y.maxWeight(); ++j)
            for (auto& [d1, c1] : x.weights[i].dims)
                for (auto& [d2, c2] : y.weights[j].dims) out.weights[i + j].add(d1 + d2, c1 * c2);
    return out;
}

WeightedFiltered weighted_day_tensor(const WeightedFiltered& x, const WeightedFiltered& y) {
    if (x.maxWeight() != y.maxWeight())
        throw std::invalid_argument("weighted_day_tensor: weight bounds differ");
    WeightedFiltered out;
    out.ambientDim = x.ambientDim * y.ambientDim;
    for (int n = 0; n <= x.maxWeight(); ++n) {
        // sum of images F_i (x) F_j over i + j = n
        std::vector<SparseVec> cols;
        for (int i = 0; i <= n; ++i) {
            int j = n - i;
            SparseMatrix k = x.span[i].kron(y.span[j]);
            for (int c = 0; c < k.cols(); ++c) {
                SparseVec col = k.column(c);
                if (!col.empty()) cols.push_back(std::move(col));
            }
        }
        SparseMatrix m(out.ambientDim, static_cast<int>(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) m.setColumn(static_cast<int>(c), cols[c]);
        // reduce to an independent spanning set for determinism
        std::vector<int> keep = independent_columns(m);
        out.span.push_back(m.selectCols(keep));
    }
    return out;
}

WeightedFiltered c1(int dim, int maxWeight) {
    return WeightedFiltered::startingInWeightOne(dim, maxWeight);
}

std::vector<int> gr(const WeightedFiltered& x) {
    std::vector<int> out;
    int prev = 0;
    for (int w = 0; w <= x.maxWeight(); ++w) {
        int cur = rank(x.span[w]);
        out.push_back(cur - prev);
        if (cur < prev) throw std::logic_error("gr: filtration not increasing");
        prev = cur;
    }
    return out;
}

TrivReport triv_certificate(const OperadPtr& o, const GradedSpace& v, int maxWeight) {
    TrivReport rep;
    std::vector<int> xdeg;
    for (auto& [d, c] : v.dims)
        for (int i = 0; i < c; ++i) xdeg.push_back(d);
    for (int w = 1; w <= std::min(maxWeight, o->maxArity()); ++w) {
        if (w >= 2) {
            // Day weight of an arity-w structure map on weight-1 input is w
            rep.certifications.push_back(
                "arity " + std::to_string(w) +
                ": output weight >= " + std::to_string(w) + " > 1, structure map forced zero");
        }
        GradedSpace piece;
        if (!xdeg.empty() && o->dim(w) > 0) {
            Coinv c = tensor_power_coinvariants(o->term(w), xdeg, w);
            for (int d : c.deg) piece.add(d);
        }
        rep.freeWeights.push_back(std::move(piece));
    }
    return rep;
}

}  // namespace opd
