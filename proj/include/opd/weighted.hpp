#pragma once

#include <string>
#include <vector>

#include "opd/operad.hpp"
#include "opd/symseq.hpp"

namespace opd {

/// Nonnegatively graded space: independent pieces per weight.
struct WeightedGraded {
    std::vector<GradedSpace> weights;  // index = weight

    int maxWeight() const { return static_cast<int>(weights.size()) - 1; }
    static WeightedGraded point(int weight, int dim = 1, int degree = 0);
};

/// Nonnegatively filtered space: nested subspaces of an ambient space,
/// each given by a spanning matrix. Transitions are the inclusions.
struct WeightedFiltered {
    int ambientDim = 0;
    std::vector<SparseMatrix> span;  // span[w]: ambient x generators of F_w

    int maxWeight() const { return static_cast<int>(span.size()) - 1; }
    int dimAt(int w) const;  // exact rank of F_w
    /// checks F_w <= F_{w+1} as subspaces
    std::vector<std::string> checkNested() const;

    /// constant filtration on an ambient space of the given dimension
    static WeightedFiltered constant(int dim, int maxWeight);
    /// (0 -> V -> V -> ...) starting in weight 1
    static WeightedFiltered startingInWeightOne(int dim, int maxWeight);
};

/// Day tensor in graded mode: weight-n piece is the sum over i+j = n.
WeightedGraded weighted_day_tensor(const WeightedGraded& x, const WeightedGraded& y);

/// Day tensor in filtered mode: F_n = sum over i+j = n of F_iX (x) F_jY
/// inside the ambient tensor product.
WeightedFiltered weighted_day_tensor(const WeightedFiltered& x, const WeightedFiltered& y);

/// c1: the filtered object (0 -> X -> X -> ...) starting in weight 1.
WeightedFiltered c1(int dim, int maxWeight);

/// Associated graded of a filtered object: weight-w dimension is
/// dim F_w - dim F_{w-1}; the telescoping sum recovers dim F_W exactly.
std::vector<int> gr(const WeightedFiltered& x);

/// The weight bookkeeping behind trivial graded algebras: for inputs
/// concentrated in weight 1 every arity-j >= 2 structure map lands in
/// weight j >= 2, hence must vanish into weight 1. Returns the per-arity
/// verdicts ("forced zero") together with the free-algebra weight table
/// free_O(v)-by-weight for cross-reading.
struct TrivReport {
    std::vector<std::string> certifications;   // one line per arity 2..W
    std::vector<GradedSpace> freeWeights;      // weight w = coinvariants of O(w) (x) v^{(x) w}
};
TrivReport triv_certificate(const OperadPtr& o, const GradedSpace& v, int maxWeight);

}  // namespace opd
