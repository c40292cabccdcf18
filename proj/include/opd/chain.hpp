#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opd/sparse.hpp"

namespace opd {

/// A bounded chain complex of finite-dimensional spaces, d_k: C_k -> C_{k-1}.
struct ChainComplex {
    std::map<int, int> dims;               // degree -> dimension (may include zeros)
    std::map<int, SparseMatrix> diff;      // degree k -> d_k
    std::map<int, std::vector<std::string>> labels;  // optional, per degree

    int dim(int k) const {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : it->second;
    }

    /// Checks shapes and d_k o d_{k+1} = 0; throws std::domain_error naming
    /// the offending degree otherwise.
    void validate() const;

    /// Alternating sum of dimensions.
    Rat euler() const;
};

/// Exact homology dimensions per degree. Requires a valid complex; asserts
/// that the Euler characteristic is preserved.
std::map<int, int> homology_dims(const ChainComplex& c);

/// Homology with chosen representative cycles and exact coordinates,
/// enough to transport group actions onto H.
class HomologySpace {
public:
    HomologySpace() = default;
    /// kernelBasis: basis of ker d_k; boundary: matrix of d_{k+1}.
    HomologySpace(const std::vector<SparseVec>& kernelBasis, const SparseMatrix& boundary,
                  int ambientDim);

    int dim() const { return static_cast<int>(reps_.size()); }
    const std::vector<SparseVec>& reps() const { return reps_; }
    /// Coordinates of a cycle in the chosen homology basis.
    SparseVec coords(const SparseVec& cycle) const;

private:
    std::vector<SparseVec> reps_;
    int boundaryRank_ = 0;
    std::shared_ptr<ColumnSolver> solver_;  // over [boundary basis | reps]
};

/// Homology spaces in every degree of the complex.
std::map<int, HomologySpace> homology_basis(const ChainComplex& c);

}  // namespace opd
