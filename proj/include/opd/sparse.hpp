#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opd/rational.hpp"

namespace opd {

/// Sparse vector: (index, value) pairs, sorted by index, values nonzero.
using SparseVec = std::vector<std::pair<int, Rat>>;

SparseVec vec_add(const SparseVec& a, const SparseVec& b);
SparseVec vec_scale(const SparseVec& a, const Rat& c);
/// a + c*b
SparseVec vec_axpy(const SparseVec& a, const Rat& c, const SparseVec& b);
Rat vec_dot(const SparseVec& a, const SparseVec& b);
SparseVec unit_vec(int i);

/// Sparse matrix over the rationals, row-major storage.
/// All stored entries are nonzero; rows are sorted by column.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    static SparseMatrix identity(int n);
    /// Column j equals +/- e_{perm[j]} would be ambiguous; this builds the
    /// matrix of the basis map e_j -> sign[j] * e_{rowOf[j]}.
    static SparseMatrix basisMap(int rows, const std::vector<int>& rowOf,
                                 const std::vector<int>& signs);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const;
    bool isZero() const;

    const std::vector<std::pair<int, Rat>>& row(int r) const { return data_[r]; }

    void set(int r, int c, const Rat& v);
    void add(int r, int c, const Rat& v);
    Rat get(int r, int c) const;

    /// Appends an entry known to come in increasing (r, c) order with v != 0.
    void push(int r, int c, const Rat& v) { data_[r].emplace_back(c, v); }

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix scaled(const Rat& c) const;
    bool operator==(const SparseMatrix& o) const;

    /// Kronecker product; pairing (i,j) -> i*o.rows()+j on rows and columns.
    SparseMatrix kron(const SparseMatrix& o) const;

    SparseVec apply(const SparseVec& v) const;
    SparseVec column(int c) const;
    void setColumn(int c, const SparseVec& v);

    /// Rows (or columns) selected in the given order.
    SparseMatrix selectRows(const std::vector<int>& rows) const;
    SparseMatrix selectCols(const std::vector<int>& cols) const;

    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::pair<int, Rat>>> data_;
};

/// Result of fraction-free (Bareiss) elimination with Markowitz pivoting.
struct Echelon {
    int rank = 0;
    std::vector<int> pivotRows;  // in elimination order
    std::vector<int> pivotCols;
    /// Frozen pivot rows over Q, in elimination order. Row t has its pivot at
    /// pivotCols[t]; all earlier pivot columns are eliminated from it.
    std::vector<SparseVec> rows;
};

Echelon eliminate(const SparseMatrix& m);

/// Exact rank over Q. Deterministic.
int rank(const SparseMatrix& m);

/// Exact basis of the null space; size = cols - rank. Each vector is
/// integral, content 1, first nonzero entry positive. Deterministic.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);

/// Rank over F_p after reducing every entry mod p. Throws if any denominator
/// vanishes mod p. Always satisfies rank_mod_p <= rank.
int rank_mod_p(const SparseMatrix& m, std::uint32_t p);

/// Indices of the lexicographically first maximal set of linearly
/// independent columns, in increasing order.
std::vector<int> independent_columns(const SparseMatrix& m);

/// Solves B x = y exactly for B with full column rank (precomputed).
/// Used to express vectors in a chosen basis.
class ColumnSolver {
public:
    explicit ColumnSolver(const SparseMatrix& basis);
    int dim() const { return static_cast<int>(rowSel_.size()); }
    /// Throws std::domain_error if y is not in the column span.
    SparseVec solve(const SparseVec& y) const;

private:
    SparseMatrix basis_;
    std::vector<int> rowSel_;
    SparseMatrix inv_;  // inverse of basis[rowSel_, :]
};

/// Dense-ish exact inverse of a small invertible matrix.
SparseMatrix invert(const SparseMatrix& m);

}  // namespace opd
