#include "opd/sparse.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace opd {

SparseVec vec_add(const SparseVec& a, const SparseVec& b) { return vec_axpy(a, Rat(1), b); }

SparseVec vec_scale(const SparseVec& a, const Rat& c) {
    SparseVec r;
    if (c.isZero()) return r;
    r.reserve(a.size());
    for (auto& [i, v] : a) r.emplace_back(i, v * c);
    return r;
}

SparseVec vec_axpy(const SparseVec& a, const Rat& c, const SparseVec& b) {
    SparseVec r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rat v = c * b[j].second;
            if (!v.isZero()) r.emplace_back(b[j].first, v);
            ++j;
        } else {
            Rat v = a[i].second + c * b[j].second;
            if (!v.isZero()) r.emplace_back(a[i].first, v);
            ++i, ++j;
        }
    }
    return r;
}

Rat vec_dot(const SparseVec& a, const SparseVec& b) {
    Rat s;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) ++i;
        else if (b[j].first < a[i].first) ++j;
        else { s += a[i].second * b[j].second; ++i; ++j; }
    }
    return s;
}

SparseVec unit_vec(int i) { return SparseVec{{i, Rat(1)}}; }

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.push(i, i, Rat(1));
    return m;
}

SparseMatrix SparseMatrix::basisMap(int rows, const std::vector<int>& rowOf,
                                    const std::vector<int>& signs) {
    SparseMatrix m(rows, static_cast<int>(rowOf.size()));
    for (size_t j = 0; j < rowOf.size(); ++j)
        if (signs[j] != 0) m.set(rowOf[j], static_cast<int>(j), Rat(signs[j]));
    return m;
}

int SparseMatrix::nnz() const {
    int n = 0;
    for (auto& r : data_) n += static_cast<int>(r.size());
    return n;
}

bool SparseMatrix::isZero() const { return nnz() == 0; }

void SparseMatrix::set(int r, int c, const Rat& v) {
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        if (v.isZero()) row.erase(it);
        else it->second = v;
    } else if (!v.isZero()) {
        row.insert(it, {c, v});
    }
}

void SparseMatrix::add(int r, int c, const Rat& v) {
    if (v.isZero()) return;
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        it->second += v;
        if (it->second.isZero()) row.erase(it);
    } else {
        row.insert(it, {c, v});
    }
}

Rat SparseMatrix::get(int r, int c) const {
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rat(0);
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("SparseMatrix: shape mismatch in product");
    SparseMatrix res(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r) {
        std::map<int, Rat> acc;
        for (auto& [k, v] : data_[r])
            for (auto& [c, w] : o.data_[k]) acc[c] += v * w;
        for (auto& [c, v] : acc)
            if (!v.isZero()) res.data_[r].emplace_back(c, v);
    }
    return res;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("SparseMatrix: shape mismatch in sum");
    SparseMatrix res(rows_, cols_);
    for (int r = 0; r < rows_; ++r) res.data_[r] = vec_axpy(data_[r], Rat(1), o.data_[r]);
    return res;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("SparseMatrix: shape mismatch in difference");
    SparseMatrix res(rows_, cols_);
    for (int r = 0; r < rows_; ++r) res.data_[r] = vec_axpy(data_[r], Rat(-1), o.data_[r]);
    return res;
}

SparseMatrix SparseMatrix::scaled(const Rat& c) const {
    SparseMatrix res(rows_, cols_);
    if (c.isZero()) return res;
    for (int r = 0; r < rows_; ++r) res.data_[r] = vec_scale(data_[r], c);
    return res;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

SparseMatrix SparseMatrix::kron(const SparseMatrix& o) const {
    SparseMatrix res(rows_ * o.rows_, cols_ * o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (auto& [c, v] : data_[r])
            for (int r2 = 0; r2 < o.rows_; ++r2)
                for (auto& [c2, v2] : o.data_[r2])
                    res.data_[r * o.rows_ + r2].emplace_back(c * o.cols_ + c2, v * v2);
    for (auto& row : res.data_) std::sort(row.begin(), row.end());
    return res;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
    if (!v.empty() && (v.back().first >= cols_ || v.front().first < 0))
        throw std::out_of_range("SparseMatrix::apply: index");
    SparseVec res;
    for (int r = 0; r < rows_; ++r) {
        Rat s = vec_dot(data_[r], v);
        if (!s.isZero()) res.emplace_back(r, s);
    }
    return res;
}

SparseVec SparseMatrix::column(int c) const {
    SparseVec res;
    for (int r = 0; r < rows_; ++r) {
        Rat v = get(r, c);
        if (!v.isZero()) res.emplace_back(r, v);
    }
    return res;
}

void SparseMatrix::setColumn(int c, const SparseVec& v) {
    for (int r = 0; r < rows_; ++r) set(r, c, Rat(0));
    for (auto& [r, x] : v) set(r, c, x);
}

SparseMatrix SparseMatrix::selectRows(const std::vector<int>& rows) const {
    SparseMatrix res(static_cast<int>(rows.size()), cols_);
    for (size_t i = 0; i < rows.size(); ++i) res.data_[i] = data_[rows[i]];
    return res;
}

SparseMatrix SparseMatrix::selectCols(const std::vector<int>& cols) const {
    std::vector<int> pos(cols_, -1);
    for (size_t j = 0; j < cols.size(); ++j) pos[cols[j]] = static_cast<int>(j);
    SparseMatrix res(rows_, static_cast<int>(cols.size()));
    for (int r = 0; r < rows_; ++r)
        for (auto& [c, v] : data_[r])
            if (pos[c] >= 0) res.data_[r].emplace_back(pos[c], v);
    for (auto& row : res.data_) std::sort(row.begin(), row.end());
    return res;
}

std::string SparseMatrix::str() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << "[";
    for (int r = 0; r < rows_; ++r)
        for (auto& [c, v] : data_[r]) os << " (" << r << "," << c << ")=" << v.str();
    os << " ]";
    return os.str();
}

namespace {

// Working state for fraction-free elimination on integer-scaled rows.
struct WorkRow {
    std::vector<std::pair<int, mpz_class>> ents;  // sorted by column
    mpz_class* find(int c) {
        auto it = std::lower_bound(ents.begin(), ents.end(), c,
                                   [](const auto& e, int col) { return e.first < col; });
        if (it != ents.end() && it->first == c) return &it->second;
        return nullptr;
    }
};

}  // namespace

Echelon eliminate(const SparseMatrix& m) {
    const int R = m.rows(), C = m.cols();
    // Scale each row to integer entries with content 1.
    std::vector<WorkRow> rows(R);
    for (int r = 0; r < R; ++r) {
        mpz_class lcm = 1;
        for (auto& [c, v] : m.row(r)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.den().get_mpz_t());
        mpz_class gcd = 0;
        std::vector<std::pair<int, mpz_class>> ents;
        for (auto& [c, v] : m.row(r)) {
            mpz_class e = v.num() * (lcm / v.den());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), e.get_mpz_t());
            ents.emplace_back(c, e);
        }
        if (gcd > 1)
            for (auto& [c, e] : ents) e /= gcd;
        rows[r].ents = std::move(ents);
    }

    std::vector<bool> rowActive(R, true), colActive(C, true);
    std::vector<int> colCount(C, 0);
    for (int r = 0; r < R; ++r)
        for (auto& [c, e] : rows[r].ents) ++colCount[c];

    Echelon out;
    mpz_class prev = 1;
    while (true) {
        // Markowitz pivot: minimize (nnz(row)-1)*(nnz(col)-1); ties by (col,row).
        int br = -1, bc = -1;
        long best = -1;
        for (int r = 0; r < R; ++r) {
            if (!rowActive[r] || rows[r].ents.empty()) continue;
            long rn = static_cast<long>(rows[r].ents.size()) - 1;
            for (auto& [c, e] : rows[r].ents) {
                if (!colActive[c]) continue;
                long score = rn * (colCount[c] - 1);
                if (best < 0 || score < best || (score == best && (c < bc || (c == bc && r < br)))) {
                    best = score;
                    br = r;
                    bc = c;
                }
            }
        }
        if (br < 0) break;

        mpz_class pivot = *rows[br].find(bc);
        for (int r = 0; r < R; ++r) {
            if (!rowActive[r] || r == br) continue;
            mpz_class* vc = rows[r].find(bc);
            std::vector<std::pair<int, mpz_class>> next;
            next.reserve(rows[r].ents.size() + rows[br].ents.size());
            if (vc == nullptr) {
                // untouched row: Bareiss still rescales by pivot/prev
                for (auto& [c, e] : rows[r].ents) {
                    mpz_class t = e * pivot;
                    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                    if (t != 0) next.emplace_back(c, t);
                    else --colCount[c];
                }
            } else {
                mpz_class f = *vc;
                size_t i = 0, j = 0;
                auto& a = rows[r].ents;
                auto& b = rows[br].ents;
                while (i < a.size() || j < b.size()) {
                    int ca = i < a.size() ? a[i].first : C;
                    int cb = j < b.size() ? b[j].first : C;
                    int c = std::min(ca, cb);
                    mpz_class t = 0;
                    if (ca == c) t += a[i].second * pivot;
                    if (cb == c) t -= f * b[j].second;
                    if (ca == c) ++i;
                    if (cb == c) ++j;
                    if (t != 0) {
                        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                        bool had = (ca == c);
                        if (t != 0) {
                            next.emplace_back(c, t);
                            if (!had) ++colCount[c];
                        } else if (had) {
                            --colCount[c];
                        }
                    } else if (ca == c) {
                        --colCount[c];
                    }
                }
            }
            rows[r].ents = std::move(next);
        }
        rowActive[br] = false;
        colActive[bc] = false;
        for (auto& [c, e] : rows[br].ents) --colCount[c];
        out.pivotRows.push_back(br);
        out.pivotCols.push_back(bc);
        prev = pivot;
        ++out.rank;
    }

    for (int t = 0; t < out.rank; ++t) {
        SparseVec v;
        for (auto& [c, e] : rows[out.pivotRows[t]].ents) v.emplace_back(c, Rat(e));
        out.rows.push_back(std::move(v));
    }
    return out;
}

int rank(const SparseMatrix& m) { return eliminate(m).rank; }

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
    Echelon e = eliminate(m);
    const int C = m.cols();
    std::vector<bool> isPivot(C, false);
    std::vector<int> pivotOfCol(C, -1);
    for (int t = 0; t < e.rank; ++t) {
        isPivot[e.pivotCols[t]] = true;
        pivotOfCol[e.pivotCols[t]] = t;
    }
    std::vector<SparseVec> basis;
    for (int f = 0; f < C; ++f) {
        if (isPivot[f]) continue;
        std::vector<Rat> x(C);
        x[f] = Rat(1);
        for (int t = e.rank - 1; t >= 0; --t) {
            int pc = e.pivotCols[t];
            Rat s, piv;
            for (auto& [c, v] : e.rows[t]) {
                if (c == pc) piv = v;
                else if (!x[c].isZero()) s += v * x[c];
            }
            x[pc] = (Rat(0) - s) / piv;
        }
        // clear denominators, strip content, fix sign
        mpz_class lcm = 1, gcd = 0;
        for (int c = 0; c < C; ++c)
            if (!x[c].isZero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x[c].den().get_mpz_t());
        std::vector<std::pair<int, mpz_class>> ints;
        for (int c = 0; c < C; ++c) {
            if (x[c].isZero()) continue;
            mpz_class t = x[c].num() * (lcm / x[c].den());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), t.get_mpz_t());
            ints.emplace_back(c, t);
        }
        if (gcd == 0) gcd = 1;
        int sgnFix = ints.empty() ? 1 : (sgn(ints.front().second) >= 0 ? 1 : -1);
        SparseVec v;
        for (auto& [c, t] : ints) v.emplace_back(c, Rat(mpz_class(t / gcd * sgnFix)));
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
    PrimeField f(p);
    const int C = m.cols();
    std::vector<std::vector<std::pair<int, std::uint32_t>>> rows(m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (auto& [c, v] : m.row(r)) {
            std::uint32_t e = v.mod(p);
            if (e != 0) rows[r].emplace_back(c, e);
        }
    int rk = 0;
    std::vector<bool> rowDone(m.rows(), false);
    std::vector<int> pivotRowOfCol(C, -1);
    for (int r = 0; r < m.rows(); ++r) {
        // reduce row r against existing pivots
        auto& row = rows[r];
        bool changed = true;
        while (changed && !row.empty()) {
            changed = false;
            for (auto& [c, v] : row) {
                int pr = pivotRowOfCol[c];
                if (pr >= 0) {
                    std::uint32_t pv = 0;
                    for (auto& [c2, v2] : rows[pr])
                        if (c2 == c) { pv = v2; break; }
                    std::uint32_t factor = f.div(v, pv);
                    std::vector<std::pair<int, std::uint32_t>> next;
                    size_t i = 0, j = 0;
                    auto& b = rows[pr];
                    while (i < row.size() || j < b.size()) {
                        int ca = i < row.size() ? row[i].first : C;
                        int cb = j < b.size() ? b[j].first : C;
                        int cc = std::min(ca, cb);
                        std::uint32_t t = 0;
                        if (ca == cc) t = row[i].second;
                        if (cb == cc) t = f.sub(t, f.mul(factor, b[j].second));
                        if (ca == cc) ++i;
                        if (cb == cc) ++j;
                        if (t != 0) next.emplace_back(cc, t);
                    }
                    row = std::move(next);
                    changed = true;
                    break;
                }
            }
        }
        if (!row.empty()) {
            pivotRowOfCol[row.front().first] = r;
            ++rk;
        }
        rowDone[r] = true;
    }
    return rk;
}

std::vector<int> independent_columns(const SparseMatrix& m) {
    std::vector<int> chosen;
    // incremental echelon of accepted columns: list of (pivot row, reduced column)
    std::vector<std::pair<int, SparseVec>> ech;
    for (int j = 0; j < m.cols(); ++j) {
        SparseVec v = m.column(j);
        for (auto& [pr, u] : ech) {
            Rat coef;
            for (auto& [i, x] : v)
                if (i == pr) { coef = x; break; }
            if (!coef.isZero()) v = vec_axpy(v, Rat(0) - coef, u);
        }
        if (v.empty()) continue;
        // normalize leading entry to 1
        Rat lead = v.front().second;
        v = vec_scale(v, lead.inv());
        ech.emplace_back(v.front().first, v);
        chosen.push_back(j);
    }
    return chosen;
}

SparseMatrix invert(const SparseMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert: not square");
    const int n = m.rows();
    // Gauss-Jordan on [m | I] over Q
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (int r = 0; r < n; ++r) {
        for (auto& [c, v] : m.row(r)) a[r][c] = v;
        a[r][n + r] = Rat(1);
    }
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].isZero()) { pr = r; break; }
        if (pr < 0) throw std::domain_error("invert: singular matrix");
        std::swap(a[col], a[pr]);
        Rat inv = a[col][col].inv();
        for (int c = 0; c < 2 * n; ++c) a[col][c] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].isZero()) continue;
            Rat f = a[r][col];
            for (int c = col; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    SparseMatrix res(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!a[r][n + c].isZero()) res.push(r, c, a[r][n + c]);
    return res;
}

ColumnSolver::ColumnSolver(const SparseMatrix& basis) : basis_(basis) {
    Echelon e = eliminate(basis);
    if (e.rank != basis.cols())
        throw std::domain_error("ColumnSolver: basis columns are dependent");
    rowSel_ = e.pivotRows;
    std::sort(rowSel_.begin(), rowSel_.end());
    inv_ = invert(basis.selectRows(rowSel_));
}

SparseVec ColumnSolver::solve(const SparseVec& y) const {
    SparseVec ySel;
    for (size_t i = 0; i < rowSel_.size(); ++i) {
        Rat v;
        for (auto& [r, x] : y)
            if (r == rowSel_[i]) { v = x; break; }
        if (!v.isZero()) ySel.emplace_back(static_cast<int>(i), v);
    }
    SparseVec x = inv_.apply(ySel);
    // verify consistency (y must lie in the span)
    SparseVec check = basis_.apply(x);
    if (check != y) throw std::domain_error("ColumnSolver: vector not in span");
    return x;
}

}  // namespace opd
