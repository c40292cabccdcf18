#include "opd/perm.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opd {

Perm Perm::fromOneLine(std::vector<int> p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
            throw std::invalid_argument("Perm: not a bijection");
        seen[v] = true;
    }
    Perm q;
    q.p_ = std::move(p);
    return q;
}

Perm Perm::transposition(int n, int i) {
    Perm p(n);
    std::swap(p.p_[i], p.p_[i + 1]);
    return p;
}

Perm Perm::operator*(const Perm& o) const {
    if (n() != o.n()) throw std::invalid_argument("Perm: arity mismatch");
    Perm r(n());
    for (int i = 0; i < n(); ++i) r.p_[i] = p_[o.p_[i]];
    return r;
}

Perm Perm::inverse() const {
    Perm r(n());
    for (int i = 0; i < n(); ++i) r.p_[p_[i]] = i;
    return r;
}

int Perm::sign() const {
    int s = 1;
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (p_[i] > p_[j]) s = -s;
    return s;
}

bool Perm::isIdentity() const {
    for (int i = 0; i < n(); ++i)
        if (p_[i] != i) return false;
    return true;
}

std::vector<int> Perm::adjacentWord() const {
    // Sort the one-line by right-multiplications with adjacent transpositions;
    // the collected indices reversed give a factorization of *this.
    std::vector<int> h = p_;
    std::vector<int> word;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i + 1 < n(); ++i) {
            if (h[i] > h[i + 1]) {
                std::swap(h[i], h[i + 1]);
                word.push_back(i);
                changed = true;
            }
        }
    }
    std::reverse(word.begin(), word.end());
    return word;
}

std::vector<int> Perm::cycleType() const {
    std::vector<bool> seen(n(), false);
    std::vector<int> type;
    for (int i = 0; i < n(); ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = p_[j];
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

std::string Perm::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n(); ++i) os << (i ? " " : "") << p_[i] + 1;
    os << "]";
    return os.str();
}

const std::vector<Perm>& Perm::all(int n) {
    static std::map<int, std::vector<Perm>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n > 8) throw std::invalid_argument("Perm::all: arity too large");
    std::vector<int> line(n);
    std::iota(line.begin(), line.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(Perm::fromOneLine(line));
    } while (std::next_permutation(line.begin(), line.end()));
    return cache.emplace(n, std::move(out)).first->second;
}

const std::vector<std::vector<int>>& partitions_of(int n) {
    static std::map<int, std::vector<std::vector<int>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // weakly decreasing parts
    std::function<void(int, int)> rec = [&](int rest, int maxPart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxPart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::sort(out.begin(), out.end());
    return cache.emplace(n, std::move(out)).first->second;
}

Perm class_representative(const std::vector<int>& partition) {
    int n = std::accumulate(partition.begin(), partition.end(), 0);
    std::vector<int> line(n);
    int base = 0;
    for (int part : partition) {
        for (int i = 0; i < part; ++i) line[base + i] = base + (i + 1) % part;
        base += part;
    }
    return Perm::fromOneLine(line);
}

long z_of_partition(const std::vector<int>& partition) {
    std::map<int, int> mult;
    for (int p : partition) ++mult[p];
    long z = 1;
    for (auto& [p, m] : mult) {
        for (int i = 0; i < m; ++i) z *= p;
        z *= factorial(m);
    }
    return z;
}

long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

std::vector<Perm> young_elements(int n, const std::vector<std::vector<int>>& blocks) {
    std::vector<Perm> out{Perm(n)};
    for (auto& block : blocks) {
        std::vector<Perm> next;
        std::vector<int> idx(block.size());
        std::iota(idx.begin(), idx.end(), 0);
        do {
            Perm g(n);
            std::vector<int> line = g.oneLine();
            for (size_t i = 0; i < block.size(); ++i) line[block[i]] = block[idx[i]];
            Perm h = Perm::fromOneLine(line);
            for (auto& prev : out) next.push_back(h * prev);
        } while (std::next_permutation(idx.begin(), idx.end()));
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int koszul_sign(const std::vector<int>& degs, const std::vector<int>& pi) {
    int s = 1;
    for (size_t i = 0; i < pi.size(); ++i)
        for (size_t j = i + 1; j < pi.size(); ++j)
            if (pi[i] > pi[j] && (degs[pi[i]] & 1) && (degs[pi[j]] & 1)) s = -s;
    return s;
}

std::vector<int> sorting_order(const std::vector<int>& keys) {
    std::vector<int> pi(keys.size());
    std::iota(pi.begin(), pi.end(), 0);
    std::stable_sort(pi.begin(), pi.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    return pi;
}

}  // namespace opd
