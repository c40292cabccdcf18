#include "opd/characters.hpp"

#include <algorithm>
#include <stdexcept>

namespace opd {

DegPoly dp_add(const DegPoly& a, const DegPoly& b) {
    DegPoly r = a;
    for (auto& [d, v] : b) {
        r[d] += v;
        if (r[d].isZero()) r.erase(d);
    }
    return r;
}

DegPoly dp_mul(const DegPoly& a, const DegPoly& b) {
    DegPoly r;
    for (auto& [d1, v1] : a)
        for (auto& [d2, v2] : b) {
            Rat v = v1 * v2;
            if (v.isZero()) continue;
            r[d1 + d2] += v;
            if (r[d1 + d2].isZero()) r.erase(d1 + d2);
        }
    return r;
}

DegPoly dp_scale(const DegPoly& a, const Rat& c) {
    DegPoly r;
    if (c.isZero()) return r;
    for (auto& [d, v] : a) r[d] = v * c;
    return r;
}

DegPoly ClassFunction::dimension() const {
    const auto& parts = partitions_of(n);
    for (size_t i = 0; i < parts.size(); ++i)
        if (static_cast<int>(parts[i].size()) == n) return values[i];  // all-ones partition
    throw std::logic_error("ClassFunction: identity class missing");
}

ClassFunction character_of(const SymRep& rep) {
    ClassFunction chi;
    chi.n = rep.n;
    for (const auto& mu : partitions_of(rep.n)) {
        DegPoly p;
        for (auto& [d, v] : rep.gradedCharacter(mu)) p[d] = v;
        chi.values.push_back(std::move(p));
    }
    return chi;
}

namespace {
int weight(const std::vector<int>& mu) {
    int w = 0;
    for (int p : mu) w += p;
    return w;
}
std::vector<int> merge_parts(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r = a;
    r.insert(r.end(), b.begin(), b.end());
    std::sort(r.rbegin(), r.rend());
    return r;
}
}  // namespace

void SymFun::add(const std::vector<int>& mu, const DegPoly& c) {
    if (weight(mu) > trunc_) return;
    auto& slot = terms_[mu];
    slot = dp_add(slot, c);
    if (slot.empty()) terms_.erase(mu);
}

SymFun SymFun::operator+(const SymFun& o) const {
    SymFun r(std::min(trunc_, o.trunc_));
    for (auto& [mu, c] : terms_) r.add(mu, c);
    for (auto& [mu, c] : o.terms_) r.add(mu, c);
    return r;
}

SymFun SymFun::operator*(const SymFun& o) const {
    SymFun r(std::min(trunc_, o.trunc_));
    for (auto& [mu, c] : terms_)
        for (auto& [nu, d] : o.terms_) {
            if (weight(mu) + weight(nu) > r.trunc_) continue;
            r.add(merge_parts(mu, nu), dp_mul(c, d));
        }
    return r;
}

SymFun SymFun::characteristic(const ClassFunction& chi, int truncation) {
    SymFun f(truncation);
    const auto& parts = partitions_of(chi.n);
    for (size_t i = 0; i < parts.size(); ++i)
        f.add(parts[i], dp_scale(chi.values[i], Rat(1, z_of_partition(parts[i]))));
    return f;
}

SymFun SymFun::plethysm(const SymFun& g) const {
    for (auto& [mu, c] : g.terms())
        if (mu.empty() && !c.empty())
            throw std::invalid_argument("plethysm: inner function has a constant term");

    // p_k[g]: substitute p_m -> p_{km} and twist degrees.
    auto pk_of_g = [&](int k) {
        SymFun r(trunc_);
        for (auto& [mu, c] : g.terms()) {
            std::vector<int> nu;
            for (int m : mu) nu.push_back(k * m);
            std::sort(nu.rbegin(), nu.rend());
            DegPoly tw;
            for (auto& [d, v] : c) {
                int sgn = ((d % 2 != 0) && ((k - 1) % 2 != 0)) ? -1 : 1;
                tw[k * d] += v * Rat(sgn);
            }
            r.add(nu, tw);
        }
        return r;
    };

    SymFun out(trunc_);
    for (auto& [mu, c] : terms_) {
        SymFun prod(trunc_);
        prod.add({}, DegPoly{{0, Rat(1)}});
        for (int k : mu) prod = prod * pk_of_g(k);
        for (auto& [nu, d] : prod.terms()) out.add(nu, dp_mul(c, d));
    }
    return out;
}

DegPoly SymFun::dimensionAt(int n) const {
    std::vector<int> ones(n, 1);
    auto it = terms_.find(ones);
    if (it == terms_.end()) return {};
    return dp_scale(it->second, Rat(factorial(n)));
}

DegPoly SymFun::coinvariantDimensionAt(int n) const {
    DegPoly out;
    for (auto& [mu, c] : terms_)
        if (weight(mu) == n) out = dp_add(out, c);
    return out;
}

DegPoly plethysm_dim(const std::vector<ClassFunction>& outer,
                     const std::vector<ClassFunction>& inner, int n) {
    SymFun f(n), g(n);
    for (const auto& chi : outer)
        if (chi.n >= 1 && chi.n <= n) f = f + SymFun::characteristic(chi, n);
    for (const auto& chi : inner)
        if (chi.n >= 1 && chi.n <= n) g = g + SymFun::characteristic(chi, n);
    for (int a = 1; a <= n; ++a) {
        bool haveOuter = false, haveInner = false;
        for (const auto& chi : outer) haveOuter |= (chi.n == a);
        for (const auto& chi : inner) haveInner |= (chi.n == a);
        if (!haveOuter || !haveInner)
            throw std::invalid_argument("plethysm_dim: missing character at arity " + std::to_string(a));
    }
    return f.plethysm(g).dimensionAt(n);
}

}  // namespace opd
