#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opd {

/// Exact rational scalar. Always kept in lowest terms with positive
/// denominator (gmp canonical form); no rounding ever happens.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    explicit Rat(const mpz_class& n) : v_(n) {}

    /// Parses "n" or "n/d".
    static Rat parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat: bad literal '" + s + "'");
        q.canonicalize();
        Rat r;
        r.v_ = q;
        return r;
    }

    bool isZero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.isZero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    Rat inv() const {
        if (isZero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    /// Canonical text form: "n" for integers, "n/d" otherwise.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_str();
    }

    /// Image in F_p; throws if the denominator vanishes mod p.
    std::uint32_t mod(std::uint32_t p) const;

private:
    mpq_class v_;
};

/// Arithmetic in the prime field F_p (p < 2^31 so products fit in 64 bits).
struct PrimeField {
    std::uint32_t p;

    explicit PrimeField(std::uint32_t prime);

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b % p) % p; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
};

bool is_prime(std::uint32_t n);

}  // namespace opd
