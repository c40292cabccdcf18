#include "opd/rational.hpp"

namespace opd {

std::uint32_t Rat::mod(std::uint32_t p) const {
    mpz_class n = v_.get_num() % p;
    mpz_class d = v_.get_den() % p;
    std::int64_t ni = n.get_si();
    std::int64_t di = d.get_si();
    if (ni < 0) ni += p;
    if (di == 0) throw std::domain_error("Rat::mod: denominator divisible by " + std::to_string(p));
    PrimeField f(p);
    return f.div(static_cast<std::uint32_t>(ni), static_cast<std::uint32_t>(di));
}

PrimeField::PrimeField(std::uint32_t prime) : p(prime) {
    if (!is_prime(prime)) throw std::invalid_argument("PrimeField: " + std::to_string(prime) + " is not prime");
    if (prime >= (1u << 31)) throw std::invalid_argument("PrimeField: modulus too large");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    a %= p;
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    // extended Euclid
    std::int64_t t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace opd
