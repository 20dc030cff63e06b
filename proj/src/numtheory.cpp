#include "xn/numtheory.hpp"

#include <numeric>
#include <stdexcept>

namespace xn {

bool is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

long euler_phi(long n) {
    if (n <= 0) throw std::invalid_argument("euler_phi: n must be positive");
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

long pow_mod(long a, long long e, long m) {
    if (m <= 0) throw std::invalid_argument("pow_mod: modulus must be positive");
    long base = mod_pos(a, m);
    long acc = 1 % m;
    while (e > 0) {
        if (e & 1) acc = (acc * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return acc;
}

long inv_mod(long a, long m) {
    long t = 0, new_t = 1;
    long r = m, new_r = mod_pos(a, m);
    while (new_r != 0) {
        long q = r / new_r;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::invalid_argument("inv_mod: argument not invertible");
    return mod_pos(t, m);
}

int legendre(long a, long p) {
    long r = mod_pos(a, p);
    if (r == 0) return 0;
    long e = pow_mod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

std::vector<long> quadratic_residues(long p) {
    std::vector<bool> seen(p, false);
    for (long x = 1; x < p; ++x) seen[(x * x) % p] = true;
    std::vector<long> out;
    for (long a = 1; a < p; ++a)
        if (seen[a]) out.push_back(a);
    return out;
}

}  // namespace xn
