// Small number-theoretic helpers shared across modules. Everything here
// operates on machine integers; inputs are tiny (moduli of a few hundred).
#pragma once

#include <cstdint>
#include <vector>

namespace xn {

bool is_prime(long n);
long euler_phi(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);

// a^e mod m, m > 0, e >= 0.
long pow_mod(long a, long long e, long m);

// Multiplicative inverse mod m; requires gcd(a, m) = 1.
long inv_mod(long a, long m);

// Legendre symbol (a/p) for odd prime p: +1, -1, or 0.
int legendre(long a, long p);

// Positive residue of a mod m in [0, m).
inline long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// Ascending list of quadratic residues in [1, p) for odd prime p.
std::vector<long> quadratic_residues(long p);

}  // namespace xn
