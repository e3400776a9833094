// Elementary number theory: sieves, Dirichlet characters, Gauss and
// Kloosterman sums, Mertens partial sums, and the small Euler products that
// the main-term oracle and the moment verifier share.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace czp {

using cplx = std::complex<double>;

// e(x) = exp(2*pi*i*x)
cplx unit_exp(double x);

// Deterministic tree summation: the result depends only on element order,
// never on chunking or thread scheduling.
template <class T>
T pairwise_sum(const T* data, size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T acc = data[0];
        for (size_t i = 1; i < n; ++i) acc += data[i];
        return acc;
    }
    size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}
template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

struct SieveTables {
    int64_t limit = 0;
    std::vector<int8_t> mobius;        // index n <= limit
    std::vector<uint32_t> phi;         // Euler totient
    std::vector<uint32_t> least_prime_factor;
    std::vector<int64_t> primes;       // ascending primes <= limit

    bool is_squarefree(int64_t n) const { return mobius[static_cast<size_t>(n)] != 0; }
    // distinct prime factors of n <= limit via the lpf table
    std::vector<int64_t> prime_factors(int64_t n) const;
};

// limit in [1, 1e8]; throws CapacityError beyond.
SieveTables build_sieve(int64_t limit);

// sum over distinct primes p | q of log(p)/(p-1); 0 for q = 1
double c_q(int64_t q);

enum class EulerVariant { F, F1 };

// F(j,s)  = prod_{p|j} (1 - p^{-s})
// F1(j,s) = prod_{p|j} (1 + p^{-s})
cplx euler_factor_product(int64_t j, cplx s, EulerVariant variant);

// sum_{p <= y} log(p)/p as a finite sum (Mertens)
double mertens_sum(int64_t y);

struct DirichletCharacter {
    int64_t q = 1;
    int64_t conductor = 1;
    int parity = 1;  // value at -1: +1 (even) or -1 (odd)
    // value(n) = e(phase_num[n % q] / phase_den); phase_num = -1 on classes
    // not coprime to q.  Exact, so group identities can be checked exactly.
    std::vector<int64_t> phase_num;
    int64_t phase_den = 1;
    std::vector<cplx> value_table;  // value at n mod q

    cplx value(int64_t n) const {
        int64_t r = n % q;
        if (r < 0) r += q;
        return value_table[static_cast<size_t>(r)];
    }
    bool is_zero_at(int64_t n) const {
        int64_t r = n % q;
        if (r < 0) r += q;
        return phase_num[static_cast<size_t>(r)] < 0;
    }
    bool is_principal() const;
    bool is_primitive() const { return conductor == q; }
    bool is_real() const;
    DirichletCharacter conjugate() const;
};

// All phi(q) characters mod q (principal first), q in [1, 1e4].
std::vector<DirichletCharacter> characters_mod(int64_t q);

// tau(chi) = sum_{n=1}^{q} chi(n) e(n/q)
cplx gauss_sum(const DirichletCharacter& chi);

// sum over b in range (default [1,v]) with gcd(b, v*coprime_to) = 1 of
// e(l * inverse(b mod v) / v).  range = (B, 2B] when supplied.
cplx kloosterman_sum(int64_t l, int64_t v,
                     std::optional<std::pair<int64_t, int64_t>> range = std::nullopt,
                     int64_t coprime_to = 1);

// complete S(m, n; v) = sum over units b mod v of e((m b + n b^{-1}) / v)
cplx kloosterman_complete(int64_t m, int64_t n, int64_t v);

int64_t mod_inverse(int64_t a, int64_t m);  // inverse of a mod m, gcd(a,m)=1

size_t divisor_count(int64_t n);

// Error taxonomy used across the toolkit; the CLI maps these to exit codes.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace czp
