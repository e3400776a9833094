#include "czp/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace czp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

cplx unit_exp(double x) {
    double ph = kTwoPi * x;
    return {std::cos(ph), std::sin(ph)};
}

std::vector<int64_t> SieveTables::prime_factors(int64_t n) const {
    std::vector<int64_t> ps;
    while (n > 1) {
        int64_t p = least_prime_factor[static_cast<size_t>(n)];
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    return ps;
}

SieveTables build_sieve(int64_t limit) {
    if (limit < 1 || limit > 100'000'000)
        throw CapacityError("sieve limit out of range [1, 1e8]");
    SieveTables t;
    t.limit = limit;
    size_t n = static_cast<size_t>(limit) + 1;
    t.mobius.assign(n, 1);
    t.phi.assign(n, 0);
    t.least_prime_factor.assign(n, 0);
    t.mobius[0] = 0;
    if (limit >= 1) t.phi[1] = 1;

    // linear sieve: lpf, phi, mobius in one pass
    for (size_t i = 2; i < n; ++i) {
        if (t.least_prime_factor[i] == 0) {
            t.least_prime_factor[i] = static_cast<uint32_t>(i);
            t.phi[i] = static_cast<uint32_t>(i - 1);
            t.mobius[i] = -1;
            t.primes.push_back(static_cast<int64_t>(i));
        }
        for (int64_t p : t.primes) {
            size_t ip = i * static_cast<size_t>(p);
            if (ip >= n || p > t.least_prime_factor[i]) break;
            t.least_prime_factor[ip] = static_cast<uint32_t>(p);
            if (i % static_cast<size_t>(p) == 0) {
                t.phi[ip] = t.phi[i] * static_cast<uint32_t>(p);
                t.mobius[ip] = 0;
            } else {
                t.phi[ip] = t.phi[i] * static_cast<uint32_t>(p - 1);
                t.mobius[ip] = static_cast<int8_t>(-t.mobius[i]);
            }
        }
    }
    return t;
}

double c_q(int64_t q) {
    double acc = 0;
    int64_t m = q;
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            acc += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) acc += std::log(static_cast<double>(m)) / static_cast<double>(m - 1);
    return acc;
}

cplx euler_factor_product(int64_t j, cplx s, EulerVariant variant) {
    cplx prod = 1.0;
    int64_t m = j;
    auto apply = [&](int64_t p) {
        cplx pw = std::exp(-s * std::log(static_cast<double>(p)));
        prod *= (variant == EulerVariant::F) ? (1.0 - pw) : (1.0 + pw);
    };
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            apply(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) apply(m);
    return prod;
}

double mertens_sum(int64_t y) {
    if (y < 2) throw ValidationError("mertens_sum requires y >= 2");
    SieveTables t = build_sieve(y);
    std::vector<double> terms;
    terms.reserve(t.primes.size());
    for (int64_t p : t.primes)
        terms.push_back(std::log(static_cast<double>(p)) / static_cast<double>(p));
    return pairwise_sum(terms);
}

namespace {

int64_t pow_mod(int64_t base, int64_t exp, int64_t mod) {
    int64_t r = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = static_cast<int64_t>((__int128)r * base % mod);
        base = static_cast<int64_t>((__int128)base * base % mod);
        exp >>= 1;
    }
    return r;
}

std::vector<int64_t> distinct_prime_factors(int64_t n) {
    std::vector<int64_t> ps;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// primitive root mod p^e for odd prime p
int64_t primitive_root_odd_prime_power(int64_t p, int e, int64_t pe) {
    auto fac = distinct_prime_factors(p - 1);
    int64_t g = 0;
    for (int64_t cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (int64_t f : fac)
            if (pow_mod(cand, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (e == 1) return g;
    // lift: g works mod p^e unless g^{p-1} = 1 mod p^2, in which case g+p does
    if (pow_mod(g, p - 1, p * p) == 1) g += p;
    return g % pe;
}

// One cyclic factor of (Z/qZ)*: generator, order, and the discrete-log
// exponent of each residue within the prime-power component.
struct CyclicFactor {
    int64_t prime_power;  // p^e
    int64_t order;        // order of the generator
    std::vector<int32_t> dlog;  // index by n mod p^e; -1 when not a unit
};

// decomposition of (Z/qZ)*: odd p^e -> one cyclic factor; 2 -> none;
// 4 -> <-1>; 2^e (e>=3) -> <-1> x <5>
std::vector<CyclicFactor> unit_group_factors(int64_t q) {
    std::vector<std::pair<int64_t, int>> prime_powers;
    int64_t m = q;
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            prime_powers.emplace_back(p, e);
        }
    }
    if (m > 1) prime_powers.emplace_back(m, 1);

    std::vector<CyclicFactor> out;
    for (auto [p, e] : prime_powers) {
        int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;
            if (e == 2) {
                CyclicFactor f;
                f.prime_power = 4;
                f.order = 2;
                f.dlog.assign(4, -1);
                f.dlog[1] = 0;
                f.dlog[3] = 1;  // 3 = -1 mod 4
                out.push_back(std::move(f));
            } else {
                // <-1> of order 2 and <5> of order 2^{e-2}
                CyclicFactor fsign, f5;
                fsign.prime_power = pe;
                fsign.order = 2;
                fsign.dlog.assign(static_cast<size_t>(pe), -1);
                f5.prime_power = pe;
                f5.order = pe / 4;
                f5.dlog.assign(static_cast<size_t>(pe), -1);
                int64_t v = 1;
                for (int64_t k = 0; k < pe / 4; ++k) {
                    fsign.dlog[static_cast<size_t>(v)] = 0;
                    f5.dlog[static_cast<size_t>(v)] = static_cast<int32_t>(k);
                    int64_t w = pe - v;  // -v
                    fsign.dlog[static_cast<size_t>(w)] = 1;
                    f5.dlog[static_cast<size_t>(w)] = static_cast<int32_t>(k);
                    v = v * 5 % pe;
                }
                out.push_back(std::move(fsign));
                out.push_back(std::move(f5));
            }
        } else {
            CyclicFactor f;
            f.prime_power = pe;
            f.order = pe - pe / p;  // phi(p^e)
            f.dlog.assign(static_cast<size_t>(pe), -1);
            int64_t g = primitive_root_odd_prime_power(p, e, pe);
            int64_t v = 1;
            for (int64_t k = 0; k < f.order; ++k) {
                f.dlog[static_cast<size_t>(v)] = static_cast<int32_t>(k);
                v = static_cast<int64_t>((__int128)v * g % pe);
            }
            out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace

bool DirichletCharacter::is_principal() const {
    for (int64_t v : phase_num)
        if (v > 0) return false;
    return true;
}

bool DirichletCharacter::is_real() const {
    for (int64_t v : phase_num)
        if (v > 0 && 2 * v != phase_den) return false;
    return true;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    DirichletCharacter c = *this;
    for (size_t i = 0; i < c.phase_num.size(); ++i)
        if (c.phase_num[i] > 0) c.phase_num[i] = phase_den - c.phase_num[i];
    for (auto& v : c.value_table) v = std::conj(v);
    return c;
}

std::vector<DirichletCharacter> characters_mod(int64_t q) {
    if (q < 1 || q > 10'000) throw CapacityError("characters_mod: q out of range [1, 1e4]");

    auto factors = unit_group_factors(q);
    // total character count = prod of orders = phi(q)
    int64_t phi_q = 1;
    for (const auto& f : factors) phi_q *= f.order;

    // common phase denominator
    int64_t den = 1;
    for (const auto& f : factors) den = std::lcm(den, f.order);

    // dlog tuple per residue class mod q (via CRT restriction)
    std::vector<std::vector<int32_t>> dlogs(static_cast<size_t>(q));
    std::vector<bool> unit(static_cast<size_t>(q), true);
    for (int64_t n = 0; n < q; ++n) {
        if (std::gcd(n, q) != 1) {
            unit[static_cast<size_t>(n)] = false;
            continue;
        }
        auto& d = dlogs[static_cast<size_t>(n)];
        d.reserve(factors.size());
        for (const auto& f : factors)
            d.push_back(f.dlog[static_cast<size_t>(n % f.prime_power)]);
    }

    std::vector<DirichletCharacter> chars;
    chars.reserve(static_cast<size_t>(phi_q));
    std::vector<int64_t> expo(factors.size(), 0);
    auto emit = [&]() {
        DirichletCharacter c;
        c.q = q;
        c.phase_den = den;
        c.phase_num.assign(static_cast<size_t>(q), -1);
        c.value_table.assign(static_cast<size_t>(q), cplx(0, 0));
        for (int64_t n = 0; n < q; ++n) {
            if (!unit[static_cast<size_t>(n)]) continue;
            int64_t num = 0;
            const auto& d = dlogs[static_cast<size_t>(n)];
            for (size_t i = 0; i < factors.size(); ++i)
                num += d[i] % factors[i].order * (den / factors[i].order) % den * expo[i] % den;
            num %= den;
            c.phase_num[static_cast<size_t>(n)] = num;
            c.value_table[static_cast<size_t>(n)] =
                unit_exp(static_cast<double>(num) / static_cast<double>(den));
        }
        // parity: value at -1
        int64_t neg = (q - 1) % q;
        c.parity = (c.phase_num[static_cast<size_t>(neg)] == 0) ? 1 : -1;
        // conductor: smallest d | q with chi(a) = 1 on all units a = 1 mod d
        c.conductor = q;
        for (int64_t d = 1; d <= q; ++d) {
            if (q % d != 0) continue;
            bool trivial_on_kernel = true;
            for (int64_t a = 1 % q; a < q; a += d) {
                if (!unit[static_cast<size_t>(a)]) continue;
                if (c.phase_num[static_cast<size_t>(a)] != 0) {
                    trivial_on_kernel = false;
                    break;
                }
            }
            if (trivial_on_kernel) {
                c.conductor = d;
                break;
            }
        }
        chars.push_back(std::move(c));
    };

    // enumerate exponent tuples, principal (all zero) first
    size_t total = static_cast<size_t>(phi_q);
    for (size_t idx = 0; idx < total; ++idx) {
        size_t value = idx;
        for (size_t i = 0; i < factors.size(); ++i) {
            expo[i] = static_cast<int64_t>(value % static_cast<size_t>(factors[i].order));
            value /= static_cast<size_t>(factors[i].order);
        }
        emit();
    }
    return chars;
}

cplx gauss_sum(const DirichletCharacter& chi) {
    std::vector<cplx> terms;
    terms.reserve(static_cast<size_t>(chi.q));
    for (int64_t n = 1; n <= chi.q; ++n)
        terms.push_back(chi.value(n) * unit_exp(static_cast<double>(n) / static_cast<double>(chi.q)));
    return pairwise_sum(terms);
}

int64_t mod_inverse(int64_t a, int64_t m) {
    int64_t old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    int64_t old_s = 1, s = 0;
    while (r != 0) {
        int64_t qt = old_r / r;
        int64_t tmp = old_r - qt * r;
        old_r = r;
        r = tmp;
        tmp = old_s - qt * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw ValidationError("mod_inverse: arguments not coprime");
    return ((old_s % m) + m) % m;
}

cplx kloosterman_sum(int64_t l, int64_t v, std::optional<std::pair<int64_t, int64_t>> range,
                     int64_t coprime_to) {
    if (v < 2) throw ValidationError("kloosterman_sum requires v >= 2");
    if (v > 10'000'000) throw CapacityError("kloosterman_sum: v > 1e7");
    int64_t lo = 1, hi = v;
    if (range) {
        lo = range->first + 1;  // (B, 2B]
        hi = range->second;
    }
    std::vector<cplx> terms;
    for (int64_t b = lo; b <= hi; ++b) {
        int64_t bq = b % v;
        if (bq < 0) bq += v;
        if (std::gcd(bq, v) != 1) continue;
        if (coprime_to != 1 && std::gcd(b, coprime_to) != 1) continue;
        int64_t binv = mod_inverse(bq, v);
        int64_t num = static_cast<int64_t>((__int128)(l % v) * binv % v);
        if (num < 0) num += v;
        terms.push_back(unit_exp(static_cast<double>(num) / static_cast<double>(v)));
    }
    return pairwise_sum(terms);
}

cplx kloosterman_complete(int64_t m, int64_t n, int64_t v) {
    if (v < 2) throw ValidationError("kloosterman_complete requires v >= 2");
    if (v > 10'000'000) throw CapacityError("kloosterman_complete: v > 1e7");
    std::vector<cplx> terms;
    for (int64_t b = 1; b <= v; ++b) {
        if (std::gcd(b, v) != 1) continue;
        int64_t binv = mod_inverse(b, v);
        int64_t num = ((__int128)m * b + (__int128)n * binv) % v;
        if (num < 0) num += v;
        terms.push_back(unit_exp(static_cast<double>(num) / static_cast<double>(v)));
    }
    return pairwise_sum(terms);
}

size_t divisor_count(int64_t n) {
    size_t cnt = 0;
    for (int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            cnt += 2;
            if (d * d == n) --cnt;
        }
    }
    return cnt;
}

}  // namespace czp
