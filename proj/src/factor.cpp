#include "cmorder/factor.hpp"

#include <algorithm>
#include <map>

namespace cmorder {

bool is_probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

namespace {

// One Brent cycle search; returns a nontrivial factor or 0.
Int brent(const Int& n, unsigned long c, unsigned long max_iter) {
    Int y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128, iters = 0;
    auto f = [&](Int& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i) f(y);
        unsigned long k = 0;
        do {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                f(y);
                Int d = abs(x - y);
                q = q * d;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            g = gcd(q, n);
            k += m;
            iters += lim;
        } while (k < r && g == 1 && iters < max_iter);
        r *= 2;
    } while (g == 1 && iters < max_iter);
    if (g == n) {
        do {
            f(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    if (g == 1 || g == n) return 0;
    return g;
}

void split(const Int& n, std::map<Int, unsigned>& out, const FactorOptions& opt) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Int root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        split(root, out, opt);
        split(root, out, opt);
        return;
    }
    for (unsigned a = 0; a < opt.rho_attempts; ++a) {
        Int d = brent(n, 1 + 2 * a, opt.rho_iterations);
        if (d != 0) {
            split(d, out, opt);
            split(n / d, out, opt);
            return;
        }
    }
    throw FactorError("could not factor " + n.get_str() + " within the configured effort");
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor(const Int& n, const FactorOptions& opt) {
    if (n == 0) throw MathError("factor(0)");
    Int m = abs(n);
    std::map<Int, unsigned> out;
    for (unsigned long p = 2; p <= opt.trial_bound; p += (p == 2 ? 1 : 2)) {
        if (Int(p) * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out[Int(p)] += 1;
            m /= p;
        }
    }
    split(m, out, opt);
    return {out.begin(), out.end()};
}

std::vector<Int> prime_divisors(const Int& n, const FactorOptions& opt) {
    std::vector<Int> ps;
    for (auto& [p, e] : factor(n, opt)) ps.push_back(p);
    return ps;
}

}  // namespace cmorder
