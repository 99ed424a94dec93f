#include "cmorder/cmtype.hpp"

#include "cmorder/config.hpp"
#include "cmorder/principal.hpp"

#include <algorithm>

namespace cmorder {

unsigned type_at_prime(const Order& s, const PrimeIdeal& p) {
    if (p.order_lattice() != s.lattice()) throw MathError("prime does not belong to this order");
    unsigned t = dim_quotient_at_prime(trace_dual(s.lattice()), p);
    if (verification_mode() && !is_invertible_prime(s, p)) {
        unsigned d = dim_over_residue(colon(p.ideal(), p.ideal()), p.ideal(), p);
        verify_that(t + 1 == d, "type + 1 = dim (p:p)/p");
    }
    if (verification_mode() && is_invertible_prime(s, p)) verify_that(t == 1, "type 1 at an invertible prime");
    return t;
}

TypeProfile global_type(const Order& s) {
    TypeProfile prof{s, {}, 1};
    unsigned max_dim = 1;
    for (const auto& p : s.noninvertible_primes()) {
        unsigned t = type_at_prime(s, p);
        prof.primes.push_back({p, t});
        prof.global_type = std::max(prof.global_type, t);
        if (verification_mode()) max_dim = std::max(max_dim, dim_over_residue(colon(p.ideal(), p.ideal()), p.ideal(), p));
    }
    if (verification_mode() && !s.is_maximal()) verify_that(prof.global_type + 1 == max_dim, "type(S) + 1 = max dim (p:p)/p");
    return prof;
}

bool is_invertible_ideal(const FracIdeal& i, const Order& s) {
    return product(i, colon(s.lattice(), i)) == s.lattice();
}

bool is_gorenstein(const Order& s) {
    bool g = global_type(s).global_type == 1;
    if (verification_mode()) verify_that(g == is_invertible_ideal(trace_dual(s.lattice()), s), "Gorenstein iff S^t invertible");
    return g;
}

unsigned max_local_generators(const FracIdeal& m, const Order& s) {
    if (!s.is_module(m)) throw MathError("lattice is not a module over the order");
    unsigned best = 1;
    for (const auto& p : s.noninvertible_primes()) best = std::max(best, dim_quotient_at_prime(m, p));
    return best;
}

GenCount gens_count_module(const FracIdeal& m, const Order& s) {
    unsigned d = max_local_generators(m, s);
    if (d >= 2) return {d, false};
    // Locally principal everywhere: one generator iff principal, else two.
    auto r = is_principal(m, s);
    if (r.status == Principality::yes) return {1, false};
    return {2, r.status == Principality::unknown};
}

GenCount g_of_order(const Order& s, std::optional<bool> class_number_one) {
    if (s.is_maximal()) {
        if (class_number_one) return {*class_number_one ? 1u : 2u, false};
        return {2, true};
    }
    const FracIdeal ok = s.maximal_order().lattice();
    unsigned best = 1;
    for (const auto& p : s.noninvertible_primes()) best = std::max(best, dim_quotient_at_prime(ok, p));
    return {best, false};
}

unsigned quotient_gens_count(const Order& s) {
    const FracIdeal ok = s.maximal_order().lattice();
    unsigned best = 0;
    for (const auto& p : s.noninvertible_primes()) {
        FracIdeal bottom = sum(s.lattice(), product(p.ideal(), ok));
        best = std::max(best, dim_over_residue(ok, bottom, p));
    }
    return best;
}

bool is_bass(const Order& s) { return s.is_maximal() || g_of_order(s).value == 2; }

unsigned special_overorder_type(const Order& s, const PrimeIdeal& p) {
    if (is_invertible_prime(s, p)) throw MathError("special overorder needs a non-invertible prime");
    const FracIdeal ok = s.maximal_order().lattice();
    Order t = Order::from_lattice(sum(s.lattice(), product(p.ideal(), ok)));
    unsigned ty = global_type(t).global_type;
    unsigned d = dim_quotient_at_prime(ok, p);
    verify_that(d == ty + 1, "dim O_K/pO_K = 1 + type(S + pO_K)");
    return ty;
}

nlohmann::json to_json(const TypeProfile& t) {
    nlohmann::json primes = nlohmann::json::array();
    for (const auto& pt : t.primes)
        primes.push_back({{"p", pt.prime.p().get_str()}, {"residue_degree", pt.prime.residue_degree()}, {"type", pt.type}});
    return {{"poly", t.order.algebra()->poly_string()},
            {"order", to_json(t.order.lattice())},
            {"primes", primes},
            {"global_type", t.global_type}};
}

}  // namespace cmorder
