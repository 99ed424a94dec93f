#include "cmorder/comparisons.hpp"

#include "cmorder/config.hpp"
#include "cmorder/factor.hpp"

namespace cmorder {

FracIdeal trace_ideal(const Order& s) {
    FracIdeal st = trace_dual(s.lattice());
    return product(st, colon(s.lattice(), st));
}

bool is_nearly_gorenstein_at(const Order& s, const PrimeIdeal& p) {
    return locally_contains(trace_ideal(s), p.ideal(), p);
}

unsigned length_at_prime(const FracIdeal& a, const FracIdeal& b, const PrimeIdeal& p) {
    if (!a.contains(b)) throw MathError("length_at_prime: lattices are not nested");
    // p^k a + b shrinks to the part of a/b supported away from p.
    FracIdeal cur = a;
    while (true) {
        FracIdeal next = sum(product(p.ideal(), cur), b);
        if (next == cur) break;
        cur = next;
    }
    Rat idx = index(a, cur);
    Int n = idx.get_num();
    if (idx.get_den() != 1) throw MathError("length_at_prime: non-integral index");
    unsigned v = 0;
    while (n % p.p() == 0) n /= p.p(), ++v;
    if (n != 1 || v % p.residue_degree()) throw MathError("length_at_prime: index is not a power of the residue size");
    return v / p.residue_degree();
}

LengthReport is_almost_gorenstein_at(const Order& s, const PrimeIdeal& p) {
    LengthReport r{p};
    const FracIdeal ok = maximal_order(s.algebra()).lattice();
    const FracIdeal& f = s.conductor();
    FracIdeal sp = colon(s.lattice(), p.ideal());
    r.maximal_over_order = length_at_prime(ok, s.lattice(), p);
    r.order_over_conductor = length_at_prime(s.lattice(), f, p);
    r.colon_over_conductor = length_at_prime(sp, f, p);
    r.type = length_at_prime(sp, s.lattice(), p);
    r.nearly_gorenstein = is_nearly_gorenstein_at(s, p);
    r.almost_gorenstein = r.maximal_over_order + 1 == r.order_over_conductor + r.type;
    bool restated = r.maximal_over_order + 1 == r.colon_over_conductor;
    verify_that(restated == r.almost_gorenstein, "the two almost Gorenstein criteria agree");
    return r;
}

std::vector<LengthReport> comparison_report(const Order& s) {
    std::vector<LengthReport> out;
    for (const auto& q : prime_divisors(s.index_in_maximal()))
        for (const auto& p : s.primes_above(q)) out.push_back(is_almost_gorenstein_at(s, p));
    return out;
}

unsigned nearly_gorenstein_type(const Order& s, const PrimeIdeal& p) {
    FracIdeal st = trace_dual(s.lattice());
    FracIdeal low = product(product(st, st), colon(s.lattice(), st));
    return length_at_prime(st, low, p);
}

nlohmann::json to_json(const LengthReport& r) {
    return {{"prime", to_json(r.prime)},
            {"length_maximal_over_order", r.maximal_over_order},
            {"length_order_over_conductor", r.order_over_conductor},
            {"length_colon_over_conductor", r.colon_over_conductor},
            {"type", r.type},
            {"nearly_gorenstein", r.nearly_gorenstein},
            {"almost_gorenstein", r.almost_gorenstein}};
}

}  // namespace cmorder
