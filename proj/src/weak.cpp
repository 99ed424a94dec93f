#include "cmorder/weak.hpp"

#include "cmorder/config.hpp"
#include "cmorder/factor.hpp"
#include "cmorder/overorder.hpp"
#include "cmorder/residue_units.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace cmorder {

bool weak_equivalent(const FracIdeal& i, const FracIdeal& j) {
    return product(colon(i, j), colon(j, i)).contains(i.algebra()->one());
}

bool locally_isomorphic_at(const FracIdeal& i, const FracIdeal& j, const PrimeIdeal& p) {
    FracIdeal prod = product(colon(i, j), colon(j, i));
    return !p.ideal().contains(intersect(prod, p.order_lattice()));
}

namespace {

Int p_part(Int n, const Int& p) {
    Int r = 1;
    n = abs(n);
    while (n % p == 0) {
        n /= p;
        r *= p;
    }
    return r;
}

// Rational primes dividing [O_K : T].
std::vector<Int> conductor_primes(const Order& t) {
    std::set<Int> ps;
    for (const auto& pr : t.noninvertible_primes()) ps.insert(pr.p());
    return {ps.begin(), ps.end()};
}

void for_each_line(std::size_t r, unsigned long p, const std::function<void(const std::vector<Int>&)>& f) {
    std::vector<Int> v(r, 0);
    for (std::size_t lead = 0; lead < r; ++lead) {
        std::fill(v.begin(), v.end(), Int(0));
        v[lead] = 1;
        const std::size_t free = r - lead - 1;
        std::vector<unsigned long> c(free, 0);
        for (;;) {
            for (std::size_t i = 0; i < free; ++i) v[lead + 1 + i] = c[i];
            f(v);
            std::size_t i = 0;
            while (i < free && ++c[i] == p) c[i++] = 0;
            if (i == free) break;
        }
    }
}

constexpr std::size_t kMaxModules = 2000000;

// Submodules of Q = O_K / (f + p^a O_K) as lattices L with D ⊆ L ⊆ Z^r in
// the coordinates of Q, kept as HNF. Elements x of O_K act by integer
// matrices on row vectors.
class LocalSpace {
public:
    LocalSpace(const FracIdeal& ok, const FracIdeal& bottom) : q_(ok, bottom) {
        r_ = q_.rank();
        n_ = q_.divisors().empty() ? Int(1) : q_.divisors().back();
        for (std::size_t i = 0; i < r_; ++i) {
            std::vector<Int> e(r_, 0);
            e[i] = 1;
            unit_lifts_.push_back(q_.lift(e));
        }
    }

    std::size_t rank() const { return r_; }
    const FiniteQuotient& quotient() const { return q_; }

    IntMatrix action(const AlgElement& y) const {
        IntMatrix a(r_, r_);
        for (std::size_t i = 0; i < r_; ++i) {
            auto c = q_.coords(q_.top().algebra()->mul(unit_lifts_[i], y));
            for (std::size_t j = 0; j < r_; ++j) a(i, j) = c[j];
        }
        return a;
    }

    IntMatrix whole() const {
        IntMatrix h(r_, r_);
        for (std::size_t i = 0; i < r_; ++i) h(i, i) = 1;
        return h;
    }

    // HNF of the span of `gens` (rows) and D.
    IntMatrix span(std::vector<ZVec> gens) const {
        for (std::size_t i = 0; i < r_; ++i) {
            ZVec d(r_, 0);
            d[i] = q_.divisors()[i];
            gens.push_back(std::move(d));
        }
        IntMatrix m(gens.size(), r_);
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < r_; ++j) m(i, j) = gens[i][j];
        return hnf_mod(m, n_);
    }

    // Coefficients of y in the rows of h, or nullopt if y is not in the span.
    static std::optional<ZVec> coefficients(const IntMatrix& h, ZVec y) {
        const std::size_t r = h.rows();
        ZVec a(r, 0);
        for (std::size_t c = 0; c < r; ++c) {
            if (y[c] == 0) continue;
            if (!mpz_divisible_p(y[c].get_mpz_t(), h(c, c).get_mpz_t())) return std::nullopt;
            a[c] = y[c] / h(c, c);
            for (std::size_t j = c; j < r; ++j) y[j] -= a[c] * h(c, j);
        }
        return a;
    }
    static bool contains(const IntMatrix& h, const ZVec& y) { return coefficients(h, y).has_value(); }
    static bool stable(const IntMatrix& h, const IntMatrix& act) {
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (!contains(h, row_times(h.row(i), act))) return false;
        return true;
    }

    FracIdeal to_ideal(const IntMatrix& h) const {
        std::vector<AlgElement> gens = q_.bottom().basis_elements();
        for (std::size_t i = 0; i < r_; ++i) gens.push_back(q_.lift(h.row(i)));
        return FracIdeal::from_elements(q_.top().algebra(), gens);
    }

private:
    FiniteQuotient q_;
    std::size_t r_;
    Int n_;
    std::vector<AlgElement> unit_lifts_;
};

struct MatrixLess {
    bool operator()(const IntMatrix& a, const IntMatrix& b) const {
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
        return false;
    }
};

// Maximal T-submodules of h: preimages of the k-hyperplanes of h / p h,
// where each hyperplane is the largest T-stable subspace in ker psi.
void maximal_submodules(const LocalSpace& ls, const IntMatrix& h, const std::vector<IntMatrix>& tact,
                        const std::vector<IntMatrix>& pact, std::uint64_t p,
                        const std::function<void(IntMatrix)>& visit) {
    const std::size_t r = ls.rank();
    const PrimeField k(p);
    auto coef_mod_p = [&](const ZVec& y) {
        auto a = LocalSpace::coefficients(h, y);
        if (!a) throw MathError("local enumeration: element left the module");
        std::vector<std::uint64_t> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = k.from((*a)[i]);
        return v;
    };
    // W = (pr*h + D) / p*h inside h / p*h = F_p^r.
    FpMatrix w;
    for (std::size_t i = 0; i < r; ++i)
        for (const auto& a : pact) w.push_back(coef_mod_p(row_times(h.row(i), a)));
    for (std::size_t i = 0; i < r; ++i) {
        ZVec d(r, 0);
        d[i] = ls.quotient().divisors()[i];
        w.push_back(coef_mod_p(d));
    }
    FpMatrix perp = kernel(w, r, k);
    if (perp.empty()) return;
    // The action of T on h / p*h.
    std::vector<FpMatrix> ct;
    for (const auto& a : tact) {
        FpMatrix c;
        for (std::size_t i = 0; i < r; ++i) c.push_back(coef_mod_p(row_times(h.row(i), a)));
        ct.push_back(std::move(c));
    }
    std::vector<ZVec> base;
    for (std::size_t i = 0; i < r; ++i) {
        ZVec v = h.row(i);
        for (auto& x : v) x *= Int(static_cast<unsigned long>(p));
        base.push_back(std::move(v));
    }
    const std::size_t s = perp.size();
    std::set<FpMatrix> done;
    for_each_line(s, static_cast<unsigned long>(p), [&](const std::vector<Int>& lam) {
        std::vector<std::uint64_t> psi(r, 0);
        for (std::size_t j = 0; j < s; ++j) {
            auto c = k.from(lam[j]);
            for (std::size_t i = 0; i < r; ++i) psi[i] = k.add(psi[i], k.mul(c, perp[j][i]));
        }
        // v with psi(v C_t) = 0 for all t: rows of the system are (C_t psi)^T.
        FpMatrix sys;
        for (const auto& c : ct) {
            std::vector<std::uint64_t> col(r, 0);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) col[i] = k.add(col[i], k.mul(c[i][j], psi[j]));
            sys.push_back(std::move(col));
        }
        FpMatrix sub = kernel(sys, r, k);
        row_reduce(sub, k);
        if (!done.insert(sub).second) return;
        std::vector<ZVec> gens = base;
        for (const auto& v : sub) {
            ZVec y(r, 0);
            for (std::size_t i = 0; i < r; ++i)
                if (v[i] != 0)
                    for (std::size_t j = 0; j < r; ++j) y[j] += Int(static_cast<unsigned long>(v[i])) * h(i, j);
            gens.push_back(std::move(y));
        }
        visit(ls.span(std::move(gens)));
    });
}

LocalWeakData local_classes(const Order& t, const Int& p) {
    const Order okord = t.maximal_order();
    const FracIdeal& ok = okord.lattice();
    const FracIdeal& f = t.conductor();
    Int pa = p_part(quotient(ok, f).order, p);
    FracIdeal bottom = sum(f, ok.scaled(Rat(pa)));
    Order tp = Order::trusted(sum(t.lattice(), ok.scaled(Rat(pa))));
    LocalSpace ls(ok, bottom);
    const std::uint64_t pl = p.get_ui();

    std::vector<IntMatrix> tact;
    for (const auto& b : t.lattice().basis_elements()) tact.push_back(ls.action(b));
    std::vector<std::vector<IntMatrix>> pacts;
    for (const auto& pr : t.primes_above(p)) {
        std::vector<IntMatrix> a;
        for (const auto& b : pr.ideal().basis_elements()) a.push_back(ls.action(b));
        pacts.push_back(std::move(a));
    }
    // M O_K = O_K iff M lies in no prime of O_K above p; only primes
    // containing the bottom matter.
    std::vector<IntMatrix> big_primes;
    for (const auto& pr : okord.primes_above(p)) {
        if (!pr.ideal().contains(bottom)) continue;
        std::vector<ZVec> g;
        for (const auto& b : pr.ideal().basis_elements()) g.push_back(ls.quotient().coords(b));
        big_primes.push_back(ls.span(std::move(g)));
    }
    // (M:M) = tp iff M is stable under no minimal overorder of tp.
    std::vector<IntMatrix> over;
    if (!tp.is_maximal())
        for (const auto& v : minimal_overorders(tp))
            for (const auto& b : v.lattice().basis_elements())
                if (!tp.lattice().contains(b)) {
                    over.push_back(ls.action(b));
                    break;
                }

    LocalWeakData out{p, 0, {}};
    std::set<IntMatrix, MatrixLess> seen{ls.whole()};
    std::deque<IntMatrix> todo{ls.whole()};
    std::vector<IntMatrix> cands;
    while (!todo.empty()) {
        IntMatrix h = std::move(todo.front());
        todo.pop_front();
        if (seen.size() > kMaxModules) throw MathError("weak class enumeration: too many submodules");
        bool ext = true;
        for (const auto& bp : big_primes) {
            bool inside = true;
            for (std::size_t i = 0; i < h.rows() && inside; ++i) inside = LocalSpace::contains(bp, h.row(i));
            if (inside) {
                ext = false;
                break;
            }
        }
        if (ext) {
            bool exact = true;
            for (const auto& a : over)
                if (LocalSpace::stable(h, a)) {
                    exact = false;
                    break;
                }
            if (exact) cands.push_back(h);
        }
        for (const auto& pa_ : pacts)
            maximal_submodules(ls, h, tact, pa_, pl, [&](IntMatrix m) {
                if (seen.insert(m).second) todo.push_back(std::move(m));
            });
    }
    out.modules = seen.size();
    // Local classes are the orbits of (O_K / bottom)^* on the candidates.
    std::map<IntMatrix, std::size_t, MatrixLess> where;
    for (std::size_t i = 0; i < cands.size(); ++i) where.emplace(cands[i], i);
    std::vector<std::size_t> parent(cands.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    if (!cands.empty()) {
        ResidueUnitGroup units(okord, bottom);
        for (const auto& u : units.generators()) {
            IntMatrix act = ls.action(u);
            for (std::size_t i = 0; i < cands.size(); ++i) {
                std::vector<ZVec> rows;
                for (std::size_t r = 0; r < cands[i].rows(); ++r) rows.push_back(row_times(cands[i].row(r), act));
                auto it = where.find(ls.span(std::move(rows)));
                if (it == where.end()) throw MathError("unit image left the candidate set");
                parent[find(i)] = find(it->second);
            }
        }
    }
    std::map<std::size_t, FracIdeal> best;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        FracIdeal m = ls.to_ideal(cands[i]);
        auto [it, fresh] = best.emplace(find(i), m);
        if (!fresh && m < it->second) it->second = m;
    }
    for (auto& [root, m] : best) out.reps.push_back(std::move(m));
    std::sort(out.reps.begin(), out.reps.end());
    if (verification_mode())
        for (const auto& m : out.reps) {
            verify_that(product(m, ok) == ok, "local module generates O_K");
            verify_that(colon(m, m) == tp.lattice(), "local module has the right multiplicator ring");
        }
    if (verification_mode())
        for (std::size_t i = 0; i < out.reps.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                verify_that(!weak_equivalent(out.reps[i], out.reps[j]), "local classes are distinct");
    return out;
}

void combine(const std::vector<LocalWeakData>& loc, std::size_t k, const FracIdeal& acc, std::vector<FracIdeal>& out) {
    if (k == loc.size()) {
        out.push_back(acc);
        return;
    }
    for (const auto& r : loc[k].reps) combine(loc, k + 1, intersect(acc, r), out);
}

}  // namespace

std::vector<LocalWeakData> local_weak_classes(const Order& t) {
    std::vector<LocalWeakData> out;
    for (const auto& p : conductor_primes(t)) out.push_back(local_classes(t, p));
    return out;
}

WeakClassSet weak_classes_with_multring(const Order& s, const Order& t) {
    WeakClassSet w{s, t, {}};
    if (t.is_maximal()) {
        w.reps.push_back(t.lattice());
        return w;
    }
    auto loc = local_weak_classes(t);
    combine(loc, 0, t.maximal_order().lattice(), w.reps);
    std::sort(w.reps.begin(), w.reps.end());
    if (verification_mode())
        for (const auto& r : w.reps) verify_that(colon(r, r) == t.lattice(), "representative has multiplicator ring T");
    return w;
}

WeakClassSet weak_classes_type2_shortcut(const Order& s, const Order& t) {
    auto prof = global_type(t);
    if (prof.global_type > 2) throw MathError("type-2 shortcut needs type(T) <= 2");
    WeakClassSet w{s, t, {}};
    std::vector<PrimeIdeal> two;
    for (const auto& pt : prof.primes)
        if (pt.type == 2) two.push_back(pt.prime);
    if (two.empty()) {
        w.reps.push_back(t.lattice());
        return w;
    }
    const FracIdeal& tl = t.lattice();
    FracIdeal dual = trace_dual(tl);
    auto qd = quotient(dual, tl);
    Int c = qd.divisors.empty() ? Int(1) : qd.divisors.back();
    FracIdeal ct = dual.scaled(Rat(c));  // ≅ T^t, inside T
    // Smallest m with p^m ⊆ (cT^t)_p.
    std::vector<unsigned> m;
    std::vector<FracIdeal> pw;
    for (const auto& pr : two) {
        unsigned e = 0;
        FracIdeal q = tl;
        while (!locally_contains(ct, q, pr)) {
            q = product(q, pr.ideal());
            ++e;
        }
        m.push_back(e);
        pw.push_back(q);
    }
    const std::size_t n = two.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        FracIdeal j;
        for (std::size_t i = 0; i < n; ++i) {
            FracIdeal ii = (mask >> i & 1) ? ct : tl;
            FracIdeal term = sum(ii, pw[i]);
            for (std::size_t k = 0; k < n; ++k)
                if (k != i) term = product(term, pw[k]);
            j = j.valid() ? sum(j, term) : term;
        }
        if (verification_mode()) {
            for (std::size_t i = 0; i < n; ++i)
                verify_that(locally_equal(j, (mask >> i & 1) ? ct : tl, two[i]), "patched ideal has the local shape");
            verify_that(colon(j, j) == tl, "patched ideal has multiplicator ring T");
        }
        w.reps.push_back(j);
    }
    return w;
}

WeakClassSet weak_classes(const Order& s, const Order& t) {
    if (global_type(t).global_type <= 2) return weak_classes_type2_shortcut(s, t);
    return weak_classes_with_multring(s, t);
}

}  // namespace cmorder
