#include "cmorder/classgroup.hpp"

#include "cmorder/config.hpp"
#include "cmorder/factor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace cmorder {

namespace {

using LogVec = std::vector<long double>;

struct Place {
    std::size_t root;
    long double weight;  // 1 for a real place, 2 for a complex one
};

// Everything the factor-wise computations need about one factor.
struct Factor {
    std::size_t index;
    const Component* comp;
    AlgebraPtr alg;
    Order ok;
    std::vector<Place> places;
    std::shared_ptr<Embedding> emb;

    const AlgElement& e() const { return comp->idempotent; }
    AlgElement padded(const AlgElement& x) const { return pad(x, e()); }
    // Projection of O_K-ideal a to this factor, the others filled with O_K.
    FracIdeal part(const FracIdeal& a) const {
        std::vector<AlgElement> gens = projected_basis(a, e());
        AlgElement f = alg->one();
        for (std::size_t i = 0; i < f.size(); ++i) f[i] -= e()[i];
        for (auto& b : projected_basis(ok.lattice(), f)) gens.push_back(std::move(b));
        return FracIdeal::from_elements(alg, gens);
    }
    LogVec logs(const AlgElement& padded_x) const {
        auto z = emb->conjugates(padded_x);
        LogVec out;
        for (const auto& pl : places) {
            long double re = z[pl.root].re.to_ld(), im = z[pl.root].im.to_ld();
            out.push_back(pl.weight * 0.5L * std::log(re * re + im * im));
        }
        return out;
    }
};

Factor make_factor(const AlgebraPtr& alg, std::size_t i) {
    const auto& comps = algebra_components(alg);
    Factor f{i, &comps[i], alg, maximal_order(alg), {}, std::make_shared<Embedding>(alg, std::max(256u, root_precision()))};
    auto s = f.emb->conjugates(comps[i].idempotent);
    for (auto k : f.emb->real_roots())
        if (s[k].re.to_d() > 0.5) f.places.push_back({k, 1});
    for (auto k : f.emb->complex_roots())
        if (s[k].re.to_d() > 0.5) f.places.push_back({k, 2});
    return f;
}

bool rational_approx(long double x, std::uint64_t max_den, Int& num, Int& den) {
    // Continued fractions, accepting the first convergent within tolerance.
    long double a = x;
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 64; ++it) {
        long double fl = std::floor(a);
        Int ai(static_cast<double>(fl));
        Int h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (k1 > Int(static_cast<unsigned long>(max_den))) return false;
        long double approx = h1.get_d() / k1.get_d();
        if (std::fabs(approx - x) < 1e-9L * (1 + std::fabs(x))) {
            num = h1;
            den = k1;
            return true;
        }
        long double frac = a - fl;
        if (frac < 1e-18L) return false;
        a = 1 / frac;
    }
    return false;
}

AlgElement power(const AlgebraPtr& alg, const AlgElement& x, const Int& e) {
    if (e < 0) {
        auto inv = alg->inverse(x);
        if (!inv) throw MathError("power of a zero divisor");
        return power(alg, *inv, -e);
    }
    return alg->pow(x, static_cast<unsigned>(e.get_ui()));
}

// A Z-basis of the lattice generated by unit log vectors, kept together
// with the exact units.
class UnitLattice {
public:
    UnitLattice(const Factor& f, std::size_t rank) : f_(f), rank_(rank) {}

    std::size_t size() const { return basis_.size(); }
    bool full() const { return basis_.size() == rank_; }
    const std::vector<AlgElement>& basis() const { return basis_; }

    // Returns true when the lattice grew.
    bool add(const AlgElement& u) {
        if (rank_ == 0) return false;
        LogVec v = trimmed(f_.logs(u));
        long double scale = 0;
        for (auto c : v) scale = std::max(scale, std::fabs(c));
        if (scale < 1e-8L) return false;  // torsion
        const std::size_t k = basis_.size();
        std::vector<long double> x = least_squares(v);
        long double resid = 0;
        for (std::size_t t = 0; t < v.size(); ++t) {
            long double s = v[t];
            for (std::size_t j = 0; j < k; ++j) s -= x[j] * logs_[j][t];
            resid = std::max(resid, std::fabs(s));
        }
        if (resid > 1e-7L * (1 + scale)) {
            if (k == rank_) return false;  // numerically inconsistent
            basis_.push_back(u);
            logs_.push_back(v);
            return true;
        }
        std::vector<Int> num(k), den(k);
        Int d = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (!rational_approx(x[j], 100000, num[j], den[j])) return false;
            d = lcm(d, den[j]);
        }
        if (d == 1) return false;
        IntMatrix m(k + 1, k);
        for (std::size_t j = 0; j < k; ++j) {
            m(j, j) = d;
            m(k, j) = num[j] * (d / den[j]);
        }
        auto h = hnf(m);
        std::vector<AlgElement> gens = basis_;
        gens.push_back(u);
        std::vector<AlgElement> nb;
        for (std::size_t r = 0; r < k; ++r) {
            AlgElement w = f_.alg->one();
            for (std::size_t j = 0; j <= k; ++j)
                if (h.transform(r, j) != 0) w = f_.alg->mul(w, power(f_.alg, gens[j], h.transform(r, j)));
            nb.push_back(std::move(w));
        }
        basis_.clear();
        logs_.clear();
        for (auto& w : nb) {
            logs_.push_back(trimmed(f_.logs(w)));
            basis_.push_back(std::move(w));
        }
        return true;
    }

private:
    LogVec trimmed(LogVec v) const {
        v.pop_back();
        return v;
    }
    std::vector<long double> least_squares(const LogVec& v) const {
        const std::size_t k = basis_.size();
        std::vector<std::vector<long double>> g(k, std::vector<long double>(k + 1, 0));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t t = 0; t < v.size(); ++t) g[i][j] += logs_[i][t] * logs_[j][t];
            for (std::size_t t = 0; t < v.size(); ++t) g[i][k] += logs_[i][t] * v[t];
        }
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < k; ++r)
                if (std::fabs(g[r][c]) > std::fabs(g[piv][c])) piv = r;
            std::swap(g[c], g[piv]);
            for (std::size_t r = 0; r < k; ++r) {
                if (r == c) continue;
                long double f = g[r][c] / g[c][c];
                for (std::size_t j = c; j <= k; ++j) g[r][j] -= f * g[c][j];
            }
        }
        std::vector<long double> x(k);
        for (std::size_t i = 0; i < k; ++i) x[i] = g[i][k] / g[i][i];
        return x;
    }

    const Factor& f_;
    std::size_t rank_;
    std::vector<AlgElement> basis_;
    std::vector<LogVec> logs_;
};

struct FBPrime {
    PrimeIdeal prime;
    std::vector<FracIdeal> powers;  // powers[k] = p^k, grown on demand
};

struct FactorState {
    Factor f;
    std::vector<FBPrime> fb;
    std::vector<Int> fb_rational;  // distinct rational primes under the base
    std::vector<ZVec> relations;
    std::map<ZVec, AlgElement> by_valuation;
};

bool contains_power(FBPrime& p, unsigned k, const AlgElement& x) {
    while (p.powers.size() <= k) p.powers.push_back(product(p.powers.back(), p.prime.ideal()));
    return p.powers[k].contains(x);
}

unsigned int_valuation(const AlgElement& x, FBPrime& p) {
    unsigned k = 0;
    while (contains_power(p, k + 1, x)) ++k;
    return k;
}

// Valuation vector of padded integral x over the factor base when x is smooth.
std::optional<ZVec> smooth_valuations(FactorState& st, const AlgElement& x) {
    Int n = abs(st.f.alg->norm(x).get_num());
    if (n == 0) return std::nullopt;
    ZVec v(st.fb.size(), 0);
    for (const auto& q : st.fb_rational) {
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e == 0) continue;
        unsigned got = 0;
        for (std::size_t j = 0; j < st.fb.size(); ++j)
            if (st.fb[j].prime.p() == q) {
                unsigned k = int_valuation(x, st.fb[j]);
                v[j] = k;
                got += k * st.fb[j].prime.residue_degree();
            }
        if (got != e) return std::nullopt;  // a prime over q outside the base
    }
    if (n != 1) return std::nullopt;
    return v;
}

// beta * a for a short beta in a^{-1}: an integral ideal in the same class
// with small norm.
FracIdeal reduce_in_class(const Factor& f, const FracIdeal& a) {
    FracIdeal inv = colon(f.ok.lattice(), a);
    auto rb = lll_reduce(projected_basis(inv, f.e()), *f.emb);
    return a.scaled(f.padded(rb.basis[0]));
}

FracIdeal power_in_class(const Factor& f, const FracIdeal& p, Int e) {
    FracIdeal acc = f.ok.lattice(), base = p;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = reduce_in_class(f, product(acc, base));
        e >>= 1;
        if (e > 0) base = reduce_in_class(f, product(base, base));
    }
    return acc;
}

FracIdeal ideal_from_exponents(const FactorState& st, const ZVec& ex, const Int& modulus) {
    FracIdeal acc = st.f.ok.lattice();
    for (std::size_t j = 0; j < ex.size(); ++j) {
        Int e = modulus > 0 ? mod_nonneg(ex[j], modulus) : ex[j];
        if (e == 0) continue;
        if (e < 0) throw MathError("negative exponent without a modulus");
        acc = reduce_in_class(st.f, product(acc, power_in_class(st.f, st.fb[j].prime.ideal(), e)));
    }
    return acc;
}

struct FactorResult {
    ComponentUnits units;
    ClassGroupPart cl;
    std::shared_ptr<FactorState> state;
    IntMatrix right_inverse_rows;
};

ComponentUnits torsion_units(const Factor& f) {
    ComponentUnits u;
    const auto& alg = f.alg;
    auto rb = lll_reduce(projected_basis(f.ok.lattice(), f.e()), *f.emb);
    const long double n = static_cast<long double>(f.comp->degree);
    AlgElement best = f.e();
    for (auto& c : best) c = -c;
    Int best_order = 2;
    enumerate_short(rb, n + 0.5L, 1u << 20, [&](const AlgElement& x) {
        if (abs(alg->norm(f.padded(x))) != 1) return true;
        for (int sign = 0; sign < 2; ++sign) {
            AlgElement y = x;
            if (sign)
                for (auto& c : y) c = -c;
            AlgElement p = y;
            for (unsigned k = 1; k <= 4 * f.comp->degree * f.comp->degree + 2; ++k) {
                if (p == f.e()) {
                    if (Int(k) > best_order) {
                        best_order = k;
                        best = y;
                    }
                    break;
                }
                p = alg->mul(p, y);
            }
        }
        return true;
    });
    if (f.comp->degree == 1) {
        best_order = 2;
        best = f.e();
        for (auto& c : best) c = -c;
    }
    u.torsion = f.padded(best);
    u.torsion_order = best_order;
    return u;
}

// Power-residue characters at primes q ≡ 1 mod l prove that no product of
// the units (and torsion) is an l-th power outside the expected ones.
bool saturated_at(const Factor& f, const ComponentUnits& u, unsigned long l) {
    std::vector<AlgElement> gens;
    const bool tors = u.torsion_order % l == 0;
    if (tors) gens.push_back(u.torsion);
    for (const auto& x : u.fundamental) gens.push_back(x);
    const std::size_t need = gens.size();
    if (need == 0) return true;
    FpSubspace span(need, l);
    std::uint64_t q = 2;
    for (int tried = 0; tried < 400 && span.dim() < need; ++q) {
        Int qi(static_cast<unsigned long>(q));
        if (!is_probable_prime(qi)) continue;
        for (const auto& pr : f.ok.primes_above(qi)) {
            if (pr.ideal().contains(f.e())) continue;
            Int nq = pr.residue_size();
            if ((nq - 1) % l != 0) continue;
            ++tried;
            const auto& rf = pr.residue();
            const Int ex = (nq - 1) / l;
            // A primitive l-th root of unity in the residue field.
            FpVec zeta;
            {
                FpVec v(rf.field.dim(), 0);
                for (;;) {
                    std::size_t t = 0;
                    while (t < v.size() && ++v[t] == rf.field.p()) v[t++] = 0;
                    if (t == v.size()) break;
                    FpVec z = rf.field.pow(v, ex);
                    if (z != rf.field.one() && !rf.field.is_zero(z)) {
                        zeta = z;
                        break;
                    }
                }
            }
            if (zeta.empty()) continue;
            std::vector<FpVec> roots{rf.field.one()};
            for (unsigned long i = 1; i < l; ++i) roots.push_back(rf.field.mul(roots.back(), zeta));
            std::vector<std::uint64_t> row;
            bool ok = true;
            for (const auto& g : gens) {
                std::vector<Int> c = rf.quotient.coords(g);
                FpVec r(c.size());
                for (std::size_t i = 0; i < c.size(); ++i) r[i] = mpz_get_ui(c[i].get_mpz_t());
                FpVec z = rf.field.pow(r, ex);
                auto it = std::find(roots.begin(), roots.end(), z);
                if (it == roots.end()) {
                    ok = false;
                    break;
                }
                row.push_back(static_cast<std::uint64_t>(it - roots.begin()));
            }
            if (ok) span.add(row);
            if (span.dim() == need) break;
        }
        if (q > 200000) break;
    }
    return span.dim() == need;
}

// x O_K = prod p^val. Two elements with equal valuations differ by a unit.
void add_relation(FactorState& st, const AlgElement& x, const ZVec& val, UnitLattice& ul) {
    auto [it, fresh] = st.by_valuation.emplace(val, x);
    if (!fresh) {
        if (it->second != x)
            if (auto inv = st.f.alg->inverse(it->second)) ul.add(st.f.alg->mul(x, *inv));
        return;
    }
    bool zero = std::all_of(val.begin(), val.end(), [](const Int& z) { return z == 0; });
    if (zero) ul.add(x);
    else st.relations.push_back(val);
}

IntMatrix stack(const std::vector<ZVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

FactorResult compute_factor(const AlgebraPtr& alg, std::size_t index) {
    FactorResult res;
    res.state = std::make_shared<FactorState>(FactorState{make_factor(alg, index), {}, {}, {}, {}});
    FactorState& st = *res.state;
    const Factor& f = st.f;
    const std::size_t rank = f.comp->unit_rank();
    const std::size_t deg = f.comp->degree;

    res.units = torsion_units(f);
    UnitLattice ul(f, rank);

    // Factor base.
    const long double mink = f.comp->minkowski_bound;
    const long double cap = static_cast<long double>(factor_base_cap());
    res.cl.bound = std::min(mink, cap);
    res.cl.certified = mink <= cap;
    for (unsigned long q = 2; static_cast<long double>(q) <= res.cl.bound; ++q) {
        Int qi(q);
        if (!is_probable_prime(qi)) continue;
        bool any = false;
        for (const auto& pr : f.ok.primes_above(qi)) {
            if (pr.ideal().contains(f.e())) continue;
            if (static_cast<long double>(pr.residue_size().get_d()) > res.cl.bound) continue;
            st.fb.push_back(FBPrime{pr, {f.ok.lattice(), pr.ideal()}});
            any = true;
        }
        if (any) st.fb_rational.push_back(qi);
    }
    const std::size_t m = st.fb.size();

    std::mt19937_64 rng(0x5eed + index);
    auto harvest = [&](const FracIdeal& a, long double factor, std::size_t limit) {
        auto rb = lll_reduce(projected_basis(a, f.e()), *f.emb);
        Rat na = component_index(f.ok.lattice(), a, f.e());
        long double bound = factor * static_cast<long double>(deg) *
                            std::pow(static_cast<long double>(na.get_d()), 2.0L / static_cast<long double>(deg));
        enumerate_short(rb, bound, limit, [&](const AlgElement& x) {
            AlgElement px = f.padded(x);
            auto v = smooth_valuations(st, px);
            if (!v) return true;
            add_relation(st, px, *v, ul);
            return true;
        });
    };

    // Units of norm one among short vectors of O_K e.
    if (rank > 0) {
        auto rb = lll_reduce(projected_basis(f.ok.lattice(), f.e()), *f.emb);
        long double bound = 4 * static_cast<long double>(deg);
        for (int round = 0; round < 12 && !ul.full(); ++round, bound *= 2) {
            enumerate_short(rb, bound, search_vector_limit(), [&](const AlgElement& x) {
                AlgElement px = f.padded(x);
                if (abs(alg->norm(px)) == 1) ul.add(px);
                return true;
            });
        }
    }

    Int last_h = 0;
    int stable = 0;
    IntMatrix hnf_rel;
    for (int round = 0; round < 60; ++round) {
        if (m > 0) {
            for (std::size_t j = 0; j < m; ++j) {
                FracIdeal a = st.fb[j].prime.ideal();
                const int extra = round == 0 ? 0 : 1 + static_cast<int>(rng() % 2);
                for (int t = 0; t < extra; ++t) {
                    a = product(a, st.fb[rng() % m].prime.ideal());
                }
                harvest(a, 1.0L + round * 0.5L, 60);
            }
        }
        if (rank > 0 && !ul.full()) harvest(f.ok.lattice(), 4.0L * (round + 1), 2000);
        if (m == 0) {
            if (ul.full()) break;
            continue;
        }
        hnf_rel = stack(st.relations, m);
        std::size_t r = 0;
        if (hnf_rel.rows() > 0) {
            hnf_rel = hnf_basis(hnf_rel);
            r = hnf_rel.rows();
        }
        if (r == m) {
            Int h = 1;
            for (std::size_t i = 0; i < m; ++i) h *= hnf_rel(i, i);
            if (h == last_h) ++stable;
            else stable = 0;
            last_h = h;
            st.relations.clear();
            for (std::size_t i = 0; i < m; ++i) st.relations.push_back(hnf_rel.row(i));
            if (stable >= 2 && ul.full()) break;
        }
    }
    if (!ul.full()) throw MathError("could not find a full system of units");
    if (m > 0 && (hnf_rel.rows() != m)) throw MathError("class group relations do not have full rank");

    res.units.fundamental = ul.basis();
    res.units.certified = rank == 0;
    if (rank > 0) {
        res.units.saturated_below = saturation_bound();
        for (unsigned long l = 2; l < saturation_bound(); ++l) {
            if (!is_probable_prime(Int(l))) continue;
            if (!saturated_at(f, res.units, l)) {
                res.units.saturated_below = l;
                break;
            }
        }
    }

    // Class group structure, with exact checks on the classes of prime order.
    for (int pass = 0; pass < 20; ++pass) {
        res.cl.invariants.clear();
        res.cl.generators.clear();
        if (m == 0) break;
        IntMatrix rel = stack(st.relations, m);
        auto s = snf(rel);
        Int h = 1;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < m; ++i) {
            h *= s.divisors[i];
            if (s.divisors[i] != 1) keep.push_back(i);
        }
        for (auto i : keep) {
            res.cl.invariants.push_back(s.divisors[i]);
            ZVec g = s.right_inverse.row(i);
            for (auto& c : g) c = mod_nonneg(c, h);
            res.cl.generators.push_back(std::move(g));
        }
        bool fixed = false;
        std::vector<Int> ells = h > 1 ? prime_divisors(h) : std::vector<Int>{};
        for (const auto& l : ells) {
            std::vector<ZVec> socle;
            for (std::size_t k = 0; k < res.cl.invariants.size(); ++k)
                if (res.cl.invariants[k] % l == 0) {
                    ZVec g = res.cl.generators[k];
                    Int c = res.cl.invariants[k] / l;
                    for (auto& x : g) x *= c;
                    socle.push_back(std::move(g));
                }
            const unsigned long lu = l.get_ui();
            const std::size_t sdim = socle.size();
            // Every F_l-line of the socle.
            std::vector<unsigned long> coef(sdim, 0);
            for (std::size_t lead = 0; lead < sdim && !fixed; ++lead) {
                std::fill(coef.begin(), coef.end(), 0);
                coef[lead] = 1;
                for (;;) {
                    ZVec ex(m, 0);
                    for (std::size_t k = 0; k < sdim; ++k)
                        for (std::size_t j = 0; j < m; ++j) ex[j] += Int(coef[k]) * socle[k][j];
                    for (auto& x : ex) x = mod_nonneg(x, h);
                    FracIdeal b = ideal_from_exponents(st, ex, h);
                    auto pr = principal_maximal(f.part(b));
                    if (pr.status == Principality::yes) {
                        st.relations.push_back(ex);
                        fixed = true;
                        break;
                    }
                    if (pr.status == Principality::unknown) res.cl.certified = false;
                    std::size_t i = lead + 1;
                    while (i < sdim && ++coef[i] == lu) coef[i++] = 0;
                    if (i >= sdim) break;
                }
            }
            if (fixed) break;
        }
        if (!fixed) break;
        IntMatrix hr = hnf_basis(stack(st.relations, m));
        st.relations.clear();
        for (std::size_t i = 0; i < hr.rows(); ++i) st.relations.push_back(hr.row(i));
    }
    for (const auto& p : st.fb) res.cl.factor_base.push_back(p.prime.ideal());
    return res;
}

struct ClassData {
    UnitGroup units;
    ClassGroup cl;
    std::vector<std::shared_ptr<FactorState>> states;
};

const ClassData& class_data(const AlgebraPtr& alg) {
    auto p = alg->memo<ClassData>("class_data", [&] {
        auto d = std::make_shared<ClassData>();
        const auto& comps = algebra_components(alg);
        std::vector<Int> all;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            FactorResult r = compute_factor(alg, i);
            d->units.certified = d->units.certified && r.units.certified;
            d->cl.certified = d->cl.certified && r.cl.certified;
            for (const auto& x : r.cl.invariants) {
                all.push_back(x);
                d->cl.order *= x;
            }
            d->units.parts.push_back(std::move(r.units));
            d->cl.parts.push_back(std::move(r.cl));
            d->states.push_back(r.state);
        }
        if (!all.empty()) {
            IntMatrix diag(all.size(), all.size());
            for (std::size_t i = 0; i < all.size(); ++i) diag(i, i) = all[i];
            for (const auto& x : snf(diag).divisors)
                if (x != 1) d->cl.invariants.push_back(x);
        }
        return std::shared_ptr<const ClassData>(d);
    });
    return *p;
}

}  // namespace

std::vector<AlgElement> UnitGroup::generators() const {
    std::vector<AlgElement> out;
    for (const auto& p : parts) {
        out.push_back(p.torsion);
        for (const auto& u : p.fundamental) out.push_back(u);
    }
    return out;
}

const UnitGroup& unit_group(const AlgebraPtr& alg) { return class_data(alg).units; }
const ClassGroup& class_group(const AlgebraPtr& alg) { return class_data(alg).cl; }

FracIdeal class_ideal(const AlgebraPtr& alg, std::size_t part, const ZVec& exponents) {
    const auto& d = class_data(alg);
    Int h = 1;
    for (const auto& x : d.cl.parts[part].invariants) h *= x;
    return ideal_from_exponents(*d.states[part], exponents, h);
}

int valuation(const AlgElement& x, const PrimeIdeal& p) {
    Int den = common_denominator(x);
    AlgElement y = x;
    for (auto& c : y) c *= den;
    FBPrime fp{p, {maximal_order(p.ideal().algebra()).lattice(), p.ideal()}};
    if (y == AlgElement(y.size(), Rat(0))) throw MathError("valuation of zero");
    int v = static_cast<int>(int_valuation(y, fp));
    AlgElement d(x.size(), Rat(0));
    d[0] = den;
    return v - static_cast<int>(int_valuation(d, fp));
}

std::vector<ClassGenerator> class_generators_coprime(const AlgebraPtr& alg, const FracIdeal& modulus) {
    const auto& d = class_data(alg);
    std::vector<ClassGenerator> out;
    const Order ok = maximal_order(alg);
    std::vector<PrimeIdeal> bad;
    for (const auto& q : prime_divisors(quotient(ok.lattice(), modulus).order))
        for (const auto& pr : ok.primes_above(q))
            if (pr.ideal().contains(modulus)) bad.push_back(pr);
    for (std::size_t part = 0; part < d.cl.parts.size(); ++part) {
        const auto& cp = d.cl.parts[part];
        const Factor& f = d.states[part]->f;
        for (std::size_t k = 0; k < cp.invariants.size(); ++k) {
            FracIdeal b = class_ideal(alg, part, cp.generators[k]);
            // beta in b^{-1} with beta*b coprime to the modulus.
            FracIdeal inv = colon(ok.lattice(), b);
            auto rb = lll_reduce(projected_basis(inv, f.e()), *f.emb);
            std::optional<FracIdeal> a;
            long double bound = 2 * rb.gram[0][0];
            for (int round = 0; round < 40 && !a; ++round, bound *= 2) {
                enumerate_short(rb, bound, search_vector_limit(), [&](const AlgElement& beta) {
                    FracIdeal c = b.scaled(f.padded(beta));
                    for (const auto& pr : bad)
                        if (pr.ideal().contains(c)) return true;
                    a = c;
                    return false;
                });
            }
            if (!a) throw MathError("no class representative coprime to the modulus");
            FracIdeal pw = power(*a, static_cast<unsigned>(cp.invariants[k].get_ui()));
            auto pr = principal_maximal(pw);
            if (pr.status != Principality::yes)
                throw MathError("could not find a generator of a class-group power");
            out.push_back(ClassGenerator{*a, cp.invariants[k], *pr.generator});
        }
    }
    return out;
}

nlohmann::json to_json(const UnitGroup& u) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : u.parts) {
        nlohmann::json f = nlohmann::json::array();
        for (const auto& x : p.fundamental) {
            nlohmann::json c = nlohmann::json::array();
            for (const auto& q : x) c.push_back(q.get_str());
            f.push_back(c);
        }
        parts.push_back({{"torsion_order", p.torsion_order.get_str()},
                         {"rank", p.fundamental.size()},
                         {"fundamental_units", f},
                         {"saturated_below", p.saturated_below},
                         {"certified", p.certified}});
    }
    return {{"factors", parts}, {"certified", u.certified}};
}

nlohmann::json to_json(const ClassGroup& c) {
    nlohmann::json inv = nlohmann::json::array();
    for (const auto& x : c.invariants) inv.push_back(x.get_str());
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : c.parts) {
        nlohmann::json pi = nlohmann::json::array();
        for (const auto& x : p.invariants) pi.push_back(x.get_str());
        parts.push_back({{"invariants", pi},
                         {"factor_base_size", p.factor_base.size()},
                         {"bound", static_cast<double>(p.bound)},
                         {"certified", p.certified}});
    }
    return {{"order", c.order.get_str()}, {"invariants", inv}, {"factors", parts}, {"certified", c.certified}};
}

}  // namespace cmorder
