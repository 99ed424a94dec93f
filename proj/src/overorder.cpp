#include "cmorder/overorder.hpp"

#include "cmorder/config.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

namespace cmorder {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

Order ring_closure(const Order& u, const std::vector<AlgElement>& xs) {
    std::vector<AlgElement> gens{u.algebra()->one()};
    gens.insert(gens.end(), xs.begin(), xs.end());
    FracIdeal m = ideal_from_generators(u.algebra(), gens, &u.lattice());
    for (;;) {
        FracIdeal next = product(m, m);
        if (next == m) return Order::trusted(m);
        m = next;
    }
}

namespace {

// Enumerates the F_p-lines of (Z/p)^r, calling f on a vector whose first
// nonzero entry is 1.
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

constexpr double kMaxLines = 5e6;

}  // namespace

std::vector<Order> minimal_overorders(const Order& u) {
    if (u.is_maximal()) throw MathError("minimal_overorders: the order is maximal");
    std::vector<Order> cands;
    std::set<FracIdeal> seen_rings;
    for (const auto& pr : u.noninvertible_primes()) {
        FracIdeal r = colon(pr.ideal(), pr.ideal());
        FiniteQuotient q(r, u.lattice());
        const auto& div = q.divisors();
        if (div.empty()) continue;
        for (const auto& d : div)
            if (d != pr.p()) throw MathError("(P:P)/U is not killed by p");
        const unsigned long p = pr.p().get_ui();
        const Int qsize = pr.residue_size();
        if (std::pow(static_cast<double>(p), static_cast<double>(div.size())) > kMaxLines * static_cast<double>(p))
            throw MathError("minimal_overorders: quotient too large to enumerate");
        // Elements already known to generate a minimal overorder.
        std::set<std::vector<Int>> covered;
        auto normalize = [&](std::vector<Int> v) {
            std::size_t i = 0;
            while (i < v.size() && v[i] == 0) ++i;
            if (i == v.size()) return v;
            Int inv;
            mpz_invert(inv.get_mpz_t(), v[i].get_mpz_t(), pr.p().get_mpz_t());
            for (auto& c : v) c = mod_nonneg(c * inv, pr.p());
            return v;
        };
        for_each_line(div.size(), p, [&](const std::vector<Int>& v) {
            if (covered.count(v)) return;
            Order w = ring_closure(u, {q.lift(v)});
            if (!seen_rings.insert(w.lattice()).second) return;
            cands.push_back(w);
            if (index(w.lattice(), u.lattice()) == Rat(qsize)) {
                // [W : U] = |U/P| forces minimality; every element of W \ U
                // generates W.
                FiniteQuotient wq(w.lattice(), u.lattice());
                std::vector<Int> c(wq.rank(), 0);
                for (;;) {
                    auto x = q.coords(wq.lift(c));
                    covered.insert(normalize(x));
                    std::size_t i = 0;
                    while (i < c.size() && ++c[i] == wq.divisors()[i]) c[i++] = 0;
                    if (i == c.size()) break;
                }
            }
        });
    }
    std::vector<Order> out;
    for (const auto& v : cands) {
        bool minimal = true;
        for (const auto& w : cands)
            if (w != v && v.lattice().contains(w.lattice())) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    if (verification_mode())
        for (const auto& v : out) verify_that(product(v.lattice(), v.lattice()) == v.lattice(), "minimal overorder is a ring");
    return out;
}

OverorderLattice overorders(const Order& s, unsigned threads) {
    OverorderLattice lat{s, {}};
    const FracIdeal ok = s.maximal_order().lattice();
    std::set<FracIdeal> seen{s.lattice()};
    std::vector<Order> all{s}, layer{s};
    while (!layer.empty()) {
        std::vector<std::vector<Order>> found(layer.size());
        parallel_for(layer.size(), threads, [&](std::size_t i) {
            if (!layer[i].is_maximal()) found[i] = minimal_overorders(layer[i]);
        });
        std::vector<Order> next;
        for (auto& f : found)
            for (auto& v : f)
                if (seen.insert(v.lattice()).second) next.push_back(v);
        std::sort(next.begin(), next.end());
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    std::vector<std::pair<Rat, Order>> keyed;
    for (auto& t : all) keyed.emplace_back(index(ok, t.lattice()), t);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    for (auto& k : keyed) lat.members.push_back(k.second);
    return lat;
}

OverorderSummary classify_overorders(const OverorderLattice& lat, unsigned threads) {
    OverorderSummary sum;
    sum.types.assign(lat.members.size(), 1);
    parallel_for(lat.members.size(), threads,
                 [&](std::size_t i) { sum.types[i] = global_type(lat.members[i]).global_type; });
    for (auto t : sum.types) {
        ++sum.by_type[t];
        if (t == 1) ++sum.gorenstein;
        sum.max_type = std::max(sum.max_type, t);
    }
    return sum;
}

nlohmann::json to_json(const OverorderLattice& lat, const OverorderSummary& summary) {
    const FracIdeal ok = lat.base.maximal_order().lattice();
    nlohmann::json members = nlohmann::json::array();
    for (std::size_t i = 0; i < lat.members.size(); ++i) {
        const auto& t = lat.members[i];
        members.push_back({{"index", index(ok, t.lattice()).get_str()},
                           {"type", summary.types[i]},
                           {"gorenstein", summary.types[i] == 1},
                           {"order", to_json(t.lattice())}});
    }
    nlohmann::json by_type = nlohmann::json::object();
    for (const auto& [t, c] : summary.by_type) by_type[std::to_string(t)] = std::to_string(c);
    return {{"poly", lat.base.algebra()->poly_string()},
            {"count", std::to_string(lat.members.size())},
            {"gorenstein_count", std::to_string(summary.gorenstein)},
            {"by_type", by_type},
            {"members", members}};
}

}  // namespace cmorder
