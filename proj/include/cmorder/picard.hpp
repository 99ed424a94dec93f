#pragma once

// Picard groups of orders and the ideal class monoid ICM(S).
//
// Pic(T) is read off the exact sequence
//   O_K^* -> (O_K/g)^* / (T/g)^* -> Pic(T) -> Cl(O_K) -> 1
// for an O_K-ideal g inside the conductor of T. All overorders of one base
// order share g = conductor of the base, so (O_K/g)^* and the class group
// generators are built once.

#include "cmorder/classgroup.hpp"
#include "cmorder/residue_units.hpp"
#include "cmorder/weak.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cmorder {

/// Data shared by the Picard groups of all orders whose conductor contains g.
struct PicardContext {
    FracIdeal modulus;
    std::shared_ptr<const ResidueUnitGroup> big;  ///< (O_K/g)^*
    std::vector<ClassGenerator> classes;           ///< Cl(O_K), coprime to g
    std::vector<ZVec> unit_logs;                   ///< dlog of O_K^* generators
    bool certified = true;
};

/// Cached per algebra and modulus.
std::shared_ptr<const PicardContext> picard_context(const AlgebraPtr& alg, const FracIdeal& modulus);

class PicardGroup {
public:
    PicardGroup() = default;
    PicardGroup(const Order& t, std::shared_ptr<const PicardContext> ctx);

    const Order& order() const { return t_; }
    /// Elementary divisors d_1 | d_2 | ..., all > 1.
    const std::vector<Int>& invariants() const { return inv_; }
    const Int& size() const { return size_; }
    /// Invertible integral T-ideals, one per invariant.
    const std::vector<FracIdeal>& generators() const { return gens_; }

    /// Exact when O_K^* and Cl(O_K) are certified; otherwise conditional on
    /// the unit saturation bound.
    bool exact() const { return exact_; }
    std::string certification() const;

    /// The class with the given coordinates (one per invariant) as an
    /// integral invertible T-ideal of least index among its rational
    /// multiples.
    FracIdeal element(const ZVec& coords) const;
    /// All classes, in lexicographic coordinate order. Throws MathError when
    /// the group is larger than `limit`.
    std::vector<FracIdeal> elements(std::size_t limit = 1u << 20) const;
    /// Coordinates of the class of an invertible T-ideal.
    ZVec dlog(const FracIdeal& l) const;

private:
    ZVec reduce(const ZVec& presentation) const;

    Order t_;
    std::shared_ptr<const PicardContext> ctx_;
    std::vector<Int> inv_;
    Int size_ = 1;
    std::vector<FracIdeal> gens_;
    bool exact_ = true;
    std::size_t m_ = 0;        // number of (O_K/g)^* generators
    std::size_t offset_ = 0;   // SNF rows with divisor 1 come first
    IntMatrix right_, right_inv_;
};

/// Pic(T) with g = the conductor of T.
PicardGroup picard_group(const Order& t);
/// Pic(T) with a prescribed g (an O_K-ideal inside the conductor of T).
PicardGroup picard_group(const Order& t, const FracIdeal& modulus);

/// The rational multiple cL with cL ⊆ T of least index.
FracIdeal normalize_in(const FracIdeal& l, const Order& t);

/// I ≅ J: weakly equivalent and (J:I) principal over their common
/// multiplicator ring. Unknown only when the principality search is.
Principality isomorphic(const FracIdeal& i, const FracIdeal& j);

struct IcmPart {
    WeakClassSet weak;
    PicardGroup pic;
    Int count() const { return Int(weak.reps.size()) * pic.size(); }
};

struct IcmDescription {
    Order base;
    std::vector<IcmPart> parts;  ///< parallel to overorders(base).members
    std::vector<unsigned> types;
    Int total = 0;
    bool exact = true;
};

/// |ICM(S)| = Σ_T |W_T(S)|·|Pic(T)| over all overorders T.
IcmDescription icm(const Order& s, unsigned threads = 1);

/// The products L·I for L in Pic(T) and I in W_T(S), normalized into T.
std::vector<FracIdeal> icm_representatives(const IcmPart& part, std::size_t limit = 1u << 20);

nlohmann::json to_json(const PicardGroup& g);
nlohmann::json to_json(const IcmDescription& d, bool with_parts = true);

struct MatrixClasses {
    Int count = 0;
    bool exact = true;
    /// Multiplication by x on a Z-basis of each representative; filled only
    /// when count <= the requested limit.
    std::vector<IntMatrix> matrices;
};

/// Conjugacy classes of integer matrices with characteristic polynomial f
/// (ascending coefficients, monic, squarefree).
MatrixClasses matrix_conjugacy_classes(const std::vector<Int>& f, unsigned threads = 1,
                                       std::size_t max_matrices = 0);

/// Z[π, q/π]. Throws MathError when q/π is not integral.
Order weil_order(const AlgebraPtr& alg, const Int& q);

/// |ICM(Z[π, q/π])|, the number of isomorphism classes of abelian varieties
/// in the isogeny class of an ordinary q-Weil polynomial f (not checked).
IcmDescription av_isomorphism_classes(const std::vector<Int>& f, const Int& q, unsigned threads = 1);

/// Matrix of multiplication by x on the HNF basis of l (row convention,
/// rows are images of basis vectors).
IntMatrix multiplication_matrix(const FracIdeal& l, const AlgElement& x);

}  // namespace cmorder
