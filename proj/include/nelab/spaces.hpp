#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nelab/scalar.hpp"

namespace nelab {

enum class LeafP { one, two, inf };

/// Algebraic descriptor of a concrete normed space: a tree whose leaves are
/// lp blocks (p in {1, 2, inf}) and whose internal nodes are pairwise l2-sums,
/// with a uniform scalar field.
///
/// Immutable value type; copies share the node tree.
class SpaceDesc {
public:
    static SpaceDesc lp(LeafP p, int dim, Field field);
    static SpaceDesc l1(int dim, Field field = Field::real) { return lp(LeafP::one, dim, field); }
    static SpaceDesc l2(int dim, Field field = Field::real) { return lp(LeafP::two, dim, field); }
    static SpaceDesc linf(int dim, Field field = Field::real) { return lp(LeafP::inf, dim, field); }
    static SpaceDesc sum2(const SpaceDesc& left, const SpaceDesc& right);

    bool is_leaf() const;
    LeafP leaf_p() const;    // leaf nodes only
    SpaceDesc left() const;  // sum2 nodes only
    SpaceDesc right() const; // sum2 nodes only

    int dim() const;
    Field field() const { return field_; }

    /// Dual tree: l1 <-> linf per leaf, l2 self-dual, sum2 self-dual outer.
    SpaceDesc dual() const;

    /// Every leaf is l2 or one-dimensional, i.e. the norm is Euclidean on the
    /// flattened coordinates.
    bool is_hilbertian() const;

    /// Single leaf whose unit ball is a polytope (l1/linf, or any 1-dim leaf).
    bool is_polytope_leaf() const;

    std::string dsl() const;
    static SpaceDesc parse(std::string_view text, Field field);

    bool operator==(const SpaceDesc& other) const;
    bool operator!=(const SpaceDesc& other) const { return !(*this == other); }

private:
    struct Node;
    SpaceDesc(std::shared_ptr<const Node> node, Field field);
    std::shared_ptr<const Node> node_;
    Field field_;
};

struct Vector {
    std::vector<Scalar> coords;

    Vector() = default;
    explicit Vector(std::vector<Scalar> c) : coords(std::move(c)) {}

    static Vector zeros(int dim) { return Vector(std::vector<Scalar>(dim, Scalar(0.0))); }
    static Vector basis(int dim, int index);
    static Vector from_real(const std::vector<double>& c);

    int dim() const { return static_cast<int>(coords.size()); }
};

/// Dual coordinates; evaluates on vectors through the bilinear sum Σ f_j v_j.
struct Functional {
    std::vector<Scalar> coords;

    Functional() = default;
    explicit Functional(std::vector<Scalar> c) : coords(std::move(c)) {}

    static Functional zeros(int dim) { return Functional(std::vector<Scalar>(dim, Scalar(0.0))); }
    static Functional basis(int dim, int index);
    static Functional from_real(const std::vector<double>& c);

    int dim() const { return static_cast<int>(coords.size()); }
};

double norm(const SpaceDesc& space, const Vector& v);
double dual_norm(const SpaceDesc& space, const Functional& f);
Scalar pairing(const Functional& f, const Vector& v);

/// Norm-one functional attaining the norm of v: pairing(f, v) = norm(v).
/// Tie-breaking is deterministic (all dual mass on the lowest attaining index
/// for linf leaves). Throws on the zero vector.
Functional support_functional(const SpaceDesc& space, const Vector& v);

struct WitnessPair {
    Functional f;
    Vector x;
};

/// Unit vector and unit functional with pairing(f, x) = alpha (|alpha| <= 1).
/// Uses two coordinates of the first leaf of dimension >= 2 when one exists,
/// otherwise splits across the root l2-sum with the coupling solved in closed
/// form. Requires total dimension >= 2.
WitnessPair witness_pair(const SpaceDesc& space, Scalar alpha);

/// Exact vertex list of the unit ball. Real polytope leaves only
/// (2^n sign vectors for linf(n), 2n signed basis vectors for l1(n)).
/// l2 leaves and sum2 trees are rejected; the l2-sum extreme family is a
/// continuum handled inside the norm engine.
std::vector<Vector> extreme_points(const SpaceDesc& space, int dim_cap = 16);

/// Facet functionals: ||y|| = max over facets of f(y) on the real ball.
std::vector<Functional> facets(const SpaceDesc& space, int dim_cap = 6);

/// Deterministic unit vector for the given seed (norm 1 within 1e-12).
Vector sample_sphere(const SpaceDesc& space, std::uint64_t seed);

/// Deterministic functional with dual norm 1.
Functional sample_dual_sphere(const SpaceDesc& space, std::uint64_t seed);

/// Underlying real space of a complex descriptor, with interleaved (re, im)
/// coordinates. Supported whenever each leaf is l2 or one-dimensional; an
/// l1/linf leaf of dim >= 2 has no representation in this algebra and is
/// rejected.
SpaceDesc realify(const SpaceDesc& space);
Vector realify_vector(const SpaceDesc& space, const Vector& v);
/// Real part of the functional, as a functional on realify(space).
Functional realify_functional(const SpaceDesc& space, const Functional& f);

/// The fixed battery of spaces exercised by tests and the suite.
std::vector<SpaceDesc> registry(Field field);

}  // namespace nelab
