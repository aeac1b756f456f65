#pragma once

#include <cstdint>
#include <utility>

#include "nelab/densemat.hpp"
#include "nelab/spaces.hpp"

namespace nelab {

/// Rank-one operator y -> f(y) x, stored as (functional, vector) with its
/// pairing alpha = f(x) and operator norm ||f||* ||x|| cached at construction.
class RankOne {
public:
    RankOne(SpaceDesc space, Functional f, Vector x);

    const SpaceDesc& space() const { return space_; }
    const Functional& functional() const { return f_; }
    const Vector& vector() const { return x_; }

    Scalar alpha() const { return alpha_; }
    double op_norm() const { return norm_; }
    bool is_zero() const { return norm_ == 0.0; }

    Vector apply(const Vector& y) const;

private:
    SpaceDesc space_;
    Functional f_;
    Vector x_;
    Scalar alpha_;
    double norm_;
};

/// Scalar multiple; the factor is absorbed into the functional so the vector
/// stays put for fixtures that evaluate at it.
RankOne scale(const RankOne& T, Scalar lambda);

/// (lambda T)^k collapses to coefficient * T with coefficient
/// alpha^{k-1} lambda^k. k = 0 is rejected: the identity is not rank-one.
std::pair<Scalar, RankOne> power_as_rankone(const RankOne& T, Scalar lambda, int k);

/// Adjoint x ⊗ f acting on the dual descriptor; same norm, same alpha.
RankOne adjoint(const RankOne& T);

/// Re f ⊗ x on the realified space (complex input only).
RankOne realify_operator(const RankOne& T);

/// Seeded operator with norm within 1e-9 of the target.
RankOne random_rankone(const SpaceDesc& space, std::uint64_t seed, double norm_target = 1.0);

/// Dense coordinate matrix of T (independent evaluation path for oracles).
Mat matrix_of(const RankOne& T);

/// Dense matrix of a*Id + b*T.
Mat materialize_affine(Scalar a, Scalar b, const RankOne& T);

}  // namespace nelab
