#pragma once

#include <string>

#include "nelab/calculus.hpp"
#include "nelab/densemat.hpp"
#include "nelab/rankone.hpp"
#include "nelab/spaces.hpp"

namespace nelab {

/// Interval guaranteed to contain an operator norm. `certified` means the
/// method pinned the value (exact closed form, exhaustive enumeration, or a
/// pinch of rigorous bounds); sampled fallbacks stay uncertified so checkers
/// can answer "undecided" instead of guessing.
struct NormEnclosure {
    double lo = 0.0;
    double hi = 0.0;
    bool certified = false;
    std::string method;

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool intersects(const NormEnclosure& o) const { return lo <= o.hi && o.lo <= hi; }
};

struct AffineNormOptions {
    double certify_width = 1e-12;  // pinch threshold for the sampled fallback
    int fallback_samples = 64;
    std::uint64_t fallback_seed = 0x6e656c6162ULL;
    // vertex-pair x facet-pair budget for the l2-sum closed form
    std::size_t sum2_combo_cap = 4'000'000;
};

/// ||a Id + b T|| for rank-one T.
///  - l1 / linf leaf (either field): exact column / row sums of moduli
///  - any tree of l2 leaves (either field): exact 2x2 Hermitian reduction
///  - real sum2 of polytope leaves: exact trig closed form over the
///    (vertex pair, facet pair) family
///  - otherwise: sampled lower bound + triangle upper bound, uncertified
/// Every enclosure is sharpened by the evaluation candidate |a + b alpha| and
/// capped by the triangle bound |a| + |b| ||T||.
NormEnclosure norm_affine_rankone(const SpaceDesc& space, Scalar a, Scalar b, const RankOne& T,
                                  const AffineNormOptions& opts = {});

/// Independent norm oracle for dense matrices: exact vertex maximization on
/// real polytope leaves (dim <= 12), power iteration on the Gram map for
/// Euclidean trees (dim <= 32).
NormEnclosure matrix_norm_oracle(const SpaceDesc& space, const Mat& A);

struct SpreadGrid {
    int real_points = 41;   // uniform on [-1, 1], endpoints and 0 included
    int radial = 8;         // complex disc: radii j/radial
    int angular = 16;       // complex disc: angles 2 pi k / angular
};

struct SpreadResult {
    NormEnclosure min_norm;
    NormEnclosure max_norm;
    Scalar alpha_min{0.0};
    Scalar alpha_max{0.0};
    double spread() const { return max_norm.hi - min_norm.lo; }
    bool certified() const { return min_norm.certified && max_norm.certified; }
};

/// Sweeps alpha over a grid of the unit disc, builds witness operators
/// T_alpha, and tracks the extremes of ||g(lambda T_alpha)||. Constancy over
/// the sweep is the degree-<=1 signature; spread measures the failure.
SpreadResult norm_spread(const EntireFunction& g, const SpaceDesc& space, Scalar lambda,
                         const SpreadGrid& grid = {}, const AffineNormOptions& opts = {});

}  // namespace nelab
