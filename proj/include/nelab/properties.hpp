#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nelab/calculus.hpp"
#include "nelab/opnorm.hpp"
#include "nelab/rankone.hpp"
#include "nelab/spaces.hpp"

namespace nelab {

enum class Verdict { holds, fails, undecided };

std::string to_string(Verdict v);

/// A serialized counterexample (or supporting sample): the operator's
/// functional and vector plus the recomputable values behind the verdict.
struct Witness {
    Functional f;
    Vector x;
    std::vector<std::pair<std::string, double>> values;
};

struct CheckParams {
    int samples = 1000;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    int workers = 1;
};

struct CheckReport {
    std::string check;
    std::string space_dsl;
    Field field = Field::real;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    Verdict verdict = Verdict::undecided;
    double max_violation = 0.0;
    std::vector<Witness> witnesses;
    int samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double elapsed_ms = 0.0;
};

// ---------------------------------------------------------------------------
// Norm-equality checkers. "holds" verdicts are always scoped to the sampled
// or enumerated family (finite sampling cannot prove a universal statement);
// "fails" ships a recomputable witness; wide/uncertified enclosures yield
// "undecided" rather than a guess.
// ---------------------------------------------------------------------------

/// ||Id + T|| = 1 + ||T|| over deterministic probes plus seeded rank-one
/// samples; records the worst violation.
CheckReport check_daugavet(const SpaceDesc& space, const CheckParams& p);

/// ||Id + omega T|| = ||Id + T|| for a unimodular omega.
CheckReport check_omega(const SpaceDesc& space, Scalar omega, const CheckParams& p);

struct OmegaGridParams {
    int coarse = 360;  // roots of unity of order dividing `coarse`
    int fine = 1024;   // uniform circle grid
};

struct OmegaGroup {
    enum class Kind { trivial, nth_roots, full_circle, undecided };
    Kind kind = Kind::undecided;
    int order = 1;  // n for nth_roots (1 = trivial)
    double tolerance = 0.0;
    int coarse_grid = 0;
    int fine_grid = 0;
    std::vector<Scalar> survivors_coarse;
};

std::string to_string(OmegaGroup::Kind k);

/// Estimates the set of unimodular omega for which the omega-invariance check
/// holds, verifies multiplicative closure on the grid, and classifies it.
OmegaGroup detect_omega_group(const SpaceDesc& space, const OmegaGridParams& grid,
                              const CheckParams& p);

/// Exact fixture: ||a Id + b T_t|| = |a| + |b| t with a width-0 certified
/// enclosure on every grid point, using an alignment witness pair.
CheckReport check_f_shape(const SpaceDesc& space, Scalar a, Scalar b,
                          const std::vector<double>& t_grid, const CheckParams& p);

/// Shifted-identity fixtures around a scalar g0: for T_t built on a
/// norm-attaining pair,
///   ||(1+g0) Id + T_t|| = |1+g0| + t - |g0|,
///   ||g0 Id + T_t||     = t,
///   ||T_t||             = t - |g0|.
/// The middle identity needs a doubly-attaining direction, which polytope
/// balls provide and strictly convex balls do not (for misaligned complex
/// g0); the report states what the certified enclosures establish.
CheckReport check_shift_fixture(const SpaceDesc& space, Scalar g0,
                                const std::vector<double>& t_grid, const CheckParams& p);

/// Daugavet equation restricted to sign-constrained rank-one operators
/// (pairing >= 0 for sign +1, <= 0 for sign -1). Real field.
CheckReport check_tsquare(const SpaceDesc& space, int sign, const CheckParams& p);

struct GeomSearchResult {
    bool found = false;
    std::optional<Vector> y;
    bool certified_exhausted = false;
    int scanned = 0;
};

/// Searches the unit sphere for y with ||x + y|| > 2 - eps and
/// Re f(y) > 1 - eps. Exact piecewise vertex scan on real polytope leaves
/// (with a certificate of exhaustion), seeded sampling elsewhere.
GeomSearchResult search_geometric_condition(const SpaceDesc& space, const Vector& x,
                                            const Functional& f, double eps, int budget,
                                            std::uint64_t seed);

struct SliceOptions {
    int dim_cap = 6;
    int samples = 256;
    std::uint64_t seed = 7;
};

/// Diameter of the closed slice {y in B : Re f(y) >= 1 - alpha} for a unit
/// functional f. Exact vertex enumeration on real polytope leaves, chord
/// closed form on Euclidean trees, sampled lower bound otherwise.
NormEnclosure slice_diameter(const SpaceDesc& space, const Functional& f, double alpha,
                             const SliceOptions& opts = {});

/// Is x0 contained in slices of arbitrarily small diameter? For each eps in
/// the grid, searches slices cut by combinations of the facets active at x0;
/// certifies "not denting" through a segment through x0 inside the ball.
CheckReport check_denting(const SpaceDesc& space, const Vector& x0,
                          const std::vector<double>& eps_grid, const CheckParams& p);

/// Support-gap checker for the convex hull of B \ (x + (2-eps) B): per
/// direction f, gap(f) = 1 - sup{Re f(y) : y in B, ||y - x|| >= 2 - eps},
/// computed exactly by decomposing the region along ball facets.
CheckReport check_hull(const SpaceDesc& space, const Vector& x, double eps,
                       const std::vector<Functional>& directions, const CheckParams& p);

/// Samples norm-one rank-one projections (pairing 1) and reports
/// min ||Id - P||; fails when some projection has ||Id - P|| < 2 - tol.
CheckReport check_bad_projections(const SpaceDesc& space, const CheckParams& p);

/// ||Id + omega T|| on the space vs ||Id + omega T*|| on the dual descriptor.
CheckReport check_dual_transfer(const SpaceDesc& space, Scalar omega, const CheckParams& p);

/// One-dimensional scalar identities: |1 + t^2| = 1 + |t^2| and
/// |1 - t^2| = max(1 - |t^2|, |t^2| - 1) on the grid; for g, exhibits
/// zeta-pairs with equal |g| but different |1 + g|.
CheckReport scalar_cases(const EntireFunction& g, const std::vector<double>& grid,
                         const CheckParams& p);

// Report wrappers for the measurement-style operations, shared by the CLI and
// the suite battery.
CheckReport omega_group_report(const SpaceDesc& space, const OmegaGridParams& grid,
                               const CheckParams& p);
CheckReport spread_report(const EntireFunction& g, const SpaceDesc& space, Scalar lambda,
                          const CheckParams& p);
CheckReport geom_report(const SpaceDesc& space, const Vector& x, const Functional& f, double eps,
                        int budget, const CheckParams& p);
CheckReport slice_report(const SpaceDesc& space, const Functional& f, double alpha,
                         const CheckParams& p);

}  // namespace nelab
