#include "nelab/properties.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "nelab/parallel.hpp"
#include "nelab/polytope.hpp"
#include "nelab/rng.hpp"

namespace nelab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

std::string to_string(OmegaGroup::Kind k) {
    switch (k) {
        case OmegaGroup::Kind::trivial: return "trivial";
        case OmegaGroup::Kind::nth_roots: return "nth_roots";
        case OmegaGroup::Kind::full_circle: return "full_circle";
        case OmegaGroup::Kind::undecided: return "undecided";
    }
    return "undecided";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_unimodular(Scalar omega) {
    if (std::abs(std::abs(omega) - 1.0) > 1e-9)
        throw std::invalid_argument("omega = " + format_scalar(omega) + " is not unimodular");
}

// Deterministic probe operators tried before random samples: +-support
// functionals against basis vectors, plus one canned linf(3) witness whose
// sign-constrained violation is a known regression value.
std::vector<RankOne> basis_probes(const SpaceDesc& space, bool positive, bool negative) {
    std::vector<RankOne> probes;
    for (int i = 0; i < space.dim(); ++i) {
        const Vector x = Vector::basis(space.dim(), i);
        const Functional s = support_functional(space, x);
        if (negative) {
            Functional m = s;
            for (auto& c : m.coords) c = -c;
            probes.emplace_back(space, std::move(m), x);
        }
        if (positive) probes.emplace_back(space, s, x);
    }
    return probes;
}

std::optional<RankOne> canned_tsquare_probe(const SpaceDesc& space) {
    if (space.field() == Field::real && space == SpaceDesc::linf(3, Field::real)) {
        return RankOne(space, Functional::from_real({-0.2, 0.2, 0.6}),
                       Vector::from_real({1.0, -1.0, 0.9}));
    }
    return std::nullopt;
}

struct SampleEval {
    double vio_lo = 0.0;
    double vio_hi = 0.0;
    bool certified = false;
    std::vector<std::pair<std::string, double>> values;
};

// Shared sweep: evaluates every sample (probes first, then seeded operators),
// reduces serially, and regenerates the worst witness from its index so the
// result is identical for any worker count.
template <typename SamplerFn, typename EvalFn>
CheckReport sweep_check(std::string name, const SpaceDesc& space, const CheckParams& p,
                        int probe_count, const SamplerFn& sampler, const EvalFn& evaluate) {
    const auto t0 = Clock::now();
    const int total = probe_count + std::max(0, p.samples);

    std::vector<SampleEval> evals(total);
    for_each_index(total, p.workers, [&](int i) { evals[i] = evaluate(sampler(i)); });

    int worst = -1;
    double worst_lo = -1.0;
    bool all_certified = true;
    double max_hi = 0.0;
    for (int i = 0; i < total; ++i) {
        if (evals[i].vio_lo > worst_lo) {
            worst_lo = evals[i].vio_lo;
            worst = i;
        }
        all_certified = all_certified && evals[i].certified;
        max_hi = std::max(max_hi, evals[i].vio_hi);
    }

    CheckReport r;
    r.check = std::move(name);
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.samples = total;
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.max_violation = std::max(0.0, worst_lo);
    if (worst_lo >= p.tolerance)
        r.verdict = Verdict::fails;
    else if (all_certified && max_hi <= p.tolerance)
        r.verdict = Verdict::holds;
    else
        r.verdict = Verdict::undecided;

    if (worst >= 0 && (r.verdict == Verdict::fails || r.max_violation > 0.0)) {
        const RankOne T = sampler(worst);
        Witness w{T.functional(), T.vector(), evals[worst].values};
        w.values.emplace_back("sample_index", static_cast<double>(worst));
        r.witnesses.push_back(std::move(w));
    }
    r.elapsed_ms = ms_since(t0);
    return r;
}

// Violation interval for the equality lhs == rhs from two enclosures.
SampleEval equality_eval(const NormEnclosure& lhs, const NormEnclosure& rhs) {
    SampleEval e;
    e.vio_lo = std::max({0.0, lhs.lo - rhs.hi, rhs.lo - lhs.hi});
    e.vio_hi = std::max(lhs.hi - rhs.lo, rhs.hi - lhs.lo);
    e.certified = lhs.certified && rhs.certified;
    e.values = {{"lhs_lo", lhs.lo}, {"lhs_hi", lhs.hi}, {"rhs_lo", rhs.lo}, {"rhs_hi", rhs.hi}};
    return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Daugavet-type sweeps
// ---------------------------------------------------------------------------

CheckReport check_daugavet(const SpaceDesc& space, const CheckParams& p) {
    const auto probes = basis_probes(space, /*positive=*/false, /*negative=*/true);
    const int np = static_cast<int>(probes.size());

    auto sampler = [&](int i) -> RankOne {
        if (i < np) return probes[i];
        return random_rankone(space, p.seed + 7919ULL * (i - np), 1.0);
    };
    auto evaluate = [&](const RankOne& T) {
        const NormEnclosure lhs = norm_affine_rankone(space, Scalar(1.0), Scalar(1.0), T);
        const double rhs = 1.0 + T.op_norm();
        SampleEval e;
        e.vio_lo = rhs - lhs.hi;  // triangle inequality: violation is one-sided
        e.vio_hi = rhs - lhs.lo;
        e.certified = lhs.certified;
        e.values = {{"lhs_lo", lhs.lo}, {"lhs_hi", lhs.hi}, {"rhs", rhs}};
        return e;
    };
    CheckReport r = sweep_check("daugavet", space, p, np, sampler, evaluate);
    r.params["norm_target"] = 1.0;
    return r;
}

CheckReport check_omega(const SpaceDesc& space, Scalar omega, const CheckParams& p) {
    require_unimodular(omega);
    if (space.field() == Field::real && omega.imag() != 0.0)
        throw std::invalid_argument("check_omega: complex omega on a real space");

    const auto probes = basis_probes(space, true, true);
    const int np = static_cast<int>(probes.size());

    auto sampler = [&](int i) -> RankOne {
        if (i < np) return probes[i];
        return random_rankone(space, p.seed + 6271ULL * (i - np), 1.0);
    };
    auto evaluate = [&](const RankOne& T) {
        const NormEnclosure lhs = norm_affine_rankone(space, Scalar(1.0), omega, T);
        const NormEnclosure rhs = norm_affine_rankone(space, Scalar(1.0), Scalar(1.0), T);
        return equality_eval(lhs, rhs);
    };
    CheckReport r = sweep_check("omega", space, p, np, sampler, evaluate);
    r.params["omega"] = format_scalar(omega);
    return r;
}

CheckReport check_tsquare(const SpaceDesc& space, int sign, const CheckParams& p) {
    if (space.field() != Field::real)
        throw std::invalid_argument("check_tsquare: real field required");
    if (sign != 1 && sign != -1) throw std::invalid_argument("check_tsquare: sign must be +-1");

    std::vector<RankOne> probes = basis_probes(space, sign > 0, sign < 0);
    if (sign > 0)
        if (auto canned = canned_tsquare_probe(space)) probes.insert(probes.begin(), *canned);
    const int np = static_cast<int>(probes.size());

    auto sampler = [&](int i) -> RankOne {
        if (i < np) return probes[i];
        RankOne T = random_rankone(space, p.seed + 4177ULL * (i - np), 1.0);
        if (static_cast<double>(sign) * T.alpha().real() < 0.0) {
            Functional m = T.functional();
            for (auto& c : m.coords) c = -c;
            return RankOne(space, std::move(m), T.vector());
        }
        return T;
    };
    auto evaluate = [&](const RankOne& T) {
        const NormEnclosure lhs = norm_affine_rankone(space, Scalar(1.0), Scalar(1.0), T);
        const double rhs = 1.0 + T.op_norm();
        SampleEval e;
        e.vio_lo = rhs - lhs.hi;
        e.vio_hi = rhs - lhs.lo;
        e.certified = lhs.certified;
        e.values = {{"lhs_lo", lhs.lo},
                    {"lhs_hi", lhs.hi},
                    {"rhs", rhs},
                    {"alpha", T.alpha().real()}};
        return e;
    };
    CheckReport r = sweep_check("tsquare", space, p, np, sampler, evaluate);
    r.params["sign"] = sign;
    return r;
}

CheckReport check_bad_projections(const SpaceDesc& space, const CheckParams& p) {
    if (space.dim() < 2)
        throw std::invalid_argument("check_bad_projections: dimension must be >= 2");

    const auto probes = basis_probes(space, true, false);
    const int np = static_cast<int>(probes.size());

    auto sampler = [&](int i) -> RankOne {
        if (i < np) return probes[i];
        SampleRng rng = SampleRng::for_sample(p.seed, 31 + i - np);
        const Vector x = sample_sphere(space, rng.next_u64());
        const Functional s = support_functional(space, x);
        Functional h = sample_dual_sphere(space, rng.next_u64());
        const Scalar hx = pairing(h, x);
        const double mix = 0.5 * rng.uniform();
        Functional f = s;
        for (int k = 0; k < space.dim(); ++k)
            f.coords[k] += mix * (h.coords[k] - hx * s.coords[k]);
        const Scalar fx = pairing(f, x);  // ~1; renormalize to an exact projection
        for (auto& c : f.coords) c /= fx;
        return RankOne(space, std::move(f), x);
    };
    auto evaluate = [&](const RankOne& P) {
        const NormEnclosure n = norm_affine_rankone(space, Scalar(1.0), Scalar(-1.0), P);
        SampleEval e;  // violation: how far ||Id - P|| dips below 2
        e.vio_lo = 2.0 - n.hi;
        e.vio_hi = 2.0 - n.lo;
        e.certified = n.certified;
        e.values = {{"norm_lo", n.lo}, {"norm_hi", n.hi}, {"alpha", P.alpha().real()}};
        return e;
    };
    CheckReport r = sweep_check("badproj", space, p, np, sampler, evaluate);
    if (!r.witnesses.empty()) {
        double min_norm = 2.0;
        for (const auto& [k, v] : r.witnesses[0].values)
            if (k == "norm_lo") min_norm = v;
        r.params["min_norm"] = min_norm;
    }
    return r;
}

CheckReport check_dual_transfer(const SpaceDesc& space, Scalar omega, const CheckParams& p) {
    require_unimodular(omega);
    if (space.field() == Field::real && omega.imag() != 0.0)
        throw std::invalid_argument("check_dual_transfer: complex omega on a real space");

    const SpaceDesc dual_space = space.dual();
    const auto probes = basis_probes(space, true, true);
    const int np = static_cast<int>(probes.size());

    auto sampler = [&](int i) -> RankOne {
        if (i < np) return probes[i];
        return random_rankone(space, p.seed + 9203ULL * (i - np), 1.0);
    };
    auto evaluate = [&](const RankOne& T) {
        const NormEnclosure lhs = norm_affine_rankone(space, Scalar(1.0), omega, T);
        const NormEnclosure rhs = norm_affine_rankone(dual_space, Scalar(1.0), omega, adjoint(T));
        return equality_eval(lhs, rhs);
    };
    CheckReport r = sweep_check("dual", space, p, np, sampler, evaluate);
    r.params["omega"] = format_scalar(omega);
    return r;
}

// ---------------------------------------------------------------------------
// omega-invariance subgroup detection
// ---------------------------------------------------------------------------

OmegaGroup detect_omega_group(const SpaceDesc& space, const OmegaGridParams& grid,
                              const CheckParams& p) {
    OmegaGroup out;
    out.tolerance = p.tolerance;

    // Shared deterministic operator set for every omega.
    std::vector<RankOne> ops = basis_probes(space, true, true);
    for (int i = 0; i < p.samples; ++i)
        ops.push_back(random_rankone(space, p.seed + 3571ULL * i, 1.0));

    std::vector<NormEnclosure> base(ops.size());
    for (std::size_t k = 0; k < ops.size(); ++k)
        base[k] = norm_affine_rankone(space, Scalar(1.0), Scalar(1.0), ops[k]);

    // pass = certified equality within tol for every operator; fail = some
    // certified violation; anything else poisons the classification.
    enum class Status { pass, fail, unknown };
    auto classify_omega = [&](Scalar omega) {
        Status st = Status::pass;
        for (std::size_t k = 0; k < ops.size(); ++k) {
            const NormEnclosure lhs = norm_affine_rankone(space, Scalar(1.0), omega, ops[k]);
            const SampleEval e = equality_eval(lhs, base[k]);
            if (e.vio_lo >= p.tolerance) return Status::fail;
            if (!(e.certified && e.vio_hi <= p.tolerance)) st = Status::unknown;
        }
        return st;
    };

    if (space.field() == Field::real) {
        out.coarse_grid = 2;
        out.fine_grid = 2;
        const Status s = classify_omega(Scalar(-1.0));
        out.survivors_coarse.push_back(Scalar(1.0));
        if (s == Status::pass) {
            out.kind = OmegaGroup::Kind::nth_roots;
            out.order = 2;
            out.survivors_coarse.push_back(Scalar(-1.0));
        } else if (s == Status::fail) {
            out.kind = OmegaGroup::Kind::trivial;
            out.order = 1;
        } else {
            out.kind = OmegaGroup::Kind::undecided;
        }
        return out;
    }

    out.coarse_grid = grid.coarse;
    out.fine_grid = grid.fine;
    const double two_pi = 6.283185307179586476925287;

    auto sweep = [&](int n, std::vector<int>& passing) -> bool {
        bool clean = true;
        for (int k = 0; k < n; ++k) {
            const Scalar omega = k == 0 ? Scalar(1.0)
                                        : Scalar(std::cos(two_pi * k / n), std::sin(two_pi * k / n));
            const Status s = classify_omega(omega);
            if (s == Status::pass) passing.push_back(k);
            if (s == Status::unknown) clean = false;
        }
        return clean;
    };

    std::vector<int> coarse_pass, fine_pass;
    const bool coarse_clean = sweep(grid.coarse, coarse_pass);
    const bool fine_clean = sweep(grid.fine, fine_pass);
    for (int k : coarse_pass)
        out.survivors_coarse.push_back(
            Scalar(std::cos(two_pi * k / grid.coarse), std::sin(two_pi * k / grid.coarse)));

    if (!coarse_clean || !fine_clean) return out;  // undecided

    // Subgroup test: passing indices must be closed under addition mod n.
    auto is_subgroup = [](const std::vector<int>& idx, int n) {
        std::set<int> s(idx.begin(), idx.end());
        for (int a : idx)
            for (int b : idx)
                if (!s.count((a + b) % n)) return false;
        return true;
    };
    if (!is_subgroup(coarse_pass, grid.coarse) || !is_subgroup(fine_pass, grid.fine)) return out;

    const std::size_t full_coarse = static_cast<std::size_t>(grid.coarse);
    const std::size_t full_fine = static_cast<std::size_t>(grid.fine);
    if (coarse_pass.size() == full_coarse && fine_pass.size() == full_fine) {
        out.kind = OmegaGroup::Kind::full_circle;
        out.order = 0;
        return out;
    }

    // Cyclic subgroup of Z_n of size m = multiples of n/m; cross-check both
    // grids against the same root count.
    const int n_coarse = static_cast<int>(coarse_pass.size());
    const int g = std::gcd(n_coarse, grid.fine);
    const bool coarse_ok = [&] {
        for (int k : coarse_pass)
            if (k % (grid.coarse / n_coarse) != 0) return false;
        return true;
    }();
    const bool fine_ok = [&] {
        if (static_cast<int>(fine_pass.size()) != g) return false;
        for (int k : fine_pass)
            if (k % (grid.fine / g) != 0) return false;
        return true;
    }();
    if (!coarse_ok || !fine_ok) return out;

    out.order = n_coarse;
    out.kind = n_coarse == 1 ? OmegaGroup::Kind::trivial : OmegaGroup::Kind::nth_roots;
    return out;
}

// ---------------------------------------------------------------------------
// Exact fixtures
// ---------------------------------------------------------------------------

CheckReport check_f_shape(const SpaceDesc& space, Scalar a, Scalar b,
                          const std::vector<double>& t_grid, const CheckParams& p) {
    const auto t0 = Clock::now();
    if (a == Scalar(0.0) || b == Scalar(0.0))
        throw std::invalid_argument("check_f_shape: a and b must be nonzero");
    if (space.field() == Field::real && (a.imag() != 0.0 || b.imag() != 0.0))
        throw std::invalid_argument("check_f_shape: complex coefficients on a real space");

    const Scalar align = std::conj(b) / std::abs(b) * a / std::abs(a);
    WitnessPair wp;
    if (space.dim() >= 2) {
        wp = witness_pair(space, align);
    } else {
        wp.x = Vector::basis(1, 0);
        wp.f = Functional(std::vector<Scalar>{align});
    }
    const RankOne base(space, wp.f, wp.x);

    CheckReport r;
    r.check = "f-shape";
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.samples = static_cast<int>(t_grid.size());
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.params["a"] = format_scalar(a);
    r.params["b"] = format_scalar(b);

    double worst = 0.0;
    double worst_t = 0.0;
    bool all_certified = true;
    double max_width = 0.0;
    for (double t : t_grid) {
        if (t < 0.0) throw std::invalid_argument("check_f_shape: t must be >= 0");
        const NormEnclosure e = norm_affine_rankone(space, a, b * t, base);
        const double expected = std::abs(a) + std::abs(b) * t;
        const double vio = std::max(std::abs(e.lo - expected), std::abs(e.hi - expected));
        all_certified = all_certified && e.certified;
        max_width = std::max(max_width, e.width());
        if (vio > worst) {
            worst = vio;
            worst_t = t;
        }
    }
    r.max_violation = worst;
    r.params["max_width"] = max_width;
    r.params["worst_t"] = worst_t;
    r.verdict = worst >= p.tolerance ? Verdict::fails
                : all_certified      ? Verdict::holds
                                     : Verdict::undecided;
    if (r.verdict != Verdict::holds) {
        Witness w{base.functional(), base.vector(), {{"t", worst_t}, {"violation", worst}}};
        r.witnesses.push_back(std::move(w));
    }
    r.elapsed_ms = ms_since(t0);
    return r;
}

namespace {

// Norm-attaining pair with pairing 1; on a polytope leaf of dim >= 2 the
// functional also attains at a direction diametral to x, which is what makes
// the shifted identities exact.
WitnessPair attaining_pair(const SpaceDesc& space) {
    struct Finder {
        static int find(const SpaceDesc& s, int off, SpaceDesc* leaf) {
            if (s.is_leaf()) {
                if (s.dim() >= 2 && s.leaf_p() != LeafP::two) {
                    *leaf = s;
                    return off;
                }
                return -1;
            }
            const int l = find(s.left(), off, leaf);
            if (l >= 0) return l;
            return find(s.right(), off + s.left().dim(), leaf);
        }
    };
    const int dim = space.dim();
    SpaceDesc leaf = space;
    const int off = Finder::find(space, 0, &leaf);
    WitnessPair wp;
    wp.x = Vector::zeros(dim);
    wp.f = Functional::zeros(dim);
    if (off >= 0 && leaf.leaf_p() == LeafP::inf) {
        wp.x.coords[off] = Scalar(1.0);
        wp.x.coords[off + 1] = Scalar(1.0);
        wp.f.coords[off] = Scalar(1.0);
    } else if (off >= 0) {  // l1 leaf
        wp.x.coords[off] = Scalar(1.0);
        wp.f.coords[off] = Scalar(1.0);
        wp.f.coords[off + 1] = Scalar(1.0);
    } else {
        wp.x.coords[0] = Scalar(1.0);
        wp.f.coords[0] = Scalar(1.0);
    }
    return wp;
}

}  // namespace

CheckReport check_shift_fixture(const SpaceDesc& space, Scalar g0,
                                const std::vector<double>& t_grid, const CheckParams& p) {
    const auto t0 = Clock::now();
    if (space.field() == Field::real && g0.imag() != 0.0)
        throw std::invalid_argument("check_shift_fixture: complex g0 on a real space");

    const bool neg_one = g0 == Scalar(-1.0);
    const double mod_g0 = std::abs(g0);
    const WitnessPair wp = attaining_pair(space);
    const RankOne base(space, wp.f, wp.x);

    CheckReport r;
    r.check = "shift";
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.samples = static_cast<int>(t_grid.size());
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.params["g0"] = format_scalar(g0);

    double worst = 0.0, worst_t = t_grid.empty() ? 0.0 : t_grid.front();
    bool all_certified = true;
    for (double t : t_grid) {
        const double floor_t = neg_one ? 1.0 : mod_g0;
        if (t < floor_t - 1e-12)
            throw std::invalid_argument("check_shift_fixture: t below the branch range");
        const Scalar coeff =
            neg_one ? Scalar(1.0 - t) : phase(Scalar(1.0) + g0) * (t - mod_g0);

        const NormEnclosure shifted = norm_affine_rankone(space, Scalar(1.0) + g0, coeff, base);
        const NormEnclosure centered = norm_affine_rankone(space, g0, coeff, base);
        const double t_norm = std::abs(coeff) * base.op_norm();

        const double expect_shifted = std::abs(Scalar(1.0) + g0) + t - mod_g0;
        const double expect_centered = t;
        const double expect_t_norm = t - mod_g0;

        double vio = std::max(std::abs(shifted.lo - expect_shifted),
                              std::abs(shifted.hi - expect_shifted));
        vio = std::max(vio, std::max(std::abs(centered.lo - expect_centered),
                                     std::abs(centered.hi - expect_centered)));
        vio = std::max(vio, std::abs(t_norm - expect_t_norm));
        all_certified = all_certified && shifted.certified && centered.certified;
        if (vio > worst) {
            worst = vio;
            worst_t = t;
        }
    }
    r.max_violation = worst;
    r.verdict = worst >= p.tolerance ? Verdict::fails
                : all_certified      ? Verdict::holds
                                     : Verdict::undecided;
    if (r.verdict != Verdict::holds) {
        Witness w{base.functional(), base.vector(), {{"t", worst_t}, {"violation", worst}}};
        r.witnesses.push_back(std::move(w));
    }
    r.elapsed_ms = ms_since(t0);
    return r;
}

// ---------------------------------------------------------------------------
// Ball geometry checkers
// ---------------------------------------------------------------------------

GeomSearchResult search_geometric_condition(const SpaceDesc& space, const Vector& x,
                                            const Functional& f, double eps, int budget,
                                            std::uint64_t seed) {
    if (!nearly(norm(space, x), 1.0, 1e-9) || !nearly(dual_norm(space, f), 1.0, 1e-9))
        throw std::invalid_argument("search_geometric_condition: x and f must be unit");

    GeomSearchResult out;
    const double need_norm = 2.0 - eps;
    const double need_pair = 1.0 - eps;

    if (space.field() == Field::real && space.is_polytope_leaf() && space.dim() <= 12) {
        const auto xr = polytope::to_real(x.coords);
        const auto fr = polytope::to_real(f.coords);
        bool boundary_degenerate = false;
        for (const auto& phi : polytope::ball_facets(space)) {
            const double tau = need_norm - polytope::dot(phi, xr);
            for (const auto& pt : polytope::cut_vertices(space, phi, tau)) {
                ++out.scanned;
                std::vector<double> sum(pt.size());
                for (std::size_t k = 0; k < pt.size(); ++k) sum[k] = pt[k] + xr[k];
                const double sum_norm = norm(space, Vector::from_real(sum));
                const double fy = polytope::dot(fr, pt);
                if (sum_norm > need_norm && fy > need_pair) {
                    out.found = true;
                    out.y = Vector::from_real(pt);
                    return out;
                }
                if (fy > need_pair && sum_norm >= need_norm) boundary_degenerate = true;
            }
        }
        out.certified_exhausted = !boundary_degenerate;
        return out;
    }

    for (int i = 0; i < budget; ++i) {
        ++out.scanned;
        const Vector y = sample_sphere(space, seed + 131 * i);
        Vector sum = Vector::zeros(space.dim());
        for (int k = 0; k < space.dim(); ++k) sum.coords[k] = x.coords[k] + y.coords[k];
        if (norm(space, sum) > need_norm && pairing(f, y).real() > need_pair) {
            out.found = true;
            out.y = y;
            return out;
        }
    }
    return out;  // budget exhausted, no certificate
}

NormEnclosure slice_diameter(const SpaceDesc& space, const Functional& f, double alpha,
                             const SliceOptions& opts) {
    if (!nearly(dual_norm(space, f), 1.0, 1e-9))
        throw std::invalid_argument("slice_diameter: functional must be unit");
    if (alpha <= 0.0 || alpha >= 2.0)
        throw std::invalid_argument("slice_diameter: alpha must lie in (0, 2)");

    if (space.field() == Field::real && space.is_polytope_leaf() && space.dim() <= opts.dim_cap) {
        const auto fr = polytope::to_real(f.coords);
        const auto pts = polytope::cut_vertices(space, fr, 1.0 - alpha);
        double best = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                std::vector<double> d(pts[i].size());
                for (std::size_t k = 0; k < d.size(); ++k) d[k] = pts[i][k] - pts[j][k];
                best = std::max(best, norm(space, Vector::from_real(d)));
            }
        return {best, best, true, "vertex-enum"};
    }

    if (space.field() == Field::real && space.is_hilbertian()) {
        const double c = 1.0 - alpha;
        const double d = c <= 0.0 ? 2.0 : 2.0 * std::sqrt(std::max(0.0, 1.0 - c * c));
        return {d, d, true, "cap-chord"};
    }

    // Sampled lower bound around the attaining direction.
    const Functional attain_f = support_functional(space.dual(), Vector(f.coords));
    const Vector attain(attain_f.coords);
    std::vector<Vector> members{attain};
    for (int i = 0; i < opts.samples; ++i) {
        const Vector s = sample_sphere(space, opts.seed + 613 * i);
        Vector y = Vector::zeros(space.dim());
        for (int k = 0; k < space.dim(); ++k)
            y.coords[k] = attain.coords[k] + alpha * s.coords[k];
        const double yn = norm(space, y);
        if (yn > 0.0)
            for (auto& c : y.coords) c /= yn;
        if (pairing(f, y).real() >= 1.0 - alpha) members.push_back(std::move(y));
    }
    double lo = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            Vector d = Vector::zeros(space.dim());
            for (int k = 0; k < space.dim(); ++k)
                d.coords[k] = members[i].coords[k] - members[j].coords[k];
            lo = std::max(lo, norm(space, d));
        }
    return {lo, 2.0, false, "sampled"};
}

CheckReport check_denting(const SpaceDesc& space, const Vector& x0,
                          const std::vector<double>& eps_grid, const CheckParams& p) {
    const auto t0 = Clock::now();
    if (space.field() != Field::real || !space.is_polytope_leaf() || space.dim() > 4)
        throw std::invalid_argument("check_denting: real polytope leaf space of dim <= 4 required");
    if (norm(space, x0) > 1.0 + 1e-9)
        throw std::invalid_argument("check_denting: x0 must lie in the unit ball");

    const auto x0r = polytope::to_real(x0.coords);
    const auto all_facets = polytope::ball_facets(space);

    // Slice candidates: the mean of the facets active at x0 (norm-attaining
    // by construction) plus each active facet.
    std::vector<std::vector<double>> candidates;
    std::vector<double> avg(space.dim(), 0.0);
    int active = 0;
    for (const auto& phi : all_facets) {
        if (polytope::dot(phi, x0r) >= 1.0 - 1e-9) {
            ++active;
            for (int k = 0; k < space.dim(); ++k) avg[k] += phi[k];
        }
    }
    if (active > 0) {
        for (auto& v : avg) v /= active;
        candidates.push_back(avg);
        for (const auto& phi : all_facets)
            if (polytope::dot(phi, x0r) >= 1.0 - 1e-9) candidates.push_back(phi);
    }

    // Interior-segment radius: if x0 +- delta w stays in the ball, every slice
    // containing x0 also contains an endpoint at distance delta ||w||.
    std::vector<std::vector<double>> directions;
    for (int i = 0; i < space.dim(); ++i) {
        std::vector<double> e(space.dim(), 0.0);
        e[i] = 1.0;
        directions.push_back(e);
    }
    for (const auto& v : polytope::ball_vertices(space)) {
        std::vector<double> d(space.dim());
        double mag = 0.0;
        for (int k = 0; k < space.dim(); ++k) {
            d[k] = v[k] - x0r[k];
            mag += std::abs(d[k]);
        }
        if (mag > 1e-12) directions.push_back(std::move(d));
    }
    auto reach = [&](const std::vector<double>& w) {
        double t = 1e300;
        for (const auto& phi : all_facets) {
            const double pw = polytope::dot(phi, w);
            if (pw > 1e-14) t = std::min(t, (1.0 - polytope::dot(phi, x0r)) / pw);
        }
        return t;
    };
    double rho = 0.0;
    for (const auto& w : directions) {
        const double delta = std::min(reach(w), [&] {
            std::vector<double> m(w.size());
            for (std::size_t k = 0; k < w.size(); ++k) m[k] = -w[k];
            return reach(m);
        }());
        if (delta > 0.0 && delta < 1e200)
            rho = std::max(rho, delta * norm(space, Vector::from_real(w)));
    }

    CheckReport r;
    r.check = "denting";
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.samples = static_cast<int>(eps_grid.size());
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.params["rho"] = rho;

    bool all_found = true;
    bool some_impossible = false;
    double worst_gap = 0.0;
    for (double eps : eps_grid) {
        if (eps <= 0.0) throw std::invalid_argument("check_denting: eps must be positive");
        bool found = false;
        for (const auto& cand : candidates) {
            const Functional cf = polytope::to_functional(cand);
            if (!nearly(pairing(cf, x0).real(), dual_norm(space, cf), 1e-9)) continue;
            double alpha = 0.5 * eps;
            for (int halvings = 0; halvings < 24 && !found; ++halvings, alpha *= 0.5) {
                const NormEnclosure d = slice_diameter(space, cf, alpha);
                if (d.certified && d.hi <= eps) {
                    found = true;
                    Witness w{cf, x0, {{"eps", eps}, {"alpha", alpha}, {"diameter", d.hi}}};
                    r.witnesses.push_back(std::move(w));
                }
            }
            if (found) break;
        }
        all_found = all_found && found;
        if (!found && eps < rho * (1.0 - 1e-12)) {
            some_impossible = true;
            worst_gap = std::max(worst_gap, rho - eps);
        }
    }

    r.max_violation = worst_gap;
    r.verdict = all_found          ? Verdict::holds
                : some_impossible  ? Verdict::fails
                                   : Verdict::undecided;
    r.elapsed_ms = ms_since(t0);
    return r;
}

CheckReport check_hull(const SpaceDesc& space, const Vector& x, double eps,
                       const std::vector<Functional>& directions, const CheckParams& p) {
    const auto t0 = Clock::now();
    if (space.field() != Field::real || !space.is_polytope_leaf() || space.dim() > 3)
        throw std::invalid_argument("check_hull: real polytope leaf space of dim <= 3 required");
    if (!nearly(norm(space, x), 1.0, 1e-9))
        throw std::invalid_argument("check_hull: x must be a unit vector");
    if (eps < 0.0 || eps > 2.0) throw std::invalid_argument("check_hull: eps must lie in [0, 2]");

    std::vector<Functional> dirs = directions;
    if (dirs.empty()) {
        for (const auto& phi : polytope::ball_facets(space)) dirs.push_back(polytope::to_functional(phi));
        for (int i = 0; i < 8; ++i) dirs.push_back(sample_dual_sphere(space, p.seed + 17 * i));
    }

    const auto xr = polytope::to_real(x.coords);
    CheckReport r;
    r.check = "hull";
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.samples = static_cast<int>(dirs.size());
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.params["eps"] = eps;

    double worst_gap = -1.0;
    Functional worst_dir;
    double worst_sup = 0.0;
    for (const auto& f : dirs) {
        if (!nearly(dual_norm(space, f), 1.0, 1e-9))
            throw std::invalid_argument("check_hull: directions must be unit functionals");
        const auto fr = polytope::to_real(f.coords);
        double sup = -1.0;  // min of Re f over the ball is -1 for unit f
        bool nonempty = false;
        for (const auto& phi : polytope::ball_facets(space)) {
            const double tau = (2.0 - eps) + polytope::dot(phi, xr);
            for (const auto& pt : polytope::cut_vertices(space, phi, tau)) {
                nonempty = true;
                sup = std::max(sup, polytope::dot(fr, pt));
            }
        }
        if (!nonempty) sup = -1.0;
        const double gap = 1.0 - sup;
        if (gap > worst_gap) {
            worst_gap = gap;
            worst_dir = f;
            worst_sup = sup;
        }
    }

    r.max_violation = std::max(0.0, worst_gap);
    r.verdict = worst_gap >= p.tolerance ? Verdict::fails : Verdict::holds;
    Witness w{worst_dir, x, {{"gap", worst_gap}, {"sup", worst_sup}, {"eps", eps}}};
    r.witnesses.push_back(std::move(w));
    r.elapsed_ms = ms_since(t0);
    return r;
}

CheckReport scalar_cases(const EntireFunction& g, const std::vector<double>& grid,
                         const CheckParams& p) {
    const auto t0 = Clock::now();
    CheckReport r;
    r.check = "scalar";
    r.space_dsl = "l2(1)";
    r.field = Field::complex;
    r.samples = static_cast<int>(grid.size());
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.params["g"] = g.dsl();

    double worst = 0.0;
    for (double t : grid) {
        const double sq = t * t;
        worst = std::max(worst, std::abs(std::abs(1.0 + sq) - (1.0 + sq)));
        worst = std::max(worst, std::abs(std::abs(1.0 - sq) - std::max(1.0 - sq, sq - 1.0)));
    }
    r.max_violation = worst;

    // Equal |g| with different |1 + g|: the obstruction to any norm shape
    // driven by |g| alone over the complex scalars.
    double best_gap = 0.0;
    for (double t : grid) {
        if (t == 0.0) continue;
        const Scalar z1(t, 0.0), z2(0.0, t);
        const Scalar g1 = eval_scalar(g, z1), g2 = eval_scalar(g, z2);
        if (std::abs(std::abs(g1) - std::abs(g2)) > 1e-12) continue;
        const double gap = std::abs(std::abs(Scalar(1.0) + g1) - std::abs(Scalar(1.0) + g2));
        if (gap > best_gap) {
            best_gap = gap;
            Witness w{Functional(std::vector<Scalar>{z1}), Vector(std::vector<Scalar>{z2}),
                      {{"abs_g", std::abs(g1)},
                       {"lhs_at_zeta1", std::abs(Scalar(1.0) + g1)},
                       {"lhs_at_zeta2", std::abs(Scalar(1.0) + g2)},
                       {"gap", gap}}};
            r.witnesses.clear();
            r.witnesses.push_back(std::move(w));
        }
    }
    r.params["max_pair_gap"] = best_gap;
    r.verdict = worst <= p.tolerance ? Verdict::holds : Verdict::fails;
    r.elapsed_ms = ms_since(t0);
    return r;
}

// ---------------------------------------------------------------------------
// Report wrappers
// ---------------------------------------------------------------------------

CheckReport omega_group_report(const SpaceDesc& space, const OmegaGridParams& grid,
                               const CheckParams& p) {
    const auto t0 = Clock::now();
    const OmegaGroup grp = detect_omega_group(space, grid, p);
    CheckReport r;
    r.check = "omega-group";
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.params["classification"] = to_string(grp.kind);
    r.params["order"] = grp.order;
    r.params["coarse_grid"] = grp.coarse_grid;
    r.params["fine_grid"] = grp.fine_grid;
    r.samples = p.samples;
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.verdict = grp.kind == OmegaGroup::Kind::undecided ? Verdict::undecided : Verdict::holds;
    r.elapsed_ms = ms_since(t0);
    return r;
}

CheckReport spread_report(const EntireFunction& g, const SpaceDesc& space, Scalar lambda,
                          const CheckParams& p) {
    const auto t0 = Clock::now();
    const SpreadResult sp = norm_spread(g, space, lambda);
    CheckReport r;
    r.check = "spread";
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.params["g"] = g.dsl();
    r.params["lambda"] = format_scalar(lambda);
    r.params["spread"] = sp.spread();
    r.params["alpha_min"] = format_scalar(sp.alpha_min);
    r.params["alpha_max"] = format_scalar(sp.alpha_max);
    r.params["norm_min"] = sp.min_norm.lo;
    r.params["norm_max"] = sp.max_norm.hi;
    r.samples = space.field() == Field::real ? 41 : 129;
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.max_violation = sp.spread();
    r.verdict = !sp.certified()            ? Verdict::undecided
                : sp.spread() <= p.tolerance ? Verdict::holds
                                             : Verdict::fails;
    r.elapsed_ms = ms_since(t0);
    return r;
}

CheckReport geom_report(const SpaceDesc& space, const Vector& x, const Functional& f, double eps,
                        int budget, const CheckParams& p) {
    const auto t0 = Clock::now();
    const GeomSearchResult gs = search_geometric_condition(space, x, f, eps, budget, p.seed);
    CheckReport r;
    r.check = "geom";
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.params["eps"] = eps;
    r.params["budget"] = budget;
    r.params["scanned"] = gs.scanned;
    r.samples = gs.scanned;
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.verdict = gs.found                  ? Verdict::holds
                : gs.certified_exhausted  ? Verdict::fails
                                          : Verdict::undecided;
    if (gs.found) {
        Witness w{f, *gs.y, {{"eps", eps}}};
        r.witnesses.push_back(std::move(w));
    }
    r.elapsed_ms = ms_since(t0);
    return r;
}

CheckReport slice_report(const SpaceDesc& space, const Functional& f, double alpha,
                         const CheckParams& p) {
    const auto t0 = Clock::now();
    const NormEnclosure d = slice_diameter(space, f, alpha);
    CheckReport r;
    r.check = "slice";
    r.space_dsl = space.dsl();
    r.field = space.field();
    r.params["alpha"] = alpha;
    r.params["diameter_lo"] = d.lo;
    r.params["diameter_hi"] = d.hi;
    r.params["method"] = d.method;
    r.samples = 1;
    r.seed = p.seed;
    r.tolerance = p.tolerance;
    r.verdict = d.certified ? Verdict::holds : Verdict::undecided;
    Witness w{f, Vector::zeros(space.dim()), {{"diameter_lo", d.lo}, {"diameter_hi", d.hi}}};
    r.witnesses.push_back(std::move(w));
    r.elapsed_ms = ms_since(t0);
    return r;
}

}  // namespace nelab
