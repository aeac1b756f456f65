#include "nelab/suite.hpp"

#include <cmath>
#include <sstream>

#include "nelab/report.hpp"
#include "nelab/rng.hpp"

namespace nelab {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CheckParams battery_params(std::uint64_t seed, int workers, int samples) {
    CheckParams p;
    p.samples = samples;
    p.seed = seed;
    p.tolerance = 1e-9;
    p.workers = workers;
    return p;
}

Mat affine_matrix(Scalar c0, Scalar c1, const RankOne& T) {
    Mat m = matrix_of(T);
    for (auto& z : m.a) z *= c1;
    for (int i = 0; i < m.n; ++i) m.at(i, i) += c0;
    return m;
}

// --------------------------------------------------------------------------
// Criteria
// --------------------------------------------------------------------------

CriterionResult criterion_calculus_oracle(std::uint64_t seed) {
    CriterionResult c{"C1", "functional calculus matches the truncated-series matrix oracle", false,
                      ""};
    std::vector<EntireFunction> fns{EntireFunction::exp(), EntireFunction::sin(),
                                    EntireFunction::cosh()};
    SampleRng rng(seed ^ 0xC1);
    for (int k = 0; k < 3; ++k) {
        std::vector<Scalar> coeffs;
        const int deg = 3 + static_cast<int>(rng.next_u64() % 3);
        for (int i = 0; i <= deg; ++i) coeffs.emplace_back(rng.uniform_signed(), rng.uniform_signed());
        fns.push_back(EntireFunction::poly(std::move(coeffs)));
    }

    std::vector<SpaceDesc> spaces;
    for (Field f : {Field::real, Field::complex})
        for (const auto& s : registry(f))
            if (s.dim() <= 6) spaces.push_back(s);

    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SpaceDesc& space = spaces[i % spaces.size()];
        const EntireFunction& g = fns[i % fns.size()];
        SampleRng r = SampleRng::for_sample(seed ^ 0x1C1, i);
        const Scalar lambda = space.field() == Field::real
                                  ? Scalar(2.0 * r.uniform_signed(), 0.0)
                                  : Scalar(r.uniform_signed(), r.uniform_signed());
        const RankOne T = random_rankone(space, r.next_u64(), 1.0);
        const CalculusCoeffs cc = apply_calculus(g, lambda, T);
        const Mat fast = affine_matrix(cc.c0, cc.c1, T);
        const Mat oracle = truncated_series_matrix(g, lambda, T, 64);
        worst = std::max(worst, fast.max_abs_diff(oracle));
    }
    c.passed = worst <= 1e-10;
    c.details = "max entrywise deviation " + fmt(worst) + " (bound 1e-10, 100 cases)";
    return c;
}

CriterionResult criterion_power_identity(std::uint64_t seed) {
    CriterionResult c{"C2", "rank-one power coefficient matches k-fold matrix products", false, ""};
    std::vector<SpaceDesc> spaces{SpaceDesc::l1(2, Field::real), SpaceDesc::linf(3, Field::real),
                                  SpaceDesc::l2(4, Field::real), SpaceDesc::l2(5, Field::real),
                                  SpaceDesc::linf(2, Field::complex),
                                  SpaceDesc::l2(3, Field::complex)};
    double worst = 0.0;
    int cases = 0;
    for (std::size_t si = 0; si < spaces.size(); ++si) {
        for (int k = 1; k <= 6; ++k) {
            SampleRng r = SampleRng::for_sample(seed ^ 0x2C2, si * 16 + k);
            const Scalar lambda = spaces[si].field() == Field::real
                                      ? Scalar(2.0 * r.uniform_signed(), 0.0)
                                      : Scalar(r.uniform_signed(), r.uniform_signed());
            const RankOne T = random_rankone(spaces[si], r.next_u64(), 1.0);
            Mat scaled = matrix_of(T);
            for (auto& z : scaled.a) z *= lambda;
            Mat power = scaled;
            for (int j = 1; j < k; ++j) power = power * scaled;
            const auto [coeff, base] = power_as_rankone(T, lambda, k);
            Mat predicted = matrix_of(base);
            for (auto& z : predicted.a) z *= coeff;
            worst = std::max(worst, power.max_abs_diff(predicted));
            ++cases;
        }
    }
    c.passed = worst <= 1e-12;
    c.details = "max entrywise deviation " + fmt(worst) + " over " + std::to_string(cases) +
                " (space, k) cases (bound 1e-12)";
    return c;
}

CriterionResult criterion_f_shape(std::uint64_t seed, int workers) {
    CriterionResult c{"C3", "affine response fixture is exact with width-0 enclosures", false, ""};
    const std::vector<double> ts{0.0, 0.5, 1.0, 5.0, 50.0};
    const CheckParams p = battery_params(seed, workers, 0);

    double worst_width = 0.0, worst_vio = 0.0;
    int runs = 0;
    bool ok = true;
    auto run_case = [&](const SpaceDesc& s, Scalar a, Scalar b) {
        const CheckReport r = check_f_shape(s, a, b, ts, p);
        ok = ok && r.verdict == Verdict::holds;
        worst_vio = std::max(worst_vio, r.max_violation);
        worst_width = std::max(worst_width, r.params.at("max_width").get<double>());
        ++runs;
    };
    for (Field f : {Field::real, Field::complex})
        for (const auto& s : registry(f)) {
            run_case(s, Scalar(2.0), Scalar(-3.0));
            run_case(s, Scalar(-1.0), Scalar(5.0));
            if (f == Field::complex) run_case(s, Scalar(1.0), Scalar(0.0, 1.0));
        }
    ok = ok && worst_width <= 1e-12 && worst_vio <= 1e-9;
    c.passed = ok;
    c.details = "max width " + fmt(worst_width) + ", max deviation " + fmt(worst_vio) + " over " +
                std::to_string(runs) + " fixtures";
    return c;
}

CriterionResult criterion_shift_fixture(std::uint64_t seed, int workers) {
    CriterionResult c{"C4", "shifted-identity fixtures certified exact", false, ""};
    const CheckParams p = battery_params(seed, workers, 0);
    double worst = 0.0;
    int runs = 0;
    bool ok = true;
    auto run_case = [&](const SpaceDesc& s, Scalar g0, const std::vector<double>& ts) {
        const CheckReport r = check_shift_fixture(s, g0, ts, p);
        ok = ok && r.verdict == Verdict::holds;
        worst = std::max(worst, r.max_violation);
        ++runs;
    };
    for (Field f : {Field::real, Field::complex})
        for (const auto& s : registry(f)) {
            run_case(s, Scalar(-1.0), {1.0, 1.5, 2.0, 3.0, 10.0});
            run_case(s, Scalar(0.3), {0.3, 0.5, 1.0, 5.0, 50.0});
        }
    const double h = std::sqrt(0.5);
    for (const char* dsl : {"l1(2)", "l1(3)", "linf(2)", "linf(3)"})
        run_case(SpaceDesc::parse(dsl, Field::complex), Scalar(-0.5, 0.5), {h, 1.0, 2.0, 5.0, 50.0});
    ok = ok && worst <= 1e-9;
    c.passed = ok;
    c.details = "max deviation " + fmt(worst) + " over " + std::to_string(runs) + " fixtures";
    return c;
}

CriterionResult criterion_spread(std::uint64_t seed) {
    CriterionResult c{"C5", "norm-spread dichotomy: flat for degree <= 1, spread >= 0.9 for zeta^2",
                      false, ""};
    (void)seed;
    double worst_flat = 0.0;
    for (const char* dsl : {"linf(2)", "linf(3)", "l1(2)", "l1(3)"}) {
        const SpaceDesc s = SpaceDesc::parse(dsl, Field::real);
        for (const auto& coeffs :
             {std::vector<double>{1.0, 1.0}, {0.3, -0.7}, {-2.0, 5.0}})
            for (double lambda : {0.5, 1.0, 2.0}) {
                const SpreadResult sp =
                    norm_spread(EntireFunction::poly_real(coeffs), s, Scalar(lambda));
                if (!sp.certified()) worst_flat = 1.0;
                worst_flat = std::max(worst_flat, sp.spread());
            }
    }
    const SpreadResult quad = norm_spread(EntireFunction::poly_real({0.0, 0.0, 1.0}),
                                          SpaceDesc::linf(2, Field::real), Scalar(1.0));
    c.passed = worst_flat <= 1e-9 && quad.spread() >= 0.9;
    c.details = "degree<=1 spread " + fmt(worst_flat) + " (bound 1e-9); zeta^2 spread " +
                fmt(quad.spread()) + " (needs >= 0.9)";
    return c;
}

CriterionResult criterion_predicted_failures(std::uint64_t seed, int workers) {
    CriterionResult c{"C6", "predicted finite-dimensional failures with canonical witnesses", false,
                      ""};
    const CheckParams p = battery_params(seed, workers, 200);
    std::ostringstream det;
    bool ok = true;

    const CheckReport d = check_daugavet(SpaceDesc::linf(2, Field::real), p);
    ok = ok && d.verdict == Verdict::fails && d.max_violation >= 1.0 - 1e-9;
    ok = ok && !d.witnesses.empty() &&
         std::abs(d.witnesses[0].f.coords[0].real() + 1.0) <= 1e-9 &&
         std::abs(d.witnesses[0].x.coords[0].real() - 1.0) <= 1e-9;
    det << "daugavet(linf(2)) violation " << fmt(d.max_violation);

    const CheckReport o = check_omega(SpaceDesc::l2(2, Field::real), Scalar(-1.0), p);
    ok = ok && o.verdict == Verdict::fails && o.max_violation >= 1.0 - 1e-9;
    det << "; omega(-1, l2(2)) violation " << fmt(o.max_violation);

    // Canonical sign-constrained witness, checked directly and via the sweep.
    const SpaceDesc l3 = SpaceDesc::linf(3, Field::real);
    const RankOne canned(l3, Functional::from_real({-0.2, 0.2, 0.6}),
                         Vector::from_real({1.0, -1.0, 0.9}));
    const NormEnclosure ce = norm_affine_rankone(l3, Scalar(1.0), Scalar(1.0), canned);
    const double cv = 1.0 + canned.op_norm() - ce.hi;
    ok = ok && std::abs(cv - 0.1) <= 1e-9 && canned.alpha().real() >= 0.0;
    CheckParams probes_only = p;
    probes_only.samples = 0;
    const CheckReport t = check_tsquare(l3, +1, probes_only);
    ok = ok && t.verdict == Verdict::fails && std::abs(t.max_violation - 0.1) <= 1e-9;
    const CheckReport t_full = check_tsquare(l3, +1, p);
    ok = ok && t_full.verdict == Verdict::fails;
    det << "; tsquare(+, linf(3)) canonical violation " << fmt(cv);

    c.passed = ok;
    c.details = det.str();
    return c;
}

CriterionResult criterion_hull(std::uint64_t seed, int workers) {
    CriterionResult c{"C7", "hull support-gap values and monotonicity", false, ""};
    const CheckParams p = battery_params(seed, workers, 0);
    const SpaceDesc s = SpaceDesc::linf(2, Field::real);
    const Vector x = Vector::from_real({1.0, 0.0});
    const std::vector<Functional> dir{Functional::from_real({1.0, 0.0})};

    std::vector<double> gaps;
    for (double eps : {0.1, 0.5, 1.0, 1.5, 2.0})
        gaps.push_back(check_hull(s, x, eps, dir, p).max_violation);

    bool ok = std::abs(gaps[1] - 1.5) <= 1e-9;
    for (std::size_t i = 1; i < gaps.size(); ++i) ok = ok && gaps[i] <= gaps[i - 1] + 1e-12;
    ok = ok && gaps.back() <= 1e-9;
    c.passed = ok;
    std::ostringstream det;
    det << "gaps";
    for (double g : gaps) det << " " << fmt(g);
    det << " (eps 0.1..2.0; pinned 1.5 at eps=0.5)";
    c.details = det.str();
    return c;
}

CriterionResult criterion_slice_denting(std::uint64_t seed, int workers) {
    CriterionResult c{"C8", "slice diameter exact; vertex denting; edge midpoint not denting",
                      false, ""};
    const CheckParams p = battery_params(seed, workers, 0);
    const SpaceDesc s = SpaceDesc::linf(2, Field::real);

    const NormEnclosure sd = slice_diameter(s, Functional::from_real({1.0, 0.0}), 0.5);
    bool ok = sd.certified && sd.lo == 2.0 && sd.hi == 2.0;

    const std::vector<double> eps_grid{0.5, 0.25, 0.1};
    const CheckReport vertex = check_denting(s, Vector::from_real({1.0, 1.0}), eps_grid, p);
    ok = ok && vertex.verdict == Verdict::holds;
    double found_diam = 2.0;
    for (const auto& w : vertex.witnesses)
        for (const auto& [k, v] : w.values)
            if (k == "diameter") found_diam = std::min(found_diam, v);
    ok = ok && found_diam <= 0.1;

    const CheckReport midpoint = check_denting(s, Vector::from_real({1.0, 0.0}), eps_grid, p);
    ok = ok && midpoint.verdict == Verdict::fails;

    c.passed = ok;
    c.details = "slice diameter [" + fmt(sd.lo) + "," + fmt(sd.hi) + "]; vertex slices down to " +
                fmt(found_diam) + "; midpoint verdict " + to_string(midpoint.verdict);
    return c;
}

CriterionResult criterion_cross_validation(std::uint64_t seed) {
    CriterionResult c{"C9", "norm engine and matrix oracle enclosures intersect", false, ""};
    std::vector<SpaceDesc> spaces;
    for (int n = 2; n <= 4; ++n) {
        spaces.push_back(SpaceDesc::l1(n, Field::real));
        spaces.push_back(SpaceDesc::linf(n, Field::real));
        spaces.push_back(SpaceDesc::l2(n, Field::real));
    }
    int agree = 0;
    const int total = 500;
    for (int i = 0; i < total; ++i) {
        const SpaceDesc& s = spaces[i % spaces.size()];
        SampleRng r = SampleRng::for_sample(seed ^ 0x9C9, i);
        const Scalar a(2.0 * r.uniform_signed(), 0.0);
        const Scalar b(2.0 * r.uniform_signed(), 0.0);
        const RankOne T = random_rankone(s, r.next_u64(), 0.5 + 1.5 * r.uniform());
        const NormEnclosure engine = norm_affine_rankone(s, a, b, T);
        const NormEnclosure oracle = matrix_norm_oracle(s, affine_matrix(a, b, T));
        if (engine.intersects(oracle)) ++agree;
    }

    // l2-sum enclosure width at default refinement
    double worst_width = 0.0;
    const SpaceDesc pair = SpaceDesc::sum2(SpaceDesc::linf(2, Field::real),
                                           SpaceDesc::linf(2, Field::real));
    for (int i = 0; i < 50; ++i) {
        SampleRng r = SampleRng::for_sample(seed ^ 0x9CA, i);
        const Scalar a(2.0 * r.uniform_signed(), 0.0);
        const Scalar b(2.0 * r.uniform_signed(), 0.0);
        const RankOne T = random_rankone(pair, r.next_u64(), 1.0);
        const NormEnclosure e = norm_affine_rankone(pair, a, b, T);
        worst_width = std::max(worst_width, e.width());
        if (!e.certified) worst_width = 1.0;
    }
    c.passed = agree == total && worst_width <= 1e-6;
    c.details = std::to_string(agree) + "/" + std::to_string(total) +
                " enclosure intersections; l2-sum width " + fmt(worst_width) + " (bound 1e-6)";
    return c;
}

CriterionResult criterion_determinism(std::uint64_t seed) {
    CriterionResult c{"C10", "suite battery byte-identical for 1 vs 8 workers", false, ""};
    auto dump = [](const std::vector<CheckReport>& reports) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        return strip_timing(arr).dump(2);
    };
    const std::string one = dump(run_battery(seed, 1));
    const std::string eight = dump(run_battery(seed, 8));
    c.passed = one == eight;
    c.details = c.passed ? "identical (" + std::to_string(one.size()) + " bytes, timing stripped)"
                         : "outputs differ";
    return c;
}

}  // namespace

// --------------------------------------------------------------------------
// Battery
// --------------------------------------------------------------------------

std::vector<CheckReport> run_battery(std::uint64_t seed, int workers) {
    std::vector<CheckReport> out;
    const std::vector<double> ts{0.0, 0.5, 1.0, 5.0, 50.0};

    for (Field field : {Field::real, Field::complex}) {
        for (const SpaceDesc& s : registry(field)) {
            out.push_back(check_daugavet(s, battery_params(seed, workers, 150)));
            const Scalar minus_one(-1.0);
            out.push_back(check_omega(s, minus_one, battery_params(seed, workers, 150)));
            out.push_back(check_omega(s, Scalar(1.0), battery_params(seed, workers, 40)));
            out.push_back(check_bad_projections(s, battery_params(seed, workers, 100)));
            const Scalar dual_omega =
                field == Field::real ? Scalar(-1.0) : Scalar(0.0, 1.0);
            out.push_back(check_dual_transfer(s, dual_omega, battery_params(seed, workers, 100)));

            out.push_back(check_f_shape(s, Scalar(2.0), Scalar(-3.0), ts,
                                        battery_params(seed, workers, 0)));
            if (field == Field::complex)
                out.push_back(check_f_shape(s, Scalar(1.0), Scalar(0.0, 1.0), ts,
                                            battery_params(seed, workers, 0)));
            out.push_back(check_shift_fixture(s, Scalar(-1.0), {1.0, 2.0, 10.0},
                                              battery_params(seed, workers, 0)));
            out.push_back(check_shift_fixture(s, Scalar(0.3), {0.3, 1.0, 50.0},
                                              battery_params(seed, workers, 0)));

            if (field == Field::real) {
                out.push_back(check_tsquare(s, +1, battery_params(seed, workers, 150)));
                out.push_back(check_tsquare(s, -1, battery_params(seed, workers, 150)));
            }
        }
    }

    for (const char* dsl : {"linf(2)", "linf(3)", "l1(2)", "l1(3)"}) {
        const SpaceDesc s = SpaceDesc::parse(dsl, Field::real);
        for (const auto& g : {EntireFunction::poly_real({1.0, 1.0}),
                              EntireFunction::poly_real({0.0, 0.0, 1.0})})
            out.push_back(spread_report(g, s, Scalar(1.0), battery_params(seed, workers, 0)));
    }

    {
        const SpaceDesc s = SpaceDesc::linf(2, Field::real);
        const CheckParams p = battery_params(seed, workers, 0);
        out.push_back(check_hull(s, Vector::from_real({1.0, 0.0}), 0.5,
                                 {Functional::from_real({1.0, 0.0})}, p));
        out.push_back(check_denting(s, Vector::from_real({1.0, 1.0}), {0.5, 0.25, 0.1}, p));
        out.push_back(check_denting(s, Vector::from_real({1.0, 0.0}), {0.5, 0.25, 0.1}, p));
        out.push_back(geom_report(s, Vector::from_real({1.0, 0.0}),
                                  Functional::from_real({1.0, 0.0}), 0.5, 256, p));
        out.push_back(slice_report(s, Functional::from_real({1.0, 0.0}), 0.5, p));
        out.push_back(scalar_cases(EntireFunction::poly_real({0.0, 0.0, 1.0}),
                                   {0.0, 0.5, 1.0, 2.0, 5.0}, p));
    }

    for (const char* dsl : {"l2(2)", "linf(2)"}) {
        const SpaceDesc s = SpaceDesc::parse(dsl, Field::complex);
        out.push_back(omega_group_report(s, OmegaGridParams{}, battery_params(seed, workers, 16)));
    }

    return out;
}

SuiteResult run_suite(std::uint64_t seed, int workers) {
    SuiteResult s;
    s.seed = seed;
    s.battery = run_battery(seed, workers);
    s.criteria.push_back(criterion_calculus_oracle(seed));
    s.criteria.push_back(criterion_power_identity(seed));
    s.criteria.push_back(criterion_f_shape(seed, workers));
    s.criteria.push_back(criterion_shift_fixture(seed, workers));
    s.criteria.push_back(criterion_spread(seed));
    s.criteria.push_back(criterion_predicted_failures(seed, workers));
    s.criteria.push_back(criterion_hull(seed, workers));
    s.criteria.push_back(criterion_slice_denting(seed, workers));
    s.criteria.push_back(criterion_cross_validation(seed));
    s.criteria.push_back(criterion_determinism(seed));
    return s;
}

nlohmann::ordered_json suite_to_json(const SuiteResult& s) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["seed"] = s.seed;
    nlohmann::ordered_json crit = nlohmann::ordered_json::array();
    for (const auto& c : s.criteria) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["title"] = c.title;
        jc["passed"] = c.passed;
        jc["details"] = c.details;
        crit.push_back(std::move(jc));
    }
    j["criteria"] = crit;
    nlohmann::ordered_json battery = nlohmann::ordered_json::array();
    for (const auto& r : s.battery) battery.push_back(report_to_json(r));
    j["battery"] = battery;
    return j;
}

std::string format_criteria_lines(const SuiteResult& s) {
    std::ostringstream os;
    for (const auto& c : s.criteria)
        os << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " — " << c.details
           << "\n";
    return os.str();
}

}  // namespace nelab
