#include "nelab/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nelab/polytope.hpp"
#include "nelab/rng.hpp"

namespace nelab {

namespace {

NormEnclosure exact(double v, const char* method) { return {v, v, true, method}; }

// max over [0, pi/2] of (c1 cos t + s1 sin t)^2 + (c2 cos t + s2 sin t)^2,
// a degree-2 trig polynomial A + B cos 2t + C sin 2t.
double trig_quad_max(double c1, double s1, double c2, double s2) {
    const double A = 0.5 * (c1 * c1 + s1 * s1 + c2 * c2 + s2 * s2);
    const double B = 0.5 * (c1 * c1 - s1 * s1 + c2 * c2 - s2 * s2);
    const double C = c1 * s1 + c2 * s2;
    const double R = std::hypot(B, C);
    if (R == 0.0) return A;
    // peak at 2t = atan2(C, B); admissible iff it lies in [0, pi]
    if (std::atan2(C, B) >= 0.0) return A + R;
    return A + std::abs(B);  // otherwise an endpoint wins
}

// ||a Id + b x f^T|| on linf(n): max row sum of moduli.
double rowsum_norm(Scalar a, Scalar b, const RankOne& T) {
    const auto& x = T.vector().coords;
    const auto& f = T.functional().coords;
    double fsum = 0.0;
    for (const auto& z : f) fsum += std::abs(z);
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = std::abs(b) * std::abs(x[i]);
        const double row = std::abs(a + b * x[i] * f[i]) + xi * (fsum - std::abs(f[i]));
        best = std::max(best, row);
    }
    return best;
}

// ||a Id + b x f^T|| on l1(n): max column sum of moduli.
double colsum_norm(Scalar a, Scalar b, const RankOne& T) {
    const auto& x = T.vector().coords;
    const auto& f = T.functional().coords;
    double xsum = 0.0;
    for (const auto& z : x) xsum += std::abs(z);
    double best = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double fj = std::abs(b) * std::abs(f[j]);
        const double col = std::abs(a + b * x[j] * f[j]) + fj * (xsum - std::abs(x[j]));
        best = std::max(best, col);
    }
    return best;
}

// Euclidean case: a Id + b x r^H with r = conj(f) acts as a Id off
// span{x, r}; the norm is the top singular value of the restriction, a 2x2
// Hermitian eigenproblem.
double hilbert_norm(Scalar a, Scalar b, const RankOne& T) {
    const auto& xc = T.vector().coords;
    const auto& fc = T.functional().coords;
    const int n = static_cast<int>(xc.size());

    auto inner = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
        Scalar s(0.0);
        for (int i = 0; i < n; ++i) s += u[i] * std::conj(v[i]);
        return s;
    };

    std::vector<Scalar> r(fc.size());
    for (std::size_t i = 0; i < fc.size(); ++i) r[i] = std::conj(fc[i]);

    const double xn = std::sqrt(inner(xc, xc).real());
    const double rn = std::sqrt(inner(r, r).real());
    if (xn == 0.0 || rn == 0.0 || b == Scalar(0.0)) return std::abs(a);

    std::vector<Scalar> q1(xc);
    for (auto& z : q1) z /= xn;

    std::vector<Scalar> w(r);
    const Scalar proj = inner(r, q1);
    for (int i = 0; i < n; ++i) w[i] -= proj * q1[i];
    const double wn = std::sqrt(std::max(0.0, inner(w, w).real()));

    const Scalar m00 = a + b * inner(q1, r) * xn;
    if (wn <= 1e-14 * rn) {
        double best = std::abs(m00);
        if (n >= 2) best = std::max(best, std::abs(a));
        return best;
    }
    for (auto& z : w) z /= wn;
    const Scalar m01 = b * inner(w, r) * xn;
    const Scalar m11 = a;

    // top singular value of [[m00, m01], [0, m11]]
    const double g11 = std::norm(m00);
    const double g22 = std::norm(m01) + std::norm(m11);
    const double g12 = std::abs(std::conj(m00) * m01);
    const double mean = 0.5 * (g11 + g22);
    const double disc = std::sqrt(0.25 * (g11 - g22) * (g11 - g22) + g12 * g12);
    double best = std::sqrt(std::max(0.0, mean + disc));
    if (n >= 3) best = std::max(best, std::abs(a));
    return best;
}

bool real_coords(const std::vector<Scalar>& c) {
    for (const auto& z : c)
        if (z.imag() != 0.0) return false;
    return true;
}

// Real l2-sum of two polytope leaves: the ball's extreme family is
// (cos t. u, sin t. w) over block vertices, and the image norm squared is a
// max of degree-2 trig polynomials over output facet pairs. Exact.
bool sum2_trig_applicable(const SpaceDesc& space, Scalar a, Scalar b, const RankOne& T) {
    if (space.field() != Field::real || space.is_leaf()) return false;
    if (!space.left().is_polytope_leaf() || !space.right().is_polytope_leaf()) return false;
    if (a.imag() != 0.0 || b.imag() != 0.0) return false;
    return real_coords(T.vector().coords) && real_coords(T.functional().coords);
}

double sum2_trig_norm(const SpaceDesc& space, double a, double b, const RankOne& T,
                      const AffineNormOptions& opts) {
    const SpaceDesc L = space.left(), R = space.right();
    const int nl = L.dim(), nr = R.dim();
    const auto vertsL = polytope::ball_vertices(L);
    const auto vertsR = polytope::ball_vertices(R);
    const auto facL = polytope::ball_facets(L);
    const auto facR = polytope::ball_facets(R);

    const std::size_t combos =
        vertsL.size() * vertsR.size() * facL.size() * facR.size();
    if (combos > opts.sum2_combo_cap)
        throw std::invalid_argument("sum2 closed form: combination budget exceeded");

    const auto x = polytope::to_real(T.vector().coords);
    const auto f = polytope::to_real(T.functional().coords);

    // images of the two block injections under A = a Id + b x f^T
    auto image = [&](const std::vector<double>& s, bool left_block) {
        std::vector<double> y(nl + nr, 0.0);
        double fs = 0.0;
        const int off = left_block ? 0 : nl;
        const int len = left_block ? nl : nr;
        for (int i = 0; i < len; ++i) {
            y[off + i] = a * s[i];
            fs += f[off + i] * s[i];
        }
        for (int i = 0; i < nl + nr; ++i) y[i] += b * fs * x[i];
        return y;
    };

    std::vector<std::vector<double>> pL, qR;
    pL.reserve(vertsL.size());
    for (const auto& s : vertsL) pL.push_back(image(s, true));
    qR.reserve(vertsR.size());
    for (const auto& s : vertsR) qR.push_back(image(s, false));

    double best = 0.0;
    std::vector<double> pl(nl), pr(nr), ql(nl), qr(nr);
    for (const auto& p : pL)
        for (const auto& q : qR) {
            for (int i = 0; i < nl; ++i) {
                pl[i] = p[i];
                ql[i] = q[i];
            }
            for (int i = 0; i < nr; ++i) {
                pr[i] = p[nl + i];
                qr[i] = q[nl + i];
            }
            for (const auto& phi : facL) {
                const double c1 = polytope::dot(phi, pl);
                const double s1 = polytope::dot(phi, ql);
                for (const auto& psi : facR) {
                    const double c2 = polytope::dot(psi, pr);
                    const double s2 = polytope::dot(psi, qr);
                    best = std::max(best, trig_quad_max(c1, s1, c2, s2));
                }
            }
        }
    return std::sqrt(best);
}

NormEnclosure sampled_fallback(const SpaceDesc& space, Scalar a, Scalar b, const RankOne& T,
                               const AffineNormOptions& opts) {
    double lo = 0.0;
    for (int i = 0; i < opts.fallback_samples; ++i) {
        const Vector y = sample_sphere(space, opts.fallback_seed + 977 * i);
        const Scalar c = pairing(T.functional(), y);
        Vector img = Vector::zeros(space.dim());
        for (int k = 0; k < space.dim(); ++k)
            img.coords[k] = a * y.coords[k] + b * c * T.vector().coords[k];
        lo = std::max(lo, norm(space, img));
    }
    const double hi = std::abs(a) + std::abs(b) * T.op_norm();
    return {lo, hi, false, "sample-triangle"};
}

}  // namespace

NormEnclosure norm_affine_rankone(const SpaceDesc& space, Scalar a, Scalar b, const RankOne& T,
                                  const AffineNormOptions& opts) {
    if (T.space() != space)
        throw std::invalid_argument("norm_affine_rankone: operator lives on a different space");

    NormEnclosure e;
    const double tnorm = T.op_norm();
    if (b == Scalar(0.0) || tnorm == 0.0) {
        e = exact(std::abs(a), "identity-scale");
    } else if (space.is_leaf() && space.leaf_p() == LeafP::inf) {
        e = exact(rowsum_norm(a, b, T), "rowsum");
    } else if (space.is_leaf() && space.leaf_p() == LeafP::one) {
        e = exact(colsum_norm(a, b, T), "colsum");
    } else if (space.is_hilbertian()) {
        e = exact(hilbert_norm(a, b, T), "l2-closed");
    } else if (sum2_trig_applicable(space, a, b, T)) {
        e = exact(sum2_trig_norm(space, a.real(), b.real(), T, opts), "sum2-trig");
    } else {
        e = sampled_fallback(space, a, b, T, opts);
    }

    // Evaluation at x/||x|| and the triangle bound sharpen every method.
    if (!T.is_zero() && norm(space, T.vector()) > 0.0)
        e.lo = std::max(e.lo, std::abs(a + b * T.alpha()));
    e.hi = std::min(e.hi, std::abs(a) + std::abs(b) * tnorm);
    if (e.lo > e.hi) std::swap(e.lo, e.hi);  // ulp-level inversions only

    const double scale = std::max(1.0, e.hi);
    if (!e.certified && e.width() <= opts.certify_width * scale) {
        e.certified = true;
        e.method += "+pinch";
    }
    return e;
}

NormEnclosure matrix_norm_oracle(const SpaceDesc& space, const Mat& A) {
    if (A.n != space.dim())
        throw std::invalid_argument("matrix_norm_oracle: matrix size does not match the space");

    if (space.field() == Field::real && space.is_polytope_leaf()) {
        if (space.dim() > 12)
            throw std::invalid_argument("matrix_norm_oracle: polytope path capped at dim 12");
        for (const auto& z : A.a)
            if (z.imag() != 0.0)
                throw std::invalid_argument("matrix_norm_oracle: complex matrix on a real space");
        double best = 0.0;
        for (const auto& v : polytope::ball_vertices(space)) {
            std::vector<Scalar> vc(v.begin(), v.end());
            best = std::max(best, norm(space, Vector(A.apply(vc))));
        }
        return {best, best, true, "vertex-enum"};
    }

    if (space.is_hilbertian()) {
        if (space.dim() > 32)
            throw std::invalid_argument("matrix_norm_oracle: Euclidean path capped at dim 32");
        const int n = A.n;
        // Gram matrix G = A^H A
        Mat G(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Scalar s(0.0);
                for (int k = 0; k < n; ++k) s += std::conj(A.at(k, i)) * A.at(k, j);
                G.at(i, j) = s;
            }
        double gram_cap = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += std::abs(G.at(i, j));
            gram_cap = std::max(gram_cap, row);
        }

        auto run = [&](std::vector<Scalar> v) {
            double best = 0.0, prev = -1.0;
            for (int it = 0; it < 500; ++it) {
                double vn = 0.0;
                for (const auto& z : v) vn += std::norm(z);
                vn = std::sqrt(vn);
                if (vn == 0.0) break;
                for (auto& z : v) z /= vn;
                const auto img = A.apply(v);
                double image_norm = 0.0;
                for (const auto& z : img) image_norm += std::norm(z);
                image_norm = std::sqrt(image_norm);
                best = std::max(best, image_norm);
                if (it > 3 && std::abs(best - prev) <= 1e-15 * std::max(1.0, best)) break;
                prev = best;
                v = G.apply(v);
            }
            return best;
        };

        double lo = 0.0;
        std::vector<Scalar> ones(n, Scalar(1.0));
        lo = std::max(lo, run(ones));
        int peak_col = 0;
        double peak = -1.0;
        for (int j = 0; j < n; ++j) {
            double cn = 0.0;
            for (int i = 0; i < n; ++i) cn += std::norm(A.at(i, j));
            if (cn > peak) {
                peak = cn;
                peak_col = j;
            }
        }
        std::vector<Scalar> ej(n, Scalar(0.0));
        ej[peak_col] = Scalar(1.0);
        lo = std::max(lo, run(ej));
        SampleRng rng(0x9d2c5680ULL);
        std::vector<Scalar> rv(n);
        for (auto& z : rv) z = rng.normal_scalar(space.field());
        lo = std::max(lo, run(rv));

        const double hi = std::min({lo + 1e-8, A.frobenius(), std::sqrt(gram_cap)});
        return {lo, std::max(lo, hi), true, "power-iteration"};
    }

    throw std::invalid_argument("matrix_norm_oracle: unsupported space " + space.dsl());
}

SpreadResult norm_spread(const EntireFunction& g, const SpaceDesc& space, Scalar lambda,
                         const SpreadGrid& grid, const AffineNormOptions& opts) {
    if (space.dim() < 2) throw std::invalid_argument("norm_spread: space dimension must be >= 2");

    std::vector<Scalar> alphas;
    if (space.field() == Field::real) {
        const int n = std::max(3, grid.real_points | 1);  // odd count keeps 0 on the grid
        for (int i = 0; i < n; ++i)
            alphas.emplace_back(-1.0 + 2.0 * i / (n - 1), 0.0);
    } else {
        alphas.emplace_back(0.0, 0.0);
        for (int r = 1; r <= grid.radial; ++r)
            for (int k = 0; k < grid.angular; ++k) {
                const double rho = static_cast<double>(r) / grid.radial;
                const double th = 2.0 * 3.141592653589793238463 * k / grid.angular;
                alphas.emplace_back(rho * std::cos(th), rho * std::sin(th));
            }
    }

    SpreadResult out;
    bool first = true;
    for (const Scalar& alpha : alphas) {
        const WitnessPair wp = witness_pair(space, alpha);
        const RankOne T(space, wp.f, wp.x);
        const CalculusCoeffs cc = apply_calculus(g, lambda, T);
        const NormEnclosure e = norm_affine_rankone(space, cc.c0, cc.c1, T, opts);
        if (first || e.lo < out.min_norm.lo) {
            out.min_norm = e;
            out.alpha_min = alpha;
        }
        if (first || e.hi > out.max_norm.hi) {
            out.max_norm = e;
            out.alpha_max = alpha;
        }
        first = false;
    }
    return out;
}

}  // namespace nelab
