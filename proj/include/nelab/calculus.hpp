#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nelab/densemat.hpp"
#include "nelab/rankone.hpp"
#include "nelab/scalar.hpp"

namespace nelab {

/// An entire function given as polynomial coefficients, a named transcendental
/// (exact closed-form evaluation), or a coefficient generator with a tail
/// bound (the only enclosure-typed path).
class EntireFunction {
public:
    enum class Kind { poly, named, series };
    enum class NamedKind { exp, sin, cos, sinh, cosh };

    using CoeffFn = std::function<Scalar(std::size_t)>;
    /// tail(K, R) bounds |sum_{k>K} a_k z^k| over |z| <= R.
    using TailFn = std::function<double(std::size_t, double)>;

    static EntireFunction poly(std::vector<Scalar> coeffs);
    static EntireFunction poly_real(const std::vector<double>& coeffs);
    static EntireFunction named(NamedKind kind);
    static EntireFunction exp() { return named(NamedKind::exp); }
    static EntireFunction sin() { return named(NamedKind::sin); }
    static EntireFunction cos() { return named(NamedKind::cos); }
    static EntireFunction sinh() { return named(NamedKind::sinh); }
    static EntireFunction cosh() { return named(NamedKind::cosh); }
    static EntireFunction series(CoeffFn coeff, TailFn tail);

    /// Function DSL: "exp" | "sin" | "cos" | "sinh" | "cosh" | "poly:1,2,3".
    static EntireFunction parse(const std::string& dsl);
    std::string dsl() const;

    Kind kind() const { return kind_; }
    std::optional<int> degree() const;  // polynomials only

    Scalar a0() const { return coeff(0); }
    Scalar a1() const { return coeff(1); }
    /// Power-series coefficient a_k (closed form for named functions).
    Scalar coeff(std::size_t k) const;

    struct Eval {
        Scalar value;
        double error;  // certified enclosure radius; 0 for exact paths
    };
    Eval eval(Scalar zeta) const;

private:
    EntireFunction() = default;
    Kind kind_ = Kind::poly;
    std::vector<Scalar> coeffs_;
    NamedKind named_ = NamedKind::exp;
    CoeffFn gen_;
    TailFn tail_;

    friend Scalar tail_ratio(const EntireFunction&, Scalar, Scalar);
};

Scalar eval_scalar(const EntireFunction& g, Scalar zeta);

/// The rank-one coefficient of g(lambda T): (g(alpha lambda) - a0)/alpha for
/// alpha != 0 and a1 lambda at alpha = 0, evaluated without cancellation
/// (closed forms away from zero, the series of the ratio below 2^-20).
Scalar tail_ratio(const EntireFunction& g, Scalar alpha, Scalar lambda);

struct CalculusCoeffs {
    Scalar c0;  // identity coefficient, = a0
    Scalar c1;  // rank-one coefficient
};

/// g(lambda T) = c0 * Id + c1 * T, exactly, for every rank-one T.
CalculusCoeffs apply_calculus(const EntireFunction& g, Scalar lambda, const RankOne& T);

/// Independent oracle: materializes sum_{k<=K} a_k (lambda T)^k by repeated
/// dense matrix products. Dimension capped at 32.
Mat truncated_series_matrix(const EntireFunction& g, Scalar lambda, const RankOne& T,
                            std::size_t terms);

/// Bound on |sum_{k>K} a_k z^k| over |z| <= radius.
double series_tail_bound(const EntireFunction& g, std::size_t terms, double radius);

}  // namespace nelab
