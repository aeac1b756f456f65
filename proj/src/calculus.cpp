#include "nelab/calculus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nelab {

namespace {

// Switch point between the closed-form ratio and its power series; below this
// both branches agree to full precision.
constexpr double kSeriesSwitch = 9.5367431640625e-07;  // 2^-20

// e^z - 1 without cancellation for small z.
Scalar expm1c(Scalar z) {
    if (z.imag() == 0.0) return Scalar(std::expm1(z.real()), 0.0);
    const double x = z.real(), y = z.imag();
    const double sy2 = std::sin(0.5 * y);
    return Scalar(std::expm1(x) * std::cos(y) - 2.0 * sy2 * sy2, std::exp(x) * std::sin(y));
}

Scalar cosm1c(Scalar z) {  // cos z - 1
    const Scalar s = std::sin(0.5 * z);
    return -2.0 * s * s;
}

Scalar coshm1c(Scalar z) {  // cosh z - 1
    const Scalar s = std::sinh(0.5 * z);
    return 2.0 * s * s;
}

double factorial_inv(std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f /= static_cast<double>(i);
    return f;
}

}  // namespace

EntireFunction EntireFunction::poly(std::vector<Scalar> coeffs) {
    EntireFunction g;
    g.kind_ = Kind::poly;
    g.coeffs_ = std::move(coeffs);
    if (g.coeffs_.empty()) g.coeffs_.push_back(Scalar(0.0));
    return g;
}

EntireFunction EntireFunction::poly_real(const std::vector<double>& coeffs) {
    std::vector<Scalar> c;
    c.reserve(coeffs.size());
    for (double x : coeffs) c.emplace_back(x, 0.0);
    return poly(std::move(c));
}

EntireFunction EntireFunction::named(NamedKind kind) {
    EntireFunction g;
    g.kind_ = Kind::named;
    g.named_ = kind;
    return g;
}

EntireFunction EntireFunction::series(CoeffFn coeff, TailFn tail) {
    if (!coeff) throw std::invalid_argument("series: missing coefficient generator");
    if (!tail) throw std::invalid_argument("series: a tail bound is required");
    EntireFunction g;
    g.kind_ = Kind::series;
    g.gen_ = std::move(coeff);
    g.tail_ = std::move(tail);
    return g;
}

EntireFunction EntireFunction::parse(const std::string& dsl) {
    if (dsl == "exp") return exp();
    if (dsl == "sin") return sin();
    if (dsl == "cos") return cos();
    if (dsl == "sinh") return sinh();
    if (dsl == "cosh") return cosh();
    if (dsl.rfind("poly:", 0) == 0) {
        std::vector<Scalar> coeffs;
        std::stringstream ss(dsl.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) coeffs.push_back(parse_scalar(tok));
        if (coeffs.empty()) throw std::invalid_argument("poly: needs at least one coefficient");
        return poly(std::move(coeffs));
    }
    throw std::invalid_argument("unknown function '" + dsl +
                                "' (expected exp|sin|cos|sinh|cosh|poly:a0,a1,...)");
}

std::string EntireFunction::dsl() const {
    switch (kind_) {
        case Kind::named:
            switch (named_) {
                case NamedKind::exp: return "exp";
                case NamedKind::sin: return "sin";
                case NamedKind::cos: return "cos";
                case NamedKind::sinh: return "sinh";
                case NamedKind::cosh: return "cosh";
            }
            return "exp";
        case Kind::poly: {
            std::string out = "poly:";
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                if (i) out += ",";
                out += format_scalar(coeffs_[i]);
            }
            return out;
        }
        case Kind::series: return "series";
    }
    return "";
}

std::optional<int> EntireFunction::degree() const {
    if (kind_ != Kind::poly) return std::nullopt;
    int d = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != Scalar(0.0)) d = static_cast<int>(i);
    return d;
}

Scalar EntireFunction::coeff(std::size_t k) const {
    switch (kind_) {
        case Kind::poly: return k < coeffs_.size() ? coeffs_[k] : Scalar(0.0);
        case Kind::series: return gen_(k);
        case Kind::named: break;
    }
    switch (named_) {
        case NamedKind::exp: return Scalar(factorial_inv(k));
        case NamedKind::sin:
            if (k % 2 == 0) return Scalar(0.0);
            return Scalar(((k / 2) % 2 == 0 ? 1.0 : -1.0) * factorial_inv(k));
        case NamedKind::cos:
            if (k % 2 == 1) return Scalar(0.0);
            return Scalar(((k / 2) % 2 == 0 ? 1.0 : -1.0) * factorial_inv(k));
        case NamedKind::sinh: return k % 2 == 1 ? Scalar(factorial_inv(k)) : Scalar(0.0);
        case NamedKind::cosh: return k % 2 == 0 ? Scalar(factorial_inv(k)) : Scalar(0.0);
    }
    return Scalar(0.0);
}

EntireFunction::Eval EntireFunction::eval(Scalar zeta) const {
    switch (kind_) {
        case Kind::poly: {
            Scalar acc(0.0);
            for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * zeta + coeffs_[i];
            return {acc, 0.0};
        }
        case Kind::named:
            switch (named_) {
                case NamedKind::exp: return {std::exp(zeta), 0.0};
                case NamedKind::sin: return {std::sin(zeta), 0.0};
                case NamedKind::cos: return {std::cos(zeta), 0.0};
                case NamedKind::sinh: return {std::sinh(zeta), 0.0};
                case NamedKind::cosh: return {std::cosh(zeta), 0.0};
            }
            return {Scalar(0.0), 0.0};
        case Kind::series: {
            const double R = std::abs(zeta);
            Scalar acc(0.0);
            Scalar zk(1.0);
            std::size_t K = 0;
            double bound = tail_(0, R);
            for (K = 0; K < 512; ++K) {
                acc += gen_(K) * zk;
                zk *= zeta;
                bound = tail_(K, R);
                if (bound <= 1e-300 || bound <= 1e-16 * std::abs(acc)) break;
            }
            return {acc, bound};
        }
    }
    return {Scalar(0.0), 0.0};
}

Scalar eval_scalar(const EntireFunction& g, Scalar zeta) { return g.eval(zeta).value; }

Scalar tail_ratio(const EntireFunction& g, Scalar alpha, Scalar lambda) {
    if (alpha == Scalar(0.0)) return g.a1() * lambda;
    const Scalar zeta = alpha * lambda;

    // Polynomials: (g(z) - a0)/alpha = lambda * sum_{k>=1} a_k z^{k-1}, exact.
    if (g.kind() == EntireFunction::Kind::poly) {
        const int d = g.degree().value_or(0);
        Scalar acc(0.0);
        for (int k = d; k >= 1; --k) acc = acc * zeta + g.coeff(static_cast<std::size_t>(k));
        return lambda * acc;
    }

    if (std::abs(zeta) < kSeriesSwitch || g.kind() == EntireFunction::Kind::series) {
        // lambda * sum_{k>=1} a_k z^{k-1}; the ratio series is entire, and at
        // |z| < 2^-20 a handful of terms reach full precision.
        Scalar acc(0.0);
        Scalar zk(1.0);
        for (std::size_t k = 1; k <= 512; ++k) {
            const Scalar term = g.coeff(k) * zk;
            acc += term;
            zk *= zeta;
            if (k > 4 && std::abs(term) <= 1e-18 * std::abs(acc)) break;
        }
        return lambda * acc;
    }

    using NK = EntireFunction::NamedKind;
    Scalar shifted;
    switch (g.kind() == EntireFunction::Kind::named ? g.named_ : NK::exp) {
        case NK::exp: shifted = expm1c(zeta); break;
        case NK::sin: shifted = std::sin(zeta); break;
        case NK::cos: shifted = cosm1c(zeta); break;
        case NK::sinh: shifted = std::sinh(zeta); break;
        case NK::cosh: shifted = coshm1c(zeta); break;
    }
    return shifted / alpha;
}

CalculusCoeffs apply_calculus(const EntireFunction& g, Scalar lambda, const RankOne& T) {
    return {g.a0(), tail_ratio(g, T.alpha(), lambda)};
}

Mat truncated_series_matrix(const EntireFunction& g, Scalar lambda, const RankOne& T,
                            std::size_t terms) {
    const int n = T.space().dim();
    if (n > 32) throw std::invalid_argument("truncated_series_matrix: dimension cap is 32");
    if (terms < 1) throw std::invalid_argument("truncated_series_matrix: need at least one term");

    Mat base = matrix_of(T);
    for (auto& z : base.a) z *= lambda;  // lambda T

    Mat acc(n);
    acc.axpy(g.a0(), Mat::identity(n));
    Mat power = Mat::identity(n);
    for (std::size_t k = 1; k <= terms; ++k) {
        power = power * base;
        acc.axpy(g.coeff(k), power);
    }
    return acc;
}

double series_tail_bound(const EntireFunction& g, std::size_t terms, double radius) {
    double bound = 0.0;
    double rk = std::pow(radius, static_cast<double>(terms + 1));
    for (std::size_t k = terms + 1; k < terms + 400; ++k) {
        const double t = std::abs(g.coeff(k)) * rk;
        bound += t;
        rk *= radius;
        if (t < 1e-300) break;
    }
    return bound;
}

}  // namespace nelab
