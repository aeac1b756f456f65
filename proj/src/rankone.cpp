#include "nelab/rankone.hpp"

#include <stdexcept>

namespace nelab {

RankOne::RankOne(SpaceDesc space, Functional f, Vector x)
    : space_(std::move(space)), f_(std::move(f)), x_(std::move(x)) {
    if (f_.dim() != space_.dim() || x_.dim() != space_.dim())
        throw std::invalid_argument("RankOne: coordinate count does not match the space");
    alpha_ = pairing(f_, x_);
    norm_ = dual_norm(space_, f_) * norm(space_, x_);
}

Vector RankOne::apply(const Vector& y) const {
    const Scalar c = pairing(f_, y);
    Vector out = Vector::zeros(x_.dim());
    for (int i = 0; i < x_.dim(); ++i) out.coords[i] = c * x_.coords[i];
    return out;
}

RankOne scale(const RankOne& T, Scalar lambda) {
    Functional f = T.functional();
    for (auto& c : f.coords) c *= lambda;
    return RankOne(T.space(), std::move(f), T.vector());
}

std::pair<Scalar, RankOne> power_as_rankone(const RankOne& T, Scalar lambda, int k) {
    if (k < 1)
        throw std::invalid_argument("power_as_rankone: k must be >= 1 (k = 0 is the identity)");
    Scalar coeff(1.0);
    for (int i = 0; i < k; ++i) coeff *= lambda;
    for (int i = 0; i < k - 1; ++i) coeff *= T.alpha();
    return {coeff, T};
}

RankOne adjoint(const RankOne& T) {
    return RankOne(T.space().dual(), Functional(T.vector().coords), Vector(T.functional().coords));
}

RankOne realify_operator(const RankOne& T) {
    const SpaceDesc& s = T.space();
    if (s.field() != Field::complex)
        throw std::invalid_argument("realify_operator: operator already acts on a real space");
    return RankOne(realify(s), realify_functional(s, T.functional()),
                   realify_vector(s, T.vector()));
}

RankOne random_rankone(const SpaceDesc& space, std::uint64_t seed, double norm_target) {
    if (norm_target < 0.0) throw std::invalid_argument("random_rankone: negative norm target");
    Vector x = sample_sphere(space, seed);
    Functional f = sample_dual_sphere(space, seed + 0x632be59bd9b4e019ULL);
    for (auto& c : f.coords) c *= norm_target;
    return RankOne(space, std::move(f), std::move(x));
}

Mat matrix_of(const RankOne& T) {
    const int n = T.space().dim();
    Mat m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = T.vector().coords[i] * T.functional().coords[j];
    return m;
}

Mat materialize_affine(Scalar a, Scalar b, const RankOne& T) {
    Mat m = matrix_of(T);
    for (auto& z : m.a) z *= b;
    for (int i = 0; i < m.n; ++i) m.at(i, i) += a;
    return m;
}

}  // namespace nelab
