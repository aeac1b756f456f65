#include "nelab/polytope.hpp"

#include <cmath>
#include <stdexcept>

namespace nelab::polytope {

namespace {

void require_polytope(const SpaceDesc& space) {
    if (space.field() != Field::real || !space.is_polytope_leaf())
        throw std::invalid_argument("polytope geometry needs a real l1/linf leaf space");
}

bool is_cross(const SpaceDesc& space) {
    return space.leaf_p() == LeafP::one && space.dim() > 1;
}

}  // namespace

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vector to_vector(const std::vector<double>& c) { return Vector::from_real(c); }
Functional to_functional(const std::vector<double>& c) { return Functional::from_real(c); }

std::vector<double> to_real(const std::vector<Scalar>& c) {
    std::vector<double> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[i].real();
    return r;
}

std::vector<std::vector<double>> ball_vertices(const SpaceDesc& space) {
    require_polytope(space);
    const int n = space.dim();
    std::vector<std::vector<double>> pts;
    if (is_cross(space)) {
        for (int i = 0; i < n; ++i)
            for (double s : {1.0, -1.0}) {
                std::vector<double> v(n, 0.0);
                v[i] = s;
                pts.push_back(std::move(v));
            }
        return pts;
    }
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
        pts.push_back(std::move(v));
    }
    return pts;
}

std::vector<std::vector<double>> ball_facets(const SpaceDesc& space) {
    require_polytope(space);
    const int n = space.dim();
    std::vector<std::vector<double>> fs;
    if (is_cross(space)) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            std::vector<double> f(n);
            for (int i = 0; i < n; ++i) f[i] = (mask >> i) & 1 ? -1.0 : 1.0;
            fs.push_back(std::move(f));
        }
        return fs;
    }
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            std::vector<double> f(n, 0.0);
            f[i] = s;
            fs.push_back(std::move(f));
        }
    return fs;
}

std::vector<std::pair<int, int>> ball_edges(const SpaceDesc& space) {
    require_polytope(space);
    const int n = space.dim();
    std::vector<std::pair<int, int>> edges;
    if (n == 1) {
        edges.emplace_back(0, 1);  // the segment [-1, 1]
        return edges;
    }
    if (is_cross(space)) {
        // vertices are ordered (+e0, -e0, +e1, -e1, ...); every non-antipodal
        // pair on distinct axes is an edge
        for (int i = 0; i < 2 * n; ++i)
            for (int j = i + 1; j < 2 * n; ++j)
                if (i / 2 != j / 2) edges.emplace_back(i, j);
        return edges;
    }
    // cube: vertices differing in exactly one coordinate
    const std::size_t count = std::size_t(1) << n;
    for (std::size_t a = 0; a < count; ++a)
        for (int bit = 0; bit < n; ++bit) {
            const std::size_t b = a ^ (std::size_t(1) << bit);
            if (a < b) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    return edges;
}

std::vector<std::vector<double>> cut_vertices(const SpaceDesc& space,
                                              const std::vector<double>& normal,
                                              double threshold) {
    const auto verts = ball_vertices(space);
    const auto edges = ball_edges(space);

    std::vector<double> slack(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) slack[i] = dot(normal, verts[i]) - threshold;

    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (slack[i] >= 0.0) out.push_back(verts[i]);

    for (const auto& [a, b] : edges) {
        const double sa = slack[a], sb = slack[b];
        if ((sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0)) {
            const double t = sa / (sa - sb);  // point = va + t (vb - va)
            std::vector<double> p(verts[a].size());
            for (std::size_t k = 0; k < p.size(); ++k)
                p[k] = verts[a][k] + t * (verts[b][k] - verts[a][k]);
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace nelab::polytope
