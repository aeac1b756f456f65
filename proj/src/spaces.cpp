#include "nelab/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>

#include "nelab/rng.hpp"

namespace nelab {

// ---------------------------------------------------------------------------
// Scalar formatting / parsing
// ---------------------------------------------------------------------------

std::string format_scalar(Scalar z) {
    auto fmt = [](double x) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
    };
    if (z.imag() == 0.0) return fmt(z.real());
    std::string im = fmt(std::abs(z.imag())) + "i";
    if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
    return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + im;
}

Scalar parse_scalar(const std::string& text) {
    const std::string s = text;
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    auto parse_real = [](const std::string& t) {
        std::size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad scalar literal '" + t + "'");
        return v;
    };
    if (s.back() != 'i') return Scalar(parse_real(s), 0.0);

    std::string body = s.substr(0, s.size() - 1);
    // Find the sign splitting real and imaginary parts, skipping a leading
    // sign and exponent signs (e.g. "1e-3+2i").
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (body.empty() || body == "+") return Scalar(0.0, 1.0);
        if (body == "-") return Scalar(0.0, -1.0);
        return Scalar(0.0, parse_real(body));
    }
    const std::string re = body.substr(0, split);
    std::string im = body.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return Scalar(parse_real(re), parse_real(im));
}

// ---------------------------------------------------------------------------
// SpaceDesc tree
// ---------------------------------------------------------------------------

struct SpaceDesc::Node {
    bool leaf = true;
    LeafP p = LeafP::two;
    int n = 0;  // leaf dimension
    std::shared_ptr<const Node> lhs, rhs;
    int total = 0;
};

SpaceDesc::SpaceDesc(std::shared_ptr<const Node> node, Field field)
    : node_(std::move(node)), field_(field) {}

SpaceDesc SpaceDesc::lp(LeafP p, int dim, Field field) {
    if (dim < 1) throw std::invalid_argument("space dimension must be >= 1");
    auto n = std::make_shared<Node>();
    n->leaf = true;
    n->p = p;
    n->n = dim;
    n->total = dim;
    return SpaceDesc(std::move(n), field);
}

SpaceDesc SpaceDesc::sum2(const SpaceDesc& left, const SpaceDesc& right) {
    if (left.field_ != right.field_)
        throw std::invalid_argument("sum2 blocks must share the scalar field");
    auto n = std::make_shared<Node>();
    n->leaf = false;
    n->lhs = left.node_;
    n->rhs = right.node_;
    n->total = left.dim() + right.dim();
    return SpaceDesc(std::move(n), left.field_);
}

bool SpaceDesc::is_leaf() const { return node_->leaf; }

LeafP SpaceDesc::leaf_p() const {
    if (!node_->leaf) throw std::logic_error("leaf_p() on a sum2 node");
    return node_->p;
}

SpaceDesc SpaceDesc::left() const {
    if (node_->leaf) throw std::logic_error("left() on a leaf node");
    return SpaceDesc(node_->lhs, field_);
}

SpaceDesc SpaceDesc::right() const {
    if (node_->leaf) throw std::logic_error("right() on a leaf node");
    return SpaceDesc(node_->rhs, field_);
}

int SpaceDesc::dim() const { return node_->total; }

SpaceDesc SpaceDesc::dual() const {
    if (node_->leaf) {
        const LeafP p = node_->p == LeafP::one   ? LeafP::inf
                        : node_->p == LeafP::inf ? LeafP::one
                                                 : LeafP::two;
        return lp(p, node_->n, field_);
    }
    return sum2(left().dual(), right().dual());
}

bool SpaceDesc::is_hilbertian() const {
    if (node_->leaf) return node_->p == LeafP::two || node_->n == 1;
    return left().is_hilbertian() && right().is_hilbertian();
}

bool SpaceDesc::is_polytope_leaf() const {
    return node_->leaf && (node_->p != LeafP::two || node_->n == 1);
}

std::string SpaceDesc::dsl() const {
    if (node_->leaf) {
        const char* tag = node_->p == LeafP::one ? "l1" : node_->p == LeafP::two ? "l2" : "linf";
        return std::string(tag) + "(" + std::to_string(node_->n) + ")";
    }
    return "sum2(" + left().dsl() + "," + right().dsl() + ")";
}

bool SpaceDesc::operator==(const SpaceDesc& other) const {
    if (field_ != other.field_) return false;
    return dsl() == other.dsl();
}

namespace {

struct DslParser {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("space dsl error at position " + std::to_string(pos) + ": " +
                                    msg + " (input '" + std::string(text) + "')");
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos) fail("expected a name");
        return std::string(text.substr(start, pos - start));
    }

    int integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected a dimension");
        return std::stoi(std::string(text.substr(start, pos - start)));
    }

    SpaceDesc parse_space(Field field) {
        const std::string name = ident();
        if (name == "sum2") {
            if (!consume('(')) fail("expected '(' after sum2");
            SpaceDesc l = parse_space(field);
            if (!consume(',')) fail("expected ',' between sum2 blocks");
            SpaceDesc r = parse_space(field);
            if (!consume(')')) fail("expected ')' closing sum2");
            return SpaceDesc::sum2(l, r);
        }
        LeafP p;
        if (name == "l1") p = LeafP::one;
        else if (name == "l2") p = LeafP::two;
        else if (name == "linf") p = LeafP::inf;
        else if (name.size() > 1 && name[0] == 'l')
            fail("unsupported exponent '" + name + "' (supported: l1, l2, linf)");
        else
            fail("unknown space constructor '" + name + "'");
        if (!consume('(')) fail("expected '(' after " + name);
        int n = integer();
        if (!consume(')')) fail("expected ')' after dimension");
        if (n < 1) fail("dimension must be >= 1");
        return SpaceDesc::lp(p, n, field);
    }
};

}  // namespace

SpaceDesc SpaceDesc::parse(std::string_view text, Field field) {
    DslParser parser{text};
    SpaceDesc s = parser.parse_space(field);
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return s;
}

// ---------------------------------------------------------------------------
// Vectors and functionals
// ---------------------------------------------------------------------------

Vector Vector::basis(int dim, int index) {
    Vector v = zeros(dim);
    v.coords.at(index) = Scalar(1.0);
    return v;
}

Vector Vector::from_real(const std::vector<double>& c) {
    Vector v;
    v.coords.reserve(c.size());
    for (double x : c) v.coords.emplace_back(x, 0.0);
    return v;
}

Functional Functional::basis(int dim, int index) {
    Functional f = zeros(dim);
    f.coords.at(index) = Scalar(1.0);
    return f;
}

Functional Functional::from_real(const std::vector<double>& c) {
    Functional f;
    f.coords.reserve(c.size());
    for (double x : c) f.coords.emplace_back(x, 0.0);
    return f;
}

namespace {

void require_dim(const SpaceDesc& space, int got, const char* what) {
    if (space.dim() != got)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (space dim " +
                                    std::to_string(space.dim()) + ", got " + std::to_string(got) +
                                    ")");
}

double block_norm(const SpaceDesc& space, std::span<const Scalar> c) {
    if (space.is_leaf()) {
        switch (space.leaf_p()) {
            case LeafP::one: {
                double s = 0.0;
                for (const Scalar& z : c) s += std::abs(z);
                return s;
            }
            case LeafP::two: {
                double s = 0.0;
                for (const Scalar& z : c) s += std::norm(z);
                return std::sqrt(s);
            }
            case LeafP::inf: {
                double m = 0.0;
                for (const Scalar& z : c) m = std::max(m, std::abs(z));
                return m;
            }
        }
        return 0.0;
    }
    const int nl = space.left().dim();
    const double a = block_norm(space.left(), c.subspan(0, nl));
    const double b = block_norm(space.right(), c.subspan(nl));
    return std::hypot(a, b);
}

// Builds a support functional for the block into out[offset..]; returns the
// block norm. Zero blocks get a zero functional.
double block_support(const SpaceDesc& space, std::span<const Scalar> c, std::vector<Scalar>& out,
                     int offset) {
    if (space.is_leaf()) {
        const int n = space.dim();
        switch (space.leaf_p()) {
            case LeafP::one: {
                double s = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double m = std::abs(c[i]);
                    out[offset + i] = m > 0.0 ? std::conj(c[i]) / m : Scalar(0.0);
                    s += m;
                }
                return s;
            }
            case LeafP::two: {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += std::norm(c[i]);
                s = std::sqrt(s);
                for (int i = 0; i < n; ++i) out[offset + i] = s > 0.0 ? std::conj(c[i]) / s : Scalar(0.0);
                return s;
            }
            case LeafP::inf: {
                double peak = 0.0;
                for (int i = 0; i < n; ++i) peak = std::max(peak, std::abs(c[i]));
                int k = -1;
                for (int i = 0; i < n; ++i)
                    if (std::abs(c[i]) == peak) {
                        k = i;
                        break;
                    }
                for (int i = 0; i < n; ++i) out[offset + i] = Scalar(0.0);
                if (peak > 0.0) out[offset + k] = std::conj(c[k]) / peak;
                return peak;
            }
        }
        return 0.0;
    }
    const int nl = space.left().dim();
    const double a = block_support(space.left(), c.subspan(0, nl), out, offset);
    const double b = block_support(space.right(), c.subspan(nl), out, offset + nl);
    const double total = std::hypot(a, b);
    if (total > 0.0) {
        const double wl = a / total, wr = b / total;
        for (int i = 0; i < nl; ++i) out[offset + i] *= wl;
        for (int i = nl; i < space.dim(); ++i) out[offset + i] *= wr;
    }
    return total;
}

// Offset of the first leaf with dim >= 2, together with that leaf; -1 if none.
int find_wide_leaf(const SpaceDesc& space, int offset, SpaceDesc* leaf) {
    if (space.is_leaf()) {
        if (space.dim() >= 2) {
            *leaf = space;
            return offset;
        }
        return -1;
    }
    int r = find_wide_leaf(space.left(), offset, leaf);
    if (r >= 0) return r;
    return find_wide_leaf(space.right(), offset + space.left().dim(), leaf);
}

}  // namespace

double norm(const SpaceDesc& space, const Vector& v) {
    require_dim(space, v.dim(), "norm");
    return block_norm(space, std::span<const Scalar>(v.coords));
}

double dual_norm(const SpaceDesc& space, const Functional& f) {
    require_dim(space, f.dim(), "dual_norm");
    Vector as_vec(f.coords);
    return block_norm(space.dual(), std::span<const Scalar>(as_vec.coords));
}

Scalar pairing(const Functional& f, const Vector& v) {
    if (f.dim() != v.dim())
        throw std::invalid_argument("pairing: dimension mismatch (" + std::to_string(f.dim()) +
                                    " vs " + std::to_string(v.dim()) + ")");
    Scalar s(0.0);
    for (int i = 0; i < f.dim(); ++i) s += f.coords[i] * v.coords[i];
    return s;
}

Functional support_functional(const SpaceDesc& space, const Vector& v) {
    require_dim(space, v.dim(), "support_functional");
    if (norm(space, v) == 0.0)
        throw std::invalid_argument("support_functional: zero vector has no support functional");
    std::vector<Scalar> out(v.dim(), Scalar(0.0));
    block_support(space, std::span<const Scalar>(v.coords), out, 0);
    return Functional(std::move(out));
}

WitnessPair witness_pair(const SpaceDesc& space, Scalar alpha) {
    if (space.dim() < 2)
        throw std::invalid_argument("witness_pair: space dimension must be >= 2");
    if (std::abs(alpha) > 1.0 + 1e-12)
        throw std::invalid_argument("witness_pair: |alpha| must be <= 1");
    if (space.field() == Field::real && alpha.imag() != 0.0)
        throw std::invalid_argument("witness_pair: complex alpha on a real space");

    const int dim = space.dim();
    SpaceDesc leaf = space;
    const int off = find_wide_leaf(space, 0, &leaf);

    if (off >= 0) {
        const int i = off, j = off + 1;
        Vector x = Vector::zeros(dim);
        Functional f = Functional::zeros(dim);
        switch (leaf.leaf_p()) {
            case LeafP::inf: {
                // x touches two vertices of the cube; f splits its mass so
                // that a sign vertex still attains pairing 1.
                x.coords[i] = Scalar(1.0);
                x.coords[j] = Scalar(1.0);
                if (alpha == Scalar(1.0)) {
                    f.coords[i] = Scalar(1.0);
                } else {
                    const double t = (1.0 - std::norm(alpha)) / (2.0 * (1.0 - alpha.real()));
                    f.coords[i] = Scalar(t);
                    f.coords[j] = alpha - t;
                }
                break;
            }
            case LeafP::one: {
                x.coords[i] = Scalar(1.0);
                f.coords[i] = alpha;
                f.coords[j] = Scalar(1.0);
                break;
            }
            case LeafP::two: {
                x.coords[i] = Scalar(1.0);
                f.coords[i] = alpha;
                f.coords[j] = Scalar(std::sqrt(std::max(0.0, 1.0 - std::norm(alpha))));
                break;
            }
        }
        return {std::move(f), std::move(x)};
    }

    // No wide leaf: the root is an l2-sum of one-dimensional pieces. Split the
    // pairing across the two blocks; the coupling has a closed form.
    const int nl = space.left().dim();
    Vector u = Vector::basis(dim, 0);
    Vector w = Vector::basis(dim, nl);
    Functional us = Functional::basis(dim, 0);
    Functional ws = Functional::basis(dim, nl);

    Vector x = Vector::zeros(dim);
    Functional f = Functional::zeros(dim);
    if (alpha == Scalar(1.0)) {
        x.coords[0] = Scalar(1.0);
        f.coords[0] = Scalar(1.0);
        return {std::move(f), std::move(x)};
    }
    const double r = std::norm(Scalar(1.0) - alpha) / (2.0 * (1.0 - alpha.real()));
    const Scalar phi = (alpha - (1.0 - r)) / r;
    const double sq_r = std::sqrt(r), sq_c = std::sqrt(1.0 - r);
    for (int k = 0; k < dim; ++k) {
        x.coords[k] = sq_r * u.coords[k] + sq_c * w.coords[k];
        f.coords[k] = phi * sq_r * us.coords[k] + sq_c * ws.coords[k];
    }
    return {std::move(f), std::move(x)};
}

std::vector<Vector> extreme_points(const SpaceDesc& space, int dim_cap) {
    if (space.field() != Field::real)
        throw std::invalid_argument("extreme_points: real field required");
    if (!space.is_leaf())
        throw std::invalid_argument(
            "extreme_points: sum2 balls have a continuum of extreme points; the norm engine "
            "sweeps the (cos t * u, sin t * w) family instead");
    if (space.leaf_p() == LeafP::two && space.dim() > 1)
        throw std::invalid_argument("extreme_points: l2 balls are not polytopes");
    const int n = space.dim();
    if (n > dim_cap)
        throw std::invalid_argument("extreme_points: dimension exceeds cap " +
                                    std::to_string(dim_cap));

    std::vector<Vector> pts;
    if (space.leaf_p() == LeafP::one && n > 1) {
        pts.reserve(2 * n);
        for (int i = 0; i < n; ++i) {
            pts.push_back(Vector::basis(n, i));
            Vector m = Vector::zeros(n);
            m.coords[i] = Scalar(-1.0);
            pts.push_back(std::move(m));
        }
        return pts;
    }
    // linf(n) and every 1-dim leaf: sign vectors.
    pts.reserve(std::size_t(1) << n);
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Vector v = Vector::zeros(n);
        for (int i = 0; i < n; ++i) v.coords[i] = Scalar((mask >> i) & 1 ? -1.0 : 1.0);
        pts.push_back(std::move(v));
    }
    return pts;
}

std::vector<Functional> facets(const SpaceDesc& space, int dim_cap) {
    if (space.field() != Field::real)
        throw std::invalid_argument("facets: real field required");
    if (!space.is_leaf() || (space.leaf_p() == LeafP::two && space.dim() > 1))
        throw std::invalid_argument("facets: the unit ball is not a polytope");
    const int n = space.dim();
    if (n > dim_cap)
        throw std::invalid_argument("facets: dimension exceeds cap " + std::to_string(dim_cap));

    std::vector<Functional> fs;
    if (space.leaf_p() == LeafP::one && n > 1) {
        fs.reserve(std::size_t(1) << n);
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            Functional f = Functional::zeros(n);
            for (int i = 0; i < n; ++i) f.coords[i] = Scalar((mask >> i) & 1 ? -1.0 : 1.0);
            fs.push_back(std::move(f));
        }
        return fs;
    }
    fs.reserve(2 * n);
    for (int i = 0; i < n; ++i) {
        fs.push_back(Functional::basis(n, i));
        Functional m = Functional::zeros(n);
        m.coords[i] = Scalar(-1.0);
        fs.push_back(std::move(m));
    }
    return fs;
}

Vector sample_sphere(const SpaceDesc& space, std::uint64_t seed) {
    SampleRng rng(seed);
    Vector v = Vector::zeros(space.dim());
    double mag = 0.0;
    while (mag < 1e-8) {
        for (auto& c : v.coords) c = rng.normal_scalar(space.field());
        mag = norm(space, v);
    }
    for (auto& c : v.coords) c /= mag;
    return v;
}

Functional sample_dual_sphere(const SpaceDesc& space, std::uint64_t seed) {
    SampleRng rng(seed ^ 0x5851f42d4c957f2dULL);
    Functional f = Functional::zeros(space.dim());
    double mag = 0.0;
    while (mag < 1e-8) {
        for (auto& c : f.coords) c = rng.normal_scalar(space.field());
        mag = dual_norm(space, f);
    }
    for (auto& c : f.coords) c /= mag;
    return f;
}

SpaceDesc realify(const SpaceDesc& space) {
    if (space.field() != Field::complex)
        throw std::invalid_argument("realify: the space is already real");
    struct Impl {
        static SpaceDesc run(const SpaceDesc& s) {
            if (s.is_leaf()) {
                if (s.dim() == 1) return SpaceDesc::l2(2, Field::real);
                if (s.leaf_p() == LeafP::two) return SpaceDesc::l2(2 * s.dim(), Field::real);
                throw std::invalid_argument(
                    "realify: an l1/linf leaf of dim >= 2 realifies to an lp-sum of l2(2) "
                    "blocks, which this descriptor algebra cannot express");
            }
            return SpaceDesc::sum2(run(s.left()), run(s.right()));
        }
    };
    return Impl::run(space);
}

Vector realify_vector(const SpaceDesc& space, const Vector& v) {
    require_dim(space, v.dim(), "realify_vector");
    Vector out = Vector::zeros(2 * v.dim());
    for (int i = 0; i < v.dim(); ++i) {
        out.coords[2 * i] = Scalar(v.coords[i].real());
        out.coords[2 * i + 1] = Scalar(v.coords[i].imag());
    }
    return out;
}

Functional realify_functional(const SpaceDesc& space, const Functional& f) {
    require_dim(space, f.dim(), "realify_functional");
    Functional out = Functional::zeros(2 * f.dim());
    for (int i = 0; i < f.dim(); ++i) {
        out.coords[2 * i] = Scalar(f.coords[i].real());
        out.coords[2 * i + 1] = Scalar(-f.coords[i].imag());
    }
    return out;
}

std::vector<SpaceDesc> registry(Field field) {
    std::vector<SpaceDesc> r;
    r.push_back(SpaceDesc::l1(2, field));
    r.push_back(SpaceDesc::l1(3, field));
    r.push_back(SpaceDesc::l2(2, field));
    r.push_back(SpaceDesc::l2(3, field));
    r.push_back(SpaceDesc::l2(4, field));
    r.push_back(SpaceDesc::linf(2, field));
    r.push_back(SpaceDesc::linf(3, field));
    r.push_back(SpaceDesc::sum2(SpaceDesc::linf(2, field), SpaceDesc::linf(2, field)));
    r.push_back(SpaceDesc::sum2(SpaceDesc::l2(2, field), SpaceDesc::l2(2, field)));
    return r;
}

}  // namespace nelab
