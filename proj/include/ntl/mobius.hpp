#pragma once
// Numerics on PSL(2,C): normalized 2x2 complex matrices modulo sign, the
// KAK decomposition g = u D(a) v, the sphere action in homogeneous
// coordinates, cross-ratios, the moment-map height, and the standard finite
// subgroups with their classification.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ntl/errors.hpp"
#include "ntl/tolerances.hpp"

namespace ntl {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// points of CP^1 in homogeneous coordinates

// [z : w], not both zero; infinity is [1 : 0].
class SpherePoint {
public:
    SpherePoint() : z_(0.0, 0.0), w_(1.0, 0.0) {}
    SpherePoint(Complex z, Complex w) : z_(z), w_(w) { canonicalize(); }
    explicit SpherePoint(Complex value) : z_(value), w_(1.0, 0.0) { canonicalize(); }

    static SpherePoint infinity() { return SpherePoint(Complex(1, 0), Complex(0, 0)); }

    Complex z() const { return z_; }
    Complex w() const { return w_; }
    bool is_infinity() const { return std::abs(w_) == 0.0; }
    Complex value() const { return z_ / w_; }  // finite points only

    bool finite_entries() const {
        return std::isfinite(z_.real()) && std::isfinite(z_.imag()) &&
               std::isfinite(w_.real()) && std::isfinite(w_.imag());
    }

private:
    // scale so the larger-modulus component is 1 (its phase removed); makes
    // projectively equal pairs compare bit-identically
    void canonicalize() {
        double az = std::abs(z_), aw = std::abs(w_);
        if (az == 0.0 && aw == 0.0) throw NtlError("[0:0] is not a point of the sphere");
        if (aw >= az) {
            z_ /= w_; w_ = Complex(1, 0);
        } else {
            w_ /= z_; z_ = Complex(1, 0);
        }
    }

    Complex z_, w_;
};

// chordal distance, normalized to [0, 1]; 1 between antipodes
inline double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    double num = std::abs(p.z() * q.w() - q.z() * p.w());
    double den = std::sqrt((std::norm(p.z()) + std::norm(p.w())) *
                           (std::norm(q.z()) + std::norm(q.w())));
    return num / den;
}

// height mu([z:w]) = (|z|^2 - |w|^2)/(|z|^2 + |w|^2) in [-1, 1];
// invariant under z -> e^{i t} z by construction.
inline double moment_height(const SpherePoint& p) {
    double a = std::norm(p.z()), b = std::norm(p.w());
    return (a - b) / (a + b);
}

// ---------------------------------------------------------------------------
// Mobius transforms

struct Mat2 {
    Complex a, b, c, d;

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Complex det() const { return a * d - b * c; }
    Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    Mat2 scaled(Complex s) const { return {a * s, b * s, c * s, d * s}; }
};

inline double max_entry_distance(const Mat2& x, const Mat2& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b),
                     std::abs(x.c - y.c), std::abs(x.d - y.d)});
}

class MobiusTransform {
public:
    MobiusTransform() : m_{1, 0, 0, 1} {}
    explicit MobiusTransform(const Mat2& m) : m_(normalize_det(m)) {}
    MobiusTransform(Complex a, Complex b, Complex c, Complex d)
        : MobiusTransform(Mat2{a, b, c, d}) {}

    static MobiusTransform identity() { return MobiusTransform(); }
    static MobiusTransform diagonal(Complex top, Complex bottom) {
        return MobiusTransform(Mat2{top, 0, 0, bottom});
    }

    const Mat2& matrix() const { return m_; }

    MobiusTransform operator*(const MobiusTransform& o) const {
        return MobiusTransform(m_ * o.m_);
    }
    MobiusTransform inverse() const {
        return MobiusTransform(Mat2{m_.d, -m_.b, -m_.c, m_.a});
    }

    SpherePoint operator()(const SpherePoint& p) const {
        return SpherePoint(m_.a * p.z() + m_.b * p.w(), m_.c * p.z() + m_.d * p.w());
    }

    // distance to SU(2): max entry of g g* - I
    double su2_defect() const {
        Mat2 gg = m_ * m_.adjoint();
        return max_entry_distance(gg, Mat2{1, 0, 0, 1});
    }

private:
    static Mat2 normalize_det(const Mat2& m) {
        Complex det = m.det();
        if (std::abs(det) <= tol().singular_det)
            throw SingularMatrix("matrix determinant too close to zero");
        return m.scaled(1.0 / std::sqrt(det));
    }

    Mat2 m_;
};

inline MobiusTransform normalize(const Mat2& m) { return MobiusTransform(m); }

// PSL distance: entrywise distance minimized over the sign ambiguity, after
// both sides are rescaled to determinant one.
inline double psl_distance(const MobiusTransform& g, const MobiusTransform& h) {
    const Mat2& x = g.matrix();
    const Mat2& y = h.matrix();
    return std::min(max_entry_distance(x, y), max_entry_distance(x, y.scaled(-1.0)));
}

inline bool psl_equal(const MobiusTransform& g, const MobiusTransform& h, double eps) {
    return psl_distance(g, h) <= eps;
}

inline SpherePoint apply(const MobiusTransform& g, const SpherePoint& p) { return g(p); }

// ---------------------------------------------------------------------------
// KAK decomposition

// g == u * diag(a, 1) * v in PSL(2,C), u and v in SU(2), a in (0, 1];
// a = 1 exactly when g is (numerically) in SU(2).
struct KAKDecomposition {
    MobiusTransform u;
    double a = 1.0;
    MobiusTransform v;

    MobiusTransform reconstruct() const {
        return u * MobiusTransform::diagonal(Complex(a, 0), Complex(1, 0)) * v;
    }
};

inline double kak_residual(const KAKDecomposition& k, const MobiusTransform& g) {
    return psl_distance(k.reconstruct(), g);
}

// Eigendecomposition of g g* (Hermitian, det 1, eigenvalues l1 <= 1 <= l2):
// h = (g g*)^{1/2} = U diag(r1, r2) U*, g = h (h^{-1} g); after the PSL
// rescaling r2 -> 1 the diagonal entry is a = l1.
inline KAKDecomposition kak_decompose(const MobiusTransform& g) {
    if (g.su2_defect() <= tol().su2_membership)
        return KAKDecomposition{g, 1.0, MobiusTransform::identity()};

    Mat2 H = g.matrix() * g.matrix().adjoint();
    double p = H.a.real(), s = H.d.real();
    Complex q = H.b;  // H.c == conj(q)
    double tr = p + s;
    double disc = std::sqrt(std::max(0.0, (p - s) * (p - s) + 4.0 * std::norm(q)));
    double l2 = (tr + disc) / 2.0;
    double l1 = 1.0 / l2;  // det(g g*) = 1

    // unit eigenvector for l2; prefer the better-conditioned expression
    Complex e2z, e2w;
    if (std::abs(l2 - p) >= std::abs(l2 - s)) {
        e2z = q; e2w = Complex(l2 - p, 0);
    } else {
        e2z = Complex(l2 - s, 0); e2w = std::conj(q);
    }
    double nrm = std::sqrt(std::norm(e2z) + std::norm(e2w));
    e2z /= nrm; e2w /= nrm;
    // orthogonal partner, chosen so U = [e1 e2] has determinant 1
    Complex e1z = std::conj(e2w), e1w = -std::conj(e2z);

    Mat2 U{e1z, e2z, e1w, e2w};  // columns e1 (for l1), e2 (for l2)
    double r1 = std::sqrt(l1), r2 = std::sqrt(l2);
    // v = D_r^{-1} U* g
    Mat2 v = Mat2{Complex(1.0 / r1, 0), 0, 0, Complex(1.0 / r2, 0)} * U.adjoint() * g.matrix();

    KAKDecomposition out;
    out.u = MobiusTransform(U);
    out.a = l1;
    out.v = MobiusTransform(v);
    return out;
}

// ---------------------------------------------------------------------------
// cross-ratio

// Value at p4 of the Mobius map sending (p1, p2, p3) to (0, 1, infinity),
// computed homogeneously so any argument may be infinity.
inline SpherePoint cross_ratio(const SpherePoint& p1, const SpherePoint& p2,
                               const SpherePoint& p3, const SpherePoint& p4) {
    const double eps = tol().cross_ratio_triple;
    if (chordal_distance(p1, p2) <= eps || chordal_distance(p1, p3) <= eps ||
        chordal_distance(p2, p3) <= eps)
        throw DegenerateTriple("cross-ratio needs three pairwise distinct reference points");
    auto cross = [](const SpherePoint& x, const SpherePoint& y) {
        return x.z() * y.w() - y.z() * x.w();
    };
    Complex num = cross(p4, p1) * cross(p2, p3);
    Complex den = cross(p4, p3) * cross(p2, p1);
    return SpherePoint(num, den);
}

// The unique Mobius transform with p1 -> 0, p2 -> 1, p3 -> infinity.
inline MobiusTransform three_point_transform(const SpherePoint& p1, const SpherePoint& p2,
                                             const SpherePoint& p3) {
    const double eps = tol().cross_ratio_triple;
    if (chordal_distance(p1, p2) <= eps || chordal_distance(p1, p3) <= eps ||
        chordal_distance(p2, p3) <= eps)
        throw DegenerateTriple("three-point interpolation needs distinct points");
    Complex A = p2.z() * p3.w() - p3.z() * p2.w();
    Complex B = p2.z() * p1.w() - p1.z() * p2.w();
    Mat2 m{A * p1.w(), -A * p1.z(), B * p3.w(), -B * p3.z()};
    return MobiusTransform(m);
}

// ---------------------------------------------------------------------------
// finite subgroups

struct SubgroupKind {
    enum class Family { Cyclic, Dihedral, Tetrahedral, Octahedral, Icosahedral };
    Family family;
    int parameter = 0;  // l for cyclic/dihedral

    bool operator==(const SubgroupKind& o) const {
        return family == o.family && parameter == o.parameter;
    }
    std::string name() const {
        switch (family) {
            case Family::Cyclic: return "Cyclic(" + std::to_string(parameter) + ")";
            case Family::Dihedral: return "Dihedral(" + std::to_string(parameter) + ")";
            case Family::Tetrahedral: return "Tetrahedral";
            case Family::Octahedral: return "Octahedral";
            case Family::Icosahedral: return "Icosahedral";
        }
        return "?";
    }
};

struct FiniteSubgroupSample {
    std::vector<MobiusTransform> elements;  // deterministic saturation order
    std::size_t order() const { return elements.size(); }
};

namespace detail {

// SU(2) matrix of the rotation by angle about the unit axis (x, y, z)
inline MobiusTransform rotation(double angle, double x, double y, double z) {
    double n = std::sqrt(x * x + y * y + z * z);
    x /= n; y /= n; z /= n;
    double ch = std::cos(angle / 2), sh = std::sin(angle / 2);
    return MobiusTransform(Mat2{Complex(ch, -sh * z), Complex(-sh * y, -sh * x),
                                Complex(sh * y, -sh * x), Complex(ch, sh * z)});
}

inline std::optional<std::size_t> find_psl(const std::vector<MobiusTransform>& xs,
                                           const MobiusTransform& g, double eps) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (psl_equal(xs[i], g, eps)) return i;
    return std::nullopt;
}

}  // namespace detail

// Worklist closure of the generators under products; deterministic order.
inline FiniteSubgroupSample saturate(const std::vector<MobiusTransform>& generators,
                                     std::size_t max_order = 200) {
    const double eps = tol().psl_equality;
    std::vector<MobiusTransform> elems{MobiusTransform::identity()};
    std::size_t scanned = 0;
    while (scanned < elems.size()) {
        MobiusTransform base = elems[scanned++];
        for (const MobiusTransform& g : generators) {
            MobiusTransform prod = base * g;
            if (!detail::find_psl(elems, prod, eps)) {
                elems.push_back(prod);
                if (elems.size() > max_order)
                    throw SaturationDiverged("group closure exceeded " + std::to_string(max_order) +
                                             " elements");
            }
        }
    }
    return FiniteSubgroupSample{std::move(elems)};
}

inline FiniteSubgroupSample standard_finite_subgroup(const SubgroupKind& kind) {
    using F = SubgroupKind::Family;
    const double pi = std::numbers::pi;
    std::vector<MobiusTransform> gens;
    switch (kind.family) {
        case F::Cyclic: {
            if (kind.parameter < 1) throw NtlError("cyclic group needs l >= 1");
            double t = pi / kind.parameter;  // z -> e^{2 pi i / l} z in PSL
            gens.push_back(MobiusTransform::diagonal(std::polar(1.0, t), std::polar(1.0, -t)));
            break;
        }
        case F::Dihedral: {
            if (kind.parameter < 1) throw NtlError("dihedral group needs l >= 1");
            double t = pi / kind.parameter;
            gens.push_back(MobiusTransform::diagonal(std::polar(1.0, t), std::polar(1.0, -t)));
            gens.push_back(MobiusTransform(Mat2{0, Complex(0, 1), Complex(0, 1), 0}));  // z -> 1/z
            break;
        }
        case F::Tetrahedral:
            gens.push_back(detail::rotation(pi, 0, 0, 1));
            gens.push_back(detail::rotation(2 * pi / 3, 1, 1, 1));
            break;
        case F::Octahedral:
            gens.push_back(detail::rotation(pi / 2, 0, 0, 1));
            gens.push_back(detail::rotation(2 * pi / 3, 1, 1, 1));
            break;
        case F::Icosahedral: {
            const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
            gens.push_back(detail::rotation(pi, 0, 0, 1));             // edge-midpoint axis
            gens.push_back(detail::rotation(2 * pi / 5, 0, 1, phi));   // vertex axis
            break;
        }
    }
    FiniteSubgroupSample s = saturate(gens);
    std::size_t expect = 0;
    switch (kind.family) {
        case F::Cyclic: expect = kind.parameter; break;
        case F::Dihedral: expect = 2 * kind.parameter; break;
        case F::Tetrahedral: expect = 12; break;
        case F::Octahedral: expect = 24; break;
        case F::Icosahedral: expect = 60; break;
    }
    if (s.order() != expect)
        throw SaturationDiverged("generators closed to order " + std::to_string(s.order()) +
                                 ", expected " + std::to_string(expect));
    return s;
}

inline int element_order(const MobiusTransform& g, std::size_t cap) {
    const double eps = tol().psl_equality;
    MobiusTransform acc = g;
    for (std::size_t k = 1; k <= cap; ++k) {
        if (psl_equal(acc, MobiusTransform::identity(), eps)) return static_cast<int>(k);
        acc = acc * g;
    }
    throw Unclassifiable("element order exceeds group order cap");
}

inline std::map<int, int> element_order_histogram(const FiniteSubgroupSample& s) {
    std::map<int, int> hist;
    for (const MobiusTransform& g : s.elements) ++hist[element_order(g, s.order())];
    return hist;
}

inline bool group_closed(const FiniteSubgroupSample& s, double eps) {
    if (!detail::find_psl(s.elements, MobiusTransform::identity(), eps)) return false;
    for (const MobiusTransform& g : s.elements) {
        if (!detail::find_psl(s.elements, g.inverse(), eps)) return false;
        for (const MobiusTransform& h : s.elements)
            if (!detail::find_psl(s.elements, g * h, eps)) return false;
    }
    return true;
}

// Classification by order statistics. Dihedral(1) is reported as Cyclic(2);
// the Klein four group is Dihedral(2).
inline SubgroupKind classify_finite_subgroup(const FiniteSubgroupSample& s) {
    using F = SubgroupKind::Family;
    const double eps = tol().psl_equality;
    const int n = static_cast<int>(s.order());
    if (n == 0) throw Unclassifiable("empty sample");

    std::vector<int> orders;
    orders.reserve(n);
    int max_order = 1;
    for (const MobiusTransform& g : s.elements) {
        orders.push_back(element_order(g, n));
        max_order = std::max(max_order, orders.back());
    }
    if (max_order == n) return SubgroupKind{F::Cyclic, n};

    if (n % 2 == 0 && max_order == n / 2) {
        // find a rotation r of order n/2 and an involution s with s r s = r^{-1}
        for (int i = 0; i < n; ++i) {
            if (orders[i] != n / 2) continue;
            const MobiusTransform& r = s.elements[i];
            for (int j = 0; j < n; ++j) {
                if (orders[j] != 2) continue;
                const MobiusTransform& t = s.elements[j];
                if (psl_equal(t * r * t.inverse(), r.inverse(), eps))
                    return SubgroupKind{F::Dihedral, n / 2};
            }
        }
    }

    std::map<int, int> hist;
    for (int o : orders) ++hist[o];
    const std::map<int, int> tetra{{1, 1}, {2, 3}, {3, 8}};
    const std::map<int, int> octa{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
    const std::map<int, int> icosa{{1, 1}, {2, 15}, {3, 20}, {5, 24}};
    if (n == 12 && hist == tetra) return SubgroupKind{F::Tetrahedral, 0};
    if (n == 24 && hist == octa) return SubgroupKind{F::Octahedral, 0};
    if (n == 60 && hist == icosa) return SubgroupKind{F::Icosahedral, 0};
    throw Unclassifiable("order statistics match no finite subgroup of PSL(2,C)");
}

}  // namespace ntl
