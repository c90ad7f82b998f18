#pragma once
// Discretized maps from the round sphere to R^m on a latitude-longitude grid
// with Fubini-Study cell weights; Dirichlet energy with central differences;
// reparametrization by Mobius transforms through bilinear interpolation; disc
// image areas; the quadratic energy-decay experiment; energy and constant-
// image separation; standard S^1-invariant maps and their invariance defect.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ntl/errors.hpp"
#include "ntl/mobius.hpp"
#include "ntl/parallel.hpp"
#include "ntl/tolerances.hpp"

namespace ntl {

// Colatitude theta in [0, pi] measured from the pole at infinity [1:0];
// longitude phi in [0, 2pi). Chart: z = cot(theta/2) e^{i phi}, so |z| <= R
// is a disc around z = 0 (theta near pi) with FS area 4 pi R^2 / (1 + R^2).
class DiscretizedSphereMap {
public:
    DiscretizedSphereMap(int resolution, int dim)
        : n_(resolution), m_(dim), rows_(resolution / 2 + 1), cols_(resolution) {
        if (resolution < 16 || resolution % 2 != 0)
            throw NtlError("resolution must be an even number >= 16");
        if (dim < 1) throw NtlError("target dimension must be >= 1");
        values_.assign(static_cast<std::size_t>(rows_) * cols_ * dim, 0.0);
        const double d = step();
        weights_.resize(static_cast<std::size_t>(rows_) * cols_);
        for (int i = 0; i < rows_; ++i) {
            double lo = std::max(0.0, theta(i) - d / 2);
            double hi = std::min(std::numbers::pi, theta(i) + d / 2);
            double band = (std::cos(lo) - std::cos(hi)) * d;  // cell area
            for (int j = 0; j < cols_; ++j) weights_[static_cast<std::size_t>(i) * cols_ + j] = band;
        }
    }

    int resolution() const { return n_; }
    int dim() const { return m_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double step() const { return 2 * std::numbers::pi / n_; }
    double theta(int i) const { return i * step(); }
    double phi(int j) const { return j * step(); }

    double weight(int i, int j) const { return weights_[static_cast<std::size_t>(i) * cols_ + j]; }
    double total_weight() const {
        double s = 0;
        for (double w : weights_) s += w;
        return s;
    }

    double* value(int i, int j) { return &values_[(static_cast<std::size_t>(i) * cols_ + j) * m_]; }
    const double* value(int i, int j) const {
        return &values_[(static_cast<std::size_t>(i) * cols_ + j) * m_];
    }

    SpherePoint point(int i, int j) const {
        double th = theta(i), ph = phi(j);
        return SpherePoint(Complex(std::cos(th / 2), 0) * std::polar(1.0, ph),
                           Complex(std::sin(th / 2), 0));
    }

    // evaluation anywhere via bilinear interpolation in (theta, phi)
    std::vector<double> interpolate(double th, double ph) const {
        const double d = step();
        double fi = th / d;
        double fj = ph / d;
        int i0 = std::clamp(static_cast<int>(std::floor(fi)), 0, rows_ - 2);
        double ti = std::clamp(fi - i0, 0.0, 1.0);
        double fj0 = std::floor(fj);
        int j0 = static_cast<int>(fj0) % cols_;
        if (j0 < 0) j0 += cols_;
        double tj = fj - fj0;
        int j1 = (j0 + 1) % cols_;
        const double* a = value(i0, j0);
        const double* b = value(i0, j1);
        const double* c = value(i0 + 1, j0);
        const double* e = value(i0 + 1, j1);
        std::vector<double> out(m_);
        for (int k = 0; k < m_; ++k)
            out[k] = (1 - ti) * ((1 - tj) * a[k] + tj * b[k]) + ti * ((1 - tj) * c[k] + tj * e[k]);
        return out;
    }

private:
    int n_, m_, rows_, cols_;
    std::vector<double> values_;
    std::vector<double> weights_;
};

inline std::pair<double, double> sphere_angles(const SpherePoint& p) {
    double az = std::abs(p.z()), aw = std::abs(p.w());
    double th = 2 * std::atan2(aw, az);
    double ph = std::arg(p.z() * std::conj(p.w()));
    if (ph < 0) ph += 2 * std::numbers::pi;
    return {th, ph};
}

using PointFunction = std::function<std::vector<double>(const SpherePoint&)>;

inline DiscretizedSphereMap sample_map(const PointFunction& formula, int resolution) {
    std::vector<double> probe = formula(SpherePoint(Complex(1, 0)));
    DiscretizedSphereMap f(resolution, static_cast<int>(probe.size()));
    for (int i = 0; i < f.rows(); ++i) {
        for (int j = 0; j < f.cols(); ++j) {
            std::vector<double> val = formula(f.point(i, j));
            if (static_cast<int>(val.size()) != f.dim())
                throw NonFiniteValue("formula changed its target dimension");
            for (int k = 0; k < f.dim(); ++k) {
                if (!std::isfinite(val[k]))
                    throw NonFiniteValue("formula produced a non-finite value");
                f.value(i, j)[k] = val[k];
            }
        }
    }
    return f;
}

// the inclusion S^2 in R^3 with our colatitude convention
inline DiscretizedSphereMap sphere_inclusion(int resolution) {
    return sample_map(
        [](const SpherePoint& p) {
            auto [th, ph] = sphere_angles(p);
            return std::vector<double>{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                       std::cos(th)};
        },
        resolution);
}

inline DiscretizedSphereMap constant_sphere_map(int resolution, const std::vector<double>& value) {
    return sample_map([&](const SpherePoint&) { return value; }, resolution);
}

// ---------------------------------------------------------------------------
// regions

struct Region {
    enum class Kind { Whole, CoordDisc, PointDisc };
    Kind kind = Kind::Whole;
    double radius = 0;       // R for CoordDisc, rho for PointDisc
    Complex center;          // x0 for PointDisc
    bool complement = false;

    static Region whole() { return Region{}; }
    static Region coord_disc(double R) { return Region{Kind::CoordDisc, R, Complex(0, 0), false}; }
    static Region point_disc(Complex x0, double rho) {
        return Region{Kind::PointDisc, rho, x0, false};
    }
    Region complemented() const {
        Region r = *this;
        r.complement = !r.complement;
        return r;
    }

    bool contains(const SpherePoint& p) const {
        bool inside = true;
        switch (kind) {
            case Kind::Whole: inside = true; break;
            case Kind::CoordDisc:  // |z| <= R, infinity excluded
                inside = !p.is_infinity() && std::abs(p.value()) <= radius;
                break;
            case Kind::PointDisc:
                inside = !p.is_infinity() && std::abs(p.value() - center) <= radius;
                break;
        }
        return complement ? !inside : inside;
    }
};

// per-node energy density e(df) = |df|^2 in the round metric
inline std::vector<double> energy_density(const DiscretizedSphereMap& f) {
    const int rows = f.rows(), cols = f.cols(), m = f.dim();
    const double d = f.step();
    std::vector<double> dens(static_cast<std::size_t>(rows) * cols, 0.0);
    for (int i = 0; i < rows; ++i) {
        double sth = std::sin(f.theta(i));
        for (int j = 0; j < cols; ++j) {
            double acc = 0;
            for (int k = 0; k < m; ++k) {
                double dth;
                if (i == 0)
                    dth = (f.value(1, j)[k] - f.value(0, j)[k]) / d;
                else if (i == rows - 1)
                    dth = (f.value(rows - 1, j)[k] - f.value(rows - 2, j)[k]) / d;
                else
                    dth = (f.value(i + 1, j)[k] - f.value(i - 1, j)[k]) / (2 * d);
                acc += dth * dth;
                if (sth > 1e-12) {
                    double dph = (f.value(i, (j + 1) % cols)[k] - f.value(i, (j - 1 + cols) % cols)[k]) /
                                 (2 * d);
                    acc += (dph / sth) * (dph / sth);
                }
            }
            dens[static_cast<std::size_t>(i) * cols + j] = acc;
        }
    }
    return dens;
}

// E = 1/2 sum over cells of |df|^2 * weight, restricted to the region
inline double energy(const DiscretizedSphereMap& f, const Region& region = Region::whole()) {
    std::vector<double> dens = energy_density(f);
    double total = 0;
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j)
            if (region.contains(f.point(i, j)))
                total += 0.5 * dens[static_cast<std::size_t>(i) * f.cols() + j] * f.weight(i, j);
    return total;
}

// value at node p is f evaluated at g(p)
inline DiscretizedSphereMap reparametrize(const DiscretizedSphereMap& f, const MobiusTransform& g) {
    DiscretizedSphereMap out(f.resolution(), f.dim());
    for (int i = 0; i < out.rows(); ++i) {
        for (int j = 0; j < out.cols(); ++j) {
            auto [th, ph] = sphere_angles(apply(g, out.point(i, j)));
            std::vector<double> val = f.interpolate(th, ph);
            for (int k = 0; k < f.dim(); ++k) out.value(i, j)[k] = val[k];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// disc image areas

// FS area of g(B(R)) by integrating the pulled-back area form over the disc:
// 4 |g'(z)|^2 / (1 + |g z|^2)^2 with g'(z) = 1/(cz+d)^2 for det 1.
// For g = D(a) the closed form 4 pi (aR)^2 / (1 + (aR)^2) serves as oracle.
inline double area_image_disc(const MobiusTransform& g, double R, int quadrature = 512) {
    if (R <= 0) throw NtlError("disc radius must be positive");
    const Mat2& m = g.matrix();
    const int nr = quadrature, nt = quadrature;
    // radial substitution r = tan(psi/2) resolves the sphere uniformly; with
    // it r dr = tan(psi/2) (1 + tan^2(psi/2)) / 2 dpsi and the identity map's
    // integrand reduces to sin(psi)
    const double psi_max = 2 * std::atan(R);
    const double dpsi = psi_max / nr;
    const double dt = 2 * std::numbers::pi / nt;
    std::vector<double> partial(nr, 0.0);
    parallel_for(nr, [&](std::size_t ir) {
        double psi = (ir + 0.5) * dpsi;
        double r = std::tan(psi / 2);
        double jac = r * (1 + r * r) / 2;
        double acc = 0;
        for (int it = 0; it < nt; ++it) {
            Complex z = std::polar(r, (it + 0.5) * dt);
            // 4 |g'|^2 / (1+|g|^2)^2 == 4 / (|cz+d|^2 + |az+b|^2)^2 for det 1;
            // smooth even across poles of g
            double s = std::norm(m.c * z + m.d) + std::norm(m.a * z + m.b);
            acc += 4.0 / (s * s);
        }
        partial[ir] = acc * jac * dpsi * dt;
    });
    double total = 0;
    for (double p : partial) total += p;
    return total;
}

inline double disc_area_closed_form(double a, double R) {
    double x = a * R;
    return 4 * std::numbers::pi * x * x / (1 + x * x);
}

// ---------------------------------------------------------------------------
// the energy-decay experiment

struct PropernessExperimentConfig {
    double R = 1.0;                     // energy window |z| <= R
    std::vector<double> a_sequence;     // defaults to 2^-1 .. 2^-8
    MobiusTransform u, v;               // frames: g_n = u D(a_n) v
    double eps1 = 0.05, eps2 = 0.05;    // recorded neighborhood radii
    Complex x0 = Complex(1, 0);         // concentration point (on the equator)
    double rho = 0.3;                   // concentration disc radius
    double gamma = 0.5;                 // density lower bound on the disc
    int resolution = 256;

    static PropernessExperimentConfig defaults() {
        PropernessExperimentConfig c;
        for (int n = 1; n <= 8; ++n) c.a_sequence.push_back(std::pow(2.0, -n));
        return c;
    }
};

struct ExperimentReport {
    std::vector<double> a;
    std::vector<double> energy_window;   // E((h o g_n)|B(R))
    double delta2 = 0;                   // E(h)
    double local_energy = 0;             // E(h|B(x0; rho))
    long long n2 = 0;                    // ceil(delta2 / local_energy)
    double threshold = 0;                // delta2 / n2
    double min_density_in_disc = 0;
    double fitted_exponent = 0;
    double fitted_constant = 0;          // exp(intercept) of the log-log fit
    int monotone_from = -1;              // first index of the nonincreasing tail
    bool eventually_below_threshold = false;
    double frame_disc_max = 0;           // max |z| over v(B(R)); decay basin check
    bool pass = false;
    std::string detail;
};

// max |v(z)| over |z| = R; infinity when the pole of v lies inside
inline double image_disc_max(const MobiusTransform& v, double R, int samples = 720) {
    const Mat2& m = v.matrix();
    if (std::abs(m.c) > 1e-14 && std::abs(-m.d / m.c) <= R)
        return std::numeric_limits<double>::infinity();
    double best = 0;
    for (int k = 0; k < samples; ++k) {
        Complex z = std::polar(R, 2 * std::numbers::pi * k / samples);
        best = std::max(best, std::abs((m.a * z + m.b) / (m.c * z + m.d)));
    }
    return best;
}

inline ExperimentReport properness_experiment(const DiscretizedSphereMap& h,
                                              const PropernessExperimentConfig& cfg_in) {
    PropernessExperimentConfig cfg = cfg_in;
    if (cfg.R <= 0 || cfg.rho <= 0)
        throw NtlError("window radius and concentration radius must be positive");
    if (cfg.a_sequence.empty())
        for (int n = 1; n <= 8; ++n) cfg.a_sequence.push_back(std::pow(2.0, -n));
    for (std::size_t i = 0; i + 1 < cfg.a_sequence.size(); ++i)
        if (!(cfg.a_sequence[i + 1] < cfg.a_sequence[i]) || cfg.a_sequence[i] > 1.0 ||
            cfg.a_sequence[i + 1] <= 0.0)
            throw NtlError("a_sequence must be strictly decreasing in (0, 1]");

    ExperimentReport rep;
    rep.delta2 = energy(h);
    if (rep.delta2 <= 1e-6) throw ConstantMap("the experiment needs a non-constant map");

    Region window = Region::coord_disc(cfg.R);
    Region disc = Region::point_disc(cfg.x0, cfg.rho);
    rep.local_energy = energy(h, disc);
    if (rep.local_energy <= 0)
        throw NtlError("concentration disc carries no energy; move x0 or grow rho");
    rep.n2 = static_cast<long long>(std::ceil(rep.delta2 / rep.local_energy));
    rep.threshold = rep.delta2 / static_cast<double>(rep.n2);

    // density floor over the concentration disc
    std::vector<double> dens = energy_density(h);
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (disc.contains(h.point(i, j)))
                dmin = std::min(dmin, dens[static_cast<std::size_t>(i) * h.cols() + j]);
    rep.min_density_in_disc = std::isfinite(dmin) ? dmin : 0.0;
    if (cfg.gamma > 0 && rep.min_density_in_disc <= cfg.gamma) {
        rep.detail = "density floor violated in the concentration disc";
        return rep;
    }

    rep.frame_disc_max = image_disc_max(cfg.v, cfg.R);

    rep.a = cfg.a_sequence;
    rep.energy_window.resize(rep.a.size());
    parallel_for(rep.a.size(), [&](std::size_t i) {
        MobiusTransform g =
            cfg.u * MobiusTransform::diagonal(Complex(rep.a[i], 0), Complex(1, 0)) * cfg.v;
        rep.energy_window[i] = energy(reparametrize(h, g), window);
    });

    // least-squares fit log E = alpha log a + c
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(rep.a.size());
    for (int i = 0; i < n; ++i) {
        double x = std::log(rep.a[i]);
        double y = std::log(std::max(rep.energy_window[i], 1e-300));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    rep.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.fitted_constant = std::exp((sy - rep.fitted_exponent * sx) / n);

    rep.monotone_from = n - 1;
    for (int i = n - 1; i > 0; --i) {
        if (rep.energy_window[i] <= rep.energy_window[i - 1])
            rep.monotone_from = i - 1;
        else
            break;
    }
    rep.eventually_below_threshold = rep.energy_window.back() < rep.threshold;

    bool exponent_ok = rep.fitted_exponent >= 1.8 && rep.fitted_exponent <= 2.2;
    bool monotone_ok = rep.monotone_from <= n / 2;
    rep.pass = rep.eventually_below_threshold && exponent_ok && monotone_ok;
    rep.detail = rep.pass ? "quadratic decay confirmed"
                          : (!rep.eventually_below_threshold
                                 ? "window energy never fell below the threshold"
                                 : (!exponent_ok ? "fitted exponent outside [1.8, 2.2]"
                                                 : "decay not eventually monotone"));
    return rep;
}

// ---------------------------------------------------------------------------
// separation helpers

inline double quadrature_error_bound(const DiscretizedSphereMap& f) {
    return tol().quadrature_rel * energy(f) + tol().quadrature_abs;
}

// Midpoint level c with E(f1), E(f2) on opposite sides, when the energies are
// separated beyond the combined quadrature budget; G-invariance of the energy
// makes the sublevel/superlevel sets orbit-separating neighborhoods.
inline std::optional<double> energy_separation(const DiscretizedSphereMap& f1,
                                               const DiscretizedSphereMap& f2) {
    double e1 = energy(f1), e2 = energy(f2);
    double budget = quadrature_error_bound(f1) + quadrature_error_bound(f2);
    if (std::abs(e1 - e2) <= budget) return std::nullopt;
    return (e1 + e2) / 2;
}

inline double c0_distance(const DiscretizedSphereMap& f1, const DiscretizedSphereMap& f2) {
    if (f1.resolution() != f2.resolution() || f1.dim() != f2.dim())
        throw NtlError("c0_distance needs maps on the same grid with the same target");
    double worst = 0;
    for (int i = 0; i < f1.rows(); ++i) {
        for (int j = 0; j < f1.cols(); ++j) {
            double acc = 0;
            for (int k = 0; k < f1.dim(); ++k) {
                double d = f1.value(i, j)[k] - f2.value(i, j)[k];
                acc += d * d;
            }
            worst = std::max(worst, std::sqrt(acc));
        }
    }
    return worst;
}

inline std::vector<double> constant_value(const DiscretizedSphereMap& f) {
    std::vector<double> mean(f.dim(), 0.0);
    double wsum = 0;
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
            for (int k = 0; k < f.dim(); ++k) mean[k] += f.value(i, j)[k] * f.weight(i, j);
            wsum += f.weight(i, j);
        }
    for (double& x : mean) x /= wsum;
    double dev = 0;
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
            double acc = 0;
            for (int k = 0; k < f.dim(); ++k) {
                double d = f.value(i, j)[k] - mean[k];
                acc += d * d;
            }
            dev = std::max(dev, std::sqrt(acc));
        }
    if (dev > tol().constant_map) throw NotConstant("map deviates from constancy");
    return mean;
}

// Constant maps are separated when their values sit farther apart than the
// configured ball radii allow; images are reparametrization invariant, so
// this separates whole orbits.
inline bool constant_image_separation(const DiscretizedSphereMap& f1,
                                      const DiscretizedSphereMap& f2, double eps1, double eps2) {
    std::vector<double> c1 = constant_value(f1);
    std::vector<double> c2 = constant_value(f2);
    if (c1.size() != c2.size()) throw NtlError("constant maps live in different targets");
    double acc = 0;
    for (std::size_t k = 0; k < c1.size(); ++k) {
        double d = c1[k] - c2[k];
        acc += d * d;
    }
    return std::sqrt(acc) > 2 * (eps1 + eps2);
}

// ---------------------------------------------------------------------------
// standard S^1-invariant maps

using ProfileFunction = std::function<std::vector<double>(double)>;  // [-1, 1] -> R^m

inline DiscretizedSphereMap standard_s1_map(const ProfileFunction& profile, int resolution) {
    return sample_map([&](const SpherePoint& p) { return profile(moment_height(p)); }, resolution);
}

// max over the 64 rotation angles of the C0 distance between f and its
// rotation about the 0-infinity axis; exact index shifts whenever the grid
// admits them, interpolation otherwise
inline double s1_invariance_defect(const DiscretizedSphereMap& f) {
    const int steps = 64;
    double worst = 0;
    for (int k = 1; k < steps; ++k) {
        if ((static_cast<long long>(k) * f.cols()) % steps == 0) {
            int shift = static_cast<int>((static_cast<long long>(k) * f.cols()) / steps);
            for (int i = 0; i < f.rows(); ++i)
                for (int j = 0; j < f.cols(); ++j) {
                    double acc = 0;
                    for (int d = 0; d < f.dim(); ++d) {
                        double diff = f.value(i, j)[d] - f.value(i, (j + shift) % f.cols())[d];
                        acc += diff * diff;
                    }
                    worst = std::max(worst, std::sqrt(acc));
                }
        } else {
            double angle = 2 * std::numbers::pi * k / steps;
            MobiusTransform rot = MobiusTransform::diagonal(std::polar(1.0, angle), Complex(1, 0));
            worst = std::max(worst, c0_distance(f, reparametrize(f, rot)));
        }
    }
    return worst;
}

}  // namespace ntl
