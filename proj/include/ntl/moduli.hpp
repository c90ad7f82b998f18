#pragma once
// Special-point configurations on the components of a genus-zero nodal curve,
// the multi-cross-ratio chart, the per-component PSL(2,C) action and its
// slice, and the gluing condition for nodal maps.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ntl/errors.hpp"
#include "ntl/mobius.hpp"
#include "ntl/order.hpp"
#include "ntl/tolerances.hpp"
#include "ntl/tree.hpp"

namespace ntl {

struct TaggedPoint {
    SpecialPointRef role;
    SpherePoint point;
};

// Per-vertex ordered special points; ordering must agree with the order the
// labeling induces. The slice flag marks configurations whose first three
// points on every component are 0, 1, infinity.
class SpecialPointConfig {
public:
    SpecialPointConfig(LabeledTree lt, std::map<int, std::vector<SpherePoint>> points)
        : lt_(std::move(lt)) {
        LabeledOrder lo = order_from_labeling(lt_);
        for (int v : lt_.tree().vertices()) {
            const std::vector<SpecialPointRef>& roles = lo.special_points.at(v);
            auto it = points.find(v);
            if (it == points.end() || it->second.size() != roles.size())
                throw DegenerateConfig("vertex " + std::to_string(v) +
                                       " needs exactly " + std::to_string(roles.size()) +
                                       " special points");
            std::vector<TaggedPoint>& tp = points_[v];
            for (std::size_t i = 0; i < roles.size(); ++i)
                tp.push_back(TaggedPoint{roles[i], it->second[i]});
            for (std::size_t i = 0; i < tp.size(); ++i)
                for (std::size_t j = i + 1; j < tp.size(); ++j)
                    if (chordal_distance(tp[i].point, tp[j].point) <= tol().point_distinct)
                        throw DegenerateConfig("special points on vertex " + std::to_string(v) +
                                               " are not pairwise distinct");
        }
        slice_ = compute_slice_flag();
    }

    const LabeledTree& labeled_tree() const { return lt_; }
    const std::map<int, std::vector<TaggedPoint>>& points() const { return points_; }
    const std::vector<TaggedPoint>& at(int v) const { return points_.at(v); }
    bool on_slice() const { return slice_; }

    // value of the double point d_{vu} on the component of v
    const SpherePoint& double_point(int v, int u) const {
        for (const TaggedPoint& tp : points_.at(v))
            if (tp.role.kind == SpecialPointRef::Kind::Double && tp.role.partner == u)
                return tp.point;
        throw DegenerateConfig("no double point toward " + std::to_string(u));
    }

private:
    bool compute_slice_flag() const {
        const SpherePoint zero{Complex(0, 0)}, one{Complex(1, 0)};
        const SpherePoint inf = SpherePoint::infinity();
        for (const auto& [v, pts] : points_) {
            if (pts.size() < 3) return false;
            if (chordal_distance(pts[0].point, zero) > 1e-12) return false;
            if (chordal_distance(pts[1].point, one) > 1e-12) return false;
            if (chordal_distance(pts[2].point, inf) > 1e-12) return false;
        }
        return true;
    }

    LabeledTree lt_;
    std::map<int, std::vector<TaggedPoint>> points_;
    bool slice_ = false;
};

// w_{vi} for each vertex v and 4th-onward special point i (1-based position)
struct CrossRatioCoordinates {
    std::map<int, std::vector<SpherePoint>> values;

    bool operator==(const CrossRatioCoordinates& o) const {
        if (values.size() != o.values.size()) return false;
        for (const auto& [v, xs] : values) {
            auto it = o.values.find(v);
            if (it == o.values.end() || it->second.size() != xs.size()) return false;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (xs[i].z() != it->second[i].z() || xs[i].w() != it->second[i].w())
                    return false;
            }
        }
        return true;
    }
};

inline double max_coordinate_distance(const CrossRatioCoordinates& a,
                                      const CrossRatioCoordinates& b) {
    double worst = 0;
    for (const auto& [v, xs] : a.values) {
        const auto& ys = b.values.at(v);
        if (ys.size() != xs.size()) throw InvalidCoordinates("coordinate shape mismatch");
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, chordal_distance(xs[i], ys[i]));
    }
    return worst;
}

// w_{vi} = (p_{v1} : p_{v2} : p_{v3} : p_{vi}), i > 3
inline CrossRatioCoordinates chart(const SpecialPointConfig& config) {
    CrossRatioCoordinates out;
    for (const auto& [v, pts] : config.points()) {
        std::vector<SpherePoint>& target = out.values[v];
        for (std::size_t i = 3; i < pts.size(); ++i)
            target.push_back(cross_ratio(pts[0].point, pts[1].point, pts[2].point, pts[i].point));
    }
    return out;
}

using TransformTuple = std::map<int, MobiusTransform>;  // one per vertex

inline SpecialPointConfig h_t_act(const SpecialPointConfig& config, const TransformTuple& tuple) {
    std::map<int, std::vector<SpherePoint>> moved;
    for (const auto& [v, pts] : config.points()) {
        auto it = tuple.find(v);
        if (it == tuple.end()) throw NtlError("transform tuple misses vertex " + std::to_string(v));
        for (const TaggedPoint& tp : pts) moved[v].push_back(apply(it->second, tp.point));
    }
    return SpecialPointConfig(config.labeled_tree(), std::move(moved));
}

inline TransformTuple identity_tuple(const LabeledTree& lt) {
    TransformTuple t;
    for (int v : lt.tree().vertices()) t[v] = MobiusTransform::identity();
    return t;
}

// The unique tuple moving the configuration onto the slice: per component the
// Mobius map taking its first three special points to 0, 1, infinity.
inline std::pair<SpecialPointConfig, TransformTuple> to_slice(const SpecialPointConfig& config) {
    TransformTuple tuple;
    for (const auto& [v, pts] : config.points()) {
        if (pts.size() < 3) throw DegenerateConfig("component with fewer than three special points");
        MobiusTransform g = three_point_transform(pts[0].point, pts[1].point, pts[2].point);
        // 3-point rigidity: the transform must reproduce the normalization
        if (chordal_distance(apply(g, pts[0].point), SpherePoint(Complex(0, 0))) > tol().chart_invariance ||
            chordal_distance(apply(g, pts[1].point), SpherePoint(Complex(1, 0))) > tol().chart_invariance ||
            chordal_distance(apply(g, pts[2].point), SpherePoint::infinity()) > tol().chart_invariance)
            throw DegenerateConfig("slice transform failed the rigidity check");
        tuple[v] = g;
    }
    return {h_t_act(config, tuple), tuple};
}

// Slice configuration with p_{vi} = w_{vi} for i > 3; chart of the result
// reproduces the coordinates exactly.
inline SpecialPointConfig reconstruct_from_chart(const LabeledTree& lt,
                                                 const CrossRatioCoordinates& coords) {
    LabeledOrder lo = order_from_labeling(lt);
    std::map<int, std::vector<SpherePoint>> pts;
    const SpherePoint zero{Complex(0, 0)}, one{Complex(1, 0)};
    const SpherePoint inf = SpherePoint::infinity();
    for (int v : lt.tree().vertices()) {
        std::size_t count = lo.special_points.at(v).size();
        std::vector<SpherePoint>& target = pts[v];
        target = {zero, one, inf};
        std::size_t extra = count - 3;
        std::vector<SpherePoint> given;
        if (auto it = coords.values.find(v); it != coords.values.end()) given = it->second;
        if (given.size() != extra)
            throw InvalidCoordinates("vertex " + std::to_string(v) + " expects " +
                                     std::to_string(extra) + " coordinates");
        for (const SpherePoint& w : given) {
            if (chordal_distance(w, zero) <= tol().point_distinct ||
                chordal_distance(w, one) <= tol().point_distinct ||
                chordal_distance(w, inf) <= tol().point_distinct)
                throw InvalidCoordinates("coordinate collides with the slice normalization");
            target.push_back(w);
        }
    }
    return SpecialPointConfig(lt, std::move(pts));
}

// ---------------------------------------------------------------------------
// gluing condition for nodal maps

struct GluingReport {
    bool glued = true;
    std::vector<Edge> mismatched;
};

// one value per directed double point (v, u); agreement per unordered edge
inline GluingReport check_nodal_gluing(
    const LabeledTree& lt, const std::map<std::pair<int, int>, std::vector<double>>& values) {
    GluingReport out;
    for (const Edge& e : lt.tree().edges()) {
        auto a = values.find({e.first, e.second});
        auto b = values.find({e.second, e.first});
        if (a == values.end() || b == values.end())
            throw MissingDoubleValue("edge (" + std::to_string(e.first) + "," +
                                     std::to_string(e.second) + ") lacks a directed value");
        if (a->second.size() != b->second.size())
            throw MissingDoubleValue("dimension mismatch across a double point");
        double dev = 0;
        for (std::size_t i = 0; i < a->second.size(); ++i)
            dev = std::max(dev, std::abs(a->second[i] - b->second[i]));
        if (dev > tol().gluing) {
            out.glued = false;
            out.mismatched.push_back(e);
        }
    }
    return out;
}

}  // namespace ntl
