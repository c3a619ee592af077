#pragma once

#include <vector>

#include "cone.hpp"
#include "rng.hpp"

namespace bpscal {

/// Directions that span K by nonnegative combinations, normalized in l2. Exact generators are used
/// when the representation provides them; otherwise sampled members stand in.
struct ConeSampler {
    ConeKind kind;
    std::vector<Point> gens;
    bool exact = false;

    ConeSampler(const ConeRep& c, Rng& rng, std::size_t fallback = 0, double eps = 1e-9) : kind(c.kind()) {
        for (const Point& g : cone_generators(c, &exact)) gens.push_back(g / norm2(g));
        if (!gens.empty() && exact) return;
        exact = false;
        const std::size_t n = c.dim();
        const std::size_t want = fallback ? fallback : 64 * n;
        Point center(n);
        if (c.kind() == ConeKind::BishopPhelps && norm2(c.xstar()) > 0.0) center = c.xstar() / norm2(c.xstar());
        for (std::size_t attempts = 0; gens.size() < want && attempts < 200 * want; ++attempts) {
            Point d = rng.direction(n);
            if (norm2(center) > 0.0 && attempts % 2 == 0) {
                Point e = center + d * rng.uniform(0.0, 1.5);
                if (norm2(e) > 1e-12) d = e / norm2(e);
            }
            if (is_member(classify(c, d, eps))) gens.push_back(d);
        }
    }

    bool empty() const noexcept { return gens.empty(); }

    /// A cone element of l2-scale about one. Sparse draws land on faces and extreme rays.
    /// RayUnion cones are not convex, so their draws stay on a single generator.
    Point draw(Rng& rng, bool sparse) const {
        if (kind == ConeKind::RayUnion) return gens[rng.index(gens.size())] * rng.uniform(0.1, 1.0);
        return combine(gens, rng.simplex_weights(gens.size(), sparse));
    }
};

} // namespace bpscal
