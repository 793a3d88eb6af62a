#include "nlschwarz/interface_values.hpp"

namespace nlschwarz {

static std::vector<InterfacePatch> gdsw_patches(const InterfaceGeometry& geo) {
    std::vector<InterfacePatch> patches;
    for (const auto& cr : geo.crosses()) {
        InterfacePatch p;
        p.velocity_values.push_back({cr.vnode, 1.0});
        p.pressure_values.push_back({cr.pnode, 1.0});
        patches.push_back(std::move(p));
    }
    for (const auto& e : geo.edges()) {
        InterfacePatch p;
        for (int v : e.velocity_nodes) p.velocity_values.push_back({v, 1.0});
        for (int q : e.pressure_nodes) p.pressure_values.push_back({q, 1.0});
        patches.push_back(std::move(p));
    }
    return patches;
}

static std::vector<InterfacePatch> reduced_patches(const InterfaceGeometry& geo,
                                                   bool geometric) {
    std::vector<InterfacePatch> patches;
    const auto& crosses = geo.crosses();
    for (size_t ci = 0; ci < crosses.size(); ++ci) {
        InterfacePatch p;
        p.velocity_values.push_back({crosses[ci].vnode, 1.0});
        p.pressure_values.push_back({crosses[ci].pnode, 1.0});
        for (int ei : geo.edges_at_cross(static_cast<int>(ci))) {
            const InterfaceEdge& e = geo.edges()[ei];
            bool at_lo = e.cross_lo == static_cast<int>(ci);
            bool ends_at_boundary = e.cross_lo < 0 || e.cross_hi < 0;
            for (int v : e.velocity_nodes) {
                double w;
                if (ends_at_boundary)
                    w = 1.0;
                else if (geometric)
                    w = at_lo ? 1.0 - geo.velocity_position(e, v)
                              : geo.velocity_position(e, v);
                else
                    w = 0.5;
                p.velocity_values.push_back({v, w});
            }
            for (int q : e.pressure_nodes) {
                double w;
                if (ends_at_boundary)
                    w = 1.0;
                else if (geometric)
                    w = at_lo ? 1.0 - geo.pressure_position(e, q)
                              : geo.pressure_position(e, q);
                else
                    w = 0.5;
                p.pressure_values.push_back({q, w});
            }
        }
        patches.push_back(std::move(p));
    }
    return patches;
}

std::vector<InterfacePatch> build_interface_patches(
    const InterfaceGeometry& geometry, CoarseSpaceType type) {
    switch (type) {
        case CoarseSpaceType::GDSW:
            return gdsw_patches(geometry);
        case CoarseSpaceType::RGDSW_A:
            return reduced_patches(geometry, true);
        case CoarseSpaceType::RGDSW_B:
            return reduced_patches(geometry, false);
    }
    return {};
}

const char* coarse_space_name(CoarseSpaceType type) {
    switch (type) {
        case CoarseSpaceType::GDSW:
            return "gdsw";
        case CoarseSpaceType::RGDSW_A:
            return "rgdsw-a";
        case CoarseSpaceType::RGDSW_B:
            return "rgdsw-b";
    }
    return "?";
}

}  // namespace nlschwarz
