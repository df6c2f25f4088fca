#pragma once

// Surfaces shared across the tests of one binary; building them dominates
// test time, so each is constructed once.

#include "hypsurf/fuchsian.hpp"

namespace testing_surfaces {

inline const hypsurf::FuchsianGroup& bolza_surface() {
    static const hypsurf::FuchsianGroup g = hypsurf::bolza();
    return g;
}

inline const hypsurf::FuchsianGroup& short_pants_surface() {
    static const hypsurf::FuchsianGroup g = hypsurf::doubled_pants(0.5, 6.0, 6.0);
    return g;
}

inline const hypsurf::FuchsianGroup& even_pants_surface() {
    static const hypsurf::FuchsianGroup g = hypsurf::doubled_pants(1.2, 1.2, 1.2);
    return g;
}

}  // namespace testing_surfaces
