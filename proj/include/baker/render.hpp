#pragma once

#include <string>
#include <vector>

#include "baker/dynamics.hpp"

namespace baker {

enum OverlayBits : unsigned {
    OverlayDiscs = 1u,
    OverlaySubdiscs = 2u,
    OverlayWitnessAnnuli = 4u,
    OverlaySkeleton = 8u,
};

struct RenderSpec {
    cplx center{0.0, 0.0};
    double span_x = 4.0;
    double span_y = 4.0;
    int width = 512;
    int height = 512;
    int max_iter = 64;
    unsigned overlays = 0;
};

struct Image {
    int width = 0;
    int height = 0;
    std::vector<unsigned char> rgb; // 3 bytes per pixel, row-major
};

/// Orbit classification without the point trail; same rules as iterate().
std::pair<OrbitClass, int> classify_point(cplx z, int n_max, const Tower& tower);

/// Classification image; rows are rendered in parallel (BAKER_LAB_THREADS
/// caps the worker count) into disjoint buffer ranges, so output bytes do not
/// depend on the thread count.
Image render(const Tower& tower, const RenderSpec& spec);

void write_ppm(const Image& image, const std::string& path);

int thread_budget();

} // namespace baker
