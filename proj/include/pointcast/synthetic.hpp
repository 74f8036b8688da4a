#ifndef POINTCAST_SYNTHETIC_HPP
#define POINTCAST_SYNTHETIC_HPP

#include <cstdint>
#include <string>

#include "pointcast/point_cloud.hpp"

namespace pointcast {

enum class SyntheticKind { plane, sphere, smooth_noise };

SyntheticKind synthetic_kind_from_string(const std::string& s);
const char* to_string(SyntheticKind kind);

/// Deterministic test clouds with a smoothly varying color field (low-order
/// polynomial of the coordinates plus small jitter):
///   plane        points on z = 0 in the unit square
///   sphere       points on the unit sphere
///   smooth_noise jittered raster grid over a gently curved sheet; emitted in
///                raster order so scan-order transforms (DCT) see a coherent
///                signal, as real scanner output does
/// Identical (kind, n, seed) always produce identical clouds.
PointCloud generate_synthetic(SyntheticKind kind, int n, std::uint64_t seed);

/// Variant of smooth_noise with a sharp two-tone color boundary across the
/// middle of a flat sheet; geometry is smooth but the color field is not.
PointCloud generate_color_edge(int n, std::uint64_t seed);

}  // namespace pointcast

#endif
