#ifndef POINTCAST_CLOUD_IO_HPP
#define POINTCAST_CLOUD_IO_HPP

#include <string>

#include "pointcast/point_cloud.hpp"

namespace pointcast {

enum class CloudFormat { ply_ascii, pcd_ascii, csv };

/// Picks the format from the file extension (.ply / .pcd / .csv).
CloudFormat format_from_path(const std::string& path);

/// Loads an ASCII point cloud file. The file must declare x,y,z plus either
/// an RGB triple (converted to YUV on ingestion, integer channels divided by
/// 255) or a YUV triple already in [0, 1]. Point order is preserved.
/// Throws ParseError on malformed input, IoError when unreadable.
PointCloud load_cloud(const std::string& path, CloudFormat format);
PointCloud load_cloud(const std::string& path);

/// Writes the cloud in the chosen dialect, deterministically byte-for-byte
/// given identical inputs. Colors are emitted as RGB. PLY and CSV keep full
/// numeric precision; the packed rgb field of PCD quantizes colors to 8 bits
/// per channel. Throws IoError when the path is unwritable.
void write_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format);
void write_cloud(const PointCloud& cloud, const std::string& path);

}  // namespace pointcast

#endif
