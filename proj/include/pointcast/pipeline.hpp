#ifndef POINTCAST_PIPELINE_HPP
#define POINTCAST_PIPELINE_HPP

#include <array>
#include <optional>
#include <vector>

#include "pointcast/channel.hpp"
#include "pointcast/codec.hpp"
#include "pointcast/metrics.hpp"
#include "pointcast/partition.hpp"
#include "pointcast/spectral.hpp"

namespace pointcast {

enum class MetadataMode { per_coefficient, chunk_mean };

/// Everything that selects one codec operating point.
struct CodecConfig {
    LaplacianKind laplacian = LaplacianKind::regular;
    KernelConfig kernel{};
    BasisKind transform = BasisKind::gft;
    double bandwidth_ratio = 1.0;   // fraction of coefficients transmitted
    double power_budget = 1.0;      // P
    int max_block = 1024;
    MetadataMode metadata_mode = MetadataMode::per_coefficient;
    int chunk_size = 64;            // for chunk_mean metadata
    bool per_attribute_budget = false;  // default: one shared budget across x,y,z,Y,U,V
    // Optional separate GFT configuration for the color attributes (extension;
    // coordinate and color attributes share one basis when unset).
    std::optional<LaplacianKind> color_laplacian;
    std::optional<KappaMode> color_kappa_mode;
    bool sparsify_weights = false;
};

void validate_config(const CodecConfig& cfg);

inline constexpr std::array<const char*, 6> kAttributeNames = {"x", "y", "z", "Y", "U", "V"};

/// Encoder-side artifacts for one block. Bases and means are reproducible
/// from (cloud, config); the decoder receives them as genie metadata.
struct BlockEncoding {
    Block block;
    SpectralBasis basis;                      // coords (and colors unless overridden)
    std::optional<SpectralBasis> color_basis; // when a separate color config is set
    std::array<double, 6> means{};            // per-attribute means, re-added at decode
    EncodedStream stream;
};

struct EncodedCloud {
    std::vector<BlockEncoding> blocks;
    Eigen::Index total_points = 0;
};

/// Partition, per-block graph/basis construction, mean-centered forward
/// transforms of the six attribute signals, power measurement, bandwidth
/// selection, power allocation, and I/Q mapping.
EncodedCloud encode_cloud(const PointCloud& cloud, const CodecConfig& cfg);

/// One AWGN pass per block; block b uses the sub-seed (cfg.seed, b).
std::vector<ChannelSymbols> transmit_cloud(const EncodedCloud& encoded, const ChannelConfig& cfg);

/// MMSE filtering, inverse transforms, mean restoration, color clamping to
/// [0,1], and reassembly into the original point order.
PointCloud decode_cloud(const EncodedCloud& encoded, const std::vector<ChannelSymbols>& received,
                        const CodecConfig& cfg);

/// encode -> transmit -> decode -> score, deterministic given all inputs.
QualityReport run_once(const PointCloud& cloud, const CodecConfig& cfg, const ChannelConfig& ch);

/// Same, but reuses one encoding across many channel realizations.
std::vector<QualityReport> run_trials(const PointCloud& cloud, const CodecConfig& cfg,
                                      const std::vector<ChannelConfig>& channels);

}  // namespace pointcast

#endif
