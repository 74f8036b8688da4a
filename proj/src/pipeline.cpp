#include "pointcast/pipeline.hpp"

#include <cmath>
#include <stdexcept>

namespace pointcast {

void validate_config(const CodecConfig& cfg) {
    if (!(cfg.bandwidth_ratio > 0.0) || cfg.bandwidth_ratio > 1.0)
        throw std::invalid_argument("config: bandwidth_ratio must be in (0, 1]");
    if (!(cfg.power_budget > 0.0))
        throw std::invalid_argument("config: power_budget must be > 0");
    if (cfg.max_block < 2) throw std::invalid_argument("config: max_block must be >= 2");
    if (cfg.metadata_mode == MetadataMode::chunk_mean && cfg.chunk_size < 1)
        throw std::invalid_argument("config: chunk_size must be >= 1");
}

namespace {

bool has_color_override(const CodecConfig& cfg) {
    return cfg.transform == BasisKind::gft &&
           (cfg.color_laplacian.has_value() || cfg.color_kappa_mode.has_value());
}

BlockEncoding encode_block(Block&& block, const CodecConfig& cfg) {
    BlockEncoding enc;
    enc.block = std::move(block);
    const PointCloud& cloud = enc.block.cloud;
    const Eigen::Index n = cloud.size();

    enc.basis = build_basis(cfg.transform, cloud, cfg.kernel, cfg.laplacian, cfg.sparsify_weights);
    if (has_color_override(cfg)) {
        KernelConfig color_kernel = cfg.kernel;
        if (cfg.color_kappa_mode) color_kernel.kappa_mode = *cfg.color_kappa_mode;
        enc.color_basis = build_basis(BasisKind::gft, cloud, color_kernel,
                                      cfg.color_laplacian.value_or(cfg.laplacian),
                                      cfg.sparsify_weights);
    }

    // six mean-centered attribute signals -> one concatenated coefficient vector
    const int total = static_cast<int>(6 * n);
    Eigen::VectorXd coeffs(total);
    for (int a = 0; a < 6; ++a) {
        const GraphSignal signal =
            a < 3 ? cloud.coords.row(a).transpose() : cloud.colors.row(a - 3).transpose();
        enc.means[static_cast<size_t>(a)] = signal.mean();
        const GraphSignal centered = signal.array() - enc.means[static_cast<size_t>(a)];
        const SpectralBasis& basis = (a >= 3 && enc.color_basis) ? *enc.color_basis : enc.basis;
        coeffs.segment(a * n, n) = forward_transform(basis, centered);
    }

    // Shared budget: one selection/allocation over all attributes. Per
    // attribute: the same chain on each length-n segment, merged afterwards
    // (segments are equally sized, so the average-power constraint still
    // holds for the merged stream).
    struct Segment {
        int begin;
        int length;
    };
    std::vector<Segment> segments;
    if (cfg.per_attribute_budget)
        for (int a = 0; a < 6; ++a) segments.push_back({static_cast<int>(a * n), static_cast<int>(n)});
    else
        segments.push_back({0, total});

    std::vector<int> kept;
    std::vector<double> kept_lambdas, kept_gains;
    for (const Segment& seg : segments) {
        const Eigen::VectorXd lambdas = measure_power(coeffs.segment(seg.begin, seg.length));
        std::vector<int> local = compress_select(lambdas, cfg.bandwidth_ratio);
        Eigen::VectorXd lam(static_cast<Eigen::Index>(local.size()));
        for (size_t k = 0; k < local.size(); ++k) lam(static_cast<Eigen::Index>(k)) = lambdas(local[k]);
        if (cfg.metadata_mode == MetadataMode::chunk_mean)
            lam = chunk_mean_lambdas(lam, cfg.chunk_size);
        const PowerAllocation alloc = allocate_power(lam, cfg.power_budget);
        for (size_t k = 0; k < local.size(); ++k) {
            kept.push_back(seg.begin + local[k]);
            kept_lambdas.push_back(alloc.lambdas(static_cast<Eigen::Index>(k)));
            kept_gains.push_back(alloc.gains(static_cast<Eigen::Index>(k)));
        }
    }
    PowerAllocation merged;
    merged.lambdas = Eigen::Map<const Eigen::VectorXd>(kept_lambdas.data(),
                                                       static_cast<Eigen::Index>(kept_lambdas.size()));
    merged.gains = Eigen::Map<const Eigen::VectorXd>(kept_gains.data(),
                                                     static_cast<Eigen::Index>(kept_gains.size()));
    merged.budget = cfg.power_budget;
    merged.coeff_count = static_cast<int>(kept.size());

    enc.stream = encode(coeffs, merged, kept, total);
    for (int a = 0; a < 6; ++a)
        enc.stream.attribute_layout[kAttributeNames[static_cast<size_t>(a)]] = {
            static_cast<int>(a * n), static_cast<int>((a + 1) * n)};
    return enc;
}

PointCloud decode_block(const BlockEncoding& enc, const ChannelSymbols& received) {
    const Eigen::Index n = enc.block.cloud.size();
    const Eigen::VectorXd estimates =
        mmse_filter(received, enc.stream.allocation, enc.stream.kept_indices,
                    enc.stream.total_coeffs);

    PointCloud out;
    out.coords.resize(3, n);
    out.colors.resize(3, n);
    for (int a = 0; a < 6; ++a) {
        const SpectralBasis& basis = (a >= 3 && enc.color_basis) ? *enc.color_basis : enc.basis;
        const GraphSignal restored =
            inverse_transform(basis, estimates.segment(a * n, n)).array() +
            enc.means[static_cast<size_t>(a)];
        if (a < 3)
            out.coords.row(a) = restored.transpose();
        else
            out.colors.row(a - 3) = restored.transpose().cwiseMax(0.0).cwiseMin(1.0);
    }
    return out;
}

}  // namespace

EncodedCloud encode_cloud(const PointCloud& cloud, const CodecConfig& cfg) {
    validate_config(cfg);
    validate_cloud(cloud);
    EncodedCloud encoded;
    encoded.total_points = cloud.size();
    std::vector<Block> blocks = partition_blocks(cloud, cfg.max_block);
    encoded.blocks.reserve(blocks.size());
    for (auto& block : blocks) encoded.blocks.push_back(encode_block(std::move(block), cfg));
    return encoded;
}

std::vector<ChannelSymbols> transmit_cloud(const EncodedCloud& encoded, const ChannelConfig& cfg) {
    std::vector<ChannelSymbols> received;
    received.reserve(encoded.blocks.size());
    for (size_t b = 0; b < encoded.blocks.size(); ++b) {
        ChannelConfig sub = cfg;
        sub.seed = block_seed(cfg.seed, b);
        received.push_back(transmit(encoded.blocks[b].stream, sub));
    }
    return received;
}

PointCloud decode_cloud(const EncodedCloud& encoded, const std::vector<ChannelSymbols>& received,
                        const CodecConfig& cfg) {
    validate_config(cfg);
    if (received.size() != encoded.blocks.size())
        throw std::invalid_argument("decode_cloud: stream/symbol alignment mismatch");
    std::vector<Block> blocks;
    std::vector<PointCloud> decoded;
    blocks.reserve(encoded.blocks.size());
    decoded.reserve(encoded.blocks.size());
    for (size_t b = 0; b < encoded.blocks.size(); ++b) {
        blocks.push_back(encoded.blocks[b].block);
        decoded.push_back(decode_block(encoded.blocks[b], received[b]));
    }
    return reassemble_blocks(blocks, decoded, encoded.total_points);
}

QualityReport run_once(const PointCloud& cloud, const CodecConfig& cfg, const ChannelConfig& ch) {
    const EncodedCloud encoded = encode_cloud(cloud, cfg);
    ChannelConfig channel = ch;
    channel.reference_power = cfg.power_budget;  // SNR is defined against the budget
    const PointCloud decoded = decode_cloud(encoded, transmit_cloud(encoded, channel), cfg);
    return score_clouds(cloud, decoded);
}

std::vector<QualityReport> run_trials(const PointCloud& cloud, const CodecConfig& cfg,
                                      const std::vector<ChannelConfig>& channels) {
    const EncodedCloud encoded = encode_cloud(cloud, cfg);
    std::vector<QualityReport> reports;
    reports.reserve(channels.size());
    for (const ChannelConfig& ch : channels) {
        ChannelConfig channel = ch;
        channel.reference_power = cfg.power_budget;
        const PointCloud decoded = decode_cloud(encoded, transmit_cloud(encoded, channel), cfg);
        reports.push_back(score_clouds(cloud, decoded));
    }
    return reports;
}

}  // namespace pointcast
