#include "pointcast/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "pointcast/rng.hpp"

namespace pointcast {

double noise_variance_for(const ChannelConfig& cfg) {
    if (!(cfg.reference_power > 0.0))
        throw std::invalid_argument("channel: reference_power must be > 0");
    if (std::isinf(cfg.snr_db) && cfg.snr_db > 0.0) return 0.0;
    return cfg.reference_power * std::pow(10.0, -cfg.snr_db / 10.0);
}

ChannelSymbols transmit(const EncodedStream& stream, const ChannelConfig& cfg) {
    const double sigma2 = noise_variance_for(cfg);
    ChannelSymbols out;
    out.noise_variance = sigma2 / 2.0;  // per unpacked I/Q component
    out.received.resize(stream.symbols.size());
    if (sigma2 == 0.0) {
        out.received = stream.symbols;
        return out;
    }
    const double comp_sigma = std::sqrt(sigma2 / 2.0);
    for (size_t k = 0; k < stream.symbols.size(); ++k) {
        const auto noise = rng::gaussian_pair(cfg.seed, static_cast<std::uint64_t>(k));
        out.received[k] = {stream.symbols[k].real() + comp_sigma * noise.z0,
                           stream.symbols[k].imag() + comp_sigma * noise.z1};
    }
    return out;
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block_id) {
    return rng::mix(seed, 0xB10Cull ^ (block_id * 2 + 1));
}

}  // namespace pointcast
