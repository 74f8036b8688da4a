#ifndef POINTCAST_CHANNEL_HPP
#define POINTCAST_CHANNEL_HPP

#include <cstdint>

#include "pointcast/codec.hpp"

namespace pointcast {

/// AWGN channel settings. SNR is defined as 10 log10(P / sigma^2) where P is
/// the encoder's average power budget and sigma^2 the complex-symbol noise
/// variance; snr_db = +infinity selects the noiseless channel. Fading is not
/// modeled explicitly: sigma^2 is the effective noise after normalizing by
/// channel strength.
struct ChannelConfig {
    double snr_db = 10.0;
    std::uint64_t seed = 0;
    double reference_power = 1.0;  // the budget P
};

/// sigma^2 = reference_power * 10^(-snr_db / 10).
double noise_variance_for(const ChannelConfig& cfg);

/// y_i = x_i + n_i with independent Gaussian noise of variance sigma^2/2 on
/// each I and Q component. Noise is a pure function of (seed, symbol index),
/// so the same (stream, cfg) always produces bit-identical output.
ChannelSymbols transmit(const EncodedStream& stream, const ChannelConfig& cfg);

/// Deterministic sub-seed for one block of a multi-block transmission.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block_id);

}  // namespace pointcast

#endif
