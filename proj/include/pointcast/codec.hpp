#ifndef POINTCAST_CODEC_HPP
#define POINTCAST_CODEC_HPP

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pointcast/spectral.hpp"

namespace pointcast {

/// Per-coefficient transmit powers and scale factors for M kept coefficients.
/// Invariants: (1/M) sum g_i^2 lambda_i = P, and g_i proportional to
/// lambda_i^{-1/4}.
struct PowerAllocation {
    Eigen::VectorXd lambdas;  // aligned with the kept order
    Eigen::VectorXd gains;
    double budget = 0.0;
    int coeff_count = 0;  // M
};

/// Scaled analog symbols for one block, plus the metadata the decoder needs
/// (delivered losslessly; see README on the genie-metadata assumption).
struct EncodedStream {
    std::vector<std::complex<double>> symbols;        // ceil(M/2) I/Q pairs
    PowerAllocation allocation;                       // per kept coefficient
    std::vector<int> kept_indices;                    // descending power order
    int total_coeffs = 0;                             // count before compression
    std::map<std::string, std::pair<int, int>> attribute_layout;  // name -> [begin,end)
    bool odd_tail_padded = false;                     // last symbol's Q is padding
};

/// Received symbols. noise_variance is the per-coefficient variance seen by
/// each unpacked I/Q component, i.e. half the complex-symbol noise power.
struct ChannelSymbols {
    std::vector<std::complex<double>> received;
    double noise_variance = 0.0;
};

/// lambda_i = s_i^2 + 1e-12; the floor keeps the scale-factor formula finite
/// for exactly-zero coefficients.
Eigen::VectorXd measure_power(const Eigen::VectorXd& coeffs);

/// Near-optimal scale factors g_i = lambda_i^{-1/4} sqrt(M P / sum_j
/// sqrt(lambda_j)), which meet the average power constraint exactly.
PowerAllocation allocate_power(const Eigen::VectorXd& lambdas, double budget);

/// Bandwidth compression: keeps the M = max(1, ceil(ratio * total)) indices
/// with the largest power, ties broken by lower original index. The result
/// is ordered by descending power.
std::vector<int> compress_select(const Eigen::VectorXd& lambdas, double bandwidth_ratio);

/// Replaces each kept coefficient's power with the mean over its chunk of
/// `chunk_size` consecutive kept coefficients (coarser, cheaper metadata).
Eigen::VectorXd chunk_mean_lambdas(const Eigen::VectorXd& kept_lambdas, int chunk_size);

/// x_i = g_i s_i for the kept coefficients; consecutive pairs become one
/// complex symbol, an odd tail is padded with a zero Q component.
EncodedStream encode(const Eigen::VectorXd& coeffs, const PowerAllocation& allocation,
                     const std::vector<int>& kept_indices, int total_coeffs);

/// Unpacks I/Q and applies s_i = g_i lambda_i / (g_i^2 lambda_i + sigma^2) *
/// y_i per kept coefficient; discarded coefficients decode to zero. With
/// sigma^2 = 0 the filter reduces exactly to the inverse gain.
Eigen::VectorXd mmse_filter(const ChannelSymbols& received, const PowerAllocation& allocation,
                            const std::vector<int>& kept_indices, int total_coeffs);

/// Debug dump, one row per kept coefficient: index, lambda, gain, I, Q.
void dump_stream_csv(const EncodedStream& stream, const std::string& path);

}  // namespace pointcast

#endif
