#include "pointcast/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "pointcast/errors.hpp"

namespace pointcast {

namespace {
constexpr double kPowerFloor = 1e-12;
}

Eigen::VectorXd measure_power(const Eigen::VectorXd& coeffs) {
    if (!coeffs.allFinite()) throw std::invalid_argument("measure_power: non-finite coefficient");
    return coeffs.array().square() + kPowerFloor;
}

PowerAllocation allocate_power(const Eigen::VectorXd& lambdas, double budget) {
    if (lambdas.size() == 0) throw std::invalid_argument("allocate_power: empty power vector");
    if (!(budget > 0.0)) throw std::invalid_argument("allocate_power: budget must be > 0");
    if ((lambdas.array() <= 0.0).any())
        throw std::invalid_argument("allocate_power: powers must be > 0");

    const int m = static_cast<int>(lambdas.size());
    const double sum_sqrt = lambdas.array().sqrt().sum();
    const double scale = std::sqrt(static_cast<double>(m) * budget / sum_sqrt);

    PowerAllocation alloc;
    alloc.lambdas = lambdas;
    alloc.gains = lambdas.array().pow(-0.25) * scale;
    alloc.budget = budget;
    alloc.coeff_count = m;
    return alloc;
}

std::vector<int> compress_select(const Eigen::VectorXd& lambdas, double bandwidth_ratio) {
    if (!(bandwidth_ratio > 0.0) || bandwidth_ratio > 1.0)
        throw std::invalid_argument("compress_select: ratio must be in (0, 1]");
    const int total = static_cast<int>(lambdas.size());
    if (total == 0) throw std::invalid_argument("compress_select: empty power vector");

    // small epsilon guards the ceil against representation error in ratio*total
    const int m = std::max(1, static_cast<int>(std::ceil(bandwidth_ratio * total - 1e-9)));

    std::vector<int> order(static_cast<size_t>(total));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (lambdas(a) != lambdas(b)) return lambdas(a) > lambdas(b);
        return a < b;
    });
    order.resize(static_cast<size_t>(std::min(m, total)));
    return order;
}

Eigen::VectorXd chunk_mean_lambdas(const Eigen::VectorXd& kept_lambdas, int chunk_size) {
    if (chunk_size < 1) throw std::invalid_argument("chunk_mean_lambdas: chunk_size must be >= 1");
    const Eigen::Index m = kept_lambdas.size();
    Eigen::VectorXd out(m);
    for (Eigen::Index start = 0; start < m; start += chunk_size) {
        const Eigen::Index len = std::min<Eigen::Index>(chunk_size, m - start);
        out.segment(start, len).setConstant(kept_lambdas.segment(start, len).mean());
    }
    return out;
}

EncodedStream encode(const Eigen::VectorXd& coeffs, const PowerAllocation& allocation,
                     const std::vector<int>& kept_indices, int total_coeffs) {
    const int m = static_cast<int>(kept_indices.size());
    if (allocation.coeff_count != m)
        throw std::invalid_argument("encode: allocation size does not match kept set");
    if (coeffs.size() != total_coeffs)
        throw std::invalid_argument("encode: coefficient vector size mismatch");

    EncodedStream stream;
    stream.allocation = allocation;
    stream.kept_indices = kept_indices;
    stream.total_coeffs = total_coeffs;
    stream.symbols.resize(static_cast<size_t>((m + 1) / 2), {0.0, 0.0});
    stream.odd_tail_padded = (m % 2) != 0;
    for (int k = 0; k < m; ++k) {
        const double x = allocation.gains(k) * coeffs(kept_indices[static_cast<size_t>(k)]);
        auto& sym = stream.symbols[static_cast<size_t>(k / 2)];
        if (k % 2 == 0)
            sym.real(x);
        else
            sym.imag(x);
    }
    return stream;
}

Eigen::VectorXd mmse_filter(const ChannelSymbols& received, const PowerAllocation& allocation,
                            const std::vector<int>& kept_indices, int total_coeffs) {
    const int m = allocation.coeff_count;
    if (static_cast<int>(kept_indices.size()) != m)
        throw std::invalid_argument("mmse_filter: allocation/kept size mismatch");
    if (static_cast<int>(received.received.size()) < (m + 1) / 2)
        throw std::invalid_argument("mmse_filter: too few received symbols");
    const double sigma2 = received.noise_variance;
    if (sigma2 < 0.0) throw std::invalid_argument("mmse_filter: negative noise variance");

    Eigen::VectorXd estimates = Eigen::VectorXd::Zero(total_coeffs);
    for (int k = 0; k < m; ++k) {
        const auto& sym = received.received[static_cast<size_t>(k / 2)];
        const double y = (k % 2 == 0) ? sym.real() : sym.imag();
        const double g = allocation.gains(k);
        const double lambda = allocation.lambdas(k);
        const double gain = sigma2 == 0.0 ? 1.0 / g : g * lambda / (g * g * lambda + sigma2);
        estimates(kept_indices[static_cast<size_t>(k)]) = gain * y;
    }
    return estimates;
}

void dump_stream_csv(const EncodedStream& stream, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    out << "index,lambda,gain,i,q\n";
    for (size_t k = 0; k < stream.kept_indices.size(); ++k) {
        const auto& sym = stream.symbols[k / 2];
        out << stream.kept_indices[k] << ',';
        put(stream.allocation.lambdas(static_cast<Eigen::Index>(k)));
        out << ',';
        put(stream.allocation.gains(static_cast<Eigen::Index>(k)));
        out << ',';
        if (k % 2 == 0) {
            put(sym.real());
            out << ',';
        } else {
            out << ',';
            put(sym.imag());
        }
        out << '\n';
    }
}

}  // namespace pointcast
