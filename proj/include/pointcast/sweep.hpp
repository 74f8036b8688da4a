#ifndef POINTCAST_SWEEP_HPP
#define POINTCAST_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pointcast/pipeline.hpp"

namespace pointcast {

/// Invalid or unusable experiment description (distinct from per-cell
/// failures, which are isolated and recorded in the result table).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A sweep: datasets x laplacian x kappa_mode x kernel x transform x
/// bandwidth_ratio x snr_db x seed. Datasets are file paths or synthetic
/// specs of the form synthetic:<kind>:<n>[:<seed>].
struct ExperimentConfig {
    std::vector<std::string> inputs;
    std::vector<double> snr_db{0, 5, 10, 15, 20, 25, 30};
    std::vector<std::uint64_t> seeds{1};
    std::vector<LaplacianKind> laplacians{LaplacianKind::regular};
    std::vector<KappaMode> kappa_modes{KappaMode::variance};
    std::vector<KernelKind> kernels{KernelKind::gaussian};
    std::vector<BasisKind> transforms{BasisKind::gft};
    std::vector<double> bandwidth_ratios{1.0};
    double power_budget = 1.0;
    int max_block = 1024;
    MetadataMode metadata_mode = MetadataMode::per_coefficient;
    int chunk_size = 64;
    bool per_attribute_budget = false;
    std::optional<LaplacianKind> color_laplacian;
    std::optional<KappaMode> color_kappa_mode;
    KappaMode kappa_c_mode = KappaMode::variance;
    bool sparsify = false;
    std::string out = "results.csv";
    std::string dump_decoded_dir;  // optional: write decoded clouds here
    int threads = 1;
    std::uint64_t config_hash = 0;  // FNV-1a of the config text, for traceability
};

/// Parses the flat key = value config dialect ('#' comments, comma lists).
/// Unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_text(const std::string& text);

/// One grid cell's outcome. status is "ok" or an error description; failed
/// cells leave the dB fields unset but never abort the rest of the sweep.
struct ResultRow {
    std::string dataset;
    Eigen::Index n_points = 0;
    LaplacianKind laplacian = LaplacianKind::regular;
    KappaMode kappa_mode = KappaMode::variance;
    KernelKind kernel = KernelKind::gaussian;
    BasisKind transform = BasisKind::gft;
    double bandwidth_ratio = 1.0;
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    double smse_xyz_db = 0.0;
    double smse_yuv_db = 0.0;
    double wall_time_ms = 0.0;
    std::string status = "ok";
};

struct SweepResult {
    std::vector<ResultRow> rows;  // canonical grid order
    int failed_cells = 0;
};

/// Runs the full grid. Cells are independent: one failing cell is recorded
/// in its row while the others complete. Deterministic given the config
/// (wall_time_ms aside). Thread count comes from cfg.threads.
SweepResult run_sweep(const ExperimentConfig& cfg);

/// Writes the versioned result CSV (header comment carries tool version and
/// config hash). Byte-identical across reruns except the wall_time_ms column.
void write_result_csv(const SweepResult& result, const ExperimentConfig& cfg,
                      const std::string& path);

/// Mean/median dB per grid point over seeds, exact arithmetic mean over the
/// seed rows present. Warns on stderr when seed rows are missing or failed.
/// Throws ConfigError on malformed input.
void summarize_csv(const std::string& result_path, std::ostream& out);

/// Loads a dataset reference: a cloud file path or synthetic:<kind>:<n>[:<seed>].
PointCloud load_dataset(const std::string& spec);

}  // namespace pointcast

#endif
