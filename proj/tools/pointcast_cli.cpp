// Experiment runner: sweeps SNR x Laplacian x kernel x transform x bandwidth
// over point cloud datasets and emits a CSV result table, or aggregates an
// existing table. Exit codes: 0 success, 1 config error, 2 partial cell
// failures.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pointcast/sweep.hpp"
#include "pointcast/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pointcast: soft point cloud delivery simulator"};
    app.set_version_flag("--version", std::string("pointcast ") + pointcast::kVersion);

    std::string config_path;
    std::string out_path;
    std::string summarize_path;
    int threads = 0;
    app.add_option("--config", config_path, "experiment config file (key = value)");
    app.add_option("--out", out_path, "result CSV path (overrides the config's 'out')");
    app.add_option("--threads", threads, "worker threads (overrides config and POINTCAST_THREADS)");
    app.add_option("--summarize", summarize_path,
                   "aggregate an existing result CSV (mean/median per grid point) and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!summarize_path.empty()) {
            pointcast::summarize_csv(summarize_path, std::cout);
            return 0;
        }
        if (config_path.empty()) {
            std::cerr << "error: --config or --summarize is required\n";
            return 1;
        }

        pointcast::ExperimentConfig cfg = pointcast::parse_experiment_config(config_path);
        if (!out_path.empty()) cfg.out = out_path;
        if (const char* env = std::getenv("POINTCAST_THREADS")) {
            try {
                cfg.threads = std::max(1, std::stoi(env));
            } catch (...) {
                std::cerr << "error: POINTCAST_THREADS is not an integer\n";
                return 1;
            }
        }
        if (threads > 0) cfg.threads = threads;

        const pointcast::SweepResult result = pointcast::run_sweep(cfg);
        pointcast::write_result_csv(result, cfg, cfg.out);
        std::cout << result.rows.size() << " rows -> " << cfg.out;
        if (result.failed_cells > 0) std::cout << " (" << result.failed_cells << " cell(s) failed)";
        std::cout << "\n";
        return result.failed_cells > 0 ? 2 : 0;
    } catch (const pointcast::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
