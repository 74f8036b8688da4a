#include "pointcast/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "pointcast/cloud_io.hpp"
#include "pointcast/errors.hpp"
#include "pointcast/synthetic.hpp"
#include "pointcast/version.hpp"

namespace pointcast {

namespace {

std::string strip(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(strip(cur));
    out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
    return out;
}

double parse_num(const std::string& s, const std::string& key) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ConfigError("config: bad number '" + s + "' for key '" + key + "'");
    }
}

long parse_int(const std::string& s, const std::string& key) {
    try {
        size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ConfigError("config: bad integer '" + s + "' for key '" + key + "'");
    }
}

bool parse_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError("config: bad boolean '" + s + "' for key '" + key + "'");
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::string fmt_double(double v, const char* spec = "%.6f") {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ':' || c == '/' || c == '\\' || c == ' ') c = '_';
    return out;
}

struct CellKey {
    size_t dataset;
    size_t laplacian;
    size_t kappa;
    size_t kernel;
    size_t transform;
    size_t ratio;
};

}  // namespace

PointCloud load_dataset(const std::string& spec) {
    if (spec.rfind("synthetic:", 0) != 0) return load_cloud(spec);

    const auto parts = [&] {
        std::vector<std::string> out;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ':')) out.push_back(tok);
        return out;
    }();
    if (parts.size() < 3 || parts.size() > 4)
        throw ConfigError("dataset: expected synthetic:<kind>:<n>[:<seed>], got '" + spec + "'");
    const long n = parse_int(parts[2], "synthetic n");
    if (n < 2) throw ConfigError("dataset: synthetic n must be >= 2");
    const std::uint64_t seed =
        parts.size() == 4 ? static_cast<std::uint64_t>(parse_int(parts[3], "synthetic seed")) : 0;
    if (parts[1] == "color-edge") return generate_color_edge(static_cast<int>(n), seed);
    return generate_synthetic(synthetic_kind_from_string(parts[1]), static_cast<int>(n), seed);
}

ExperimentConfig parse_experiment_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.config_hash = fnv1a(text);

    bool snr_set = false, seeds_set = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("config: empty value for key '" + key + "'");

        try {
            if (key == "input") {
                for (const auto& v : split_list(value)) cfg.inputs.push_back(v);
            } else if (key == "out") {
                cfg.out = value;
            } else if (key == "snr_db") {
                cfg.snr_db.clear();
                for (const auto& v : split_list(value)) cfg.snr_db.push_back(parse_num(v, key));
                snr_set = true;
            } else if (key == "seeds") {
                cfg.seeds.clear();
                for (const auto& v : split_list(value))
                    cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(v, key)));
                seeds_set = true;
            } else if (key == "laplacian") {
                cfg.laplacians.clear();
                for (const auto& v : split_list(value)) cfg.laplacians.push_back(laplacian_from_string(v));
            } else if (key == "kappa_mode") {
                cfg.kappa_modes.clear();
                for (const auto& v : split_list(value)) cfg.kappa_modes.push_back(kappa_mode_from_string(v));
            } else if (key == "kernel") {
                cfg.kernels.clear();
                for (const auto& v : split_list(value)) cfg.kernels.push_back(kernel_from_string(v));
            } else if (key == "transform") {
                cfg.transforms.clear();
                for (const auto& v : split_list(value)) cfg.transforms.push_back(basis_kind_from_string(v));
            } else if (key == "bandwidth_ratio") {
                cfg.bandwidth_ratios.clear();
                for (const auto& v : split_list(value)) cfg.bandwidth_ratios.push_back(parse_num(v, key));
            } else if (key == "power_budget") {
                cfg.power_budget = parse_num(value, key);
            } else if (key == "max_block") {
                cfg.max_block = static_cast<int>(parse_int(value, key));
            } else if (key == "metadata") {
                if (value == "per_coefficient") cfg.metadata_mode = MetadataMode::per_coefficient;
                else if (value == "chunk_mean") cfg.metadata_mode = MetadataMode::chunk_mean;
                else throw ConfigError("config: metadata must be per_coefficient or chunk_mean");
            } else if (key == "chunk_size") {
                cfg.chunk_size = static_cast<int>(parse_int(value, key));
            } else if (key == "per_attribute_budget") {
                cfg.per_attribute_budget = parse_bool(value, key);
            } else if (key == "color_laplacian") {
                cfg.color_laplacian = laplacian_from_string(value);
            } else if (key == "color_kappa_mode") {
                cfg.color_kappa_mode = kappa_mode_from_string(value);
            } else if (key == "kappa_c_mode") {
                cfg.kappa_c_mode = kappa_mode_from_string(value);
            } else if (key == "sparsify") {
                cfg.sparsify = parse_bool(value, key);
            } else if (key == "dump_decoded") {
                cfg.dump_decoded_dir = value;
            } else if (key == "threads") {
                cfg.threads = static_cast<int>(parse_int(value, key));
            } else {
                throw ConfigError("config: unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config: key '" + key + "': " + e.what());
        }
    }

    if (cfg.inputs.empty()) throw ConfigError("config: at least one input is required");
    if (cfg.snr_db.empty() && snr_set) throw ConfigError("config: snr_db list is empty");
    if (cfg.seeds.empty() && seeds_set) throw ConfigError("config: seeds list is empty");
    if (cfg.laplacians.empty() || cfg.kappa_modes.empty() || cfg.kernels.empty() ||
        cfg.transforms.empty() || cfg.bandwidth_ratios.empty())
        throw ConfigError("config: sweep lists must be non-empty");
    if (cfg.threads < 1) throw ConfigError("config: threads must be >= 1");
    return cfg;
}

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_text(ss.str());
}

namespace {

CodecConfig cell_codec(const ExperimentConfig& cfg, const CellKey& key) {
    CodecConfig codec;
    codec.laplacian = cfg.laplacians[key.laplacian];
    codec.kernel.kind = cfg.kernels[key.kernel];
    codec.kernel.kappa_mode = cfg.kappa_modes[key.kappa];
    codec.kernel.kappa_c_mode = cfg.kappa_c_mode;
    codec.transform = cfg.transforms[key.transform];
    codec.bandwidth_ratio = cfg.bandwidth_ratios[key.ratio];
    codec.power_budget = cfg.power_budget;
    codec.max_block = cfg.max_block;
    codec.metadata_mode = cfg.metadata_mode;
    codec.chunk_size = cfg.chunk_size;
    codec.per_attribute_budget = cfg.per_attribute_budget;
    codec.color_laplacian = cfg.color_laplacian;
    codec.color_kappa_mode = cfg.color_kappa_mode;
    codec.sparsify_weights = cfg.sparsify;
    return codec;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
    // Datasets must be loadable up front; a bad reference is a config error,
    // unlike cell-level encoding failures which are isolated per row.
    std::vector<PointCloud> datasets;
    datasets.reserve(cfg.inputs.size());
    for (const auto& input : cfg.inputs) {
        try {
            datasets.push_back(load_dataset(input));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config: input '" + input + "': " + e.what());
        }
    }

    // Cells sharing (dataset, codec) reuse one encode; groups are the unit of
    // parallel work and rows keep canonical grid order regardless of timing.
    std::vector<CellKey> groups;
    for (size_t d = 0; d < cfg.inputs.size(); ++d)
        for (size_t l = 0; l < cfg.laplacians.size(); ++l)
            for (size_t m = 0; m < cfg.kappa_modes.size(); ++m)
                for (size_t k = 0; k < cfg.kernels.size(); ++k)
                    for (size_t t = 0; t < cfg.transforms.size(); ++t)
                        for (size_t r = 0; r < cfg.bandwidth_ratios.size(); ++r)
                            groups.push_back({d, l, m, k, t, r});

    const size_t cells_per_group = cfg.snr_db.size() * cfg.seeds.size();
    std::vector<std::vector<ResultRow>> group_rows(groups.size());

    auto run_group = [&](size_t gi) {
        const CellKey& key = groups[gi];
        const PointCloud& cloud = datasets[key.dataset];
        const CodecConfig codec = cell_codec(cfg, key);

        auto& rows = group_rows[gi];
        rows.resize(cells_per_group);
        size_t cell = 0;
        for (double snr : cfg.snr_db) {
            for (std::uint64_t seed : cfg.seeds) {
                ResultRow& row = rows[cell++];
                row.dataset = cfg.inputs[key.dataset];
                row.n_points = cloud.size();
                row.laplacian = codec.laplacian;
                row.kappa_mode = codec.kernel.kappa_mode;
                row.kernel = codec.kernel.kind;
                row.transform = codec.transform;
                row.bandwidth_ratio = codec.bandwidth_ratio;
                row.snr_db = snr;
                row.seed = seed;
            }
        }

        const auto t0 = std::chrono::steady_clock::now();
        EncodedCloud encoded;
        try {
            encoded = encode_cloud(cloud, codec);
        } catch (const std::exception& e) {
            for (auto& row : rows) row.status = std::string("error: ") + e.what();
            return;
        }
        const double encode_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        const double encode_share = encode_ms / static_cast<double>(cells_per_group);

        cell = 0;
        for (double snr : cfg.snr_db) {
            for (std::uint64_t seed : cfg.seeds) {
                ResultRow& row = rows[cell++];
                const auto c0 = std::chrono::steady_clock::now();
                try {
                    ChannelConfig ch{snr, seed, codec.power_budget};
                    const PointCloud decoded =
                        decode_cloud(encoded, transmit_cloud(encoded, ch), codec);
                    const QualityReport report = score_clouds(cloud, decoded);
                    row.smse_xyz_db = report.smse_xyz_db;
                    row.smse_yuv_db = report.smse_yuv_db;
                    if (!cfg.dump_decoded_dir.empty()) {
                        const std::string name = sanitize(row.dataset) + "_" +
                                                 to_string(row.transform) + "_" +
                                                 to_string(row.laplacian) + "_snr" +
                                                 fmt_double(snr, "%g") + "_seed" +
                                                 std::to_string(seed) + ".ply";
                        write_cloud(decoded, cfg.dump_decoded_dir + "/" + name,
                                    CloudFormat::ply_ascii);
                    }
                } catch (const std::exception& e) {
                    row.status = std::string("error: ") + e.what();
                }
                row.wall_time_ms =
                    encode_share + std::chrono::duration<double, std::milli>(
                                       std::chrono::steady_clock::now() - c0)
                                       .count();
            }
        }
    };

    const int threads = std::max(1, cfg.threads);
    if (threads == 1 || groups.size() <= 1) {
        for (size_t gi = 0; gi < groups.size(); ++gi) run_group(gi);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        const size_t workers = std::min<size_t>(static_cast<size_t>(threads), groups.size());
        pool.reserve(workers);
        for (size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t gi = next.fetch_add(1); gi < groups.size(); gi = next.fetch_add(1))
                    run_group(gi);
            });
        for (auto& t : pool) t.join();
    }

    SweepResult result;
    result.rows.reserve(groups.size() * cells_per_group);
    for (auto& rows : group_rows)
        for (auto& row : rows) {
            if (row.status != "ok") ++result.failed_cells;
            result.rows.push_back(std::move(row));
        }
    return result;
}

void write_result_csv(const SweepResult& result, const ExperimentConfig& cfg,
                      const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.config_hash));
    out << "# pointcast " << kVersion << " config_hash=" << hash << "\n";
    out << "dataset,n_points,laplacian,kappa_mode,kernel,transform,bandwidth_ratio,snr_db,seed,"
           "smse_xyz_db,smse_yuv_db,wall_time_ms,status\n";
    for (const ResultRow& row : result.rows) {
        std::string status = row.status;
        for (char& c : status)
            if (c == ',' || c == '\n' || c == '\r') c = ';';
        out << row.dataset << ',' << row.n_points << ',' << to_string(row.laplacian) << ','
            << to_string(row.kappa_mode) << ',' << to_string(row.kernel) << ','
            << to_string(row.transform) << ',' << fmt_double(row.bandwidth_ratio, "%.6g") << ','
            << fmt_double(row.snr_db, "%.6g") << ',' << row.seed << ',';
        if (row.status == "ok")
            out << fmt_double(row.smse_xyz_db) << ',' << fmt_double(row.smse_yuv_db);
        else
            out << ',';
        out << ',' << fmt_double(row.wall_time_ms, "%.3f") << ',' << status << '\n';
    }
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

void summarize_csv(const std::string& result_path, std::ostream& out) {
    std::ifstream in(result_path);
    if (!in) throw ConfigError("summarize: cannot open '" + result_path + "'");

    std::string line;
    bool header_seen = false;
    // key = the grid columns; value = per-seed dB samples
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> groups;
    int error_rows = 0;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("dataset,", 0) != 0)
                throw ConfigError("summarize: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> cols;
        {
            std::string cur;
            for (char c : line) {
                if (c == ',') {
                    cols.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            cols.push_back(cur);
        }
        if (cols.size() != 13) throw ConfigError("summarize: malformed row '" + line + "'");
        if (cols[12] != "ok") {
            ++error_rows;
            continue;
        }
        std::string key;
        for (int c = 0; c < 8; ++c) key += cols[static_cast<size_t>(c)] + ",";
        try {
            const double xyz = cols[9] == "-inf" ? -std::numeric_limits<double>::infinity()
                                                 : parse_num(cols[9], "smse_xyz_db");
            const double yuv = cols[10] == "-inf" ? -std::numeric_limits<double>::infinity()
                                                  : parse_num(cols[10], "smse_yuv_db");
            groups[key].first.push_back(xyz);
            groups[key].second.push_back(yuv);
        } catch (const std::exception&) {
            throw ConfigError("summarize: malformed numeric field in '" + line + "'");
        }
    }
    if (!header_seen) throw ConfigError("summarize: no header row found");

    size_t max_seeds = 0;
    for (const auto& [key, samples] : groups) max_seeds = std::max(max_seeds, samples.first.size());
    for (const auto& [key, samples] : groups)
        if (samples.first.size() < max_seeds)
            std::cerr << "warning: grid point " << key << " has " << samples.first.size()
                      << " of " << max_seeds << " seed rows; aggregating over present rows\n";
    if (error_rows > 0)
        std::cerr << "warning: " << error_rows << " error row(s) excluded from aggregation\n";

    auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };

    out << "dataset,n_points,laplacian,kappa_mode,kernel,transform,bandwidth_ratio,snr_db,"
           "n_seeds,mean_smse_xyz_db,median_smse_xyz_db,mean_smse_yuv_db,median_smse_yuv_db\n";
    for (const auto& [key, samples] : groups) {
        out << key << samples.first.size() << ',' << fmt_double(mean(samples.first)) << ','
            << fmt_double(median(samples.first)) << ',' << fmt_double(mean(samples.second)) << ','
            << fmt_double(median(samples.second)) << '\n';
    }
}

}  // namespace pointcast
