// Copyright 2026 The gkpforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gkpforge/serialize.h"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gkpforge {

namespace {

using nlohmann::ordered_json;

void write_header(std::ostream &out, const std::string &kind, const FileMetadata &meta) {
    out << "# gkpforge " << kind << "\n";
    out << "# command: " << meta.command << "\n";
    out << "# config_hash: " << meta.config_hash() << "\n";
    for (const auto &[k, v] : meta.config) {
        out << "# config: " << k << "=" << v << "\n";
    }
}

void write_axis(std::ostream &out, const std::string &name, const RVector &axis) {
    out << "# " << name << ":";
    for (Eigen::Index i = 0; i < axis.size(); ++i) {
        out << (i == 0 ? " " : ",") << format_number(axis[i]);
    }
    out << "\n";
}

std::vector<double> parse_numbers(const std::string &text) {
    std::vector<double> out;
    const char *p = text.c_str();
    while (*p != '\0') {
        while (*p == ' ' || *p == ',') {
            ++p;
        }
        if (*p == '\0') {
            break;
        }
        char *end = nullptr;
        const double v = std::strtod(p, &end);
        if (end == p) {
            throw ConfigError("malformed number in data file near '" + std::string(p).substr(0, 20) + "'");
        }
        out.push_back(v);
        p = end;
    }
    return out;
}

struct CsvFile {
    std::map<std::string, std::string> headers;  // "# key: value" lines
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<std::string>> text_rows;
    std::vector<int> line_numbers;  // source line of each data row
};

CsvFile read_csv(const std::string &path, bool numeric) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    CsvFile f;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const size_t colon = line.find(':');
            if (colon != std::string::npos) {
                std::string key = line.substr(2, colon - 2);
                std::string value = line.substr(colon + 1);
                if (!value.empty() && value[0] == ' ') {
                    value.erase(0, 1);
                }
                if (key != "config") {
                    f.headers[key] = value;
                }
            }
            continue;
        }
        f.line_numbers.push_back(line_no);
        if (numeric) {
            try {
                f.rows.push_back(parse_numbers(line));
            } catch (const ConfigError &e) {
                throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
            }
        } else {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                cells.push_back(cell);
            }
            f.text_rows.push_back(cells);
        }
    }
    return f;
}

const std::string &header(const CsvFile &f, const std::string &key, const std::string &path) {
    auto it = f.headers.find(key);
    if (it == f.headers.end()) {
        throw ConfigError(path + ": missing '# " + key + ":' header");
    }
    return it->second;
}

PositionGrid parse_grid(const CsvFile &f, const std::string &path) {
    const std::vector<double> g = parse_numbers(header(f, "grid", path));
    if (g.size() != 3) {
        throw ConfigError(path + ": grid header needs q_min,q_max,n_points");
    }
    return PositionGrid(g[0], g[1], static_cast<int>(g[2]));
}

void write_grid(std::ostream &out, const PositionGrid &grid) {
    out << "# grid: " << format_number(grid.q_min()) << "," << format_number(grid.q_max()) << ","
        << grid.n_points() << "\n";
    write_axis(out, "q_axis", grid.q_axis());
}

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path);
    }
    return out;
}

ordered_json config_object(const FileMetadata &meta) {
    ordered_json c = ordered_json::object();
    for (const auto &[k, v] : meta.config) {
        c[k] = v;
    }
    return c;
}

}  // namespace

std::string FileMetadata::config_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto &[k, v] : config) {
        for (char ch : k + "=" + v + "\n") {
            h ^= static_cast<unsigned char>(ch);
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", x == 0.0 ? 0.0 : x);
    return buf;
}

void write_wigner_csv(const std::string &path, const WignerGrid &w, const FileMetadata &meta) {
    std::ofstream out = open_out(path);
    write_header(out, "wigner", meta);
    write_axis(out, "q_axis", w.q_axis);
    write_axis(out, "p_axis", w.p_axis);
    for (Eigen::Index i = 0; i < w.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < w.values.cols(); ++j) {
            out << (j == 0 ? "" : ",") << format_number(w.values(i, j));
        }
        out << "\n";
    }
}

WignerGrid read_wigner_csv(const std::string &path) {
    const CsvFile f = read_csv(path, true);
    const std::vector<double> q = parse_numbers(header(f, "q_axis", path));
    const std::vector<double> p = parse_numbers(header(f, "p_axis", path));
    if (f.rows.size() != q.size()) {
        throw ConfigError(path + ": row count does not match q_axis");
    }
    WignerGrid w;
    w.q_axis = Eigen::Map<const RVector>(q.data(), static_cast<Eigen::Index>(q.size()));
    w.p_axis = Eigen::Map<const RVector>(p.data(), static_cast<Eigen::Index>(p.size()));
    w.values.resize(w.q_axis.size(), w.p_axis.size());
    for (size_t i = 0; i < f.rows.size(); ++i) {
        if (f.rows[i].size() != p.size()) {
            throw ConfigError(path + ":" + std::to_string(f.line_numbers[i]) + ": row length does not match p_axis");
        }
        for (size_t j = 0; j < p.size(); ++j) {
            w.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f.rows[i][j];
        }
    }
    return w;
}

void write_density_csv(const std::string &path, const GridDensityMatrix &rho, const FileMetadata &meta) {
    std::ofstream out = open_out(path);
    write_header(out, "density", meta);
    out << "# format: dense\n";
    write_grid(out, rho.grid);
    out << "# columns: re,im pairs of rho(q_i, q_j) for j along the row\n";
    for (Eigen::Index i = 0; i < rho.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.entries.cols(); ++j) {
            out << (j == 0 ? "" : ",") << format_number(rho.entries(i, j).real()) << ","
                << format_number(rho.entries(i, j).imag());
        }
        out << "\n";
    }
}

void write_density_csv(const std::string &path, const LowRankDensity &rho, const FileMetadata &meta) {
    std::ofstream out = open_out(path);
    write_header(out, "density", meta);
    out << "# format: low-rank\n";
    out << "# rank: " << rho.factors.cols() << "\n";
    write_grid(out, rho.grid);
    out << "# columns: re,im pairs of factor f_k(q_i); rho(q,q') = sum_k f_k(q) conj(f_k(q'))\n";
    for (Eigen::Index i = 0; i < rho.factors.rows(); ++i) {
        for (Eigen::Index k = 0; k < rho.factors.cols(); ++k) {
            out << (k == 0 ? "" : ",") << format_number(rho.factors(i, k).real()) << ","
                << format_number(rho.factors(i, k).imag());
        }
        out << "\n";
    }
}

std::variant<GridDensityMatrix, LowRankDensity> read_density_csv(const std::string &path) {
    const CsvFile f = read_csv(path, true);
    const PositionGrid grid = parse_grid(f, path);
    const std::string &format = header(f, "format", path);
    if (static_cast<int>(f.rows.size()) != grid.n_points()) {
        throw ConfigError(path + ": row count does not match grid");
    }
    size_t width = 0;
    if (format == "dense") {
        width = static_cast<size_t>(grid.n_points());
    } else if (format == "low-rank") {
        width = static_cast<size_t>(std::stoul(header(f, "rank", path)));
    } else {
        throw ConfigError(path + ": unknown density format '" + format + "'");
    }
    CMatrix m(grid.n_points(), static_cast<Eigen::Index>(width));
    for (size_t i = 0; i < f.rows.size(); ++i) {
        if (f.rows[i].size() != 2 * width) {
            throw ConfigError(path + ":" + std::to_string(f.line_numbers[i]) + ": wrong number of columns");
        }
        for (size_t k = 0; k < width; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = {f.rows[i][2 * k], f.rows[i][2 * k + 1]};
        }
    }
    if (format == "dense") {
        return GridDensityMatrix{grid, std::move(m)};
    }
    return LowRankDensity{grid, std::move(m)};
}

std::string fit_report_json(const FitResult &fit, const FileMetadata &meta) {
    ordered_json j;
    j["delta"] = fit.params.delta;
    j["kappa"] = fit.params.kappa;
    j["phi"] = fit.params.phi;
    j["fidelity"] = fit.fidelity;
    j["delta_dB"] = fit.delta_db();
    j["kappa_dB"] = kappa_to_db(fit.params.kappa);
    j["coarse_fidelity"] = fit.coarse_fidelity;
    j["iterations"] = fit.iterations;
    j["nonconvergence_flag"] = fit.nonconvergence_flag;
    j["metadata"] = {{"command", meta.command}, {"config_hash", meta.config_hash()}, {"config", config_object(meta)}};
    return j.dump(2) + "\n";
}

FitReport parse_fit_report(const std::string &json_text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(json_text);
        FitReport r;
        r.params.delta = j.at("delta").get<double>();
        r.params.kappa = j.at("kappa").get<double>();
        r.params.phi = j.at("phi").get<double>();
        r.fidelity = j.at("fidelity").get<double>();
        r.delta_db = j.at("delta_dB").get<double>();
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad fit report: ") + e.what());
    }
}

void write_sweep_csv(const std::string &path, const SweepResult &sweep, const FileMetadata &meta) {
    std::ofstream out = open_out(path);
    write_header(out, "sweep", meta);
    out << "# target: delta=" << format_number(sweep.target.delta) << ",kappa=" << format_number(sweep.target.kappa)
        << ",phi=" << format_number(sweep.target.phi) << "\n";
    out << "rate_ratio,channel,fidelity\n";
    for (const SweepRow &r : sweep.rows) {
        out << format_number(r.rate_ratio) << "," << channel_name(r.channel) << "," << format_number(r.fidelity)
            << "\n";
    }
}

std::vector<SweepRow> read_sweep_csv(const std::string &path) {
    const CsvFile f = read_csv(path, false);
    std::vector<SweepRow> rows;
    for (size_t i = 0; i < f.text_rows.size(); ++i) {
        const auto &cells = f.text_rows[i];
        if (i == 0 && !cells.empty() && cells[0] == "rate_ratio") {
            continue;
        }
        const std::string where = path + ":" + std::to_string(f.line_numbers[i]) + ": ";
        if (cells.size() != 3) {
            throw ConfigError(where + "sweep rows need rate_ratio,channel,fidelity");
        }
        try {
            const std::vector<double> ratio = parse_numbers(cells[0]);
            const std::vector<double> fid = parse_numbers(cells[2]);
            if (ratio.size() != 1 || fid.size() != 1) {
                throw ConfigError("expected one number per cell");
            }
            SweepRow r;
            r.rate_ratio = ratio[0];
            r.channel = parse_channel(cells[1]);
            r.fidelity = fid[0];
            rows.push_back(r);
        } catch (const ConfigError &e) {
            throw ConfigError(where + e.what());
        }
    }
    return rows;
}

void write_vstate_csv(const std::string &amplitudes_path, const std::string &samples_path, const QuditState &v,
                      const FileMetadata &meta, int n_samples) {
    if (n_samples < 2) {
        throw ConfigError("need at least two interpolation samples");
    }
    const QuditDims &dims = v.dims();
    {
        std::ofstream out = open_out(amplitudes_path);
        write_header(out, "vstate-amplitudes", meta);
        out << "level_index,k,re,im,abs\n";
        for (int b = 0; b < dims.dim(); ++b) {
            out << b << "," << format_number(dims.level(b)) << "," << format_number(v[b].real()) << ","
                << format_number(v[b].imag()) << "," << format_number(std::abs(v[b])) << "\n";
        }
    }
    const double half = dims.dim() / 2.0;
    std::vector<double> ys(static_cast<size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        ys[static_cast<size_t>(i)] = -half + 2.0 * half * i / n_samples;
    }
    const CVector vy = interpolate(v, ys);
    std::ofstream out = open_out(samples_path);
    write_header(out, "vstate-interpolation", meta);
    out << "y,re,im,abs\n";
    for (int i = 0; i < n_samples; ++i) {
        out << format_number(ys[static_cast<size_t>(i)]) << "," << format_number(vy[i].real()) << ","
            << format_number(vy[i].imag()) << "," << format_number(std::abs(vy[i])) << "\n";
    }
}

void write_schedule_csv(const std::string &path, const DriveSchedule &schedule, const FileMetadata &meta) {
    std::ofstream out = open_out(path);
    write_header(out, "schedule", meta);
    out << "# tau_I: " << format_number(schedule.tau_interaction) << "\n";
    out << "# tau_D: " << format_number(schedule.tau_disentangle) << "\n";
    out << "t_start,t_end,alpha_re,alpha_im,pre_ops\n";
    double t = 0.0;
    for (const DriveSegment &s : schedule.segments) {
        std::string ops;
        for (QubitOp op : s.pre_ops) {
            ops += (ops.empty() ? "" : ";") + qubit_op_name(op);
        }
        out << format_number(t) << "," << format_number(t + s.duration) << "," << format_number(s.alpha.real()) << ","
            << format_number(s.alpha.imag()) << "," << ops << "\n";
        t += s.duration;
    }
}

std::string dispersive_metadata_json(const SimConfig &config, const DispersiveResult &result,
                                     const FileMetadata &meta) {
    ordered_json j;
    j["command"] = meta.command;
    j["config_hash"] = meta.config_hash();
    j["config"] = config_object(meta);
    j["sim"] = {{"n_qubits", config.n_qubits},
                {"fock_cutoff", config.fock_cutoff},
                {"chi", config.chi},
                {"alpha0", config.alpha0},
                {"n_flips", config.n_flips},
                {"dt", config.resolved_dt()},
                {"number_coupling", config.number_coupling},
                {"W", config.w},
                {"P_q", config.peak_spacing},
                {"noise",
                 {{"kappa_loss", config.noise.kappa_loss},
                  {"kappa_dephase", config.noise.kappa_dephase},
                  {"gamma_decay", config.noise.gamma_decay},
                  {"gamma_dephase", config.noise.gamma_dephase}}}};
    j["tolerances"] = {{"trace_drift", 1e-6}, {"hermiticity", 1e-8}, {"fock_tail", 1e-8}};
    j["diagnostics"] = {{"steps", result.report.steps},
                        {"max_trace_drift", result.report.max_trace_drift},
                        {"max_hermiticity_error", result.report.max_hermiticity_error},
                        {"final_min_eigenvalue", result.report.final_min_eigenvalue},
                        {"max_purity", result.report.max_purity},
                        {"initial_fock_tail", result.initial_fock_tail},
                        {"final_fock_tail", result.fock_density.rows() > config.fock_cutoff
                                                ? std::abs(result.fock_density(config.fock_cutoff, config.fock_cutoff))
                                                : 0.0},
                        {"tau_I", result.schedule.tau_interaction},
                        {"tau_D", result.schedule.tau_disentangle},
                        {"flips", result.schedule.flip_count()}};
    return j.dump(2) + "\n";
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out = open_out(path);
    out << text;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace gkpforge
