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

#include "config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace gkpforge::cli {

namespace {

using boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>> &schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"protocol", {"n_qubits", "W", "W_db", "P_q", "theta_v", "phi_v", "omega_v"}},
        {"grid", {"q_min", "q_max", "n_points"}},
        {"dispersive",
         {"chi", "alpha0", "n_flips", "fock_cutoff", "dt", "kappa_loss", "kappa_dephase", "gamma_decay", "gamma_dephase",
          "number_coupling"}},
        {"output", {"directory", "formats", "wigner_q_limit", "wigner_p_limit", "wigner_q_stride"}},
    };
    return s;
}

class Reader {
  public:
    Reader(const ptree &tree, std::string origin) : tree_(tree), origin_(std::move(origin)) {}

    std::optional<std::string> raw(const std::string &section, const std::string &key) const {
        const auto sec = tree_.get_child_optional(section);
        if (!sec) {
            return std::nullopt;
        }
        const auto v = sec->get_child_optional(ptree::path_type(key, '\0'));
        if (!v) {
            return std::nullopt;
        }
        return v->data();
    }

    double number(const std::string &section, const std::string &key, double fallback) const {
        const auto text = raw(section, key);
        return text ? parse_number(section, key, *text) : fallback;
    }

    std::optional<double> maybe_number(const std::string &section, const std::string &key) const {
        const auto text = raw(section, key);
        if (!text) {
            return std::nullopt;
        }
        return parse_number(section, key, *text);
    }

    int integer(const std::string &section, const std::string &key, int fallback) const {
        const auto text = raw(section, key);
        if (!text) {
            return fallback;
        }
        int v = 0;
        const auto r = std::from_chars(text->data(), text->data() + text->size(), v);
        if (r.ec != std::errc() || r.ptr != text->data() + text->size()) {
            fail(section, key, "expected an integer, got '" + *text + "'");
        }
        return v;
    }

    bool boolean(const std::string &section, const std::string &key, bool fallback) const {
        const auto text = raw(section, key);
        if (!text) {
            return fallback;
        }
        if (*text == "true" || *text == "1") {
            return true;
        }
        if (*text == "false" || *text == "0") {
            return false;
        }
        fail(section, key, "expected true or false, got '" + *text + "'");
    }

    [[noreturn]] void fail(const std::string &section, const std::string &key, const std::string &why) const {
        throw ConfigError(origin_ + ": [" + section + "] " + key + ": " + why);
    }

  private:
    double parse_number(const std::string &section, const std::string &key, const std::string &text) const {
        double v = 0.0;
        const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
        if (r.ec != std::errc() || r.ptr != text.data() + text.size() || !std::isfinite(v)) {
            fail(section, key, "expected a number, got '" + text + "'");
        }
        return v;
    }

    const ptree &tree_;
    std::string origin_;
};

std::set<std::string> split_formats(const std::string &text, const std::string &origin) {
    std::set<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const size_t a = item.find_first_not_of(' ');
        const size_t b = item.find_last_not_of(' ');
        if (a == std::string::npos) {
            continue;
        }
        item = item.substr(a, b - a + 1);
        if (!known_formats().count(item)) {
            throw ConfigError(origin + ": [output] formats: unknown format '" + item + "'");
        }
        out.insert(item);
    }
    return out;
}

}  // namespace

std::string shortest(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x == 0.0 ? 0.0 : x);
    return std::string(buf, r.ptr);
}

ProtocolParams RunConfig::protocol() const {
    ProtocolParams p;
    p.n_qubits = n_qubits;
    p.w = w;
    p.peak_spacing = peak_spacing;
    p.vprep = vprep;
    p.grid = grid;
    return p;
}

SimConfig RunConfig::sim() const {
    SimConfig c;
    c.n_qubits = n_qubits;
    c.fock_cutoff = fock_cutoff;
    c.chi = chi;
    c.alpha0 = alpha0;
    c.n_flips = n_flips;
    c.dt = dt;
    c.noise = noise;
    c.number_coupling = number_coupling;
    c.w = w;
    c.peak_spacing = peak_spacing;
    c.vprep = vprep;
    c.grid = grid;
    return c;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("protocol.n_qubits", std::to_string(n_qubits));
    if (w_db) {
        e.emplace_back("protocol.W_db", shortest(*w_db));
    }
    e.emplace_back("protocol.W", shortest(w));
    e.emplace_back("protocol.P_q", shortest(peak_spacing));
    e.emplace_back("protocol.theta_v", shortest(vprep.theta_v));
    e.emplace_back("protocol.phi_v", shortest(vprep.phi_v));
    e.emplace_back("protocol.omega_v", shortest(vprep.omega_v));
    e.emplace_back("grid.q_min", shortest(grid.q_min()));
    e.emplace_back("grid.q_max", shortest(grid.q_max()));
    e.emplace_back("grid.n_points", std::to_string(grid.n_points()));
    e.emplace_back("dispersive.chi", shortest(chi));
    e.emplace_back("dispersive.alpha0", shortest(alpha0));
    e.emplace_back("dispersive.n_flips", std::to_string(n_flips));
    e.emplace_back("dispersive.fock_cutoff", std::to_string(fock_cutoff));
    e.emplace_back("dispersive.dt", shortest(sim().resolved_dt()));
    e.emplace_back("dispersive.kappa_loss", shortest(noise.kappa_loss));
    e.emplace_back("dispersive.kappa_dephase", shortest(noise.kappa_dephase));
    e.emplace_back("dispersive.gamma_decay", shortest(noise.gamma_decay));
    e.emplace_back("dispersive.gamma_dephase", shortest(noise.gamma_dephase));
    e.emplace_back("dispersive.number_coupling", number_coupling ? "true" : "false");
    std::string f;
    for (const std::string &x : formats) {
        f += (f.empty() ? "" : ",") + x;
    }
    e.emplace_back("output.formats", f);
    e.emplace_back("output.wigner_q_limit", shortest(wigner.q_limit));
    e.emplace_back("output.wigner_p_limit", shortest(wigner.p_limit));
    e.emplace_back("output.wigner_q_stride", std::to_string(wigner.q_stride));
    return e;
}

RunConfig parse_config(std::istream &in, const std::string &origin) {
    ptree tree;
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error &e) {
        throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    for (const auto &[section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end()) {
            throw ConfigError(origin + ": unknown section [" + section + "]");
        }
        if (!body.data().empty()) {
            throw ConfigError(origin + ": key '" + section + "' outside any section");
        }
        for (const auto &kv : body) {
            if (!it->second.count(kv.first)) {
                throw ConfigError(origin + ": [" + section + "] unknown key '" + kv.first + "'");
            }
        }
    }

    const Reader r(tree, origin);
    RunConfig c;
    c.n_qubits = r.integer("protocol", "n_qubits", c.n_qubits);
    const std::optional<double> w = r.maybe_number("protocol", "W");
    c.w_db = r.maybe_number("protocol", "W_db");
    if (w.has_value() == c.w_db.has_value()) {
        throw ConfigError(origin + ": [protocol] needs exactly one of W and W_db");
    }
    c.w = w ? *w : db_to_width(*c.w_db);
    c.peak_spacing = r.number("protocol", "P_q", c.peak_spacing);
    c.vprep.theta_v = r.number("protocol", "theta_v", c.vprep.theta_v);
    c.vprep.phi_v = r.number("protocol", "phi_v", c.vprep.phi_v);
    c.vprep.omega_v = r.number("protocol", "omega_v", c.vprep.omega_v);

    const bool any_grid = tree.get_child_optional("grid").has_value();
    if (any_grid) {
        const PositionGrid fallback = c.w > 1.0 ? PositionGrid::for_width(c.w) : PositionGrid::standard();
        c.grid = PositionGrid(r.number("grid", "q_min", fallback.q_min()), r.number("grid", "q_max", fallback.q_max()),
                              r.integer("grid", "n_points", fallback.n_points()));
    } else if (c.w > 1.0) {
        c.grid = PositionGrid::for_width(c.w);
    }

    c.chi = r.number("dispersive", "chi", c.chi);
    c.alpha0 = r.number("dispersive", "alpha0", c.alpha0);
    c.n_flips = r.integer("dispersive", "n_flips", c.n_flips);
    c.fock_cutoff = r.integer("dispersive", "fock_cutoff", c.fock_cutoff);
    c.dt = r.number("dispersive", "dt", c.dt);
    c.noise.kappa_loss = r.number("dispersive", "kappa_loss", 0.0);
    c.noise.kappa_dephase = r.number("dispersive", "kappa_dephase", 0.0);
    c.noise.gamma_decay = r.number("dispersive", "gamma_decay", 0.0);
    c.noise.gamma_dephase = r.number("dispersive", "gamma_dephase", 0.0);
    c.number_coupling = r.boolean("dispersive", "number_coupling", c.number_coupling);

    if (const auto dir = r.raw("output", "directory")) {
        c.directory = *dir;
    }
    if (const auto formats = r.raw("output", "formats")) {
        c.formats = split_formats(*formats, origin);
    }
    c.wigner.q_limit = r.number("output", "wigner_q_limit", c.wigner.q_limit);
    c.wigner.p_limit = r.number("output", "wigner_p_limit", c.wigner.p_limit);
    c.wigner.q_stride = r.integer("output", "wigner_q_stride", c.wigner.q_stride);
    if (c.wigner.q_stride < 1 || c.wigner.q_limit <= 0.0 || c.wigner.p_limit <= 0.0) {
        throw ConfigError(origin + ": [output] Wigner window needs positive limits and stride");
    }

    c.protocol().validate();
    return c;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path);
    }
    return parse_config(in, path);
}

}  // namespace gkpforge::cli
