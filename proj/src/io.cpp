// Copyright 2026 The loqc Authors
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

#include "loqc/io.hpp"

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace loqc {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string matrix_checksum(const CMat& m) {
    std::ostringstream os;
    os << m.rows() << ";";
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            os << format_double(m(r, c).real()) << "," << format_double(m(r, c).imag()) << ";";
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a(os.str()));
    return buf;
}

MatrixFile MatrixFile::wrap(const CMat& m, std::string label, std::string source) {
    if (m.rows() != m.cols()) throw std::invalid_argument("MatrixFile: matrix must be square");
    MatrixFile f;
    f.label = std::move(label);
    f.source = std::move(source);
    f.mode_count = static_cast<int>(m.rows());
    f.matrix = m;
    f.checksum = matrix_checksum(m);
    return f;
}

std::string to_json(const MatrixFile& f) {
    json j;
    j["label"] = f.label;
    j["source"] = f.source;
    j["mode_count"] = f.mode_count;
    json entries = json::array();
    for (int r = 0; r < f.matrix.rows(); ++r)
        for (int c = 0; c < f.matrix.cols(); ++c)
            entries.push_back({f.matrix(r, c).real(), f.matrix(r, c).imag()});
    j["entries"] = std::move(entries);
    if (!f.checksum.empty()) j["checksum"] = f.checksum;
    return j.dump(2) + "\n";
}

MatrixFile matrix_file_from_json(const std::string& text) {
    const json j = json::parse(text);
    MatrixFile f;
    f.label = j.value("label", "");
    f.source = j.value("source", "");
    f.mode_count = j.at("mode_count").get<int>();
    const auto& entries = j.at("entries");
    if (f.mode_count < 1 ||
        entries.size() != static_cast<std::size_t>(f.mode_count) * f.mode_count)
        throw std::runtime_error("matrix file: entry count does not match mode_count^2");
    f.matrix.resize(f.mode_count, f.mode_count);
    std::size_t k = 0;
    for (int r = 0; r < f.mode_count; ++r) {
        for (int c = 0; c < f.mode_count; ++c, ++k) {
            const double re = entries[k].at(0).get<double>();
            const double im = entries[k].at(1).get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                throw std::runtime_error("matrix file: non-finite entry");
            f.matrix(r, c) = cplx(re, im);
        }
    }
    if (j.contains("checksum")) {
        f.checksum = j["checksum"].get<std::string>();
        const std::string actual = matrix_checksum(f.matrix);
        if (actual != f.checksum)
            throw std::runtime_error("matrix file: checksum mismatch (stored " + f.checksum +
                                     ", computed " + actual + ")");
    }
    return f;
}

MatrixFile load_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return matrix_file_from_json(ss.str());
    } catch (const json::exception& e) {
        throw std::runtime_error("matrix file " + path.string() + ": " + e.what());
    }
}

void save_matrix_file(const MatrixFile& f, const std::filesystem::path& path) {
    atomic_write(path, to_json(f));
}

std::string to_json(const Netlist& n) {
    json j;
    j["mode_count"] = n.mode_count;
    j["global_phase"] = {n.global_phase.real(), n.global_phase.imag()};
    json elems = json::array();
    for (const auto& e : n.elements) {
        json je;
        if (e.kind == InterferometerElement::Kind::beamsplitter) {
            je["kind"] = "beamsplitter";
            je["modes"] = {e.mode_a, e.mode_b};
            je["theta"] = e.theta;
        } else {
            je["kind"] = "phase_shifter";
            je["modes"] = {e.mode_a};
        }
        je["phi"] = e.phi;
        elems.push_back(std::move(je));
    }
    j["elements"] = std::move(elems);
    return j.dump(2) + "\n";
}

Netlist netlist_from_json(const std::string& text) {
    const json j = json::parse(text);
    Netlist n;
    n.mode_count = j.at("mode_count").get<int>();
    const auto& gp = j.at("global_phase");
    n.global_phase = cplx(gp.at(0).get<double>(), gp.at(1).get<double>());
    for (const auto& je : j.at("elements")) {
        InterferometerElement e;
        const std::string kind = je.at("kind").get<std::string>();
        const auto& modes = je.at("modes");
        if (kind == "beamsplitter") {
            e.kind = InterferometerElement::Kind::beamsplitter;
            e.mode_a = modes.at(0).get<int>();
            e.mode_b = modes.at(1).get<int>();
            e.theta = je.at("theta").get<double>();
        } else if (kind == "phase_shifter") {
            e.kind = InterferometerElement::Kind::phase_shifter;
            e.mode_a = modes.at(0).get<int>();
        } else {
            throw std::runtime_error("netlist: unknown element kind '" + kind + "'");
        }
        e.phi = je.at("phi").get<double>();
        n.elements.push_back(e);
    }
    return n;
}

void save_netlist(const Netlist& n, const std::filesystem::path& path) {
    atomic_write(path, to_json(n));
}

Netlist load_netlist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open netlist: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return netlist_from_json(ss.str());
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("short write: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace loqc
