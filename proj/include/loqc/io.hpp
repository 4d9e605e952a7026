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

#ifndef LOQC_IO_HPP
#define LOQC_IO_HPP

#include <filesystem>
#include <string>

#include "loqc/fock.hpp"
#include "loqc/reck.hpp"

namespace loqc {

inline constexpr const char* kToolVersion = "0.1.0";

/// On-disk representation of a mode transform: JSON with a row-major list of
/// [re, im] pairs. Doubles serialize round-trip exact. The optional checksum
/// (FNV-1a over the canonical 17-significant-digit rendering of the entries)
/// guards bundled assets against silent edits.
struct MatrixFile {
    std::string label;
    std::string source;
    int mode_count = 0;
    CMat matrix;
    std::string checksum;  // empty = unchecked

    static MatrixFile wrap(const CMat& m, std::string label, std::string source = "");
};

/// Canonical digest of (mode_count, entries); hex string.
std::string matrix_checksum(const CMat& m);

std::string to_json(const MatrixFile& f);
MatrixFile matrix_file_from_json(const std::string& text);

MatrixFile load_matrix_file(const std::filesystem::path& path);
void save_matrix_file(const MatrixFile& f, const std::filesystem::path& path);

std::string to_json(const Netlist& n);
Netlist netlist_from_json(const std::string& text);
void save_netlist(const Netlist& n, const std::filesystem::path& path);
Netlist load_netlist(const std::filesystem::path& path);

/// Writes content to path via a temporary file + rename, so readers never
/// observe a half-written file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string format_double(double v);  // %.17g

}  // namespace loqc

#endif
