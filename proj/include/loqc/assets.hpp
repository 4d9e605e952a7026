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

#ifndef LOQC_ASSETS_HPP
#define LOQC_ASSETS_HPP

#include "loqc/io.hpp"

namespace loqc::assets {

/// The bundled 9-mode encoder solution (six-digit entries, pass-through
/// phase alpha = -0.611421 - 0.791452i on two bypassed modes). Built into
/// the binary so the CLI works without a data directory; the same matrix
/// ships as data/appendix_9x9.json.
ModeTransform appendix_matrix();

/// The bundled matrix wrapped with label, source note, and checksum.
MatrixFile appendix_matrix_file();

/// Digest the bundled matrix must hash to; a unit test pins it so that any
/// accidental edit of the table is caught.
inline constexpr const char* kAppendixChecksum = "a8dcc7310ac85b3b";

}  // namespace loqc::assets

#endif
