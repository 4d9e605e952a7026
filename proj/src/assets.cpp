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

#include "loqc/assets.hpp"

#include <array>

namespace loqc::assets {

namespace {

constexpr double A_RE = -0.611421;  // pass-through phase alpha
constexpr double A_IM = -0.791452;

// Column-major table of the 9x9 encoder, kept in the layout it was
// published in (a few columns at a time) to make review against the source
// straightforward. Each entry is {re, im}.
constexpr double kColumns[9][9][2] = {
    // column 0
    {{-0.253936, 0.215424},
     {0, 0},
     {0.0473299, 0.183042},
     {0, 0},
     {0.196523, -0.216478},
     {0, 0},
     {-0.33549, -0.135251},
     {0.318659, 0.380869},
     {0.277613, -0.411775}},
    // column 1 (pass-through)
    {{0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
    // column 2
    {{-0.0269989, 0.211134},
     {0, 0},
     {-0.136174, 0.454254},
     {0, 0},
     {-0.233841, 0.184769},
     {0, 0},
     {0.314695, 0.192451},
     {0.3053, 0.314815},
     {-0.0145173, 0.484746}},
    // column 3 (pass-through, phase alpha)
    {{0, 0}, {0, 0}, {0, 0}, {A_RE, A_IM}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
    // column 4
    {{-0.249991, -0.213976},
     {0, 0},
     {0.262553, 0.141112},
     {0, 0},
     {-0.159651, 0.187183},
     {0, 0},
     {-0.515822, 0.243508},
     {0.220057, -0.296955},
     {0.039117, 0.303606}},
    // column 5 (pass-through, phase alpha)
    {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {A_RE, A_IM}, {0, 0}, {0, 0}, {0, 0}},
    // column 6
    {{0.410744, 0.0245062},
     {0, 0},
     {-0.4806, -0.326223},
     {0, 0},
     {-0.264695, -0.0518749},
     {0, 0},
     {-0.23816, -0.143929},
     {0.132686, -0.193403},
     {0.382029, 0.183596}},
    // column 7
    {{0.367852, -0.184455},
     {0, 0},
     {0.298488, -0.221226},
     {0, 0},
     {0.153492, 0.498569},
     {0, 0},
     {-0.278242, -0.00531807},
     {-0.0860369, 0.41503},
     {-0.229701, 0.0475146}},
    // column 8
    {{-0.0349526, 0.229345},
     {0, 0},
     {-0.0337073, 0.290301},
     {0, 0},
     {0.403926, -0.202786},
     {0, 0},
     {-0.337872, -0.21804},
     {-0.334824, -0.268026},
     {-0.164744, 0.395987}},
};

}  // namespace

ModeTransform appendix_matrix() {
    CMat m(9, 9);
    for (int c = 0; c < 9; ++c)
        for (int r = 0; r < 9; ++r) m(r, c) = cplx(kColumns[c][r][0], kColumns[c][r][1]);
    return ModeTransform(std::move(m));
}

MatrixFile appendix_matrix_file() {
    MatrixFile f = MatrixFile::wrap(appendix_matrix().matrix, "appendix_9x9",
                                    "bundled encoder solution, six-digit entries");
    return f;
}

}  // namespace loqc::assets
