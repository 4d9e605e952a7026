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

#include "loqc/dilation.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace loqc {

std::vector<double> singular_values(const ModeTransform& m) {
    Eigen::JacobiSVD<CMat> svd(m.matrix);
    const auto& s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

NotAContraction::NotAContraction(double sm)
    : std::invalid_argument("dilate: largest singular value " + std::to_string(sm) +
                            " exceeds 1; rescale the matrix first"),
      sigma_max(sm) {}

ModeTransform dilate(const ModeTransform& m) {
    const int n = m.mode_count();
    Eigen::JacobiSVD<CMat> svd(m.matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd s = svd.singularValues();
    if (s.size() > 0 && s(0) > 1.0 + 1e-9) throw NotAContraction(s(0));

    std::vector<int> defects;
    for (int i = 0; i < n; ++i)
        if (s(i) < 1.0 - 1e-9) defects.push_back(i);
    const int k = static_cast<int>(defects.size());
    if (k == 0) return m;

    // In the singular basis the dilation closes each defect direction with a
    // 2x2 rotation [[s, c], [c, -s]], c = sqrt(1 - s^2).
    CMat core = CMat::Zero(n + k, n + k);
    for (int i = 0; i < n; ++i) core(i, i) = std::min(s(i), 1.0);
    for (int j = 0; j < k; ++j) {
        const int i = defects[j];
        const double c = std::sqrt(std::max(0.0, 1.0 - s(i) * s(i)));
        core(i, n + j) = c;
        core(n + j, i) = c;
        core(n + j, n + j) = -s(i);
    }

    CMat w = CMat::Identity(n + k, n + k);
    w.topLeftCorner(n, n) = svd.matrixU();
    CMat vh = CMat::Identity(n + k, n + k);
    vh.topLeftCorner(n, n) = svd.matrixV().adjoint();

    CMat u = w * core * vh;
    // The SVD product reconstructs m only to rounding error; pin the block
    // exactly so downstream equality checks are structural.
    u.topLeftCorner(n, n) = m.matrix;
    return ModeTransform(std::move(u));
}

ModeTransform clean_singular_values(const ModeTransform& m, double snap_tol) {
    Eigen::JacobiSVD<CMat> svd(m.matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd s = svd.singularValues();
    bool changed = false;
    for (int i = 0; i < s.size(); ++i) {
        if (s(i) > 1.0 || s(i) >= 1.0 - snap_tol) {
            changed = changed || s(i) != 1.0;
            s(i) = 1.0;
        }
    }
    if (!changed) return m;
    return ModeTransform(svd.matrixU() * s.asDiagonal().toDenseMatrix().cast<cplx>() *
                         svd.matrixV().adjoint());
}

}  // namespace loqc
