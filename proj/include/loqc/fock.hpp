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

#ifndef LOQC_FOCK_HPP
#define LOQC_FOCK_HPP

#include <compare>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace loqc {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Photon numbers above this limit are rejected everywhere (factorials are
/// precomputed up to here and Ryser permanents stay cheap).
inline constexpr int kMaxPhotons = 12;

/// n! for n <= kMaxPhotons, exact in double. Throws std::out_of_range above.
double factorial(int n);

/// Amplitudes smaller than this in magnitude are dropped after a transform.
inline constexpr double kAmplitudePruneThreshold = 1e-14;

/// One Fock basis element: photon occupation number per optical mode.
/// Immutable after construction; ordered lexicographically on occupations so
/// that state maps iterate (and serialize) in a stable order.
class FockBasisState {
  public:
    explicit FockBasisState(std::vector<int> occupations);

    int mode_count() const { return static_cast<int>(occ_.size()); }
    int photon_count() const { return photons_; }
    int operator[](int mode) const { return occ_[mode]; }
    const std::vector<int>& occupations() const { return occ_; }

    friend auto operator<=>(const FockBasisState& a, const FockBasisState& b) {
        return a.occ_ <=> b.occ_;
    }
    friend bool operator==(const FockBasisState& a, const FockBasisState& b) {
        return a.occ_ == b.occ_;
    }

    std::string str() const;  // e.g. "|1,0,2>"

  private:
    std::vector<int> occ_;
    int photons_ = 0;
};

/// Sparse complex amplitude map over Fock basis states of a fixed mode count.
/// The squared norm may be below one: after postselection it carries the
/// heralding probability of the surviving branch.
class PhotonicState {
  public:
    explicit PhotonicState(int mode_count);

    static PhotonicState single_term(const FockBasisState& s, cplx amplitude = 1.0);

    int mode_count() const { return mode_count_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Adds into the existing amplitude (creating the term if absent).
    void add_term(const FockBasisState& s, cplx amplitude);
    cplx amplitude(const FockBasisState& s) const;

    double squared_norm() const;
    PhotonicState& scale(cplx factor);
    void prune(double threshold = kAmplitudePruneThreshold);

    const std::map<FockBasisState, cplx>& terms() const { return terms_; }

    std::string str() const;

  private:
    int mode_count_;
    std::map<FockBasisState, cplx> terms_;
};

/// An M x M complex matrix acting on the mode creation operators,
/// a_in_j^dag -> sum_i matrix(i, j) a_out_i^dag. Not necessarily unitary:
/// contractions are scored by the same permanent formula and only dilated to
/// a unitary when compiled to hardware elements.
struct ModeTransform {
    CMat matrix;

    ModeTransform() = default;
    explicit ModeTransform(CMat m);

    int mode_count() const { return static_cast<int>(matrix.rows()); }
    bool is_unitary(double tol = 1e-10) const;

    static ModeTransform identity(int modes);
};

/// All occupation patterns of `photon_count` photons over `mode_count` modes,
/// in descending lexicographic order (so (1,0) precedes (0,1)). The count is
/// C(photon_count + mode_count - 1, mode_count - 1).
std::vector<FockBasisState> enumerate_basis(int mode_count, int photon_count);

/// <out| U(t) |in> for Fock states via the permanent of the row/column
/// repeated submatrix, divided by sqrt(prod in! * prod out!). Photon number
/// mismatch returns exactly zero (a single linear-optical block conserves
/// photon number; loss is modeled only through dilation plus vacuum
/// postselection).
cplx transition_amplitude(const ModeTransform& t, const FockBasisState& in,
                          const FockBasisState& out);

/// Linear extension of transition_amplitude over all terms. Amplitudes below
/// kAmplitudePruneThreshold are dropped from the result.
PhotonicState apply_transform(const ModeTransform& t, const PhotonicState& s);

/// Keeps terms whose occupations on `ancilla_modes` match `pattern`, strips
/// those modes, and returns the remaining-state WITHOUT renormalizing: the
/// squared norm of the result is the heralding probability of this branch.
PhotonicState postselect(const PhotonicState& s, const std::vector<int>& ancilla_modes,
                         const std::vector<int>& pattern);

}  // namespace loqc

#endif
