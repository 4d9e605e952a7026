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

#ifndef LOQC_OPTIMIZE_HPP
#define LOQC_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "loqc/metrics.hpp"

namespace loqc {

/// Two-stage search configuration: gradient ascent on fidelity, then
/// penalty ascent on success probability inside the feasible set
/// {F >= fidelity_threshold}.
struct OptimizationConfig {
    enum class Space {
        reduced6,  // 3 active + 3 ancilla modes, 6x6 matrices (default)
        full9,     // all 6 computational + 3 ancilla modes, 9x9 matrices
    };

    Space space = Space::reduced6;
    int cycles = 200;
    std::uint64_t seed = 1;
    double fidelity_threshold = 1.0 - 1e-7;

    int stage1_max_iters = 40000;
    double stage1_initial_step = 0.05;

    int stage2_max_iters = 40000;
    double stage2_initial_penalty = 10.0;
    double stage2_improvement_tol = 1e-9;  // relative best-P gain ...
    int stage2_patience = 50;              // ... over this many iterations

    int threads = 0;  // 0: LOQC_THREADS env var, else hardware concurrency

    int mode_count() const { return space == Space::reduced6 ? 6 : 9; }
    void validate() const;
};

/// Real gradient of a real objective over the complex matrix entries,
/// split into d/dRe(m_pq) and d/dIm(m_pq).
struct Gradient {
    Eigen::MatrixXd re, im;

    double squared_norm() const { return re.squaredNorm() + im.squaredNorm(); }
    double norm() const;
};

/// The measurement-assisted controlled-sign objective for one search space.
///
/// Scores a candidate matrix m by the gate it realizes on the quad-rail
/// basis: the heralded amplitudes are rescaled by sigma_max(m)^-n per
/// n-photon path (the physical contraction the device implements), and for
/// the reduced space the map is lifted to the full basis with the optimal
/// spectator phases before comparison with the controlled-sign target.
/// Stateless and safe to share across threads.
class GateObjective {
  public:
    explicit GateObjective(OptimizationConfig::Space space);
    ~GateObjective();
    GateObjective(const GateObjective&) = delete;
    GateObjective& operator=(const GateObjective&) = delete;

    OptimizationConfig::Space space() const { return space_; }
    int mode_count() const { return modes_; }

    struct Eval {
        double fidelity = 0.0;
        double success_probability = 0.0;
        double sigma = 0.0;  // largest singular value of m
        cplx phase_x{1.0}, phase_y{1.0};  // spectator phases (reduced space)
    };

    Eval evaluate(const CMat& m) const;
    double fidelity(const CMat& m) const;
    double success_probability(const CMat& m) const;

    /// Stage-2 merit: P - lambda * max(0, threshold - F).
    double penalized(const CMat& m, double lambda, double threshold) const;

    /// Analytic gradients (matrix-calculus chain through the heralded
    /// amplitudes, the top singular value, and — in the reduced space — the
    /// spectator phases held at their optimum). They agree with central
    /// finite differences to first order; the finite-difference route stays
    /// available as the independent check.
    ///
    /// Both objectives are invariant under rescaling of m. `gauge_fixed`
    /// drops the sigma_max chain terms, giving the gradient of the raw
    /// (unrescaled) functional; on iterates normalized to sigma_max = 1 it
    /// is an ascent direction that avoids the non-differentiable creases a
    /// degenerate top singular value puts into the full gradient.
    Gradient fidelity_gradient(const CMat& m, bool gauge_fixed = false) const;
    Gradient success_gradient(const CMat& m, bool gauge_fixed = false) const;
    Gradient penalized_gradient(const CMat& m, double lambda, double threshold) const;

    /// All four gradients from one evaluation pass (the stage drivers build
    /// several candidate directions per iteration).
    struct GradientSet {
        Eval eval;
        Gradient fidelity_full, fidelity_fixed;
        Gradient success_full, success_fixed;
    };
    GradientSet gradient_set(const CMat& m) const;

    /// The measurement scheme both spaces use (one photon in, one detected,
    /// per trailing ancilla mode).
    MeasurementScheme scheme() const;

    struct Entry;
    struct Internal;

  private:
    Internal compute(const CMat& m) const;
    void entry_chains(const Internal& in, const std::vector<const std::vector<cplx>*>& weights,
                      std::vector<Eigen::MatrixXcd>& chains) const;

    OptimizationConfig::Space space_;
    int modes_;
    std::vector<Entry> entries_;
};

/// Central finite differences with step h over all 2 M^2 real parameters.
Gradient finite_difference_gradient(const std::function<double(const CMat&)>& objective,
                                    const CMat& m, double h = 1e-6);

struct Stage1Result {
    ModeTransform matrix;
    double fidelity = 0.0;
    bool success = false;
    int iterations = 0;
    std::vector<double> accepted_fidelities;  // non-decreasing
};

/// Backtracking gradient ascent on fidelity until the threshold (with a
/// small safety margin) is met or progress stalls. A failed cycle is
/// flagged, not thrown.
Stage1Result stage1_fidelity_ascent(const ModeTransform& start, const GateObjective& objective,
                                    const OptimizationConfig& cfg);

struct Stage2Result {
    ModeTransform matrix;
    GateMetrics metrics;
    bool success = false;
    int iterations = 0;
    std::vector<double> accepted_probabilities;  // feasible accepts, non-decreasing
};

/// Penalty ascent on P - lambda * max(0, threshold - F), doubling lambda
/// whenever an accepted step violates the constraint. Returns the best
/// feasible iterate; fails only if the start violates the constraint.
Stage2Result stage2_probability_ascent(const ModeTransform& m0, const GateObjective& objective,
                                       const OptimizationConfig& cfg);

struct CycleOutcome {
    int cycle = 0;
    bool success = false;
    double fidelity = 0.0;
    double success_probability = 0.0;
    CMat matrix;  // final iterate of successful cycles
};

struct OptimizationResult {
    bool any_success = false;
    ModeTransform best_matrix;
    GateMetrics best_metrics;
    std::vector<CycleOutcome> distribution;  // successes, ascending success probability
    std::vector<CycleOutcome> all_cycles;    // every cycle, in cycle order
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
};

/// Runs cfg.cycles independent two-stage searches from seeded random starts
/// (i.i.d. standard complex Gaussian entries). Cycles are distributed over
/// worker threads; per-cycle seeding plus in-order merging makes the result
/// identical for any thread count. Deterministic given (seed, cfg).
OptimizationResult run_cycles(const OptimizationConfig& cfg);

/// i.i.d. CN(0,1) entries from a per-cycle generator.
CMat random_start(int modes, std::uint64_t seed);

/// Derives the cycle generator seed from (run seed, cycle index).
std::uint64_t cycle_seed(std::uint64_t run_seed, int cycle);

int resolve_thread_count(int requested);

}  // namespace loqc

#endif
