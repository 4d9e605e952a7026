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

#include "loqc/optimize.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "loqc/kernels.hpp"

namespace loqc {

namespace {

// Both spaces score against the 8-dimensional quad-rail controlled-sign
// target; the reduced map reaches it through the spectator-phase lift.
constexpr double kTargetDim = 8.0;

constexpr double kSigmaFloor = 1e-12;

}  // namespace

void OptimizationConfig::validate() const {
    if (cycles < 1) throw std::invalid_argument("config: cycles must be >= 1");
    if (!(fidelity_threshold > 0.0 && fidelity_threshold < 1.0))
        throw std::invalid_argument("config: fidelity_threshold must lie in (0, 1)");
    if (stage1_max_iters < 1 || stage2_max_iters < 1)
        throw std::invalid_argument("config: iteration limits must be >= 1");
    if (stage1_initial_step <= 0.0) throw std::invalid_argument("config: step must be positive");
    if (stage2_initial_penalty <= 0.0)
        throw std::invalid_argument("config: penalty weight must be positive");
    if (stage2_patience < 1) throw std::invalid_argument("config: patience must be >= 1");
    if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
}

double Gradient::norm() const { return std::sqrt(squared_norm()); }

// ---------------------------------------------------------------------------
// Objective engine
// ---------------------------------------------------------------------------

// One heralded amplitude A_e = <out | m | in> that survives the lift to the
// full logical basis. `gamma` selects its weight in tr(target^dag At):
// the vacuum sector rides both spectator phases, the single-V sectors the
// H_A phase, the bypassed-single sector the shared A1 phase. `mult` counts
// how many full-basis entries share this amplitude.
struct GateObjective::Entry {
    enum class Gamma { vac, single, bypass, plus, flipped, none };
    int row_state, col_state;
    Gamma gamma;
    double mult;
    int nphot;
    std::vector<int> row_modes, col_modes;
    int offset = 0;  // position of this entry's submatrix in the scratch pool
};

namespace {

cplx gamma_value(GateObjective::Entry::Gamma g, cplx x, cplx y) {
    using G = GateObjective::Entry::Gamma;
    switch (g) {
        case G::vac: return 2.0 * x * y;
        case G::single: return x;
        case G::bypass: return 2.0 * y;
        case G::plus: return cplx(1.0);
        case G::flipped: return cplx(-1.0);
        case G::none: return cplx(0.0);
    }
    return cplx(0.0);
}

std::vector<int> expand_occupation(const std::vector<int>& occ) {
    std::vector<int> modes;
    for (std::size_t m = 0; m < occ.size(); ++m)
        for (int k = 0; k < occ[m]; ++k) modes.push_back(static_cast<int>(m));
    return modes;
}

}  // namespace

GateObjective::~GateObjective() = default;

struct GateObjective::Internal {
    std::vector<cplx> amps;
    std::vector<cplx> subs;
    double sigma = 0.0;
    // Singular directions of the top cluster (all sigma_i within a relative
    // 1e-6 of sigma_max). Where the top value is degenerate sigma_max is not
    // differentiable; the cluster mean of u_i v_i^dag is the subgradient
    // that moves the whole cluster together.
    CMat uc, vc;
    cplx x{1.0}, y{1.0};
    cplx trace{0.0};
    double S = 0.0;
    double F = 0.0, P = 0.0;
    bool degenerate = false;
};

GateObjective::GateObjective(OptimizationConfig::Space space) : space_(space) {
    modes_ = space == OptimizationConfig::Space::reduced6 ? 6 : 9;
    using G = Entry::Gamma;

    const MeasurementScheme sch = scheme();
    auto full_occ = [&](const FockBasisState& logical) {
        std::vector<int> occ = logical.occupations();
        occ.insert(occ.end(), sch.ancilla_input.begin(), sch.ancilla_input.end());
        return occ;
    };

    if (space == OptimizationConfig::Space::reduced6) {
        const LogicalBasis basis = reduced_sector_basis();
        std::vector<std::vector<int>> occ;
        for (const auto& f : basis.fock) occ.push_back(full_occ(f));
        auto add = [&](int j, int i, G g, double mult) {
            Entry e;
            e.row_state = j;
            e.col_state = i;
            e.gamma = g;
            e.mult = mult;
            e.row_modes = expand_occupation(occ[j]);
            e.col_modes = expand_occupation(occ[i]);
            e.nphot = static_cast<int>(e.col_modes.size());
            entries_.push_back(std::move(e));
        };
        add(0, 0, G::vac, 2.0);
        add(1, 1, G::single, 1.0);
        add(2, 2, G::single, 1.0);
        add(1, 2, G::none, 1.0);
        add(2, 1, G::none, 1.0);
        add(3, 3, G::bypass, 2.0);
        add(4, 4, G::flipped, 1.0);
        add(5, 5, G::flipped, 1.0);
        add(4, 5, G::none, 1.0);
        add(5, 4, G::none, 1.0);
    } else {
        const LogicalBasis basis = quad_rail_basis();
        std::vector<std::vector<int>> occ;
        for (const auto& f : basis.fock) occ.push_back(full_occ(f));
        for (int j = 0; j < 8; ++j) {
            for (int i = 0; i < 8; ++i) {
                Entry e;
                e.row_state = j;
                e.col_state = i;
                e.gamma = (i != j) ? G::none : (j < 6 ? G::plus : G::flipped);
                e.mult = 1.0;
                e.row_modes = expand_occupation(occ[j]);
                e.col_modes = expand_occupation(occ[i]);
                e.nphot = static_cast<int>(e.col_modes.size());
                entries_.push_back(std::move(e));
            }
        }
    }

    int offset = 0;
    for (Entry& e : entries_) {
        e.offset = offset;
        offset += e.nphot * e.nphot;
    }
}

MeasurementScheme GateObjective::scheme() const {
    return MeasurementScheme::trailing_single_photons(modes_, 3);
}

GateObjective::Internal GateObjective::compute(const CMat& m) const {
    if (m.rows() != modes_ || m.cols() != modes_)
        throw std::invalid_argument("GateObjective: matrix size does not match the search space");

    Internal in;
    int total = 0;
    for (const Entry& e : entries_) total += e.nphot * e.nphot;
    in.subs.resize(total);
    in.amps.resize(entries_.size());

    // Heralded amplitudes, batched by photon number.
    std::vector<const cplx*> ptrs;
    std::vector<cplx> results;
    std::vector<std::size_t> idx;
    for (int n = 1; n <= kMaxPhotons; ++n) {
        ptrs.clear();
        idx.clear();
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            const Entry& e = entries_[k];
            if (e.nphot != n) continue;
            cplx* sub = in.subs.data() + e.offset;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) sub[r * n + c] = m(e.row_modes[r], e.col_modes[c]);
            ptrs.push_back(sub);
            idx.push_back(k);
        }
        if (ptrs.empty()) continue;
        results.resize(ptrs.size());
        kernels::permanent_batch(ptrs.data(), n, static_cast<int>(ptrs.size()), results.data());
        for (std::size_t k = 0; k < idx.size(); ++k) in.amps[idx[k]] = results[k];
    }

    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    in.sigma = svd.singularValues()(0);
    if (!(in.sigma > kSigmaFloor)) {
        in.degenerate = true;
        return in;
    }
    int cluster = 1;
    while (cluster < modes_ && svd.singularValues()(cluster) > in.sigma * (1.0 - 1e-6))
        ++cluster;
    in.uc = svd.matrixU().leftCols(cluster);
    in.vc = svd.matrixV().leftCols(cluster);

    if (space_ == OptimizationConfig::Space::reduced6) {
        auto scaled = [&](std::size_t k) {
            return in.amps[k] * std::pow(in.sigma, -entries_[k].nphot);
        };
        // Diagonal entries in construction order: vac, V-singles, bypass, doubles.
        const cplx w0 = 2.0 * scaled(0);
        const cplx w1 = scaled(1) + scaled(2);
        const cplx w2 = 2.0 * scaled(5);
        const cplx w3 = -(scaled(6) + scaled(7));
        std::tie(in.x, in.y) = maximize_bilinear_phase(w0, w1, w2, w3);
    }

    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const Entry& e = entries_[k];
        const cplx r = in.amps[k] * std::pow(in.sigma, -e.nphot);
        in.trace += gamma_value(e.gamma, in.x, in.y) * r;
        in.S += e.mult * std::norm(r);
    }
    in.P = in.S / kTargetDim;
    in.F = in.S > 0.0 ? std::norm(in.trace) / (kTargetDim * in.S) : 0.0;
    return in;
}

GateObjective::Eval GateObjective::evaluate(const CMat& m) const {
    const Internal in = compute(m);
    Eval e;
    e.fidelity = in.F;
    e.success_probability = in.P;
    e.sigma = in.sigma;
    e.phase_x = in.x;
    e.phase_y = in.y;
    return e;
}

double GateObjective::fidelity(const CMat& m) const { return compute(m).F; }

double GateObjective::success_probability(const CMat& m) const { return compute(m).P; }

double GateObjective::penalized(const CMat& m, double lambda, double threshold) const {
    const Internal in = compute(m);
    return in.P - lambda * std::max(0.0, threshold - in.F);
}

namespace {

struct WirtingerParts {
    std::vector<cplx> fidelity, success;
    double dsigma_fidelity = 0.0, dsigma_success = 0.0;
};

}  // namespace

// Shared Wirtinger bookkeeping for both objectives.
//   u = sum_e gamma_e sigma^-n A_e,   S = sum_e mult_e sigma^-2n |A_e|^2,
//   F = |u|^2 / (8 S),                P = S / 8.
static WirtingerParts wirtinger_parts(const std::vector<GateObjective::Entry>& entries,
                                      const GateObjective::Internal& in) {
    WirtingerParts w;
    const std::size_t ne = entries.size();
    w.fidelity.assign(ne, cplx(0.0));
    w.success.assign(ne, cplx(0.0));
    if (in.degenerate || !(in.S > 0.0)) return w;

    const cplx ubar = std::conj(in.trace);
    const double u2 = std::norm(in.trace);
    const double S = in.S;
    cplx u_sigma(0.0);
    double s_sigma = 0.0;
    for (std::size_t k = 0; k < ne; ++k) {
        const auto& e = entries[k];
        const double rn = std::pow(in.sigma, -e.nphot);
        const cplx g = gamma_value(e.gamma, in.x, in.y);
        u_sigma += g * in.amps[k] * (-double(e.nphot) * std::pow(in.sigma, -e.nphot - 1));
        s_sigma += e.mult * std::norm(in.amps[k]) * (-2.0 * e.nphot) *
                   std::pow(in.sigma, -2.0 * e.nphot - 1.0);
        w.fidelity[k] = (g * ubar * rn * S - u2 * e.mult * rn * rn * std::conj(in.amps[k])) /
                        (kTargetDim * S * S);
        w.success[k] = e.mult * rn * rn * std::conj(in.amps[k]) / kTargetDim;
    }
    w.dsigma_fidelity = (2.0 * (ubar * u_sigma).real() * S - u2 * s_sigma) / (kTargetDim * S * S);
    w.dsigma_success = s_sigma / kTargetDim;
    return w;
}

// dA/dm chain for several weight vectors in one minor pass: the permanents
// of the (n-1)x(n-1) minors give the derivative of each entry's permanent at
// every position of the repeated submatrix reading m(p, q).
void GateObjective::entry_chains(const Internal& in,
                                 const std::vector<const std::vector<cplx>*>& weights,
                                 std::vector<Eigen::MatrixXcd>& chains) const {
    chains.assign(weights.size(), Eigen::MatrixXcd::Zero(modes_, modes_));

    std::vector<cplx> minors;
    std::vector<const cplx*> ptrs;
    std::vector<cplx> result;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        bool live = false;
        for (const auto* w : weights) live = live || (*w)[k] != cplx(0.0);
        if (!live) continue;

        const Entry& e = entries_[k];
        const int n = e.nphot;
        const cplx* sub = in.subs.data() + e.offset;
        if (n == 1) {
            for (std::size_t t = 0; t < weights.size(); ++t)
                chains[t](e.row_modes[0], e.col_modes[0]) += (*weights[t])[k];
            continue;
        }
        const int nm = n - 1;
        minors.resize(std::size_t(n) * n * nm * nm);
        ptrs.resize(std::size_t(n) * n);
        result.resize(std::size_t(n) * n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                cplx* dst = minors.data() + (std::size_t(r) * n + c) * nm * nm;
                ptrs[std::size_t(r) * n + c] = dst;
                for (int rr = 0; rr < n; ++rr) {
                    if (rr == r) continue;
                    for (int cc = 0; cc < n; ++cc) {
                        if (cc == c) continue;
                        *dst++ = sub[rr * n + cc];
                    }
                }
            }
        }
        kernels::permanent_batch(ptrs.data(), nm, n * n, result.data());
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const cplx mp = result[std::size_t(r) * n + c];
                for (std::size_t t = 0; t < weights.size(); ++t)
                    chains[t](e.row_modes[r], e.col_modes[c]) += (*weights[t])[k] * mp;
            }
    }
}

namespace {

Eigen::MatrixXcd sigma_direction(const GateObjective::Internal& in, int modes) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(modes, modes);
    const int cluster = static_cast<int>(in.uc.cols());
    for (int k = 0; k < cluster; ++k)
        s += in.uc.col(k).conjugate() * in.vc.col(k).transpose();
    return s / double(cluster);
}

Gradient combine_gradient(const Eigen::MatrixXcd& chain, double dsigma,
                          const Eigen::MatrixXcd& sdir) {
    Gradient g;
    const int rows = static_cast<int>(chain.rows());
    const int cols = static_cast<int>(chain.cols());
    g.re.resize(rows, cols);
    g.im.resize(rows, cols);
    for (int p = 0; p < rows; ++p) {
        for (int q = 0; q < cols; ++q) {
            g.re(p, q) = 2.0 * chain(p, q).real() + dsigma * sdir(p, q).real();
            g.im(p, q) = -2.0 * chain(p, q).imag() - dsigma * sdir(p, q).imag();
        }
    }
    return g;
}

Gradient zero_gradient(int modes) {
    Gradient g;
    g.re = Eigen::MatrixXd::Zero(modes, modes);
    g.im = Eigen::MatrixXd::Zero(modes, modes);
    return g;
}

}  // namespace

Gradient GateObjective::fidelity_gradient(const CMat& m, bool gauge_fixed) const {
    const Internal in = compute(m);
    if (in.degenerate || !(in.S > 0.0)) return zero_gradient(modes_);
    const WirtingerParts w = wirtinger_parts(entries_, in);
    std::vector<Eigen::MatrixXcd> chains;
    entry_chains(in, {&w.fidelity}, chains);
    return combine_gradient(chains[0], gauge_fixed ? 0.0 : w.dsigma_fidelity,
                            sigma_direction(in, modes_));
}

Gradient GateObjective::success_gradient(const CMat& m, bool gauge_fixed) const {
    const Internal in = compute(m);
    if (in.degenerate) return zero_gradient(modes_);
    const WirtingerParts w = wirtinger_parts(entries_, in);
    std::vector<Eigen::MatrixXcd> chains;
    entry_chains(in, {&w.success}, chains);
    return combine_gradient(chains[0], gauge_fixed ? 0.0 : w.dsigma_success,
                            sigma_direction(in, modes_));
}

Gradient GateObjective::penalized_gradient(const CMat& m, double lambda, double threshold) const {
    const Internal in = compute(m);
    if (in.degenerate) return zero_gradient(modes_);
    const WirtingerParts w = wirtinger_parts(entries_, in);
    std::vector<cplx> combined = w.success;
    double dsigma = w.dsigma_success;
    if (in.F < threshold) {
        for (std::size_t k = 0; k < combined.size(); ++k) combined[k] += lambda * w.fidelity[k];
        dsigma += lambda * w.dsigma_fidelity;
    }
    std::vector<Eigen::MatrixXcd> chains;
    entry_chains(in, {&combined}, chains);
    return combine_gradient(chains[0], dsigma, sigma_direction(in, modes_));
}

GateObjective::GradientSet GateObjective::gradient_set(const CMat& m) const {
    GradientSet out;
    const Internal in = compute(m);
    out.eval.fidelity = in.F;
    out.eval.success_probability = in.P;
    out.eval.sigma = in.sigma;
    out.eval.phase_x = in.x;
    out.eval.phase_y = in.y;
    if (in.degenerate) {
        out.fidelity_full = out.fidelity_fixed = zero_gradient(modes_);
        out.success_full = out.success_fixed = zero_gradient(modes_);
        return out;
    }
    const WirtingerParts w = wirtinger_parts(entries_, in);
    std::vector<Eigen::MatrixXcd> chains;
    entry_chains(in, {&w.fidelity, &w.success}, chains);
    const Eigen::MatrixXcd sdir = sigma_direction(in, modes_);
    out.fidelity_full = combine_gradient(chains[0], w.dsigma_fidelity, sdir);
    out.fidelity_fixed = combine_gradient(chains[0], 0.0, sdir);
    out.success_full = combine_gradient(chains[1], w.dsigma_success, sdir);
    out.success_fixed = combine_gradient(chains[1], 0.0, sdir);
    return out;
}

Gradient finite_difference_gradient(const std::function<double(const CMat&)>& objective,
                                    const CMat& m, double h) {
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    Gradient g;
    g.re.resize(rows, cols);
    g.im.resize(rows, cols);
    CMat work = m;
    for (int p = 0; p < rows; ++p) {
        for (int q = 0; q < cols; ++q) {
            const cplx base = m(p, q);
            work(p, q) = base + h;
            const double fr_plus = objective(work);
            work(p, q) = base - h;
            const double fr_minus = objective(work);
            work(p, q) = base + cplx(0.0, h);
            const double fi_plus = objective(work);
            work(p, q) = base - cplx(0.0, h);
            const double fi_minus = objective(work);
            work(p, q) = base;
            if (!std::isfinite(fr_plus) || !std::isfinite(fr_minus) || !std::isfinite(fi_plus) ||
                !std::isfinite(fi_minus))
                throw std::runtime_error("finite_difference_gradient: non-finite objective");
            g.re(p, q) = (fr_plus - fr_minus) / (2.0 * h);
            g.im(p, q) = (fi_plus - fi_minus) / (2.0 * h);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Stage drivers
// ---------------------------------------------------------------------------

namespace {

CMat ascend_direction(const Gradient& g) {
    return g.re.cast<cplx>() + cplx(0.0, 1.0) * g.im.cast<cplx>();
}

// Both objectives are scale-invariant; normalizing accepted iterates to
// sigma_max = 1 keeps step sizes meaningful and the raw (gauge-fixed)
// gradients valid.
CMat renormalized(const CMat& m, double sigma) {
    return sigma > kSigmaFloor ? CMat(m / sigma) : m;
}

}  // namespace

Stage1Result stage1_fidelity_ascent(const ModeTransform& start, const GateObjective& objective,
                                    const OptimizationConfig& cfg) {
    Stage1Result res;
    CMat m = start.matrix;
    double f = -1.0;

    const double threshold = cfg.fidelity_threshold;
    // Aim beyond the threshold so stage 2 starts with a feasibility margin.
    const double aim = 1.0 - 0.01 * (1.0 - threshold);
    double step = cfg.stage1_initial_step;

    int it = 0;
    for (; it < cfg.stage1_max_iters; ++it) {
        const GateObjective::GradientSet gs = objective.gradient_set(m);
        if (f < 0.0) {
            f = gs.eval.fidelity;
            res.accepted_fidelities.push_back(f);
        }
        if (f >= aim) break;

        const Gradient* candidates[2] = {&gs.fidelity_full, &gs.fidelity_fixed};
        bool accepted = false;
        for (const Gradient* g : candidates) {
            if (g->norm() < 1e-13) continue;
            const CMat dir = ascend_direction(*g);
            double s = step;
            for (int bt = 0; bt < 45; ++bt) {
                const CMat m2 = m + s * dir;
                const GateObjective::Eval e2 = objective.evaluate(m2);
                if (e2.fidelity > f) {
                    m = renormalized(m2, e2.sigma);
                    f = e2.fidelity;
                    step = 2.0 * s / std::max(e2.sigma, kSigmaFloor);
                    accepted = true;
                    res.accepted_fidelities.push_back(f);
                    break;
                }
                s *= 0.5;
            }
            if (accepted) break;
        }
        if (!accepted) break;
    }

    res.matrix = ModeTransform(m);
    res.fidelity = f;
    res.iterations = it;
    res.success = f >= threshold;
    return res;
}

namespace {

// One penalty-ascent pass at a fixed constraint threshold, on the merit
// P - lambda * max(0, threshold - F). Candidate directions are subgradients
// grad(P) + t*lambda*grad(F) with t in [0,1]: t* cancels the constraint-
// normal component (boundary hugging), t = 0 is plain P ascent, t = 1 the
// full pull-in; each is tried with and without the sigma_max chain term.
struct PhaseState {
    CMat m;
    GateObjective::Eval cur;
    double step;
};

int penalty_phase(PhaseState& st, const GateObjective& objective, const OptimizationConfig& cfg,
                  double threshold, int iter_budget, Stage2Result* record) {
    double lambda = cfg.stage2_initial_penalty;
    int infeasible_streak = 0;
    double window_base = -1.0;
    int since_improve = 0;
    double walk_peak = -1.0;  // highest P seen, feasible or not

    auto merit = [&](const GateObjective::Eval& ev) {
        return ev.success_probability - lambda * std::max(0.0, threshold - ev.fidelity);
    };

    int it = 0;
    for (; it < iter_budget; ++it) {
        const double q = merit(st.cur);
        const GateObjective::GradientSet gs = objective.gradient_set(st.m);

        double ts[3];
        int nts;
        if (st.cur.fidelity < threshold) {
            ts[0] = 1.0;
            nts = 1;
        } else {
            const double gf2 = gs.fidelity_fixed.squared_norm();
            const double dot = (gs.success_fixed.re.cwiseProduct(gs.fidelity_fixed.re)).sum() +
                               (gs.success_fixed.im.cwiseProduct(gs.fidelity_fixed.im)).sum();
            ts[0] = gf2 > 1e-300 ? std::clamp(-dot / (lambda * gf2), 0.0, 1.0) : 0.0;
            ts[1] = 0.0;
            ts[2] = 1.0;
            nts = 3;
        }

        bool accepted = false;
        for (int gauge = 0; gauge < 2 && !accepted; ++gauge) {
            const Gradient& gp = gauge == 0 ? gs.success_fixed : gs.success_full;
            const Gradient& gf = gauge == 0 ? gs.fidelity_fixed : gs.fidelity_full;
            for (int k = 0; k < nts && !accepted; ++k) {
                Gradient g;
                g.re = gp.re + ts[k] * lambda * gf.re;
                g.im = gp.im + ts[k] * lambda * gf.im;
                if (g.norm() < 1e-13) continue;
                const CMat dir = ascend_direction(g);
                double s = st.step;
                for (int bt = 0; bt < 45; ++bt) {
                    const CMat m2 = st.m + s * dir;
                    const GateObjective::Eval e2 = objective.evaluate(m2);
                    if (merit(e2) > q) {
                        st.m = renormalized(m2, e2.sigma);
                        st.cur = e2;
                        st.step = 2.0 * s / std::max(e2.sigma, kSigmaFloor);
                        accepted = true;
                        if (e2.fidelity >= threshold && e2.success_probability > phase_best)
                            phase_best = e2.success_probability;
                        if (record && e2.fidelity >= cfg.fidelity_threshold &&
                            (record->accepted_probabilities.empty() ||
                             e2.success_probability > record->accepted_probabilities.back())) {
                            record->accepted_probabilities.push_back(e2.success_probability);
                            record->metrics = {e2.fidelity, e2.success_probability};
                            record->matrix = ModeTransform(st.m);
                        }
                        break;
                    }
                    s *= 0.5;
                }
            }
        }
        if (!accepted) break;

        // Double the penalty only on persistent violation; zigzagging across
        // the boundary is normal and must not inflate it.
        if (st.cur.fidelity < threshold) {
            if (++infeasible_streak >= 8) {
                lambda = std::min(2.0 * lambda, 1e9);
                infeasible_streak = 0;
            }
        } else {
            infeasible_streak = 0;
        }

        ++since_improve;
        if (phase_best > window_base * (1.0 + cfg.stage2_improvement_tol)) {
            window_base = phase_best;
            since_improve = 0;
        }
        if (since_improve >= cfg.stage2_patience) break;
    }
    return it;
}

}  // namespace

Stage2Result stage2_probability_ascent(const ModeTransform& m0, const GateObjective& objective,
                                       const OptimizationConfig& cfg) {
    Stage2Result res;
    const double threshold = cfg.fidelity_threshold;
    PhaseState st{m0.matrix, objective.evaluate(m0.matrix), cfg.stage1_initial_step};
    if (st.cur.fidelity < threshold) {
        // Constraint violated at entry: flagged failure, not an exception.
        res.matrix = m0;
        res.metrics = {st.cur.fidelity, st.cur.success_probability};
        res.success = false;
        return res;
    }

    st.m = renormalized(st.m, st.cur.sigma);
    res.metrics = {st.cur.fidelity, st.cur.success_probability};
    res.matrix = ModeTransform(st.m);
    res.accepted_probabilities.push_back(st.cur.success_probability);

    // Threshold continuation: ride the fat low-fidelity tube first, then
    // tighten decade by decade down to the configured constraint. Every
    // phase runs the same penalty ascent; improvements feasible for the real
    // threshold are recorded whenever they appear.
    std::vector<double> ladder;
    for (double gap = 1e-2; gap > (1.0 - threshold) * (1.0 + 1e-12); gap *= 0.1)
        ladder.push_back(1.0 - gap);
    ladder.push_back(threshold);

    const int phases = static_cast<int>(ladder.size());
    int remaining = cfg.stage2_max_iters;
    for (int k = 0; k < phases && remaining > 0; ++k) {
        // The final tightening gets whatever budget is left.
        const int budget =
            (k + 1 == phases) ? remaining : std::min(remaining, cfg.stage2_max_iters / phases);
        const int used = penalty_phase(st, objective, cfg, ladder[k], budget, &res);
        remaining -= used;
        res.iterations += used;
    }

    res.success = true;
    return res;
}

// ---------------------------------------------------------------------------
// Multi-cycle driver
// ---------------------------------------------------------------------------

std::uint64_t cycle_seed(std::uint64_t run_seed, int cycle) {
    // splitmix64 step keyed by cycle index.
    std::uint64_t z = run_seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(cycle + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CMat random_start(int modes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(2.0));
    CMat m(modes, modes);
    for (int r = 0; r < modes; ++r)
        for (int c = 0; c < modes; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            m(r, c) = cplx(re, im);
        }
    return m;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LOQC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

OptimizationResult run_cycles(const OptimizationConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const GateObjective objective(cfg.space);
    OptimizationResult out;
    out.seed = cfg.seed;
    out.all_cycles.resize(cfg.cycles);

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        try {
            for (;;) {
                const int c = next.fetch_add(1);
                if (c >= cfg.cycles) return;
                CycleOutcome& o = out.all_cycles[c];
                o.cycle = c;
                const CMat start = random_start(objective.mode_count(), cycle_seed(cfg.seed, c));
                const Stage1Result s1 =
                    stage1_fidelity_ascent(ModeTransform(start), objective, cfg);
                if (!s1.success) {
                    o.success = false;
                    o.fidelity = s1.fidelity;
                    continue;
                }
                const Stage2Result s2 = stage2_probability_ascent(s1.matrix, objective, cfg);
                o.success = s2.success;
                o.fidelity = s2.metrics.fidelity;
                o.success_probability = s2.metrics.success_probability;
                if (s2.success) o.matrix = s2.matrix.matrix;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    const int threads = std::min(resolve_thread_count(cfg.threads), cfg.cycles);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    for (const CycleOutcome& o : out.all_cycles)
        if (o.success) out.distribution.push_back(o);
    std::stable_sort(out.distribution.begin(), out.distribution.end(),
                     [](const CycleOutcome& a, const CycleOutcome& b) {
                         if (a.success_probability != b.success_probability)
                             return a.success_probability < b.success_probability;
                         return a.cycle < b.cycle;
                     });

    out.any_success = !out.distribution.empty();
    if (out.any_success) {
        const CycleOutcome& best = out.distribution.back();
        out.best_matrix = ModeTransform(best.matrix);
        out.best_metrics = {best.fidelity, best.success_probability};
    }

    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace loqc
