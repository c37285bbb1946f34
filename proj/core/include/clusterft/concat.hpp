#pragma once

#include <cstdint>
#include <stdexcept>

#include "clusterft/diagrams.hpp"
#include "clusterft/frame_engine.hpp"
#include "clusterft/noise.hpp"
#include "clusterft/stats.hpp"

namespace clusterft {

// Coarse-grained description of one concatenation level: the X-measurement
// error of a bare-connected level-l qubit and the residual frame error
// rates left on it by the double-verified construction one stage up.
struct LevelUnitModel {
    int level = 1;
    double p_q = 0.0;
    double p_pauli_x = 0.0;
    double p_pauli_y = 0.0;
    double p_pauli_z = 0.0;
    double p_pauli_total() const { return p_pauli_x + p_pauli_y + p_pauli_z; }
};

struct HomogeneousStats {
    RateEstimate eps_x, eps_y, eps_z;
    double corr_rate_max = 0.0;  // largest pairwise joint-error rate
    double indep_rate = 0.0;     // mean per-qubit error rate
    uint64_t accepted = 0;
    uint64_t attempts = 0;
    bool ok = false;
};

struct PauliFrameStats {
    RateEstimate p_x, p_y, p_z;
    uint64_t detectable_units = 0;
    uint64_t accepted = 0;
    uint64_t attempts = 0;
    bool ok = false;
};

struct LiftResult {
    LevelUnitModel next;
    RateEstimate pq_next;
    RateEstimate pauli_next_total;
    PauliFrameStats pauli_next;
    RateEstimate acceptance;
};

struct ConcatConfig {
    NoiseParams params;
    uint64_t trials = 10000;  // accepted-trial target for estimators
    uint64_t seed = 1;
    int jobs = 1;
    uint64_t max_attempts_per_trial = 200000;
};

// Raised when rejection sampling cannot produce an accepted instance
// within the attempt budget.
struct StatisticalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds verified level-2 fundamental clusters (physical circuit level)
// by rejection sampling and tallies per-qubit residual rates on the output
// blocks, plus the pairwise correlation diagnostic.
HomogeneousStats estimate_homogeneous(const ConcatConfig& cfg, DiagramKind kind = DiagramKind::Hexa);

// Residual rates on the outputs of one final-stage double verification
// with verified inputs. The residual structure of cluster outputs lives in
// this stage; its acceptance stays workable near threshold where the full
// construction rejects almost everything.
HomogeneousStats estimate_final_stage(const ConcatConfig& cfg);

// Bare-CZ-connects pairs of accepted level-2 outputs, measures them
// transversally in X and counts Hamming-decoded logical misidentifications.
RateEstimate estimate_pq1(const ConcatConfig& cfg);

// Full level-1 one-way construction of a level-3 fundamental cluster;
// conditional on global acceptance, tallies the logical frame discrepancy
// per level-1 output unit.
PauliFrameStats estimate_pauli1(const ConcatConfig& cfg, DiagramKind kind = DiagramKind::Hexa);

// Coarse-grained level lift: re-runs the construction with level-l qubits
// as atomic units (noiseless gates, measurement flips at p_q, per-unit
// frame heritage), yielding the level-(l+1) unit model, the lifted
// measurement error and the construction acceptance.
LiftResult lift_level(const LevelUnitModel& unit, uint64_t trials, uint64_t seed, int jobs = 1,
                      DiagramKind kind = DiagramKind::Hexa);

// Acceptance probabilities: level 1 = bootstrap code states, level 2 =
// physical-level cluster construction, levels >= 3 via lift_level on a
// unit-model chain. `trials` counts attempts for these.
RateEstimate acceptance_level1(CodeStateKind state, const ConcatConfig& cfg);
RateEstimate acceptance_level2(DiagramKind kind, const ConcatConfig& cfg);

}  // namespace clusterft
