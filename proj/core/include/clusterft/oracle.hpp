#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clusterft/circuit.hpp"
#include "clusterft/frame_engine.hpp"
#include "clusterft/noise.hpp"
#include "clusterft/rng.hpp"
#include "clusterft/tableau.hpp"

namespace clusterft {

// Noiseless baseline of a circuit: the values every check tag and declared
// target generator take on the reference branch. Checks must be
// deterministic parities, which compute_reference verifies by re-running
// with distinct branch seeds.
struct OracleReference {
    std::vector<uint8_t> check_values;
    std::vector<uint8_t> out_values;  // meaningful only when deterministic
};

// Result schema mirrors TrialRecord: flips are deviations from the
// reference.
struct OracleRecord {
    bool accepted = false;
    std::vector<uint8_t> check_flips;
    std::vector<uint8_t> out_bits;
};

// Full stabilizer-tableau simulation of a circuit under sampled Pauli
// noise, including the classical controller: Pauli-frame recording from
// observed outcomes and frame-adjusted syndrome interpretation. Validates
// the error-frame engine.
class StabilizerOracle {
  public:
    // Builds the state and controller record for one run. `rng_err` must be
    // drawn from in the same per-op order as FrameEngine so both engines can
    // share an error stream; `rng_branch` supplies quantum branch choices.
    OracleRecord run(const Circuit& circuit, const NoiseSampler& sampler, Rng& rng_err, Rng& rng_branch,
                     const OracleReference& reference, const RunOptions& options = {});

    OracleReference compute_reference(const Circuit& circuit, uint64_t branch_seed_base = 1,
                                      int determinism_probes = 3);

    // After run(): eigenvalue of a phase-positive generator on the
    // frame-corrected final state; `violated` means it disagrees with +1.
    // Throws if the eigenvalue is not definite.
    bool violated(const PauliString& generator) const;

    // Violation bits for a list of generators.
    std::vector<uint8_t> violations(const std::vector<PauliString>& generators) const;

  private:
    struct RawRun {
        std::vector<uint8_t> check_values;
        std::vector<uint8_t> out_values;
    };
    RawRun run_raw(const Circuit& circuit, const NoiseSampler* sampler, Rng* rng_err, Rng& rng_branch,
                   const RunOptions& options);

    std::optional<Tableau> state_;
    // Recorded byproduct frame (controller bookkeeping), as x/z bit planes.
    std::vector<uint64_t> rec_x_, rec_z_;
};

}  // namespace clusterft
