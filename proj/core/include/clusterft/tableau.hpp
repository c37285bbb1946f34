#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clusterft/circuit.hpp"
#include "clusterft/pauli.hpp"
#include "clusterft/rng.hpp"

namespace clusterft {

// Stabilizer tableau with destabilizers (Aaronson-Gottesman). Row-major
// bit-packed; fine up to ~1k qubits which covers every oracle use here.
class Tableau {
  public:
    static constexpr uint32_t kMaxQubits = 1024;

    explicit Tableau(uint32_t n);

    uint32_t n() const { return n_; }

    void h(uint32_t q);
    void s(uint32_t q);
    void cnot(uint32_t c, uint32_t t);
    void cz(uint32_t a, uint32_t b);
    // Applies a Pauli to the state (flips signs of anticommuting stabilizers).
    void apply_pauli(uint32_t q, Pauli p);

    // Destructive-free Z measurement; random outcomes drawn from `rng`.
    bool measure_z(uint32_t q, Rng& rng);
    // Measures in X/Y/Z by rotating the qubit first (it is never reused).
    bool measure(uint32_t q, MeasBasis basis, Rng& rng);

    // +1/-1 if the phase-positive Pauli `p` has a definite eigenvalue on the
    // current state, nullopt if the outcome would be random.
    std::optional<int> expectation(const PauliString& p) const;

  private:
    struct Row {
        std::vector<uint64_t> x, z;
        uint8_t r = 0;
    };
    static bool bit(const std::vector<uint64_t>& w, uint32_t q) { return (w[q >> 6] >> (q & 63)) & 1; }
    static void toggle(std::vector<uint64_t>& w, uint32_t q) { w[q >> 6] ^= 1ULL << (q & 63); }
    // row h *= row i with phase bookkeeping.
    void rowsum(Row& h, const Row& i) const;
    bool row_anticommutes_site(const Row& row, uint32_t q, bool px, bool pz) const {
        return (bit(row.x, q) && pz) != (bit(row.z, q) && px);
    }

    uint32_t n_;
    uint32_t words_;
    std::vector<Row> rows_;  // 0..n-1 destabilizers, n..2n-1 stabilizers
};

}  // namespace clusterft
