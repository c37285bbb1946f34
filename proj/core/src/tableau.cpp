#include "clusterft/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace clusterft {

Tableau::Tableau(uint32_t n) : n_(n), words_((n + 63) / 64) {
    if (n > kMaxQubits) throw std::invalid_argument("tableau too large");
    rows_.resize(2 * n_);
    for (auto& row : rows_) {
        row.x.assign(words_, 0);
        row.z.assign(words_, 0);
    }
    for (uint32_t q = 0; q < n_; ++q) {
        toggle(rows_[q].x, q);        // destabilizer X_q
        toggle(rows_[n_ + q].z, q);   // stabilizer Z_q  (state |0...0>)
    }
}

void Tableau::h(uint32_t q) {
    for (auto& row : rows_) {
        const bool x = bit(row.x, q), z = bit(row.z, q);
        row.r ^= static_cast<uint8_t>(x && z);
        if (x != z) {
            toggle(row.x, q);
            toggle(row.z, q);
        }
    }
}

void Tableau::s(uint32_t q) {
    for (auto& row : rows_) {
        const bool x = bit(row.x, q), z = bit(row.z, q);
        row.r ^= static_cast<uint8_t>(x && z);
        if (x) toggle(row.z, q);
    }
}

void Tableau::cnot(uint32_t c, uint32_t t) {
    for (auto& row : rows_) {
        const bool xc = bit(row.x, c), zc = bit(row.z, c);
        const bool xt = bit(row.x, t), zt = bit(row.z, t);
        row.r ^= static_cast<uint8_t>(xc && zt && (xt == zc));
        if (xc) toggle(row.x, t);
        if (zt) toggle(row.z, c);
    }
}

void Tableau::cz(uint32_t a, uint32_t b) {
    h(b);
    cnot(a, b);
    h(b);
}

void Tableau::apply_pauli(uint32_t q, Pauli p) {
    if (p == Pauli::I) return;
    const bool px = pauli_has_x(p), pz = pauli_has_z(p);
    for (uint32_t i = n_; i < 2 * n_; ++i)
        if (row_anticommutes_site(rows_[i], q, px, pz)) rows_[i].r ^= 1;
}

void Tableau::rowsum(Row& h, const Row& i) const {
    int64_t e = 0;
    for (uint32_t w = 0; w < words_; ++w) {
        const uint64_t x1 = i.x[w], z1 = i.z[w], x2 = h.x[w], z2 = h.z[w];
        const uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & z2 & ~x2) | (~x1 & z1 & x2 & ~z2);
        const uint64_t minus = (x1 & ~z1 & z2 & ~x2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2);
        e += std::popcount(plus);
        e -= std::popcount(minus);
    }
    e += 2 * (h.r + i.r);
    e &= 3;
    h.r = static_cast<uint8_t>(e >> 1);  // e is 0 or 2
    for (uint32_t w = 0; w < words_; ++w) {
        h.x[w] ^= i.x[w];
        h.z[w] ^= i.z[w];
    }
}

bool Tableau::measure_z(uint32_t q, Rng& rng) {
    uint32_t p = 2 * n_;
    for (uint32_t i = n_; i < 2 * n_; ++i)
        if (bit(rows_[i].x, q)) {
            p = i;
            break;
        }
    if (p < 2 * n_) {
        // Random outcome.
        for (uint32_t i = 0; i < 2 * n_; ++i)
            if (i != p && bit(rows_[i].x, q)) rowsum(rows_[i], rows_[p]);
        rows_[p - n_] = rows_[p];
        Row& stab = rows_[p];
        stab.x.assign(words_, 0);
        stab.z.assign(words_, 0);
        toggle(stab.z, q);
        stab.r = static_cast<uint8_t>(rng.next_u64() & 1);
        return stab.r != 0;
    }
    // Deterministic outcome.
    Row scratch;
    scratch.x.assign(words_, 0);
    scratch.z.assign(words_, 0);
    scratch.r = 0;
    for (uint32_t i = 0; i < n_; ++i)
        if (bit(rows_[i].x, q)) rowsum(scratch, rows_[i + n_]);
    return scratch.r != 0;
}

bool Tableau::measure(uint32_t q, MeasBasis basis, Rng& rng) {
    switch (basis) {
        case MeasBasis::Z: break;
        case MeasBasis::X: h(q); break;
        case MeasBasis::Y:
            s(q);
            s(q);
            s(q);
            h(q);
            break;
    }
    return measure_z(q, rng);
}

std::optional<int> Tableau::expectation(const PauliString& p) const {
    if (p.n() != n_) throw std::invalid_argument("expectation: operator size mismatch");
    // A deterministic Pauli equals (up to sign) the product of stabilizer
    // generators whose destabilizer partners anticommute with it.
    Row scratch;
    scratch.x.assign(words_, 0);
    scratch.z.assign(words_, 0);
    scratch.r = 0;
    for (uint32_t i = 0; i < n_; ++i) {
        uint64_t acc = 0;
        const Row& destab = rows_[i];
        for (uint32_t w = 0; w < words_; ++w)
            acc ^= (destab.x[w] & p.z_words()[w]) ^ (destab.z[w] & p.x_words()[w]);
        if (std::popcount(acc) & 1) rowsum(scratch, rows_[i + n_]);
    }
    for (uint32_t w = 0; w < words_; ++w)
        if (scratch.x[w] != p.x_words()[w] || scratch.z[w] != p.z_words()[w]) return std::nullopt;
    return scratch.r ? -1 : +1;
}

}  // namespace clusterft
