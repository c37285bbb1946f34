// Brute-force complex-matrix oracle for small Pauli/Clifford identities,
// independent of the bit-vector implementation under test.
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "clusterft/pauli.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = std::vector<std::vector<cd>>;

inline Mat mat_id(size_t n) {
    Mat m(n, std::vector<cd>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    const size_t n = a.size();
    Mat c(n, std::vector<cd>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Mat kron(const Mat& a, const Mat& b) {
    const size_t na = a.size(), nb = b.size();
    Mat c(na * nb, std::vector<cd>(na * nb, 0));
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < na; ++j)
            for (size_t k = 0; k < nb; ++k)
                for (size_t l = 0; l < nb; ++l) c[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
    return c;
}

inline Mat pauli_mat(clusterft::Pauli p) {
    switch (p) {
        case clusterft::Pauli::I: return {{1, 0}, {0, 1}};
        case clusterft::Pauli::X: return {{0, 1}, {1, 0}};
        case clusterft::Pauli::Y: return {{0, cd(0, -1)}, {cd(0, 1), 0}};
        case clusterft::Pauli::Z: return {{1, 0}, {0, -1}};
    }
    throw std::logic_error("bad pauli");
}

inline Mat pauli_string_mat(const clusterft::PauliString& s) {
    Mat m = pauli_mat(s.get(0));
    for (size_t q = 1; q < s.n(); ++q) m = kron(m, pauli_mat(s.get(q)));
    return m;
}

inline bool mats_equal_up_to_phase(const Mat& a, const Mat& b) {
    cd phase = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (std::abs(b[i][j]) > 1e-9) {
                phase = a[i][j] / b[i][j];
                goto found;
            }
found:
    if (std::abs(std::abs(phase) - 1.0) > 1e-9) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (std::abs(a[i][j] - phase * b[i][j]) > 1e-9) return false;
    return true;
}

inline bool mats_commute(const Mat& a, const Mat& b) {
    const Mat ab = mat_mul(a, b), ba = mat_mul(b, a);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (std::abs(ab[i][j] - ba[i][j]) > 1e-9) return false;
    return true;
}

// Clifford gate matrices for conjugation checks.
inline Mat gate_h() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, s}, {s, -s}};
}
inline Mat gate_s() { return {{1, 0}, {0, cd(0, 1)}}; }
inline Mat gate_cnot() {
    Mat m = mat_id(4);
    std::swap(m[2], m[3]);
    return m;
}
inline Mat gate_cz() {
    Mat m = mat_id(4);
    m[3][3] = -1;
    return m;
}

inline Mat dagger(const Mat& a) {
    Mat m(a.size(), std::vector<cd>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) m[i][j] = std::conj(a[j][i]);
    return m;
}

inline Mat conjugate(const Mat& u, const Mat& p) { return mat_mul(u, mat_mul(p, dagger(u))); }

}  // namespace oracle
