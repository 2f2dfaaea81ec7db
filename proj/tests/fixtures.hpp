#pragma once

// Frozen reference data for the golden tests: the published state lists,
// transcribed by hand. The EB3 position table and all amplitudes were
// checked against the source listings before being frozen here.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "ebk/isometry.hpp"
#include "ebk/matrix.hpp"
#include "ebk/state.hpp"

namespace fixtures {

using ebk::Amplitude;
using ebk::BipartiteState;
using ebk::CMatrix;
using ebk::Complex;

inline double s2() { return 1.0 / std::sqrt(2.0); }
inline double s3() { return 1.0 / std::sqrt(3.0); }
inline double s6() { return 1.0 / std::sqrt(6.0); }

/// Bell basis in the order the generator emits: Phi+, Phi-, Psi+, -Psi-.
inline std::vector<BipartiteState> bell_states() {
    std::vector<BipartiteState> out;
    out.push_back(BipartiteState(2, 2, {{0, 0, s2()}, {1, 1, s2()}}));
    out.push_back(BipartiteState(2, 2, {{0, 0, s2()}, {1, 1, -s2()}}));
    out.push_back(BipartiteState(2, 2, {{0, 1, s2()}, {1, 0, s2()}}));
    out.push_back(BipartiteState(2, 2, {{0, 1, -s2()}, {1, 0, s2()}}));
    return out;
}

/// The canonical Bell list Phi+, Phi-, Psi+, Psi- for phase-tolerant checks.
inline std::vector<BipartiteState> bell_states_published() {
    std::vector<BipartiteState> out;
    out.push_back(BipartiteState(2, 2, {{0, 0, s2()}, {1, 1, s2()}}));
    out.push_back(BipartiteState(2, 2, {{0, 0, s2()}, {1, 1, -s2()}}));
    out.push_back(BipartiteState(2, 2, {{0, 1, s2()}, {1, 0, s2()}}));
    out.push_back(BipartiteState(2, 2, {{0, 1, s2()}, {1, 0, -s2()}}));
    return out;
}

/// Six-state MEB of C^2 (x) C^3, phi_1..phi_6.
inline std::vector<BipartiteState> meb_2x3() {
    std::vector<BipartiteState> out;
    out.push_back(BipartiteState(2, 3, {{0, 0, s2()}, {1, 1, s2()}}));
    out.push_back(BipartiteState(2, 3, {{0, 0, s2()}, {1, 1, -s2()}}));
    out.push_back(BipartiteState(2, 3, {{0, 1, s2()}, {1, 2, s2()}}));
    out.push_back(BipartiteState(2, 3, {{0, 1, s2()}, {1, 2, -s2()}}));
    out.push_back(BipartiteState(2, 3, {{0, 2, s2()}, {1, 0, s2()}}));
    out.push_back(BipartiteState(2, 3, {{0, 2, s2()}, {1, 0, -s2()}}));
    return out;
}

/// Twenty-four-state EB3 of C^4 (x) C^6: state 3n+m carries phases
/// xi^{ml}, xi = exp(2*pi*i/3), on the l-th cell of block n.
inline std::vector<BipartiteState> eb3_4x6() {
    static const std::size_t blocks[8][3][2] = {
        {{0, 0}, {1, 1}, {2, 2}}, {{3, 3}, {0, 1}, {1, 2}}, {{2, 3}, {3, 4}, {0, 2}},
        {{1, 3}, {2, 4}, {3, 5}}, {{0, 3}, {1, 4}, {2, 5}}, {{3, 0}, {0, 4}, {1, 5}},
        {{2, 0}, {3, 1}, {0, 5}}, {{1, 0}, {2, 1}, {3, 2}}};
    std::vector<BipartiteState> out;
    for (std::size_t n = 0; n < 8; ++n)
        for (std::size_t m = 0; m < 3; ++m) {
            std::vector<Amplitude> amps;
            for (std::size_t l = 0; l < 3; ++l) {
                const double arg = 2.0 * std::numbers::pi * static_cast<double>((m * l) % 3) / 3.0;
                amps.push_back({blocks[n][l][0], blocks[n][l][1],
                                Complex(std::cos(arg) * s3(), std::sin(arg) * s3())});
            }
            out.push_back(BipartiteState(4, 6, std::move(amps)));
        }
    return out;
}

/// Nine-state EB2 of C^3 (x) C^3 that is not a SEB2 (psi_1..psi_9).
inline std::vector<BipartiteState> eb2_3x3() {
    const double h = 0.5;
    const double q = std::sqrt(3.0) / 2.0;
    const double t = std::sqrt(2.0) / std::sqrt(3.0);
    std::vector<BipartiteState> out;
    out.push_back(BipartiteState(3, 3, {{0, 0, h}, {1, 1, q}}));
    out.push_back(BipartiteState(3, 3, {{0, 0, q}, {1, 1, -h}}));
    out.push_back(BipartiteState(3, 3, {{0, 1, s2()}, {1, 0, s2()}}));
    out.push_back(BipartiteState(3, 3, {{0, 1, -s2()}, {1, 0, s2()}}));
    out.push_back(BipartiteState(3, 3, {{1, 2, s2()}, {2, 0, s2()}}));
    out.push_back(BipartiteState(3, 3, {{1, 2, s2()}, {2, 0, -s2()}}));
    out.push_back(BipartiteState(3, 3, {{0, 2, s2()}, {2, 1, s2()}}));
    out.push_back(BipartiteState(3, 3, {{0, 2, s3()}, {2, 1, -s3()}, {2, 2, s3()}}));
    out.push_back(BipartiteState(3, 3, {{0, 2, s6()}, {2, 1, -s6()}, {2, 2, -t}}));
    return out;
}

struct TensorFixture {
    std::vector<std::size_t> dims;
    std::vector<Complex> amplitudes;
};

inline std::size_t flat3(const std::vector<std::size_t>& dims, std::size_t a, std::size_t b,
                         std::size_t c) {
    return (a * dims[1] + b) * dims[2] + c;
}

/// The eight 3-qubit GHZ states (canonical signs; generator output matches
/// up to a per-state global phase).
inline std::vector<TensorFixture> ghz8() {
    const std::vector<std::size_t> dims{2, 2, 2};
    auto make = [&](std::size_t a1, std::size_t b1, std::size_t c1, std::size_t a2, std::size_t b2,
                    std::size_t c2, double sign) {
        TensorFixture f;
        f.dims = dims;
        f.amplitudes.assign(8, Complex(0.0, 0.0));
        f.amplitudes[flat3(dims, a1, b1, c1)] = s2();
        f.amplitudes[flat3(dims, a2, b2, c2)] = sign * s2();
        return f;
    };
    // ordered as the lift of the Bell list emits them
    return {make(0, 0, 0, 1, 1, 1, +1.0), make(0, 0, 1, 1, 1, 0, +1.0),
            make(0, 0, 0, 1, 1, 1, -1.0), make(0, 0, 1, 1, 1, 0, -1.0),
            make(0, 1, 0, 1, 0, 1, +1.0), make(0, 1, 1, 1, 0, 0, +1.0),
            make(0, 1, 0, 1, 0, 1, -1.0), make(0, 1, 1, 1, 0, 0, -1.0)};
}

/// The twenty-seven-state tripartite EB2 in C^3 (x) C^3 (x) C^3 obtained by
/// lifting the nine-state EB2; index i*3 + j.
inline std::vector<TensorFixture> eb2_27() {
    const std::vector<std::size_t> dims{3, 3, 3};
    const double h = 0.5;
    const double q = std::sqrt(3.0) / 2.0;
    const double t = std::sqrt(2.0) / std::sqrt(3.0);
    using Term = std::array<double, 4>; // party1, party2, party3, amplitude
    auto make = [&](std::vector<Term> terms) {
        TensorFixture f;
        f.dims = dims;
        f.amplitudes.assign(27, Complex(0.0, 0.0));
        for (const auto& tm : terms)
            f.amplitudes[flat3(dims, static_cast<std::size_t>(tm[0]), static_cast<std::size_t>(tm[1]),
                               static_cast<std::size_t>(tm[2]))] = Complex(tm[3], 0.0);
        return f;
    };
    std::vector<TensorFixture> out;
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{0, 0, double(j), h}, {1, 1, double((j + 1) % 3), q}}));
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{0, 0, double(j), q}, {1, 1, double((j + 1) % 3), -h}}));
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{0, 1, double(j), s2()}, {1, 0, double((j + 1) % 3), s2()}}));
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{0, 1, double(j), -s2()}, {1, 0, double((j + 1) % 3), s2()}}));
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{1, 2, double(j), s2()}, {2, 0, double((j + 1) % 3), s2()}}));
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{1, 2, double(j), s2()}, {2, 0, double((j + 1) % 3), -s2()}}));
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{0, 2, double(j), s2()}, {2, 1, double((j + 1) % 3), s2()}}));
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{0, 2, double(j), s3()},
                            {2, 1, double((j + 1) % 3), -s3()},
                            {2, 2, double((j + 1) % 3), s3()}}));
    for (std::size_t j = 0; j < 3; ++j)
        out.push_back(make({{0, 2, double(j), s6()},
                            {2, 1, double((j + 1) % 3), -s6()},
                            {2, 2, double((j + 1) % 3), -t}}));
    return out;
}

/// 4x4 real isometry whose columns all have three nonzero entries of
/// modulus 1/sqrt(3); the rank-3 diagonal basis written as columns.
inline ebk::Isometry sign_matrix_4x4() {
    const double v = s3();
    ebk::Isometry x;
    x.field = ebk::CoefficientField::real_field;
    x.entries = CMatrix(4, 4,
                        {Complex(0.0), Complex(v), Complex(v), Complex(v),
                         Complex(v), Complex(0.0), Complex(v), Complex(-v),
                         Complex(v), Complex(-v), Complex(0.0), Complex(v),
                         Complex(v), Complex(v), Complex(-v), Complex(0.0)});
    return x;
}

} // namespace fixtures
