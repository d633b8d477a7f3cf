#pragma once

// Reference values used across the test suite.
//
// Every constant here was produced by an implementation-independent oracle
// before the library code existed and then frozen: special-function and
// density values from 50-digit arbitrary-precision evaluation of the
// defining series/integrals, metric values from high-precision quadrature
// of the defining SNR integrals (cross-checked against each other), and
// the RNG vectors from an independent transcription of the published
// reference implementations.  Nothing in this header is derived from the
// code under test.

#include <cstdint>

namespace oracles {

// --- gamma / beta ---------------------------------------------------------
inline constexpr double log_gamma_10_3 = 13.482036786138357;
inline constexpr double log_gamma_0_5 = 0.57236494292470009;
inline constexpr double log_gamma_0_001 = 6.9071788853838537;
inline constexpr double log_gamma_999_5 = 5901.766920694737;
inline constexpr double log_gamma_1000 = 5905.2204232091812;
inline constexpr double beta_2_5_5 = 0.01704961704961705;

// --- Gauss 2F1 ------------------------------------------------------------
// 2F1(7.5, 2.5; 3.5; -0.8), 2F1(7.5, 2.5; 3.5; -25), 2F1(55, 5; 6; -0.97)
inline constexpr double hyp_a = 0.056127408181760499;
inline constexpr double hyp_b = 1.3639680815299337e-5;
inline constexpr double hyp_c = 3.6822173602679855e-7;

// --- univariate Meijer G --------------------------------------------------
// G^{2,3}_{3,3}((1-1.5, 1, 1); (2.5, 1), (0) | 1/0.3)
inline constexpr double g8_value = 1.348866555432205;
// Same block scaled by 1/(Gamma(1.5) Gamma(2.5)): the ASC I3 term.
inline constexpr double i3_shape_value = 1.1449534926313252;
// G^{2,3}_{3,3}((1-4, 1-7.5, 1-2.5); (0, 0), (-2.5) | 0.95)
// i.e. the outage-bound kernel at shapes (2.5, 5, 1.5, 2.5).
inline constexpr double g18_value = 22.694230435191225;

// --- fading (m=2.5, m_s=5, gamma_bar=3.1623) ------------------------------
inline constexpr double pdf_pin = 0.21002470009784165;  // at gamma = 2
inline constexpr double cdf_pin = 0.31995755470326837;  // at gamma = 2
inline constexpr double nakagami_pin = 0.38355295069627781; // m=2.5,gb=2,g=1.3

// --- secrecy metrics ------------------------------------------------------
// Scenario P1: m_D=2.5, m_sD=5, m_E=1, m_sE=2, gamma_D = 10 (absolute),
// gamma_E = 10^0.5 (5 dB), R_s = 1.
inline constexpr double p1_i1 = 1.9578324867861659;
inline constexpr double p1_i2 = 0.54131733127638068;
inline constexpr double p1_i3 = 1.4144933477871034;
inline constexpr double p1_asc = 1.0846564702754432;
inline constexpr double p1_sop = 0.5006075613091984;
// Scenario P2: m_D=2.5, m_sD=5, m_E=1.5, m_sE=2.5, lambda = 10 dB
// (gamma_D = 10 * gamma_E), gamma_E = 5 dB, R_s = 1.
inline constexpr double p2_sop = 0.19577468688157387;
inline constexpr double p2_sopl = 0.17171677215634845;
// Scenario P3: m_D=2.5, m_sD=5, m_E=0.5, m_sE=50, lambda = 10 dB.
inline constexpr double p3_spsc = 0.97192379609071728;

// --- RNG known answers ----------------------------------------------------
inline constexpr std::uint64_t splitmix_42[4] = {
    0xbdd732262feb6e95ull, 0x28efe333b266f103ull, 0x47526757130f9f52ull,
    0x581ce1ff0e4ae394ull};
inline constexpr std::uint64_t xoshiro_42[6] = {
    0xd0764d4f4476689full, 0x519e4174576f3791ull, 0xfbe07cfb0c24ed8cull,
    0xb37d9f600cd835b8ull, 0xcb231c3874846a73ull, 0x968d9f004e50de7dull};
inline constexpr std::uint64_t xoshiro_123456789[3] = {
    0x99e6bd73ed3f23b6ull, 0xc23a804d68730d49ull, 0x650e013620979041ull};

// --- misc -----------------------------------------------------------------
inline constexpr double ln2 = 0.69314718055994531;
inline constexpr double exp_m1 = 0.36787944117144232;

} // namespace oracles
