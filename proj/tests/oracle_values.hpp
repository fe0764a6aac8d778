#pragma once

// Generated by oracles/mode_sum_oracle.py (40-digit direct sums, no +/-k
// pairing). N = 64, L = 10, m = 1 unless the name says otherwise.

#include <complex>

namespace oracle {

inline const std::complex<double> kWightmanPlus_t0p5_x0{-0.24936345078836243058, -0.10512042542721461491};
inline const std::complex<double> kWightmanMinus_t0p5_x2{0.0018094428052242288373, 0.015642969218642146734};
inline const std::complex<double> kCommutator_t0p7_x1p3{-0.010687796356657815406, 0.0};
inline const std::complex<double> kTimeSymmetric_t0p7_x1p3{-0.0053438981783289077028, 0.0};
inline const std::complex<double> kFeynman_tm0p5_x1p3{0.0038747333105672246365, -0.048392329208210305093};
inline const std::complex<double> kFeynmanN16_t0p8_x2p1{-0.0089242865870789334838, -0.020860692144913744028};

}  // namespace oracle
