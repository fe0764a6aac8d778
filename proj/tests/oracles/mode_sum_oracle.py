"""Brute-force mode-sum oracle for the scalar kernels.

Sums every mode in plain index order at 40 significant digits, without the
+/-k pairing used by the library, and prints C++ constants for
tests/oracle_values.hpp.
"""
import mpmath as mp

mp.mp.dps = 40


def grid(n_space, box_length, mass):
    half = n_space // 2
    ks = [2 * mp.pi * n / box_length for n in range(-(half - 1), half)]
    return [(k, mp.sqrt(mass * mass + k * k)) for k in ks]


def wightman_plus(modes, box_length, t, x):
    s = mp.mpc(0)
    for k, w in modes:
        s += mp.exp(-1j * (w * t - k * x)) / (2 * w)
    return -1j * s / box_length


def wightman_minus(modes, box_length, t, x):
    s = mp.mpc(0)
    for k, w in modes:
        s += mp.exp(1j * (w * t - k * x)) / (2 * w)
    return 1j * s / box_length


def emit(name, z):
    print(f"inline const std::complex<double> {name}{{{mp.nstr(z.real, 20)}, {mp.nstr(z.imag, 20)}}};")


if __name__ == "__main__":
    L = mp.mpf(10)
    modes = grid(64, L, mp.mpf(1))
    emit("kWightmanPlus_t0p5_x0", wightman_plus(modes, L, mp.mpf("0.5"), mp.mpf(0)))
    emit("kWightmanMinus_t0p5_x2", wightman_minus(modes, L, mp.mpf("0.5"), mp.mpf(2)))
    plus = wightman_plus(modes, L, mp.mpf("0.7"), mp.mpf("1.3"))
    minus = wightman_minus(modes, L, mp.mpf("0.7"), mp.mpf("1.3"))
    emit("kCommutator_t0p7_x1p3", plus + minus)
    emit("kTimeSymmetric_t0p7_x1p3", (plus + minus) / 2)
    # t < 0 branch of the time-ordered kernel: D_F = -D-
    emit("kFeynman_tm0p5_x1p3",
         -wightman_minus(modes, L, mp.mpf("-0.5"), mp.mpf("1.3")))
    small = grid(16, L, mp.mpf(1))
    emit("kFeynmanN16_t0p8_x2p1", wightman_plus(small, L, mp.mpf("0.8"), mp.mpf("2.1")))
