#!/usr/bin/env python3
# Copyright 2026 The numguard Authors
# SPDX-License-Identifier: Apache-2.0
#
# Independent numpy evaluation of the raised-cosine windowed-OFDM PSD. Prints
# the reference values frozen into tests/test_spectrum.cpp and
# tests/test_guard_opt.cpp.

import numpy as np

N = 256
CP_S = (1 / 16) / 15e3  # fixed channel prefix, seconds


def g(u, a):
    """sinc(pi u) cos(pi a u) / (1 - (2 a u)^2), limit pi/4 * sinc at 2au = +-1."""
    u = np.asarray(u, dtype=float)
    v = 2 * a * u
    den = 1 - v * v
    sing = np.abs(den) < 1e-12
    taper = np.where(sing, np.pi / 4, np.cos(np.pi * a * u) / np.where(sing, 1, den))
    return np.sinc(u) * taper


def psd_linear(f, df, alpha):
    t_ofdm = 1 / df
    t = t_ofdm + CP_S + alpha * t_ofdm
    a = alpha * t_ofdm / t
    k = np.arange(N) - N // 2
    out = np.zeros_like(f)
    for kk in k:
        out += g((f - kk * df) * t, a) ** 2
    return out


def inband_mean(df, alpha, step):
    left = (-N // 2 - 0.5) * df
    f = left + (np.arange(int(round(N * df / step))) + 0.5) * step
    return psd_linear(f, df, alpha).mean()


def required_offset_scan(df, alpha, theta, step=100.0, span_obw=3):
    edge = (N // 2 - 0.5) * df
    off = np.arange(0, span_obw * N * df + step / 2, step)
    p = psd_linear(edge + off, df, alpha) / inband_mean(df, alpha, step)
    db = 10 * np.log10(p)
    tail = np.maximum.accumulate(db[::-1])[::-1]
    ok = np.nonzero(tail <= -theta)[0]
    return off[ok[0]]


def optimize(df, theta, alphas):
    best = None
    for a in alphas:
        edge = (N // 2 - 0.5) * df
        step = df / 16
        off = np.arange(0, 3 * N * df + step / 2, step)
        p = psd_linear(edge + off, df, a) / inband_mean(df, a, step)
        tail = np.maximum.accumulate((10 * np.log10(p))[::-1])[::-1]
        ok = np.nonzero(tail <= -theta)[0]
        if len(ok) == 0:
            continue
        gb = np.ceil(off[ok[0]] / df - 1e-9) * df
        eta = (1 / df) / (1 / df + CP_S + a / df) * N * df / (N * df + 2 * gb)
        if best is None or eta > best[0]:
            best = (eta, a, gb)
    return best


if __name__ == "__main__":
    off = required_offset_scan(15e3, 0.0, 30.0)
    print("required_gb 15k a=0 theta=30 (100 Hz scan): offset %.1f Hz -> gb %.1f Hz"
          % (off, np.ceil(off / 15e3 - 1e-9) * 15e3))
    for alpha in (0.0, 0.1, 0.5):
        ref = inband_mean(15e3, alpha, 15e3 / 16)
        for m in (1, 10, 50):
            f = (N // 2 - 0.5) * 15e3 + m * 15e3
            print("psd 15k a=%.2f edge+%d df: %.6f dB"
                  % (alpha, m, 10 * np.log10(psd_linear(np.array([f]), 15e3, alpha)[0] / ref)))
    grid = np.arange(33) / 32
    for theta in (0, 20, 25, 30, 35, 40, 45, 60):
        eta, a, gb = optimize(15e3, theta, grid)
        print("opt 15k theta=%d: eta %.10f alpha %.5f gb %.0f" % (theta, eta, a, gb))
    for df in (30e3, 60e3, 120e3):
        eta, a, gb = optimize(df, 60, grid)
        print("opt %dk theta=60: eta %.10f alpha %.5f gb %.0f" % (df / 1e3, eta, a, gb))
    coarse = np.arange(5) / 4
    eta, a, gb = optimize(15e3, 40, coarse)
    print("opt 15k theta=40 5-point grid: eta %.10f alpha %.5f gb %.0f" % (eta, a, gb))
