"""Time the numba kernels against the pure-numpy fallback.

Both implementations are imported directly, so the environment flag does
not matter here. The first numba call per signature compiles (or loads the
on-disk cache) and is excluded from the timings.

    python benchmarks/bench_kernels.py --points 1025 --dims 2 3 4 6 --repeat 5
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from qslkit.dynamics import track_states
from qslkit.kernels import _numba, _numpy
from qslkit.matrixcore import JACOBI_MAX_SWEEPS, JACOBI_TOL, fourier_matrix, random_density, random_unitary


def _trajectory(n: int, m: int, seed: int):
    """A smooth unitary orbit of a random mixed state, with tracked frames."""
    rho = random_density(n, n, seed).data
    u = random_unitary(n, seed + 1).data
    h = 0.5 * (u + u.conj().T)
    w, v = np.linalg.eigh(h)
    ts = np.linspace(0.0, 1.0, m)
    props = np.einsum("ij,tj,kj->tik", v, np.exp(-1j * np.outer(ts, w)), v.conj())
    states = props @ rho @ props.conj().transpose(0, 2, 1)
    return states, track_states(states, ts)


def _time(fn, repeat: int) -> float:
    fn()  # warm-up: numba compilation / cache load
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=1025, help="states per trajectory")
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 6])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    print(f"{'kernel':<20}{'N':>3}{'numpy [ms]':>13}{'numba [ms]':>13}{'speedup':>9}{'max |diff|':>12}")
    for n in args.dims:
        states, frames = _trajectory(n, args.points, args.seed)
        basis = fourier_matrix(n)
        alphas = np.full((n, n), 1.0)
        cases = {
            "jacobi_eigh_batch": lambda impl: impl.jacobi_eigh_batch(states, JACOBI_TOL, JACOBI_MAX_SWEEPS)[0],
            "curve_length": lambda impl: impl.curve_length(states, 0.9),
            "pair_curve_lengths": lambda impl: impl.pair_curve_lengths(states, frames, basis, alphas),
        }
        for name, call in cases.items():
            t_np = _time(lambda: call(_numpy), args.repeat)
            t_nb = _time(lambda: call(_numba), args.repeat)
            a, b = np.asarray(call(_numpy)), np.asarray(call(_numba))
            if name == "jacobi_eigh_batch":
                a, b = np.sort(a, axis=-1), np.sort(b, axis=-1)
            diff = float(np.max(np.abs(a - b)))
            print(f"{name:<20}{n:>3}{1e3 * t_np:>13.3f}{1e3 * t_nb:>13.3f}{t_np / t_nb:>9.1f}{diff:>12.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
