"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--size N] [--repeat R]

Prints per-kernel timings for both backends, then the wall time of a full
three-table reproduction under each backend (run in a fresh interpreter so
the backend choice at import takes effect).
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from noncontact import data_io
from noncontact._backend import get_kernels


def kernel_cases(size):
    caf2 = data_io.load_material("caf2")
    sio2 = data_io.load_material("sio2_ordinary")
    gold = data_io.load_material("au")
    atom = data_io.load_atom("h_1s")
    w = np.linspace(1e-6, 0.038, size)
    s_a, s_w, s_g = sio2.parameters()
    c_a, c_w, c_g = caf2.parameters(300.0)
    f = np.array([o.f for o in atom.oscillators])
    e = np.array([o.energy for o in atom.oscillators])
    g = np.array([o.width for o in atom.oscillators])
    r = gold.remainder
    drude = (gold.omega_p, gold.gamma_p, r.a, r.omega0, r.gamma0, True, w)
    return {
        "lorentz_surface[sio2, 11 terms]": ("lorentz_surface", (s_a, s_w, s_g, w)),
        "lorentz_rho[caf2, 4 terms]": ("lorentz_rho", (c_a, c_w, c_g, w)),
        "drude_surface[au]": ("drude_surface", drude),
        "oscillator_alpha[h_1s]": ("oscillator_alpha", (f, e, g, w)),
        "static_alpha[h_1s]": ("static_alpha", (f, e, w)),
        "inv_sinh2_half": ("inv_sinh2_half", (1052.58, w)),
    }


def bench_kernels(size, repeat):
    try:
        backends = {"cython": get_kernels("cython")}
    except ImportError:
        backends = {}
        print("compiled extension not built; numpy timings only\n")
    backends["python"] = get_kernels("python")
    print(f"kernel timings, {size} frequencies, best of {repeat} (microseconds)")
    print(f"{'kernel':36s}" + "".join(f"{b:>12s}" for b in backends) + ("    speedup" if len(backends) == 2 else ""))
    for label, (name, args) in kernel_cases(size).items():
        times = []
        for mod in backends.values():
            fn = getattr(mod, name)
            number = max(1, 20000 // size)
            t = min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number
            times.append(t * 1e6)
        line = f"{label:36s}" + "".join(f"{t:12.1f}" for t in times)
        if len(times) == 2:
            line += f"    {times[1] / times[0]:6.2f}x"
        print(line)


def bench_tables(repeat):
    code = (
        "import time\n"
        "from noncontact import cli\n"
        "t = time.perf_counter()\n"
        "for m in cli.TABLES.values(): cli.table_rows(m)\n"
        "print(time.perf_counter() - t)\n"
    )
    print(f"\nfull table reproduction (3 tables, 36 integrals x 2), best of {repeat}")
    for name, flag in (("cython", "0"), ("python", "1")):
        env = dict(os.environ, NONCONTACT_PURE_PYTHON=flag)
        best = min(
            float(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                 text=True, check=True).stdout)
            for _ in range(repeat)
        )
        print(f"  {name:8s} {best:8.3f} s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=21, help="frequencies per kernel call (21 = one GK panel)")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    bench_kernels(args.size, args.repeat)
    bench_kernels(10_000, args.repeat)
    bench_tables(min(args.repeat, 3))


if __name__ == "__main__":
    main()
