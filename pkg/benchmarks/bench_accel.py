"""Benchmark the jitted kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_accel.py
The fallback can also be forced package-wide with OCTAVIB_NO_NUMBA=1.
"""

import time

import numpy as np

from octavib import accel, burnside, force_field as ff, group_core as gc


def timer(fn, *args, repeat=200):
    fn(*args)  # warmup (jit compilation)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


LEFT = "numba" if accel.USE_NUMBA else "loop"


def bench_force_field():
    rng = np.random.default_rng(7)
    pos = ff.OCTAHEDRON * 1.4 + 0.1 * rng.normal(size=(6, 3))
    s = (0.0618, 0.0618, 1.0)
    print(f"{'kernel':<12} {LEFT:>12} {'numpy':>12} {'ratio':>9}")
    for name in ("potential", "gradient", "hessian"):
        jit = accel.loop_impls[name] if not accel.USE_NUMBA else getattr(accel, name)
        ref = accel.numpy_impls[name]
        a = np.asarray(jit(pos, *s))
        b = np.asarray(ref(pos, *s))
        assert np.allclose(a, b, atol=1e-12), name
        tj = timer(jit, pos, *s)
        tn = timer(ref, pos, *s)
        print(f"{name:<12} {tj * 1e6:>10.2f}us {tn * 1e6:>10.2f}us {tn / tj:>8.1f}x")


def bench_census():
    ring = burnside.ring()
    cat = ring.catalog
    masks, ids = ring._tables()
    hi = cat.index_of_label["D_1^z"]
    ki = cat.index_of_label["Z_2^-"]
    conj_h = np.array(
        [gc.conj_mask(cat.classes[hi].mask, g) for g in cat.coset_reps(hi)],
        dtype=np.uint64,
    )
    conj_k = np.array(
        [gc.conj_mask(cat.classes[ki].mask, g) for g in cat.coset_reps(ki)],
        dtype=np.uint64,
    )
    jit = accel.census_counts if accel.USE_NUMBA else accel.loop_impls["census_counts"]
    ref = accel.numpy_impls["census_counts"]
    assert np.array_equal(
        jit(conj_h, conj_k, masks, ids, 33), ref(conj_h, conj_k, masks, ids, 33)
    )
    tj = timer(jit, conj_h, conj_k, masks, ids, 33)
    tn = timer(ref, conj_h, conj_k, masks, ids, 33)
    print(f"{'census':<12} {tj * 1e6:>10.2f}us {tn * 1e6:>10.2f}us {tn / tj:>8.1f}x")


if __name__ == "__main__":
    mode = "numba" if accel.USE_NUMBA else "numpy fallback"
    print(f"active path: {mode}")
    bench_force_field()
    bench_census()
