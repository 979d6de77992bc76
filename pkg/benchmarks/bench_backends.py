#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Generates a random corpus, parses it once, then times batch extraction
of both feature families under each backend, selected the same way
production code selects it: through the ``SYNFEAT_BACKEND`` environment
flag. Kernel-only rows isolate the inner loops from per-sentence label
mapping. The first numba call pays JIT compilation; a warmup pass keeps
it out of the timings.

Usage: python benchmarks/bench_backends.py [--sentences N] [--max-words W]
"""

import argparse
import os
import time

from synfeat import PsfConfig, default_phrase_inventory, default_pos_inventory, parse_bracketed
from synfeat._backend import BACKEND_ENV, get_kernels
from synfeat.inventories import NONE_LABEL, label_indices
from synfeat.psf import TOP_DOWN, extract_psf
from synfeat.treegen import random_corpus
from synfeat.wrf import extract_wrf


def prepare_kernel_inputs(trees, pos_inv, phrase_inv):
    prepped = []
    for tree in trees:
        arrays = tree.arrays
        pos_idx = label_indices((tree.pos_of(w) for w in range(1, tree.num_words + 1)), pos_inv)
        plabel_idx = label_indices(
            (n.label if not n.is_preterminal else NONE_LABEL for n in tree.nodes), phrase_inv
        )
        prepped.append((pos_idx, arrays, plabel_idx))
    return prepped


def timed(fn):
    fn()  # warmup: JIT compile, caches
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def bench_backend(backend, trees, prepped, pos_inv, phrase_inv, config):
    os.environ[BACKEND_ENV] = backend
    kernels = get_kernels(backend)
    pos_dim, phrase_dim = len(pos_inv), len(phrase_inv)

    def end_to_end_psf():
        for tree in trees:
            extract_psf(tree, config, pos_inv, phrase_inv)

    def end_to_end_wrf():
        for tree in trees:
            extract_wrf(tree, pos_inv, phrase_inv)

    def kernel_psf():
        for pos_idx, a, plabel_idx in prepped:
            kernels.psf_fill(
                pos_idx, a.pret, a.parent, a.depth, a.first, a.last,
                plabel_idx, config.num_levels, config.direction == TOP_DOWN, pos_dim, phrase_dim,
            )

    def kernel_wrf():
        for pos_idx, a, plabel_idx in prepped:
            kernels.wrf_fill(
                pos_idx, a.pret, a.parent, a.depth, a.first, a.last,
                a.is_phrase, plabel_idx, pos_dim, phrase_dim,
            )

    return {
        ("psf", "end-to-end"): timed(end_to_end_psf),
        ("wrf", "end-to-end"): timed(end_to_end_wrf),
        ("psf", "kernel-only"): timed(kernel_psf),
        ("wrf", "kernel-only"): timed(kernel_wrf),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sentences", type=int, default=5000)
    parser.add_argument("--max-words", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    sources = random_corpus(seed=args.seed, size=args.sentences, max_words=args.max_words)
    trees = [parse_bracketed(s) for s in sources]
    words = sum(t.num_words for t in trees)
    pos_inv, phrase_inv = default_pos_inventory(), default_phrase_inventory()
    config = PsfConfig(10)
    prepped = prepare_kernel_inputs(trees, pos_inv, phrase_inv)
    print(f"corpus: {len(trees)} sentences, {words} words")
    print(f"{'backend':>8} {'family':>6} {'scope':>12} {'seconds':>9} {'words/s':>12}")

    saved_env = os.environ.get(BACKEND_ENV)
    results = {}
    try:
        for backend in ("numpy", "numba"):
            try:
                timings = bench_backend(backend, trees, prepped, pos_inv, phrase_inv, config)
            except RuntimeError as exc:
                print(f"{backend:>8} unavailable: {exc}")
                continue
            results[backend] = timings
            for (family, scope), seconds in timings.items():
                print(f"{backend:>8} {family:>6} {scope:>12} {seconds:9.3f} {words / seconds:12.0f}")
    finally:
        if saved_env is None:
            os.environ.pop(BACKEND_ENV, None)
        else:
            os.environ[BACKEND_ENV] = saved_env

    if {"numpy", "numba"} <= results.keys():
        for key in results["numpy"]:
            family, scope = key
            speedup = results["numpy"][key] / results["numba"][key]
            print(f"numba speedup, {family} {scope}: {speedup:.1f}x")


if __name__ == "__main__":
    main()
