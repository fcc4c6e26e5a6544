"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each kernel runs on the same inputs under both backends; results are checked
for equality before timings are reported.
"""
import argparse
import timeit

from eacount.ea import gamma_generators, random_element
from eacount.functions import make_rng, random_table
from eacount.kernels import available_backends


def cases():
    rng = make_rng(7)
    g = random_element(rng, 2, 3, 3)
    F = random_table(rng, 2, 3, 3)
    g4 = random_element(rng, 2, 4, 4)
    F4 = random_table(rng, 2, 4, 4)
    h = random_element(rng, 2, 2, 2)
    gens = gamma_generators(2, 2, 2)
    gens3 = gamma_generators(2, 2, 3)
    return [
        ("apply_table (2,4,4)", "apply_table", (list(F4.table), g4.input_map, g4.output_map), 2000),
        ("apply_table (2,3,3)", "apply_table", (list(F.table), g.input_map, g.output_map), 5000),
        ("count_fixed_tables (2,2,2)", "count_fixed_tables", (h.input_map, h.output_map, 4, 4), 200),
        ("count_fixed_tables (2,3,3)", "count_fixed_tables", (g.input_map, g.output_map, 8, 8), 1),
        ("orbit_labels (2,2,2)", "orbit_labels",
         ([x.input_map for x in gens], [x.output_map for x in gens], 4, 4), 20),
        ("orbit_labels (2,2,3)", "orbit_labels",
         ([x.input_map for x in gens3], [x.output_map for x in gens3], 4, 8), 1),
    ]


def normalise(result):
    if isinstance(result, tuple):
        labels, count = result
        return list(map(int, labels)), count
    return result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':30s}" + "".join(f"{b + ' (ms)':>16s}" for b in names)
          + ("   speedup" if len(names) > 1 else ""))
    for label, fn, call_args, number in cases():
        outputs = {b: normalise(getattr(backends[b], fn)(*call_args)) for b in names}
        if len({repr(o) for o in outputs.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        ms = {}
        for b in names:
            f = getattr(backends[b], fn)
            best = min(timeit.repeat(lambda: f(*call_args), number=number, repeat=args.repeat))
            ms[b] = 1000 * best / number
        line = f"{label:30s}" + "".join(f"{ms[b]:16.4f}" for b in names)
        if "cython" in ms:
            line += f"   {ms['python'] / ms['cython']:7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
