"""Katz reduction of a few three-point tuples."""

from charvar import MonodromyTuple, katz_reduce
from charvar.errors import ConvolutionError

tuples = {
    "hypergeometric": MonodromyTuple.semisimple([{"1/5": 1, "2/5": 1}, {"1/7": 1, "3/7": 1}, {"1/3": 1, "1/2": 1}]),
    "rank 3": MonodromyTuple.semisimple([{"0": 1, "2/5": 2}, {"0": 1, "1/2": 1, "2/3": 1}, {"1/3": 1, "2/3": 1, "4/5": 1}]),
    "tops 5,3,2": MonodromyTuple.semisimple([
        {"0": 5, "1/2": 5},
        {"1/3": 3, "2/3": 3, "0": 3, "1/4": 1},
        {"1/5": 2, "2/5": 2, "3/5": 2, "4/5": 2, "1/7": 2},
    ]),
}

for name, tup in tuples.items():
    try:
        final, trace = katz_reduce(tup)
    except ConvolutionError as exc:
        print(f"{name}: {type(exc).__name__}: {exc}")
        continue
    ranks = [tup.rank] + [s.rank_after for s in trace]
    print(f"{name}: ranks {' -> '.join(map(str, ranks))}")
    for s in trace:
        print(f"  step {s.index}: delta {s.delta}, distinguished {s.distinguished}")
