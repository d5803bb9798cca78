import csv
import io

from polyannulus.bench import HEADER, run_bench, to_csv


def test_small_bench():
    rows = run_bench(ns=(2000, 4000), epsilons=(0.2, 0.1), rigid_max_n=2100, rigid_epsilons=(0.2,))
    text = to_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert text.splitlines()[0] == ",".join(HEADER)
    assert {r["mode"] for r in parsed} == {"planar", "direct", "rigid"}
    by_key = {}
    for r in parsed:
        by_key.setdefault((r["n"], r["epsilon"]), {})[r["mode"]] = r
    for modes in by_key.values():
        # both translation paths evaluate the same grid
        assert abs(float(modes["planar"]["width"]) - float(modes["direct"]["width"])) <= 1e-9
        assert modes["planar"]["evaluations"] == modes["direct"]["evaluations"]


def test_direct_skip():
    rows = run_bench(ns=(3000,), epsilons=(0.1,), direct_limit=10, rigid_epsilons=())
    assert [r["mode"] for r in rows] == ["planar"]
