"""CLI invocations whose outputs are pinned under tests/golden.

Run ``python3 tests/golden_cases.py`` to regenerate after an intended change.
"""
from pathlib import Path

GOLDEN_DIR = Path(__file__).parent / "golden"

CASES = {
    "spectrum_l10.csv": ["spectrum", "--l", "10", "--kappa2", "1", "--K", "1"],
    "spectrum_soft_l6.json": ["spectrum", "--l", "6", "--kappa2", "0.01", "--format", "json"],
    "classify.csv": ["classify", "--l-grid", "0.5,10,100", "--kappa2-grid", "0.001,0.1,1,10,1000"],
    "uncertainty_l3max.json": ["uncertainty", "--l", "20", "--state", "l3max"],
    "uncertainty_soft.json": ["uncertainty", "--l", "20", "--kappa2", "0.001"],
    "converge.csv": ["converge", "--l-grid", "10,100,10000", "--count", "10"],
    "algebra_jacobi.json": ["algebra", "jacobi", "--algebra", "flexed", "--eps", "0.5"],
    "algebra_killing_so3.json": ["algebra", "killing"],
    "algebra_flex.csv": ["algebra", "flex", "--eps", "1,0.1,0.001,0"],
    "aline_n3.json": ["aline", "--n", "3"],
    "dline_n4.json": ["dline", "--n", "4", "--Q", "2", "--P", "0.5", "--R", "1.5"],
    "dyn_unit.json": ["dyn", "verify", "--ledger", "1,1,1,1,1,1"],
    "dyn_ledger2.json": ["dyn", "verify", "--ledger", "1,1,2,2,1,1"],
    "dyn_clifford1.json": ["dyn", "verify", "--ledger", "1,1,1,1,1,1", "--clifford", "1"],
    "clifford_stationary.json": ["clifford", "verify", "--mode", "stationary", "--n", "2", "--l", "2"],
    "clifford_dynamical.json": ["clifford", "verify", "--mode", "dynamical", "--n", "2"],
    "thermal_l5.csv": ["thermal", "--l", "5", "--kappa2", "1", "--K", "0.2"],
}


def render(name, argv, out_dir):
    from finq.cli import run

    path = Path(out_dir) / name
    code = run(list(argv) + ["--out", str(path)])
    return code, path


if __name__ == "__main__":
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, _ = render(name, argv, GOLDEN_DIR)
        print(f"{name}: exit {code}")
