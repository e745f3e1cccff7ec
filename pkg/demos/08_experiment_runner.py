"""
Declarative experiments and reports
===================================

An experiment is a small TOML document.  Running it twice, with any thread
count, gives the same report; the report serializes to JSON or CSV.
The same runs are available from the ``stablematch`` command.
"""
import tempfile
from pathlib import Path

from stablematch.experiments import emit_report, parse_config, run_experiment

here = Path(__file__).parent
cfg = parse_config((here / "configs" / "typical_cost.toml").read_text())
print("parsed:", cfg)

one = run_experiment(cfg)
cfg.threads = 3
print("identical with 3 threads:", one == run_experiment(cfg))

with tempfile.TemporaryDirectory() as tmp:
    for path in emit_report(one, "csv", Path(tmp) / "typical"):
        print(f"--- {path.name}")
        print("\n".join(path.read_text().splitlines()[:4]))

print("\nshell equivalent:\n  stablematch typical-cost --n 10000 --reps 2000 --d 2 --seed 7 --out typical --format csv --check")
