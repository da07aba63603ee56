#!/usr/bin/env python3
#
# Copyright 2026 The tukeydp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Runs the CLI on a small data set and validates every JSON report."""

import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def run(cli, *args):
    out = subprocess.run([cli, *args], capture_output=True, text=True)
    if out.returncode != 0:
        sys.exit(f"{' '.join(args)} exited {out.returncode}: {out.stderr}")
    return out.stdout


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        data = Path(tmp) / "u.csv"
        data.write_text(run(cli, "gen", "--family", "uniform", "--n", "200", "--dim", "2", "--seed", "7",
                            "--format", "csv"))
        d = str(data)
        reports = {
            "depth": run(cli, "depth", "--input", d, "--query", "0.5,0.5", "--query", "0,0"),
            "region": run(cli, "region", "--input", d, "--kappa", "5"),
            "diam": run(cli, "diam", "--input", d, "--kappa", "5", "--no-noise"),
            "width": run(cli, "width", "--input", d, "--kappa", "5", "--no-noise"),
            "bbox": run(cli, "bbox", "--input", d, "--kappa", "5", "--no-noise"),
            "select-kappa": run(cli, "select-kappa", "--input", d, "--no-noise"),
            "audit": run(cli, "audit", "--input", d, "--add", "0.5,0.5", "--m", "10"),
            "pipeline": run(cli, "pipeline", "--input", d, "--no-noise"),
        }

    failures = 0
    for cmd, text in reports.items():
        doc = json.loads(text)
        errs = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errs:
            print(f"{cmd}: {'/'.join(map(str, e.path))}: {e.message}")
        if doc.get("command") != cmd:
            print(f"{cmd}: command field is {doc.get('command')!r}")
            errs.append(None)
        failures += bool(errs)

    pipe = json.loads(reports["pipeline"])["result"]
    eps = sum(s["budget"]["epsilon"] for s in pipe["stages"])
    dl = sum(s["budget"]["delta"] for s in pipe["stages"])
    if not (math.isclose(eps, pipe["budget_total"]["epsilon"], rel_tol=1e-12)
            and math.isclose(dl, pipe["budget_total"]["delta"], rel_tol=1e-12, abs_tol=0)):
        print(f"pipeline: stage budgets sum to ({eps}, {dl}), total says {pipe['budget_total']}")
        failures += 1

    print(f"{len(reports)} reports checked, {failures} failing")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
