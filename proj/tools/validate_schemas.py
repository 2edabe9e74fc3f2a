#!/usr/bin/env python3
"""Validate shipped inputs and live CLI output against schemas/ordrel.schema.json.

usage: validate_schemas.py <repo root> <ordrel binary>
"""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def main() -> int:
    root = Path(sys.argv[1])
    cli = sys.argv[2]
    schema = json.loads((root / "schemas" / "ordrel.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)

    def validator(name):
        return jsonschema.Draft202012Validator({"$ref": f"#/$defs/{name}", "$defs": schema["$defs"]})

    failures = 0

    def check(name, doc, where):
        nonlocal failures
        errs = list(validator(name).iter_errors(doc))
        for e in errs[:3]:
            print(f"{where}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        failures += bool(errs)
        return not errs

    def load(p):
        return json.loads(p.read_text())

    for p in sorted((root / "cases").glob("*.json")):
        check("theorem_case", load(p), p.name)
    for p in sorted((root / "suites").glob("*.json")):
        check("scan_config", load(p), p.name)
    for p in sorted((root / "corpus" / "dist").glob("*.json")):
        check("model", load(p), p.name)
    for i, pair in enumerate(load(root / "corpus" / "pairs.json")):
        check("model", pair["a"], f"pairs.json[{i}].a")
        check("model", pair["b"], f"pairs.json[{i}].b")
    for i, s in enumerate(load(root / "corpus" / "shifted.json")):
        check("shifted", s, f"shifted.json[{i}]")

    # Negative controls: the schema must reject what the parser rejects.
    bad = [
        ("dist", {"family": "exponential", "params": {"rate": 1, "scale": 2}}),
        ("dist", {"family": "weibull", "params": {"shape": 2}}),
        ("generator", {"family": "independence", "theta": 1, "dim": 2}),
        ("grid", {"kind": "x", "lo": 0}),
        ("theorem_case", {"theorem": "T6", "scenario": {"theta": 1, "alpha": [1]}}),
    ]
    for name, doc in bad:
        if not list(validator(name).iter_errors(doc)):
            print(f"schema accepted invalid {name}: {json.dumps(doc)}")
            failures += 1

    def run(*args):
        res = subprocess.run([cli, *args], capture_output=True, text=True)
        if res.returncode not in (0, 1, 3):
            raise SystemExit(f"ordrel {' '.join(args)} exited {res.returncode}: {res.stderr}")
        return json.loads(res.stdout)

    dist = root / "corpus" / "dist"
    for rel in ("st", "hr", "disp"):
        check("verdict", run("order", "-s", str(dist / "exp2.json"), "-s", str(dist / "exp1.json"),
                             "--relation", rel), f"order {rel}")
    for p in sorted((root / "cases").glob("*.json")):
        check("report_list", run("theorem", "-s", str(p)), f"theorem {p.name}")
    check("scan_result", run("scan", "-s", str(root / "suites" / "t6.json")), "scan t6")

    print("schema validation:", "ok" if failures == 0 else f"{failures} document(s) failed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
