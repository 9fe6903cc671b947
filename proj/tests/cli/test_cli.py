# Copyright 2026 The chan-atlas Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""End-to-end checks of the chan_atlas command line."""

import json
import math
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, SCHEMA, SPECS = sys.argv[1:4]
failures = []


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env)


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f" ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def spec(name):
    return os.path.join(SPECS, name)


with open(SCHEMA) as f:
    validator = jsonschema.Draft7Validator(json.load(f))


def valid(name, proc):
    check(name + " exits 0", proc.returncode == 0, proc.stderr.strip())
    if proc.returncode != 0:
        return None
    doc = json.loads(proc.stdout)
    errors = sorted(validator.iter_errors(doc), key=str)
    check(name + " matches schema", not errors, errors[0].message if errors else "")
    return doc


def statuses(doc):
    return {k: v["status"] for k, v in doc["verdicts"].items()}


tmp = tempfile.mkdtemp()

doc = valid("classify disc", run("classify", spec("disc_counterexample.json")))
if doc:
    s = statuses(doc)
    check("disc verdicts", (s["eb"], s["polytopic"], s["ecq"], s["universally_image_additive"]) == ("Yes", "Yes", "No", "No"), s)

doc = valid("classify trine", run("classify", spec("trine.json")))
if doc:
    check("trine not polytopic", statuses(doc)["polytopic"] == "No")

doc = valid("classify dephasing", run("classify", spec("dephasing_qutrit.json")))
if doc:
    check("dephasing is CQ", statuses(doc)["cq"] == "Yes")

for name in ["depolarizing_third.json", "measure_prepare.json", "transpose_allowed.json"]:
    first = run("report", spec(name), "--seed", "11")
    doc = valid("report " + name, first)
    second = run("report", spec(name), "--seed", "11")
    check("report " + name + " byte-identical", first.stdout == second.stdout)

env = dict(os.environ, CHAN_ATLAS_SEED="11")
check("CHAN_ATLAS_SEED default", run("report", spec("depolarizing_third.json"), env=env).stdout
      == run("report", spec("depolarizing_third.json"), "--seed", "11").stdout)
env["CHAN_ATLAS_SEED"] = "12"
check("--seed overrides CHAN_ATLAS_SEED", run("report", spec("depolarizing_third.json"), "--seed", "11", env=env).stdout
      == run("report", spec("depolarizing_third.json"), "--seed", "11").stdout)

doc = valid("timings", run("classify", spec("trine.json"), "--timings"))
if doc:
    check("timings present", "timings" in doc)

valid("decompose", run("decompose", spec("measure_prepare.json")))
doc = valid("entropy", run("entropy", spec("depolarizing_third.json"), "--p", "1,2", "--bits"))
if doc:
    check("entropy in bits", doc["entropy"][0]["unit"] == "bits"
          and abs(doc["entropy"][0]["value"] - 0.6365141682948126 / math.log(2)) < 1e-6)
valid("additivity", run("additivity", "--pair", spec("depolarizing_third.json"), spec("dephasing_qutrit.json")))
valid("image-additivity", run("image-additivity", "--pair", spec("measure_prepare.json"), spec("identity_qubit.json"),
                              "--directions", "20"))
valid("fixed-points", run("fixed-points", spec("dephasing_qutrit.json")))
valid("verify", run("verify", spec("transpose.json")))
text = run("classify", spec("trine.json"), "--format", "text")
check("text format", text.returncode == 0 and "verdicts:" in text.stdout)

prefix = os.path.join(tmp, "trine")
doc = valid("image", run("image", spec("trine.json"), "--plane", "diag", "--points", "256", "--out", prefix))
if doc:
    with open(prefix + ".csv") as f:
        lines = f.read().splitlines()
    check("csv header", lines[0] == "theta,x,y")
    pts = [tuple(map(float, line.split(","))) for line in lines[1:]]
    check("csv has 256 points", len(pts) == 256)
    dev = max(abs(math.hypot(x, y) - 1 / math.sqrt(6)) for _, x, y in pts)
    check("trine boundary radius", dev <= 1e-6, dev)
    with open(prefix + ".svg") as f:
        check("svg polyline", "<polyline" in f.read())
    first = open(prefix + ".csv").read()
    run("image", spec("trine.json"), "--plane", "diag", "--out", prefix)
    check("csv byte-identical", open(prefix + ".csv").read() == first)

check("non-CPTP rejected with 3", run("classify", spec("transpose.json")).returncode == 3)
check("non-CPTP entropy rejected with 3", run("entropy", spec("transpose_allowed.json")).returncode == 3)
bad = os.path.join(tmp, "bad.json")
for body in ['{"kind": ', '{"kind": "nope"}', '{"kind": "kraus", "payload": [[[1, 0]], [[0, 1], [1]]]}',
             '{"kind": "depolarizing", "r": 0.5, "format_version": "9"}',
             '{"kind": "depolarizing", "r": 0.5, "d_in": 3}']:
    with open(bad, "w") as f:
        f.write(body)
    proc = run("classify", bad)
    check("rejects " + body, proc.returncode == 2 and proc.stderr.startswith("error:"), proc.returncode)
check("missing file", run("classify", os.path.join(tmp, "absent.json")).returncode == 2)
check("bad flag", run("classify", spec("trine.json"), "--format", "xml").returncode == 2)
check("bad plane", run("image", spec("trine.json"), "--plane", "ab").returncode == 2)
check("qubit plane on qutrit", run("image", spec("dephasing_qutrit.json"), "--plane", "xy",
                                   "--out", prefix).returncode == 2)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
