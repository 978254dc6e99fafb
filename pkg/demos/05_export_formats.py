"""
Getting netlists out of Python
==============================

The same circuit as canonical JSON (lossless, byte-stable), Graphviz
DOT (pictures), structural Verilog (synthesis tools) and CSV (spread
sheets). Everything lands in demos/out/.
"""

from pathlib import Path

from adderlab import (
    AdderSpec,
    Architecture,
    DelayModel,
    build_cia,
    compare,
    export_csv,
    export_dot,
    export_json,
    export_verilog,
    import_json,
)

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

cia = build_cia(8, 4, Architecture.CLA)

# JSON is the interchange format: import(export(x)) reproduces the
# document byte for byte, so diffs on checked-in netlists stay honest.
text = export_json(cia)
(out / "cia.json").write_text(text)
assert export_json(import_json(text)) == text
print("cia.json:", len(text), "bytes, round trips byte-identically")

# DOT groups gates into clusters by stage; render with
#   dot -Tsvg demos/out/cia.dot -o cia.svg
(out / "cia.dot").write_text(export_dot(cia))
print("cia.dot: ", sum(c == ">" for c in export_dot(cia)), "edges")

# Verilog is flat structural code, one primitive instance per gate.
verilog = export_verilog(cia)
(out / "cia.v").write_text(verilog)
print("cia.v:    module", verilog.split()[1], "with", len(cia.gates), "gate instances")

# And the comparison table as CSV.
table = compare(
    [AdderSpec(Architecture.CIA_RCA, 8, 4), AdderSpec(Architecture.CIA_CLA, 8, 4)],
    DelayModel.unit(),
)
(out / "compare.csv").write_text(export_csv(table))
print("compare.csv:")
print(export_csv(table), end="")
