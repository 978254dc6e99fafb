"""
Where the time goes
===================

Static timing over the gate graph: per-net arrival times, the critical
path that sets the delay, and how that delay scales with width.
"""

from adderlab import (
    Architecture,
    DelayModel,
    build_cia,
    build_cla_block,
    build_rca,
    delay_report,
)

unit = DelayModel.unit()

# The ripple adder's carry chain is the textbook linear path.
for width in (4, 8, 16):
    rca = build_rca(width)
    print(f"{rca.name}: delay {delay_report(rca, unit).delay:g}  (2w+1 = {2 * width + 1})")

# The lookahead block computes every carry in one two-level layer, so
# its unit delay is flat in the width.
print()
for width in (2, 4, 8):
    cla = build_cla_block(width)
    print(f"{cla.name}: delay {delay_report(cla, unit).delay:g}")

# The report also carries the path itself: gate indices with arrival
# times, from the first gate after the inputs out to the slowest output.
print()
cia = build_cia(8, 4, Architecture.CLA)
report = delay_report(cia, unit)
print(f"{cia.name}: delay {report.delay:g}")
print("critical path:", " -> ".join(f"g{gi}@{t:g}" for gi, t in report.path))
stage_of = {i: g.stage for i, g in enumerate(cia.gates)}
print("stages crossed:", " -> ".join(dict.fromkeys(stage_of[gi] or "?" for gi, _ in report.path)))

# Under a fan-in-sensitive model the lookahead block is no longer flat:
# its wide product terms get charged log2(fanin) units each.
log2 = DelayModel.unit_log2()
print()
for width in (2, 4, 8):
    cla = build_cla_block(width)
    print(f"{cla.name}: unit {delay_report(cla, unit).delay:g}, log2 {delay_report(cla, log2).delay:g}")
