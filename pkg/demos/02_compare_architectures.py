"""
Four ways to add, one table
===========================

Ripple-carry, carry-lookahead, and the two carry-increment hybrids all
satisfy the same port contract, so they can be built, verified and
timed side by side.
"""

from adderlab import AdderSpec, Architecture, DelayModel, compare, format_comparison

specs = [
    AdderSpec(Architecture.RCA, 8),
    AdderSpec(Architecture.CLA, 8),
    AdderSpec(Architecture.CIA_RCA, 8, block_size=4),
    AdderSpec(Architecture.CIA_CLA, 8, block_size=4),
]

# Every row is verified exhaustively before it is printed; the delay
# column is a longest-path count under the chosen model.
table = compare(specs, DelayModel.unit())
print(format_comparison(table))

# The unit model charges every gate the same. The log2 model makes wide
# gates pay for their fan-in, which is much less kind to the lookahead
# carry chain and its n-input products.
table = compare(specs, DelayModel.unit_log2())
print(format_comparison(table))

# Fan-in limits split the wide gates into balanced trees. The lookahead
# block gets deeper but each gate stays cheap.
limited = [
    AdderSpec(Architecture.CLA, 8),
    AdderSpec(Architecture.CLA, 8, max_fanin=4),
    AdderSpec(Architecture.CLA, 8, max_fanin=2),
]
print(format_comparison(compare(limited, DelayModel.unit())))
