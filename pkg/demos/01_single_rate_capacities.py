#!/usr/bin/env python3
"""Single-user capacities of the erasure adder family.

One user sends at full rate while the other holds a constant symbol.
For the binary adder whose output is erased with probability p this
capacity is exactly 1 - p, and every constant the idle partner can hold
achieves it (the channel is additive, so the conditional information
does not depend on the constant).
"""

import numpy as np

from macfeedback import catalog, single_rate_capacity

print(f"{'p':>6} {'C_user1':>10} {'C_user2':>10} {'1-p':>8} {'tied partners':>15}")
for p in np.linspace(0.0, 1.0, 11):
    mac = catalog.erasure_adder_mac(round(float(p), 2))
    r1 = single_rate_capacity(mac, 1)
    r2 = single_rate_capacity(mac, 2)
    ties = ",".join(r1.maximizer_set)
    print(f"{p:6.2f} {r1.value:10.6f} {r2.value:10.6f} {1 - p:8.2f} {ties:>15}")

print()
mac = catalog.erasure_adder_mac(0.5)
res = single_rate_capacity(mac, 1)
print("capacity-achieving input at p = 0.5:",
      {s: round(float(v), 6) for s, v in zip(res.p_star.alphabet, res.p_star.probs)})
print("best partner constant:", res.xk_star)
