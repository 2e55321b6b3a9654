import os
import sys

from hypothesis import HealthCheck, settings

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# as operações exatas são lentas na primeira chamada (caches frios)
settings.register_profile(
    "young",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("young")
