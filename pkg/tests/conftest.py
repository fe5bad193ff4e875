import os

import hypothesis
import numpy as np
from hypothesis import HealthCheck

np.seterr(all="warn")

hypothesis.settings.register_profile(
    "dev", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis.settings.register_profile(
    "ci", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
hypothesis.settings.register_profile(
    "fast", deadline=None, max_examples=5, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))
