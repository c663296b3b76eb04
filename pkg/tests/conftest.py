import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "natfull",
    max_examples=int(os.environ.get("NATFULL_MAX_EXAMPLES", "25")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("natfull")
