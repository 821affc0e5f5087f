from hypothesis import HealthCheck, settings

# Exact rational pivots make single examples slow; wall-clock deadlines
# only add flakiness on a loaded machine.
settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")
