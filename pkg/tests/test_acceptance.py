"""Acceptance gate: every verification criterion at its reference resolution.

Each test pulls one check out of the corresponding verification suite (suites
are computed once and cached) and asserts it at the pinned tolerance, printing
the measured numbers.

Known red: `liftoff-prediction` measures the plateau identity on the bounded
supercritical drift at t_end = 10.  The exact solution is still ~6.6% above
the predicted level there, because this drift's weighted invariant measure has
a power-law tail and the center value relaxes like t^{-1/2} (verified: the
gap times sqrt(t) is constant over t in [10, 120], the value is grid-converged
at three resolutions and unchanged under doubling of the domain).  Meeting a
2% tolerance would need t_end near 65.  The check is kept faithful to its
stated budget rather than tuned to pass.
"""

import pytest

from driftlab import lab

_CACHE: dict = {}


def _suite(name: str) -> lab.SuiteReport:
    if name not in _CACHE:
        _CACHE[name] = lab.verify(name, quiet=True)
    return _CACHE[name]


CRITERIA = [
    # (test id, suite, check name)
    ("oracle-equivalence", "oracle", "oracle_equivalence"),
    ("liftoff-level", "liftoff", "liftoff_level"),
    ("conservation", "conservation", "weighted_mass_conservation"),
    ("liftoff-prediction", "liftoff", "liftoff_prediction"),
    ("decay-sup-monotone", "decay", "decay_sup_monotone"),
    ("decay-sup-small", "decay", "decay_sup_small"),
    ("decay-weighted-mass-monotone", "decay", "decay_weighted_mass_monotone"),
    ("critical-family", "critical", "critical_family"),
    ("classifier-table", "critical", "classifier_table"),
    ("mass-growth", "oracle", "mass_growth"),
    ("invariants-constant", "invariants", "constant_preservation"),
    ("invariants-max-principle", "invariants", "max_principle"),
    ("invariants-monotonicity", "invariants", "radial_monotonicity"),
    ("invariants-positivity", "invariants", "positivity"),
    ("invariants-linearity", "invariants", "linearity"),
    ("convergence-order", "convergence", "convergence_order"),
]


@pytest.mark.parametrize("label,suite,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance(label, suite, check):
    report = _suite(suite)
    result = next(c for c in report.checks if c.name == check)
    print(result.line())
    assert result.passed, result.line()
