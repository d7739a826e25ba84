"""
Six synthetic scenarios
=======================

Perfect match, a point prediction inside a long event, a fragmented and
shifted prediction, a near miss, a wide window over a point event, and
random predictions around a point event, each scored with F1, F_0.5,
F_2, pa%50, pa and F1_w with a 10-step window.
"""

from eventf1.report import render_suite
from eventf1.scenarios import run_scenario_suite

suite = run_scenario_suite(window_steps=10)
print(render_suite(suite, "markdown"))
print("all checks pass:", suite.passed)
