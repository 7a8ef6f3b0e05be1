import os
import random

from hypothesis import HealthCheck, settings, strategies as st

from mllnet.enumkit import random_net
from mllnet.net import net_from

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def nets(max_links: int = 12, max_cuts: int = 3, max_conclusions: int = 2):
    """Random nets, drawn through a seeded generator so that shrinking stays meaningful."""
    return st.integers(0, 2**32 - 1).map(
        lambda s: random_net(random.Random(s), max_links, max_cuts, max_conclusions))


def cut_free_nets(max_links: int = 10):
    return nets(max_links, 0, 3)


def daimon_par():
    return net_from([("dai", [], ["a"]), ("dai", [], ["b"]), ("par", ["a", "b"], ["c"])], ["c"])


def forest_nets(k: int, max_connectives: int = 2):
    """Cut-free nets with k conclusions: random syntax trees, leaves grouped randomly into daimons."""
    from mllnet.enumkit import random_shape
    from mllnet.formula import leaves
    from mllnet.labelling import syntax_forest

    def build(seed: int):
        rng = random.Random(seed)
        shapes = [random_shape(rng, max_connectives) for _ in range(k)]
        n = sum(len(leaves(s)) for s in shapes)
        groups: list[list[int]] = []
        for x in range(n):
            if groups and rng.random() < 0.5:
                rng.choice(groups).append(x)
            else:
                groups.append([x])
        return syntax_forest(shapes, groups)

    return st.integers(0, 2**32 - 1).map(build)


# one line per acceptance criterion, printed after the run whatever the capture mode
CRITERIA: dict[int, str] = {}


def report_criterion(n: int, ok: bool, detail: str) -> None:
    CRITERIA[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(CRITERIA[n])


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
