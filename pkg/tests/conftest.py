import numpy as np
import pytest

from adhesion_drag import PowerLaw, Scenario, preset

ALPHAS = (0.0, 0.5, 1.0, 2.0)


def rel_err(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.maximum(np.abs(a), np.abs(b))
    diff = np.abs(a - b)
    return float(np.max(np.divide(diff, scale, out=np.zeros_like(diff), where=scale > 0)))


def power_scenario(alpha, lam=1e-3, m0=0.0027, v0=10.0):
    return Scenario(m0, v0, PowerLaw(lam, alpha), label=f"alpha={alpha}")


@pytest.fixture
def water():
    return preset("table_tennis_water", 1.0)


@pytest.fixture
def air():
    return preset("table_tennis_air", 10.0)


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one verdict line per acceptance criterion; lines are echoed in the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] AC{number:>2} {title}" + (f": {detail}" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("AC")[1].split()[0])):
            terminalreporter.write_line(line)
