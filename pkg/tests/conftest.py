import sys
import time

import pytest

import thetaperm
from thetaperm import cobordism, combinatorics, genus, hodge, permutohedron, polyring, tomei

# (number, title, ok, seconds, detail) for every acceptance criterion that ran
ACCEPTANCE = []

_MODULES = (combinatorics, permutohedron, polyring, genus, hodge, cobordism, tomei)


def clear_caches():
    """Drop every memoised table so timings start cold."""
    for module in _MODULES:
        for obj in vars(module).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()
    for g in (genus.TODD_ST, genus.CHI_Y):
        if callable(getattr(g.assignment, "cache_clear", None)):
            g.assignment.cache_clear()


@pytest.fixture
def criterion():
    def run(number, title, budget, check):
        clear_caches()
        start = time.perf_counter()
        detail = ""
        ok = False
        try:
            check()
            ok = True
        except AssertionError as exc:
            detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
            raise
        except thetaperm.ThetapermError as exc:
            detail = f"{type(exc).__name__}: {exc}"
            raise
        finally:
            seconds = time.perf_counter() - start
            if ok and seconds >= budget:
                ok = False
                detail = f"over time budget {budget}s"
            line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} ({seconds:.2f}s / {budget}s)"
            if detail:
                line += f" - {detail}"
            ACCEPTANCE.append(line)
            print(line, file=sys.stderr)
        assert seconds < budget, f"criterion {number} took {seconds:.2f}s, budget {budget}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
