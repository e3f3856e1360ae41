import pytest

from cralg import algebraize, compute_aut, make_surface, preset_algebra

import acceptance_log


@pytest.fixture(scope="session")
def dual():
    return preset_algebra("dual")


@pytest.fixture(scope="session")
def sphere():
    return make_surface(1, 1, ["z1*zb1"], {"z1": 1, "w1": 2})


@pytest.fixture(scope="session")
def quartic():
    return make_surface(1, 1, ["z1^2*zb1^2"], {"z1": 1, "w1": 4})


@pytest.fixture(scope="session")
def sphere_dual(sphere, dual):
    return algebraize(sphere, dual)


@pytest.fixture(scope="session")
def quartic_dual(quartic, dual):
    return algebraize(quartic, dual)


@pytest.fixture(scope="session")
def aut_sphere(sphere):
    return compute_aut(sphere)


@pytest.fixture(scope="session")
def aut_quartic(quartic):
    return compute_aut(quartic)


@pytest.fixture(scope="session")
def aut_sphere_dual(sphere_dual):
    return compute_aut(sphere_dual)


@pytest.fixture(scope="session")
def aut_quartic_dual(quartic_dual):
    return compute_aut(quartic_dual)




@pytest.fixture(scope="session")
def suite_report():
    from cralg.suite import run_suite

    return run_suite()


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance_log.LINES):
        terminalreporter.write_line(acceptance_log.LINES[n])
