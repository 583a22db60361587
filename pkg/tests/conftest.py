import itertools

import pytest
from hypothesis import HealthCheck, settings

from phl import core

settings.register_profile(
    "ci",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def brute_force_homs(dom, cod):
    """Independent hom-set oracle: every raw assignment, filtered by the
    structure constraints, without any pruning or shared code path."""
    sorts = dom.signature.sorts
    cells = [(sort, cell) for sort in sorts for cell in dom.cells[sort]]
    choices = [cod.cells[sort] for sort, _ in cells]
    out = []
    for values in itertools.product(*choices):
        assignment = {sort: {} for sort in sorts}
        for (sort, cell), value in zip(cells, values):
            assignment[sort][cell] = value
        ok = True
        for name, s_sort, t_sort in dom.signature.ops:
            for cell in dom.cells[s_sort]:
                if assignment[t_sort][dom.op(name, cell)] != cod.op(
                    name, assignment[s_sort][cell]
                ):
                    ok = False
        if ok:
            out.append(core.PresheafMap(dom, cod, assignment))
    return out


@pytest.fixture(scope="session")
def set_instance():
    from phl.cylinder import set_instance as make

    return make()


@pytest.fixture(scope="session")
def graph_instance():
    from phl.cylinder import graph_instance as make

    return make()
