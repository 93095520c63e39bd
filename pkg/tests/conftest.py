import math

import pytest

from sshq.dynamics import ProtocolConfig, PumpConfig, RunContext, run_protocol
from sshq.model import LatticeParams, PAPER_SCHEDULE, QuenchSchedule

PI = math.pi


@pytest.fixture(scope="session")
def params():
    return LatticeParams()


def make_run(alpha=None, pump=None, gamma=0.0025, init="vacuum", solver="modal",
             schedule=None, **kw):
    if schedule is None:
        schedule = PAPER_SCHEDULE if alpha is None else QuenchSchedule.constant(alpha)
    ctx = RunContext(LatticeParams(gamma=gamma), schedule, pump if pump is not None else PumpConfig())
    return run_protocol(ProtocolConfig(ctx, init=init, solver=solver, **kw))


@pytest.fixture(scope="session")
def fig3a_modal():
    return make_run()


@pytest.fixture(scope="session")
def fig3a_rk4():
    return make_run(solver="rk4")
