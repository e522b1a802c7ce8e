from dualroots.dualroots_lab.exceptions import *  # noqa F401
from dualroots.dualroots_lab.consts import *  # noqa F401
from dualroots.dualroots_lab.config import *  # noqa F401
from dualroots.dualroots_lab.polycore import UniPoly, BiPoly, SturmSequence, sturm_count, squarefree_part  # noqa F401
from dualroots.dualroots_lab.families import FamilyKind, FamilyId, family_poly, charlier  # noqa F401
from dualroots.dualroots_lab.reports import Verdict, Report, SuiteReport  # noqa F401
from dualroots.dualroots_lab.rootlab import RootEnclosure, RootIsolation, isolate, gamma_roots  # noqa F401
from dualroots.dualroots_lab.trajectory import Trajectory, trace  # noqa F401
from dualroots.dualroots_lab.veritas import run_theorem, run_suite  # noqa F401
from dualroots.dualroots_lab.log import log  # noqa F401
