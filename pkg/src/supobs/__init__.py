"""Supremal relatively observable (and controllable) sublanguages of regular languages.

The computation follows the language-operator route: Omega is iterated from
the specification until it stops shrinking, and Gamma (supremal controllable
sublanguage followed by supremal relatively observable sublanguage) likewise
for the combined property. Every operator is assembled from boolean
operations, prefix closure, natural projection, and subset construction on
canonical minimal automata.
"""

from .alphabet import Alphabet, Event
from .ctrlobs import check_ctrl_relobs, gamma, sup_ctrl_relobs
from .errors import (
    AlphabetError,
    IterationLimitError,
    OracleLimitError,
    ParseError,
    SupobsError,
    ValidationError,
)
from .fa import (
    Fsa,
    Lang,
    append_event,
    complement,
    contains,
    determinize,
    difference,
    enumerate_strings,
    intersect,
    is_empty,
    is_equal,
    is_subset,
    minimize,
    prefix_closure,
    union,
)
from .finite import FiniteLang
from .projection import inverse_project, lookalike, project
from .relobs import (
    Problem,
    SynthesisTrace,
    TraceRecord,
    c_sigma,
    check_relobs,
    d_operator,
    f_operator,
    nerode_bound,
    omega,
    sup_relobs,
)
from .supremal import (
    is_controllable,
    is_normal,
    sup_closed,
    sup_controllable,
    sup_normal,
)

__version__ = "0.1.0"
