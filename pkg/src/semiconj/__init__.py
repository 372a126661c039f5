"""Conjugacy relations on finite semigroups: the uv ~ vu closure, the partial
conjugation action of inverse semigroups, and equality of characters."""

from .conjugacy import (
    ConjugacyPartition,
    action_classes,
    g_conjugacy_classes,
    one_step_witness,
    primary_related,
    tilde_classes,
    verify_theorem2,
)
from .families import cyclic_group, full_transformation_monoid, symmetric_group, symmetric_inverse
from .partial import PartialInjection, compose, conj_action, e_of, full_IS, stim, to_abstract
from .representations import (
    char_equal_decision,
    character_table,
    induced_character,
    lclass_frame,
    schutzenberger_family,
    verify_theorem1,
)
from .semigroup import (
    FiniteSemigroup,
    closure_from_generators,
    greens,
    make_from_table,
    monogenic,
    monoid_hull,
    power_data,
)

__version__ = "0.1.0"
