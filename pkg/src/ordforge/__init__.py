"""Exact computation with left- and bi-orderable groups."""

from __future__ import annotations

from .braid import BraidWord, SigmaClass, braid_equal, handle_reduce, permutation, sigma_class
from .errors import OrdforgeError
from .groups import (
    BraidGroup,
    DirectWithZ,
    EGGroup,
    FreeGroup,
    KleinBottle,
    SemidirectByT,
    TAction,
    UVExtension,
    ball,
    decompose,
    equal,
    normal_form,
    parse_group,
)
from .orders import Comparison, Sign, compare, less, order_from_json, pgt_build, sign
from .verify import (
    Verdict,
    VerificationReport,
    check_automorphism_invariance,
    check_cone_axioms,
    check_conjugation_invariance,
    check_convex_subgroup,
    check_lemma32,
    density_evidence,
    min_positive,
)
from .words import Gen, Word, parse_word

__all__ = [
    "BraidGroup", "BraidWord", "Comparison", "DirectWithZ", "EGGroup", "FreeGroup", "Gen",
    "KleinBottle", "OrdforgeError", "SemidirectByT", "SigmaClass", "Sign", "TAction",
    "UVExtension", "Verdict", "VerificationReport", "Word", "ball", "braid_equal",
    "check_automorphism_invariance", "check_cone_axioms", "check_conjugation_invariance",
    "check_convex_subgroup", "check_lemma32", "compare", "decompose", "density_evidence",
    "equal", "handle_reduce", "less", "min_positive", "normal_form", "order_from_json",
    "parse_group", "parse_word", "permutation", "pgt_build", "sigma_class", "sign",
]
