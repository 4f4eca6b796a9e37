"""Exact arithmetic in Thompson's group F.

Elements are reduced tree diagrams stored as branch-pair tables. On top of
the calculator sit four partner constructions: given a non-trivial f and a
reachable abelianization target (c, d), ``synthesize`` builds g hitting the
target together with a certificate that the pair generates a subgroup
containing every element of slope 1 at both endpoints, checkable by
``certify_normal_generation`` without re-running the construction.
"""

from .words import (
    Dyadic,
    ONE,
    ZERO,
    in_B_prime,
    interval_endpoints,
    is_complete_prefix_code,
    parse_dyadic,
    word_to_dyadic,
)
from .element import (
    AbelianImage,
    Element,
    GroupWord,
    IDENTITY,
    InvalidCode,
    LengthMismatch,
    UnknownSymbol,
    X0,
    X1,
    abelianize,
    common_refinement,
    compose,
    eval_word,
    evaluate,
    flip,
    format_element,
    format_group_word,
    from_branch_pairs,
    from_codes,
    has_branch_pair,
    image_of_interval,
    in_derived,
    invert,
    parse_element,
    parse_group_word,
    power,
    slope_left,
    slope_right,
)
from .dynamics import (
    IdentityInput,
    PreconditionViolated,
    UVWTriple,
    find_uvw,
    one_tail_pair,
    zero_tail_pair,
)
from .lattice import (
    INFINITE,
    NotUnimodular,
    RectangularForm,
    companion_rectangular,
    complete_basis,
    index_of,
    lattice_contains,
)
from .certify import (
    Certificate,
    CertificateFormatError,
    CertifyResult,
    ShiftSchema,
    SlopeWitness,
    SuffixCongruence,
    Witness,
    brute_force_relations,
    certificate_from_dict,
    certificate_from_json,
    certificate_to_dict,
    certificate_to_json,
    certify_normal_generation,
    enumerate_ball,
    relation,
    saturate,
)
from .synthesis import (
    SynthesisResult,
    complete_generating_pair,
    construct_part1,
    construct_part2,
    construct_part3,
    construct_part4,
    finite_index_pair,
    synthesize,
)

__version__ = "1.0.0"

__all__ = [
    "AbelianImage",
    "Certificate",
    "CertificateFormatError",
    "CertifyResult",
    "Dyadic",
    "Element",
    "GroupWord",
    "IDENTITY",
    "INFINITE",
    "IdentityInput",
    "InvalidCode",
    "LengthMismatch",
    "NotUnimodular",
    "ONE",
    "PreconditionViolated",
    "RectangularForm",
    "ShiftSchema",
    "SlopeWitness",
    "SuffixCongruence",
    "SynthesisResult",
    "UVWTriple",
    "UnknownSymbol",
    "Witness",
    "X0",
    "X1",
    "ZERO",
    "abelianize",
    "brute_force_relations",
    "certificate_from_dict",
    "certificate_from_json",
    "certificate_to_dict",
    "certificate_to_json",
    "certify_normal_generation",
    "common_refinement",
    "companion_rectangular",
    "complete_basis",
    "complete_generating_pair",
    "compose",
    "construct_part1",
    "construct_part2",
    "construct_part3",
    "construct_part4",
    "enumerate_ball",
    "eval_word",
    "evaluate",
    "find_uvw",
    "finite_index_pair",
    "flip",
    "format_element",
    "format_group_word",
    "from_branch_pairs",
    "from_codes",
    "has_branch_pair",
    "image_of_interval",
    "in_B_prime",
    "in_derived",
    "index_of",
    "interval_endpoints",
    "invert",
    "is_complete_prefix_code",
    "lattice_contains",
    "one_tail_pair",
    "parse_dyadic",
    "parse_element",
    "parse_group_word",
    "power",
    "relation",
    "saturate",
    "slope_left",
    "slope_right",
    "synthesize",
    "word_to_dyadic",
    "zero_tail_pair",
]
