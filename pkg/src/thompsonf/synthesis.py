"""Partner construction: given a non-trivial f and a target abelianization
image (c, d), build g by tree surgery so that <f, g> contains every element
of slope 1 at both endpoints, and emit the certificate proving it.

All four constructions share one layout. A scaffold tree is completed around
the moved triple u -> v -> w of f; the partner's domain and range trees are
the scaffold with small standard subtrees hung at a handful of branches, and
the branch-pair table splits into contiguous blocks:

  (A)  a shift along the leftmost branch realizing slope 2^c at 0,
       or (A'') a rigid version for c = 0;
  (B)  a copy of the basic generator x1 inside [w10], providing the
       fixed point with one-sided slopes (1, 2);
  (C)  a shift along the rightmost branch realizing slope 2^-d at 1,
       or (C') a rigid version for d = 0.

Rigid ends cannot prove their own one-sided branch family, so there the
certificate's shift schema leans on a branch pair of f itself - which is
why the boundary targets need f to have non-trivial slope at that endpoint.
Negative c is handled by building the partner for (-c, -d) and inverting;
c = 0 by mirroring everything through t -> 1 - t.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .certify import (
    Certificate,
    ShiftSchema,
    SlopeWitness,
    Witness,
    certify_normal_generation,
    closure_seeds,
    conditions_error,
)
from .dynamics import IdentityInput, PreconditionViolated, find_uvw, one_tail_pair, zero_tail_pair
from .element import (
    AbelianImage,
    Element,
    GroupWord,
    abelianize,
    eval_word,
    flip,
    from_codes,
    invert,
)
from .lattice import companion_rectangular, complete_basis, index_of
from .words import Word, is_complete_prefix_code

Tree = tuple[Word, ...]
Row = tuple[Word, Word]
Blocks = tuple[tuple[str, tuple[Row, ...]], ...]

CARET: Tree = ("0", "1")
X1_DOMAIN: Tree = ("0", "100", "101", "11")
X1_RANGE: Tree = ("0", "10", "110", "111")

_COMPLEMENT = str.maketrans("01", "10")


@dataclass(frozen=True, slots=True)
class SynthesisResult:
    g: Element
    certificate: Certificate
    target: AbelianImage
    part: int
    blocks: Blocks
    block_word: GroupWord  # g or g^-1: the orientation whose table the blocks list
    basis: tuple[tuple[int, int], tuple[int, int]]
    index: int | float


# --- tree carpentry -----------------------------------------------------------


def minimal_tree_with_branch(branch: Word) -> Tree:
    """Branches of the smallest tree containing `branch`: the branch itself
    plus the sibling hanging off each proper prefix."""
    if not branch:
        return ("",)
    other = {"0": "1", "1": "0"}
    leaves = [branch[:i] + other[branch[i]] for i in range(len(branch))]
    leaves.append(branch)
    return tuple(sorted(leaves))


def complete_tree(required) -> Tree:
    """Smallest complete prefix code having the given pairwise-incomparable
    words among its branches."""
    out: list[Word] = []

    def descend(prefix: Word, words: list[Word]) -> None:
        if not words or words == [prefix]:
            out.append(prefix)
            return
        assert prefix not in words, f"comparable input words at {prefix!r}"
        at = len(prefix)
        descend(prefix + "0", [x for x in words if x[at] == "0"])
        descend(prefix + "1", [x for x in words if x[at] == "1"])

    descend("", sorted(set(required)))
    return tuple(out)


def attach_all(tree, attachments: dict[Word, Tree]) -> Tree:
    """Replace each named branch by the subtree hung at it."""
    missing = set(attachments) - set(tree)
    assert not missing, f"not branches of the tree: {sorted(missing)}"
    out: list[Word] = []
    for b in tree:
        sub = attachments.get(b)
        if sub is None:
            out.append(b)
        else:
            out.extend(b + s for s in sub)
    return tuple(out)


def build_scaffold_tree(
    u: Word, v: Word, w: Word, right_chain: int = 0, left_chain: int = 0
) -> Tree:
    """Scaffold around the moved triple: branches u, v0, v1, w0, w10, w11,
    padded so at least three branches follow w11, then optional all-ones /
    all-zeros chains hung at the outer branches (the rigid ends of the
    boundary constructions shift along these)."""
    T = complete_tree([u, v + "0", v + "1", w + "0", w + "10", w + "11"])
    after = len(T) - T.index(w + "11") - 1
    if after < 3:
        T = attach_all(T, {T[-1]: minimal_tree_with_branch("111")})
    if right_chain:
        T = attach_all(T, {T[-1]: minimal_tree_with_branch("1" * right_chain)})
    if left_chain:
        T = attach_all(T, {T[0]: minimal_tree_with_branch("0" * left_chain)})
    k, n = T.index(w + "0") + 1, len(T)
    assert 5 <= k <= n - 5, (k, n)
    return T


# --- block tables -------------------------------------------------------------
#
# Each block lists consecutive (domain, range) rows of the partner's table.
# Row order must match the leaf order of the surgered trees; _assemble
# asserts that the concatenated blocks equal the zipped leaf lists.


def _shift_block_left(T: Tree, w: Word, c: int) -> list[Row]:
    # slope 2^c at 0, then transport u_2 .. u_{k-1} under [w0]
    u1 = T[0]
    iw0 = T.index(w + "0")
    rows = [(u1 + "0" * (c + 1), u1 + "0")]
    for i in range(1, c):
        rows.append((u1 + "0" * (c + 1 - i) + "1", u1 + "1" * i + "0"))
    rows.append((u1 + "01", u1 + "1" * c))
    rows.append((u1 + "1", T[1]))
    for j in range(1, iw0 - 1):
        rows.append((T[j], T[j + 1]))
    rows.append((T[iw0 - 1], w + "00"))
    rows.append((w + "0", w + "01"))
    return rows


def _fixed_block_left(T: Tree, w: Word) -> list[Row]:
    # slope 1 at 0: leftmost branch pinned, interior transported as in (A)
    u1 = T[0]
    iw0 = T.index(w + "0")
    rows = [(u1 + "0", u1 + "0"), (u1 + "10", u1 + "1"), (u1 + "11", T[1])]
    for j in range(1, iw0 - 1):
        rows.append((T[j], T[j + 1]))
    rows.append((T[iw0 - 1], w + "00"))
    rows.append((w + "0", w + "01"))
    return rows


def _basic_block(w: Word) -> list[Row]:
    # copy of x1 inside [w10]; fixes .w101 with slopes (1, 2)
    return [
        (w + "100", w + "100"),
        (w + "10100", w + "1010"),
        (w + "10101", w + "10110"),
        (w + "1011", w + "10111"),
    ]


def _shift_block_right(T: Tree, w: Word, d: int) -> list[Row]:
    # slope 2^-d at 1, interior transported down toward [w1]
    iw0 = T.index(w + "0")
    n = len(T)
    un = T[-1]
    rows = [(w + "11", w + "110"), (T[iw0 + 3], w + "111")]
    for j in range(iw0 + 4, n - 1):
        rows.append((T[j], T[j - 1]))
    rows.append((un + "0", T[n - 2]))
    rows.append((un + "10", un + "0" * d))
    for i in range(2, d + 1):
        rows.append((un + "1" * i + "0", un + "0" * (d + 1 - i) + "1"))
    rows.append((un + "1" * (d + 1), un + "1"))
    return rows


def _fixed_block_right(T: Tree, w: Word) -> list[Row]:
    # slope 1 at 1: rightmost branch pinned up to one caret
    iw0 = T.index(w + "0")
    n = len(T)
    un = T[-1]
    rows = [(w + "11", w + "110"), (T[iw0 + 3], w + "111")]
    for j in range(iw0 + 4, n - 1):
        rows.append((T[j], T[j - 1]))
    rows.append((un + "00", T[n - 2]))
    rows.append((un + "01", un + "0"))
    rows.append((un + "1", un + "1"))
    return rows


# --- certificate assembly -----------------------------------------------------


def _invert_g_word(word: GroupWord) -> GroupWord:
    return tuple((name, -k if name == "g" else k) for name, k in word)


def _invert_g_witness(wit: Witness) -> Witness:
    return Witness(_invert_g_word(wit.word), wit.lhs, wit.rhs)


def _flip_word(u: Word) -> Word:
    return u.translate(_COMPLEMENT)


def _flip_witness(wit: Witness) -> Witness:
    # mirroring is an automorphism, so the same group word carries the
    # complemented pair
    return Witness(wit.word, _flip_word(wit.lhs), _flip_word(wit.rhs))


def _required_depth(cert: Certificate) -> int:
    # Longest word named anywhere in the certificate, plus slack for the
    # short transitivity chains the condition derivations route through.
    words = [cert.w + "0", cert.w + "1"]
    words.extend(cert.tree)
    for sch in (cert.left_schema, cert.right_schema):
        words.append(sch.stem + sch.tail * max(sch.base_count - 1, 0) + sch.suffix)
    for x, y in closure_seeds(cert):
        words.append(x)
        words.append(y)
    return max(len(x) for x in words) + 4


def _prune_witnesses(cert: Certificate) -> Certificate:
    """Greedily drop plain witnesses whose pair the rest already implies.

    Necessity is judged at the certificate's own depth bound, the same
    closure the checker uses. That closure grows with its seed set, so once
    dropping a witness breaks a condition it stays broken for every later
    (smaller) seed set; a single left-to-right pass therefore leaves every
    survivor necessary."""
    schema_pairs = [
        cert.left_schema.witness.pair,
        cert.right_schema.witness.pair,
    ]
    kept = list(cert.witnesses)
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1:]
        seeds = [x.pair for x in trial] + schema_pairs
        if conditions_error(cert, seeds, cert.depth) is None:
            kept = trial
        else:
            i += 1
    return replace(cert, witnesses=tuple(kept))


def self_check_blocks(result: SynthesisResult) -> None:
    """Re-derive the partner from the block tables alone and compare."""
    rows = [row for _, block in result.blocks for row in block]
    dom = [p for p, _ in rows]
    rng = [q for _, q in rows]
    assert is_complete_prefix_code(dom), "block domains do not tile [0,1]"
    assert is_complete_prefix_code(rng), "block ranges do not tile [0,1]"
    rebuilt = from_codes(dom, rng)
    assert rebuilt == eval_word(result.block_word, {"g": result.g})
    assert abelianize(result.g) == result.target


def _assemble(
    f: Element,
    T: Tree,
    w: Word,
    plus: dict[Word, Tree],
    minus: dict[Word, Tree],
    blocks: Blocks,
    extra_witnesses: list[Witness],
    left_schema: ShiftSchema,
    right_schema: ShiftSchema,
    part: int,
    target: AbelianImage,
) -> SynthesisResult:
    rp = attach_all(T, plus)
    rm = attach_all(T, minus)
    assert len(rp) == len(rm), "caret imbalance between domain and range"
    flat = [row for _, rows in blocks for row in rows]
    assert list(zip(rp, rm)) == flat, "block tables disagree with the surgery"
    g = from_codes(rp, rm)
    gword: GroupWord = (("g", 1),)
    witnesses = list(extra_witnesses)
    witnesses.extend(Witness(gword, p, q) for p, q in flat)
    cert = Certificate(
        f=f,
        g=g,
        tree=T,
        w=w,
        witnesses=tuple(witnesses),
        left_schema=left_schema,
        right_schema=right_schema,
        slope=SlopeWitness(gword, w + "101"),
        depth=1,
    )
    # Depth is fixed before pruning and kept afterwards: pruning judges
    # necessity at this bound, so shrinking the bound later could orphan a
    # derivation that was in range when the drop was accepted.
    cert = replace(cert, depth=_required_depth(cert))
    fresh = certify_normal_generation(cert)
    if not fresh.ok:
        raise AssertionError(f"construction produced a rejected certificate: {fresh}")
    cert = _prune_witnesses(cert)
    assert certify_normal_generation(cert).ok
    basis = (tuple(abelianize(f)), tuple(target))
    result = SynthesisResult(
        g=g,
        certificate=cert,
        target=target,
        part=part,
        blocks=blocks,
        block_word=gword,
        basis=basis,
        index=index_of(basis),
    )
    assert abelianize(g) == target
    self_check_blocks(result)
    return result


def _invert_result(res: SynthesisResult) -> SynthesisResult:
    """Partner for the negated target: same subgroup, inverse element.

    Tree, w and schemas carry over; every witness word just swaps g for
    g^-1, since the new g's inverse has exactly the old g's table."""
    cert = res.certificate
    g = invert(res.g)
    new_cert = replace(
        cert,
        g=g,
        witnesses=tuple(_invert_g_witness(x) for x in cert.witnesses),
        left_schema=replace(
            cert.left_schema, witness=_invert_g_witness(cert.left_schema.witness)
        ),
        right_schema=replace(
            cert.right_schema, witness=_invert_g_witness(cert.right_schema.witness)
        ),
        slope=SlopeWitness(_invert_g_word(cert.slope.word), cert.slope.alpha),
    )
    check = certify_normal_generation(new_cert)
    if not check.ok:
        raise AssertionError(f"inverted certificate rejected: {check}")
    target = AbelianImage(-res.target.at_zero, -res.target.at_one)
    basis = (res.basis[0], tuple(target))
    result = SynthesisResult(
        g=g,
        certificate=new_cert,
        target=target,
        part=res.part,
        blocks=res.blocks,
        block_word=_invert_g_word(res.block_word),
        basis=basis,
        index=index_of(basis),
    )
    self_check_blocks(result)
    return result


def _flip_result(res: SynthesisResult, f: Element) -> SynthesisResult:
    """Mirror a partner for flip(f) through t -> 1 - t.

    Mirroring complements every word and reverses branch order, swaps the
    two schemas, and swaps one-sided slopes - so the slope witness cannot
    carry over. A fresh one exists at .0^R 1 (R the mirrored tree's leftmost
    branch length): the rigid right end of the original partner mirrors to
    rows fixing [0^{R+1}] pointwise and mapping [0^R 10] onto [0^R 1]."""
    cert = res.certificate
    g = flip(res.g)
    tree = tuple(_flip_word(b) for b in reversed(cert.tree))
    w = _flip_word(cert.w)
    left = ShiftSchema(
        "0",
        tree[0],
        "1",
        _flip_witness(cert.right_schema.witness),
        cert.right_schema.base_count,
    )
    right = ShiftSchema(
        "1",
        tree[-1],
        "0",
        _flip_witness(cert.left_schema.witness),
        cert.left_schema.base_count,
    )
    gamma = "0" * len(cert.tree[-1]) + "1"
    new_cert = Certificate(
        f=f,
        g=g,
        tree=tree,
        w=w,
        witnesses=tuple(_flip_witness(x) for x in cert.witnesses),
        left_schema=left,
        right_schema=right,
        slope=SlopeWitness(cert.slope.word, gamma),
        depth=cert.depth,
    )
    new_cert = replace(new_cert, depth=_required_depth(new_cert))
    check = certify_normal_generation(new_cert)
    if not check.ok:
        raise AssertionError(f"mirrored certificate rejected: {check}")
    target = AbelianImage(res.target.at_one, res.target.at_zero)
    blocks = tuple(
        (name, tuple((_flip_word(p), _flip_word(q)) for p, q in reversed(rows)))
        for name, rows in reversed(res.blocks)
    )
    basis = (tuple(abelianize(f)), tuple(target))
    result = SynthesisResult(
        g=g,
        certificate=new_cert,
        target=target,
        part=3,
        blocks=blocks,
        block_word=res.block_word,
        basis=basis,
        index=index_of(basis),
    )
    self_check_blocks(result)
    return result


# --- the four constructions ---------------------------------------------------


def construct_part1(f: Element, c: int, d: int) -> SynthesisResult:
    """Partner with image (c, d), both non-zero; works for every f != 1."""
    if c == 0 or d == 0:
        raise PreconditionViolated("interior construction needs c != 0 and d != 0")
    if c < 0:
        return _invert_result(construct_part1(f, -c, -d))
    triple = find_uvw(f)
    w = triple.w
    T = build_scaffold_tree(triple.u, triple.v, w)
    u1, un = T[0], T[-1]
    fword: GroupWord = (("f", triple.sign),)
    gword: GroupWord = (("g", 1),)
    a_rows = _shift_block_left(T, w, c)
    b_rows = _basic_block(w)
    if d > 0:
        c_rows = _shift_block_right(T, w, d)
        plus = {
            u1: minimal_tree_with_branch("0" * (c + 1)),
            w + "10": X1_DOMAIN,
            un: minimal_tree_with_branch("1" * (d + 1)),
        }
        minus = {
            u1: minimal_tree_with_branch("1" * c),
            w + "0": CARET,
            w + "10": X1_RANGE,
            w + "11": CARET,
            un: minimal_tree_with_branch("0" * d),
        }
        right = ShiftSchema(
            "1", un, "0", Witness(gword, un + "1" * (d + 1), un + "1"), d + 1
        )
    else:
        dd = -d
        # same surgery with the roles of domain and range swapped right of
        # [w1]; the shift witness is then carried by g^-1
        c_rows = [(q, p) for p, q in _shift_block_right(T, w, dd)]
        plus = {
            u1: minimal_tree_with_branch("0" * (c + 1)),
            w + "10": X1_DOMAIN,
            w + "11": CARET,
            un: minimal_tree_with_branch("0" * dd),
        }
        minus = {
            u1: minimal_tree_with_branch("1" * c),
            w + "0": CARET,
            w + "10": X1_RANGE,
            un: minimal_tree_with_branch("1" * (dd + 1)),
        }
        right = ShiftSchema(
            "1",
            un,
            "0",
            Witness(_invert_g_word(gword), un + "1" * (dd + 1), un + "1"),
            dd + 1,
        )
    left = ShiftSchema(
        "0", u1, "1", Witness(gword, u1 + "0" * (c + 1), u1 + "0"), c + 1
    )
    witnesses = [
        Witness(fword, triple.u, triple.v),
        Witness(fword, triple.v, triple.w),
    ]
    blocks: Blocks = (
        ("A", tuple(a_rows)),
        ("B", tuple(b_rows)),
        ("C", tuple(c_rows)),
    )
    return _assemble(
        f, T, w, plus, minus, blocks, witnesses, left, right,
        part=1, target=AbelianImage(c, d),
    )


def construct_part2(f: Element, c: int) -> SynthesisResult:
    """Partner with image (c, 0), c != 0; needs f of non-trivial slope at 1.

    The right end is rigid, so the rightmost branch family cannot shift
    along g; instead the scaffold grows an all-ones chain of length m and
    the schema shifts along f's own tail pair 1^m -> 1^{m-l}."""
    if c == 0:
        raise PreconditionViolated("boundary construction needs c != 0")
    if c < 0:
        return _invert_result(construct_part2(f, -c))
    tail_sign, m, ell = one_tail_pair(f)
    triple = find_uvw(f)
    w = triple.w
    T = build_scaffold_tree(triple.u, triple.v, w, right_chain=m)
    u1, un = T[0], T[-1]
    fword: GroupWord = (("f", triple.sign),)
    gword: GroupWord = (("g", 1),)
    blocks: Blocks = (
        ("A", tuple(_shift_block_left(T, w, c))),
        ("B", tuple(_basic_block(w))),
        ("C'", tuple(_fixed_block_right(T, w))),
    )
    plus = {
        u1: minimal_tree_with_branch("0" * (c + 1)),
        w + "10": X1_DOMAIN,
        un: minimal_tree_with_branch("00"),
    }
    minus = {
        u1: minimal_tree_with_branch("1" * c),
        w + "0": CARET,
        w + "10": X1_RANGE,
        w + "11": CARET,
        un: CARET,
    }
    left = ShiftSchema(
        "0", u1, "1", Witness(gword, u1 + "0" * (c + 1), u1 + "0"), c + 1
    )
    right = ShiftSchema(
        "1", un, "0",
        Witness((("f", tail_sign),), "1" * m, "1" * (m - ell)),
        ell,
    )
    witnesses = [
        Witness(fword, triple.u, triple.v),
        Witness(fword, triple.v, triple.w),
    ]
    return _assemble(
        f, T, w, plus, minus, blocks, witnesses, left, right,
        part=2, target=AbelianImage(c, 0),
    )


def construct_part3(f: Element, d: int) -> SynthesisResult:
    """Partner with image (0, d), d != 0; needs f of non-trivial slope at 0.

    Mirror image of the (d, 0) construction applied to flip(f)."""
    if d == 0:
        raise PreconditionViolated("boundary construction needs d != 0")
    return _flip_result(construct_part2(flip(f), d), f)


def construct_part4(f: Element) -> SynthesisResult:
    """Partner inside the derived subgroup: image (0, 0); needs f of
    non-trivial slope at both endpoints. Both ends are rigid and both
    schemas shift along branch pairs of f."""
    tail_sign, m, ell = one_tail_pair(f)
    a = abelianize(f).at_zero
    if a == 0:
        raise PreconditionViolated("slope at 0+ is trivial")
    head_sign = 1 if a > 0 else -1
    n0, m0 = zero_tail_pair(f if a > 0 else invert(f), "")
    triple = find_uvw(f)
    w = triple.w
    T = build_scaffold_tree(triple.u, triple.v, w, right_chain=m, left_chain=n0)
    u1, un = T[0], T[-1]
    fword: GroupWord = (("f", triple.sign),)
    blocks: Blocks = (
        ("A''", tuple(_fixed_block_left(T, w))),
        ("B", tuple(_basic_block(w))),
        ("C'", tuple(_fixed_block_right(T, w))),
    )
    plus = {
        u1: minimal_tree_with_branch("11"),
        w + "10": X1_DOMAIN,
        un: minimal_tree_with_branch("00"),
    }
    minus = {
        u1: CARET,
        w + "0": CARET,
        w + "10": X1_RANGE,
        w + "11": CARET,
        un: CARET,
    }
    left = ShiftSchema(
        "0", u1, "1",
        Witness((("f", head_sign),), "0" * n0, "0" * m0),
        n0 - m0,
    )
    right = ShiftSchema(
        "1", un, "0",
        Witness((("f", tail_sign),), "1" * m, "1" * (m - ell)),
        ell,
    )
    witnesses = [
        Witness(fword, triple.u, triple.v),
        Witness(fword, triple.v, triple.w),
    ]
    return _assemble(
        f, T, w, plus, minus, blocks, witnesses, left, right,
        part=4, target=AbelianImage(0, 0),
    )


def synthesize(f: Element, c: int, d: int) -> SynthesisResult:
    """Partner g with abelianization image exactly (c, d).

    Feasible iff f is non-trivial and each zero coordinate of the target is
    backed by a non-trivial slope of f at that endpoint (c = 0 needs
    slope-log a != 0 at 0+, d = 0 needs b != 0 at 1-)."""
    if f.is_identity():
        raise IdentityInput("no partner for the identity")
    a, b = abelianize(f)
    if c == 0 and a == 0:
        raise PreconditionViolated("target c = 0 needs f of non-trivial slope at 0+")
    if d == 0 and b == 0:
        raise PreconditionViolated("target d = 0 needs f of non-trivial slope at 1-")
    if c != 0 and d != 0:
        result = construct_part1(f, c, d)
    elif c != 0:
        result = construct_part2(f, c)
    elif d != 0:
        result = construct_part3(f, d)
    else:
        result = construct_part4(f)
    assert result.target == (c, d)
    return result


def complete_generating_pair(f: Element) -> SynthesisResult:
    """Partner making <f, g> the whole group: joint image unimodular.

    Requires gcd of the image of f to be 1."""
    a, b = abelianize(f)
    c, d = complete_basis(a, b)
    result = synthesize(f, c, d)
    assert result.index == 1
    return result


def finite_index_pair(f: Element) -> SynthesisResult:
    """Partner of least possible finite joint-image index.

    The index equals pq from the rectangular form of the image of f;
    requires that image to be non-zero."""
    a, b = abelianize(f)
    c, d, form = companion_rectangular(a, b)
    result = synthesize(f, c, d)
    assert result.index == form.p * form.q
    return result
