"""Parser for .amg instance files.

Line-oriented, UTF-8, `#` comments.  Blocks:

    group NAME          embed NAME SOURCE TARGET     instance A B D iA iB
      gen x 4             x -> x^1*z^2
      cgen z 4          end
      comm y x = z
      pow x = z^2
    end

`gen`/`cgen` declare base/central generators with their order (0 = infinite);
`comm a b = w` sets [a, b] to the central word w; `pow g = w` sets
g^order(g) = w.  Words use the `name^exp*name^exp` syntax, `e` for identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conditions import AmalgamInstance
from .pcgroup import Generator, GroupError, Presentation, check_consistency
from .structure import Embedding, EmbeddingError
from .words import WordSyntaxError, parse_word


class AmgParseError(Exception):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class _GroupDraft:
    name: str
    base: list[tuple[str, int]]
    central: list[tuple[str, int]]
    comm: list[tuple[int, str, str, str]]  # line, lhs, rhs, word text
    pow: list[tuple[int, str, str]]


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def parse_instance_text(text: str) -> AmalgamInstance:
    groups: dict[str, Presentation] = {}
    embeddings: dict[str, Embedding] = {}
    instance_decl: tuple[int, list[str]] | None = None

    it = iter(_lines(text))
    saw_anything = False
    for line_no, line in it:
        saw_anything = True
        tokens = line.split()
        if tokens[0] == "group":
            if len(tokens) != 2:
                raise AmgParseError(line_no, "expected: group NAME")
            groups[tokens[1]] = _parse_group(tokens[1], line_no, it)
        elif tokens[0] == "embed":
            if len(tokens) != 4:
                raise AmgParseError(line_no, "expected: embed NAME SOURCE TARGET")
            _, name, src, tgt = tokens
            for g in (src, tgt):
                if g not in groups:
                    raise AmgParseError(line_no, f"unknown group {g!r}")
            embeddings[name] = _parse_embedding(
                name, groups[src], groups[tgt], line_no, it
            )
        elif tokens[0] == "instance":
            if len(tokens) != 6:
                raise AmgParseError(line_no, "expected: instance A B D IOTA_A IOTA_B")
            instance_decl = (line_no, tokens[1:])
        else:
            raise AmgParseError(line_no, f"unexpected directive {tokens[0]!r}")

    if not saw_anything:
        raise AmgParseError(0, "empty instance file")
    if instance_decl is None:
        raise AmgParseError(0, "missing instance declaration")
    line_no, (a, b, d, ia, ib) = instance_decl
    for g in (a, b, d):
        if g not in groups:
            raise AmgParseError(line_no, f"unknown group {g!r}")
    for e in (ia, ib):
        if e not in embeddings:
            raise AmgParseError(line_no, f"unknown embedding {e!r}")
    try:
        return AmalgamInstance(
            groups[a], groups[b], groups[d], embeddings[ia], embeddings[ib]
        )
    except GroupError as exc:
        raise AmgParseError(line_no, f"invalid instance: {exc}") from exc


def _parse_group(name, start_line, it) -> Presentation:
    draft = _GroupDraft(name, [], [], [], [])
    closed = False
    for line_no, line in it:
        tokens = line.split()
        if tokens[0] == "end":
            closed = True
            break
        if tokens[0] in ("gen", "cgen"):
            if len(tokens) != 3:
                raise AmgParseError(line_no, f"expected: {tokens[0]} NAME ORDER")
            try:
                order = int(tokens[2])
            except ValueError:
                raise AmgParseError(line_no, f"bad order {tokens[2]!r}")
            (draft.base if tokens[0] == "gen" else draft.central).append(
                (tokens[1], order)
            )
        elif tokens[0] == "comm":
            lhs = line.split("=", 1)
            if len(lhs) != 2 or len(lhs[0].split()) != 3:
                raise AmgParseError(line_no, "expected: comm A B = WORD")
            _, ga, gb = lhs[0].split()
            draft.comm.append((line_no, ga, gb, lhs[1].strip()))
        elif tokens[0] == "pow":
            parts = line.split("=", 1)
            if len(parts) != 2 or len(parts[0].split()) != 2:
                raise AmgParseError(line_no, "expected: pow G = WORD")
            draft.pow.append((line_no, parts[0].split()[1], parts[1].strip()))
        else:
            raise AmgParseError(line_no, f"unexpected line in group block: {line!r}")
    if not closed:
        raise AmgParseError(start_line, f"group {name!r} not closed with 'end'")
    return _realize_group(draft, start_line)


def _realize_group(draft: _GroupDraft, start_line: int) -> Presentation:
    base_idx = {n: i for i, (n, _) in enumerate(draft.base)}
    central_idx = {n: j for j, (n, _) in enumerate(draft.central)}
    s = len(draft.central)

    def central_vec(line_no, text, context):
        vec = [0] * s
        for gname, exp in parse_word(text).syllables:
            if gname in base_idx:
                raise AmgParseError(
                    line_no,
                    f"{context}: word {text!r} mentions base generator {gname!r}; "
                    "relation values must be central",
                )
            if gname not in central_idx:
                raise AmgParseError(line_no, f"{context}: unknown generator {gname!r}")
            vec[central_idx[gname]] += exp
        return vec

    comm = {}
    for line_no, ga, gb, wtext in draft.comm:
        for g in (ga, gb):
            if g not in base_idx:
                raise AmgParseError(
                    line_no, f"comm: {g!r} is not a base generator of {draft.name}"
                )
        try:
            vec = central_vec(line_no, wtext, f"comm {ga} {gb}")
        except WordSyntaxError as exc:
            raise AmgParseError(line_no, str(exc)) from exc
        j, i = base_idx[ga], base_idx[gb]
        if j == i:
            raise AmgParseError(line_no, "comm of a generator with itself")
        if j < i:
            j, i, vec = i, j, [-a for a in vec]
        if (j, i) in comm:
            raise AmgParseError(line_no, f"duplicate comm relation for {ga}, {gb}")
        comm[(j, i)] = vec
    pow_rel = {}
    for line_no, g, wtext in draft.pow:
        if g not in base_idx:
            raise AmgParseError(line_no, f"pow: {g!r} is not a base generator")
        try:
            pow_rel[base_idx[g]] = central_vec(line_no, wtext, f"pow {g}")
        except WordSyntaxError as exc:
            raise AmgParseError(line_no, str(exc)) from exc
    try:
        P = Presentation(
            [Generator(n, o) for n, o in draft.base],
            [Generator(n, o) for n, o in draft.central],
            comm,
            pow_rel,
            name=draft.name,
        )
    except GroupError as exc:
        raise AmgParseError(start_line, f"group {draft.name!r}: {exc}") from exc
    report = check_consistency(P)
    if not report:
        raise AmgParseError(
            start_line,
            f"group {draft.name!r} is inconsistent: {report.failures[0]}",
        )
    return P


def _parse_embedding(name, source, target, start_line, it) -> Embedding:
    images = {}
    closed = False
    for line_no, line in it:
        if line.split()[0] == "end":
            closed = True
            break
        if "->" not in line:
            raise AmgParseError(line_no, "expected: GEN -> WORD")
        lhs, rhs = line.split("->", 1)
        gname = lhs.strip()
        if gname not in source._index:
            raise AmgParseError(
                line_no, f"{gname!r} is not a generator of group {source.name}"
            )
        try:
            word = parse_word(rhs.strip())
            for n, _ in word.syllables:
                if n not in target._index:
                    raise AmgParseError(
                        line_no, f"unknown generator {n!r} in group {target.name}"
                    )
            images[gname] = word.evaluate(target)
        except WordSyntaxError as exc:
            raise AmgParseError(line_no, str(exc)) from exc
    if not closed:
        raise AmgParseError(start_line, f"embed {name!r} not closed with 'end'")
    try:
        return Embedding(source, target, images, name=name)
    except EmbeddingError as exc:
        raise AmgParseError(start_line, str(exc)) from exc


def parse_instance(path: str) -> AmalgamInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance_text(fh.read())
