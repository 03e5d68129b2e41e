"""Line-oriented algebra definition files.

Grammar (one declaration per line, ``#`` starts a comment):

    algebra <name>
    field rational | field mod <p>
    dim <n>
    basis <id> <id> ...
    unit <id>
    inv <id> = <lincomb>
    mul <id> <id> = <lincomb> | 0
    form <id> <id> = <scalar>
    phi <id> = <scalar>

``<lincomb>`` is ``<scalar> <id> { + <scalar> <id> }`` with scalars written
``p`` or ``p/q``. Omitted involution lines default to the identity on that
basis vector; omitted products are zero except against the unit, which is
filled in automatically. Emitting and re-parsing reproduces the algebra
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .fields import Field, FieldError, QQ, field_from_tag
from .linalg import Mat, Vec, vec_eq


class ParseError(ValueError):
    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{where}{message}")


@dataclass
class ParsedAlgebra:
    algebra: Algebra
    form: Mat | None = None
    phi: Vec | None = None


def _is_scalar_token(tok: str) -> bool:
    return tok[0].isdigit() or tok[0] in "+-"


def _parse_lincomb(field, tokens, index, lineno, n) -> Vec:
    if tokens == ["0"]:
        return [field.zero] * n
    vec = [field.zero] * n
    pos = 0
    while pos < len(tokens):
        if pos and tokens[pos] == "+":
            pos += 1
        if pos + 1 >= len(tokens):
            raise ParseError(lineno, "linear combination must pair a scalar with a name")
        try:
            coeff = field.parse(tokens[pos])
        except FieldError as exc:
            raise ParseError(lineno, str(exc)) from exc
        name = tokens[pos + 1]
        if name not in index:
            raise ParseError(lineno, f"unknown basis name {name!r}")
        i = index[name]
        vec[i] = field.add(vec[i], coeff)
        pos += 2
    return vec


def parse_algebra_text(text: str, source: str = "<string>") -> ParsedAlgebra:
    name = None
    field: Field | None = None
    dim = None
    basis: list[str] | None = None
    unit_name = None
    inv_lines: dict[str, tuple[int, list[str]]] = {}
    mul_lines: dict[tuple[str, str], tuple[int, list[str]]] = {}
    form_lines: dict[tuple[str, str], tuple[int, str]] = {}
    phi_lines: dict[str, tuple[int, str]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "algebra":
            if len(tokens) < 2:
                raise ParseError(lineno, "algebra needs a name")
            name = " ".join(tokens[1:])
        elif head == "field":
            try:
                field = field_from_tag(" ".join(tokens[1:]))
            except FieldError as exc:
                raise ParseError(lineno, str(exc)) from exc
        elif head == "dim":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(lineno, "dim needs a single integer")
            dim = int(tokens[1])
        elif head == "basis":
            basis = tokens[1:]
            for b in basis:
                if _is_scalar_token(b):
                    raise ParseError(lineno, f"basis name {b!r} would parse as a scalar")
            if len(set(basis)) != len(basis):
                raise ParseError(lineno, "duplicate basis name")
        elif head == "unit":
            if len(tokens) != 2:
                raise ParseError(lineno, "unit needs one basis name")
            unit_name = tokens[1]
        elif head == "inv":
            if len(tokens) < 4 or tokens[2] != "=":
                raise ParseError(lineno, "expected: inv <id> = <lincomb>")
            if tokens[1] in inv_lines:
                raise ParseError(lineno, f"duplicate involution line for {tokens[1]!r}")
            inv_lines[tokens[1]] = (lineno, tokens[3:])
        elif head == "mul":
            if len(tokens) < 5 or tokens[3] != "=":
                raise ParseError(lineno, "expected: mul <id> <id> = <lincomb>")
            key = (tokens[1], tokens[2])
            if key in mul_lines:
                raise ParseError(lineno, f"duplicate product line for {key[0]} {key[1]}")
            mul_lines[key] = (lineno, tokens[4:])
        elif head == "form":
            if len(tokens) != 5 or tokens[3] != "=":
                raise ParseError(lineno, "expected: form <id> <id> = <scalar>")
            key = (tokens[1], tokens[2])
            if key in form_lines:
                raise ParseError(lineno, f"duplicate form line for {key[0]} {key[1]}")
            form_lines[key] = (lineno, tokens[4])
        elif head == "phi":
            if len(tokens) != 4 or tokens[2] != "=":
                raise ParseError(lineno, "expected: phi <id> = <scalar>")
            if tokens[1] in phi_lines:
                raise ParseError(lineno, f"duplicate phi line for {tokens[1]!r}")
            phi_lines[tokens[1]] = (lineno, tokens[3])
        else:
            raise ParseError(lineno, f"unknown declaration {head!r}")

    if name is None:
        raise ParseError(None, "missing algebra line")
    if field is None:
        field = QQ
    if basis is None:
        raise ParseError(None, "missing basis line")
    if dim is None:
        dim = len(basis)
    if dim != len(basis):
        raise ParseError(None, f"dim {dim} does not match {len(basis)} basis names")
    if unit_name is None:
        raise ParseError(None, "missing unit line")
    index = {b: i for i, b in enumerate(basis)}
    if unit_name not in index:
        raise ParseError(None, f"unit {unit_name!r} is not a basis name")
    u = index[unit_name]

    inv_rows = Mat.identity(field, dim)
    inv_cols = [None] * dim
    for bname, (lineno, toks) in inv_lines.items():
        if bname not in index:
            raise ParseError(lineno, f"unknown basis name {bname!r}")
        inv_cols[index[bname]] = _parse_lincomb(field, toks, index, lineno, dim)
    for j in range(dim):
        if inv_cols[j] is None:
            inv_cols[j] = [field.one if i == j else field.zero for i in range(dim)]
    inv = Mat.from_cols(field, inv_cols)

    c = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
    c[u][u][u] = field.one
    for i in range(dim):
        if i != u:
            c[u][i][i] = field.one
            c[i][u][i] = field.one
    unit_vec = [field.one if i == u else field.zero for i in range(dim)]
    for (an, bn), (lineno, toks) in mul_lines.items():
        if an not in index or bn not in index:
            raise ParseError(lineno, f"unknown basis name in product {an} {bn}")
        vec = _parse_lincomb(field, toks, index, lineno, dim)
        i, j = index[an], index[bn]
        if i == u or j == u:
            expected = [field.one if k == (j if i == u else i) else field.zero
                        for k in range(dim)]
            if not vec_eq(field, vec, expected):
                raise ParseError(lineno, "product with the unit contradicts the unit law")
        else:
            c[i][j] = vec

    alg = Algebra(name, field, basis, c, unit_vec, inv, {"origin": "file", "source": source})

    form = None
    if form_lines:
        rows = [[field.zero] * dim for _ in range(dim)]
        for (an, bn), (lineno, tok) in form_lines.items():
            if an not in index or bn not in index:
                raise ParseError(lineno, f"unknown basis name in form {an} {bn}")
            try:
                val = field.parse(tok)
            except FieldError as exc:
                raise ParseError(lineno, str(exc)) from exc
            i, j = index[an], index[bn]
            rows[i][j] = val
            if (bn, an) not in form_lines:
                rows[j][i] = val
            elif not field.is_zero(field.sub(val, field.parse(form_lines[(bn, an)][1]))):
                raise ParseError(lineno, f"form is not symmetric at {an} {bn}")
        form = Mat(field, rows)

    phi = None
    if phi_lines:
        phi = [field.zero] * dim
        for bname, (lineno, tok) in phi_lines.items():
            if bname not in index:
                raise ParseError(lineno, f"unknown basis name {bname!r}")
            try:
                phi[index[bname]] = field.parse(tok)
            except FieldError as exc:
                raise ParseError(lineno, str(exc)) from exc

    return ParsedAlgebra(alg, form, phi)


def parse_algebra(path) -> ParsedAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra_text(fh.read(), source=str(path))


def _format_lincomb(field, vec, basis) -> str:
    parts = [f"{field.format(x)} {b}" for x, b in zip(vec, basis) if not field.is_zero(x)]
    return " + ".join(parts) if parts else "0"


def emit_algebra_text(alg: Algebra, form: Mat | None = None, phi: Vec | None = None) -> str:
    f = alg.field
    lines = [f"algebra {alg.name}", f"field {f.tag}", f"dim {alg.n}",
             "basis " + " ".join(alg.basis_names)]
    unit_idx = None
    for i in range(alg.n):
        if vec_eq(f, alg.unit, alg.basis_vec(i)):
            unit_idx = i
            break
    if unit_idx is None:
        raise ValueError("definition files need a basis-vector unit")
    lines.append(f"unit {alg.basis_names[unit_idx]}")
    ident = Mat.identity(f, alg.n)
    for j in range(alg.n):
        col = alg.inv.col(j)
        if not vec_eq(f, col, ident.col(j)):
            lines.append(f"inv {alg.basis_names[j]} = "
                         + _format_lincomb(f, col, alg.basis_names))
    for i in range(alg.n):
        for j in range(alg.n):
            if i == unit_idx or j == unit_idx:
                continue
            vec = alg.c[i][j]
            if any(not f.is_zero(x) for x in vec):
                lines.append(f"mul {alg.basis_names[i]} {alg.basis_names[j]} = "
                             + _format_lincomb(f, vec, alg.basis_names))
    if form is not None:
        for i in range(alg.n):
            for j in range(i, alg.n):
                if not f.is_zero(form.rows[i][j]):
                    lines.append(f"form {alg.basis_names[i]} {alg.basis_names[j]} = "
                                 + f.format(form.rows[i][j]))
    if phi is not None:
        for i, x in enumerate(phi):
            if not f.is_zero(x):
                lines.append(f"phi {alg.basis_names[i]} = {f.format(x)}")
    return "\n".join(lines) + "\n"
