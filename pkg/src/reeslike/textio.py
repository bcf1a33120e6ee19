"""Line-oriented text formats for rows, matrices, certificates and reports.

Rows are ``[a, b, c]`` and matrices ``[[a, b], [c, d]]`` with entries in
polynomial syntax. A certificate is a header followed by one op per line,
indices 1-based::

    cert ambient=rees{ring=Zn:4,a=ideal[2]} n=2
    E 1 2 2*t

Object files hold keyed lines (``row``, ``dual``, ``matrix``, ``inverse``,
``ambient``) and embedded certificate blocks introduced by ``block <name>``.
"""

from __future__ import annotations

import re

from .certs import ElemCert
from .errors import MalformedCertificate, MalformedElement, MalformedInput, NotInAlgebra
from .poly import PolyRing
from .rees import ReesCtx, parse_context
from .rings import parse_ring


def parse_ambient(text: str):
    s = text.strip()
    if s.startswith("rees{"):
        return parse_context(s)
    m = re.fullmatch(r"(.+)\[([a-z])\]", s)
    if not m:
        raise MalformedInput(f"unknown ambient {text!r}")
    return PolyRing(parse_ring(m.group(1)), m.group(2))


def ambient_handle(alg) -> str:
    return alg.handle


def _split_top(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise MalformedInput("unbalanced brackets")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise MalformedInput("unbalanced brackets")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _bracketed(text: str) -> str:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise MalformedInput(f"expected [...], got {text!r}")
    return s[1:-1]


def parse_element(text: str, alg):
    try:
        return alg.parse(text)
    except (MalformedElement, NotInAlgebra) as exc:
        raise MalformedInput(str(exc)) from exc


def parse_row(text: str, alg) -> list:
    body = _bracketed(text)
    if not body.strip():
        return []
    return [parse_element(x, alg) for x in _split_top(body)]


def format_row(row, alg) -> str:
    return "[" + ", ".join(alg.format(x) for x in row) + "]"


def parse_matrix(text: str, alg) -> list[list]:
    body = _bracketed(text)
    rows = [parse_row(r, alg) for r in _split_top(body)]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise MalformedInput("matrix must be square and non-empty")
    return rows


def format_matrix(m, alg) -> str:
    return "[" + ", ".join(format_row(r, alg) for r in m) + "]"


def format_cert(cert: ElemCert) -> str:
    lines = [f"cert ambient={cert.ambient.handle} n={cert.n}"]
    lines += [f"E {i + 1} {j + 1} {cert.ambient.format(lam)}" for i, j, lam in cert.ops]
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"cert\s+ambient=(\S+)\s+n=(\d+)\s*")
_OP = re.compile(r"E\s+(-?\d+)\s+(-?\d+)\s+(.+)")


def parse_cert(text: str) -> ElemCert:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    return _parse_cert_lines(lines)


def _parse_cert_lines(lines: list[str]) -> ElemCert:
    if not lines:
        raise MalformedCertificate("empty certificate")
    m = _HEADER.fullmatch(lines[0])
    if not m:
        raise MalformedCertificate(f"bad certificate header {lines[0]!r}")
    try:
        alg = parse_ambient(m.group(1))
    except MalformedInput as exc:
        raise MalformedCertificate(str(exc)) from exc
    n = int(m.group(2))
    ops = []
    for ln in lines[1:]:
        mo = _OP.fullmatch(ln)
        if not mo:
            raise MalformedCertificate(f"bad op line {ln!r}")
        i, j = int(mo.group(1)) - 1, int(mo.group(2)) - 1
        try:
            lam = alg.parse(mo.group(3))
        except (MalformedElement, MalformedInput, NotInAlgebra) as exc:
            raise MalformedCertificate(f"{ln!r}: {exc}") from exc
        ops.append((i, j, lam))
    return ElemCert(alg, n, ops)


def parse_objects(text: str) -> dict:
    """Split an object file into keyed raw values and certificate blocks.

    Returns a dict mapping each key to its raw text; certificate blocks are
    parsed into :class:`ElemCert` under their block name.
    """
    out: dict = {}
    lines = [ln.strip() for ln in text.splitlines()]
    k = 0
    while k < len(lines):
        ln = lines[k]
        k += 1
        if not ln or ln.startswith("#"):
            continue
        key, _, rest = ln.partition(" ")
        if key == "block":
            name = rest.strip()
            block = []
            while k < len(lines) and lines[k] and not lines[k].startswith("end"):
                block.append(lines[k])
                k += 1
            k += 1
            out[name] = _parse_cert_lines(block)
        elif key == "cert":
            block = [ln]
            while k < len(lines) and lines[k].startswith("E "):
                block.append(lines[k])
                k += 1
            out["cert"] = _parse_cert_lines(block)
        else:
            if key in out:
                raise MalformedInput(f"duplicate key {key!r}")
            out[key] = rest.strip()
    return out


def extract_block(text: str, name: str) -> ElemCert:
    """The certificate stored under ``block <name>`` in a report or object file."""
    lines = [ln.strip() for ln in text.splitlines()]
    try:
        k = lines.index(f"block {name}") + 1
    except ValueError:
        raise MalformedCertificate(f"no block named {name!r}") from None
    block = []
    while k < len(lines) and lines[k] != "end":
        if lines[k]:
            block.append(lines[k])
        k += 1
    return _parse_cert_lines(block)


def find_value(text: str, key: str) -> str | None:
    """The rest of the first line starting with ``key``, ignoring every other line."""
    for ln in text.splitlines():
        head, _, rest = ln.strip().partition(" ")
        if head == key:
            return rest.strip()
    return None


def format_block(name: str, cert: ElemCert) -> str:
    return f"block {name}\n{format_cert(cert)}end\n"


def object_ambient(objs: dict, default=None):
    if "ambient" in objs:
        return parse_ambient(objs["ambient"])
    if default is None:
        raise MalformedInput("no ambient given")
    return default


def as_context(alg) -> ReesCtx:
    if not isinstance(alg, ReesCtx):
        raise MalformedInput(f"expected a rees{{...}} context, got {alg}")
    return alg


def format_report(rep) -> str:
    alg = rep.ambient
    lines = [f"report status={rep.status} ambient={alg.handle}", f"row {format_row(rep.row, alg)}"]
    for st in rep.log:
        line = f"stage={st.name} ok={'true' if st.ok else 'false'}"
        if st.detail:
            line += f' detail="{st.detail}"'
        lines.append(line)
    if rep.final_row is not None:
        lines.append(f"final_row {format_row(rep.final_row, alg)}")
    out = "\n".join(lines) + "\n"
    for name, cert in (("cert_A", rep.cert_A), ("cert_corner1", rep.cert_corner1),
                       ("cert_corner2", rep.cert_corner2)):
        if cert is not None:
            out += format_block(name, cert)
    return out
