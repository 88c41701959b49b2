"""Canonical text form for polynomials in the generators a1, ..., al."""

from __future__ import annotations

import re

_TERM = re.compile(r"^(?:(\d+)\*?)?((?:a\d+(?:\^\d+)?\*?)*)$")
_FACTOR = re.compile(r"a(\d+)(?:\^(\d+))?")


def monomial_key(nu):
    """Sort key: total degree first, then lexicographic on the exponents."""
    return (sum(nu), tuple(nu))


def format_terms(terms: dict) -> str:
    """Render ``{exponents: coeff}`` as e.g. ``"a1^3*a2 + 2*a1"``.

    Terms are listed by decreasing monomial key; zero coefficients must
    already be removed.
    """
    if not terms:
        return "0"
    parts = []
    for nu in sorted(terms, key=monomial_key, reverse=True):
        c = terms[nu]
        factors = []
        for i, k in enumerate(nu, start=1):
            if k == 1:
                factors.append(f"a{i}")
            elif k > 1:
                factors.append(f"a{i}^{k}")
        mono = "*".join(factors)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def parse_terms(text: str, nvars: int) -> dict:
    """Parse a polynomial written in the canonical form.

    Accepts ``+`` and ``-`` between terms, integer coefficients and
    arbitrary non-negative exponents. Returns an unreduced
    ``{exponents: int}`` map (coefficients are plain integers).
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    chunks = re.findall(r"[+-][^+-]*", s)
    if "".join(chunks) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    out: dict = {}
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        body = chunk[1:]
        m = _TERM.match(body)
        if not body or m is None or (m.group(1) is None and not m.group(2)):
            raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
        coeff = int(m.group(1)) if m.group(1) is not None else 1
        nu = [0] * nvars
        for idx, exp in _FACTOR.findall(m.group(2)):
            i = int(idx)
            if not 1 <= i <= nvars:
                raise ValueError(f"generator a{i} out of range 1..{nvars}")
            nu[i - 1] += int(exp) if exp else 1
        key = tuple(nu)
        out[key] = out.get(key, 0) + sign * coeff
    return out
