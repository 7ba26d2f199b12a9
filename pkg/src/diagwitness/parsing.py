"""Text front end: ring specs, matrices and words."""
from __future__ import annotations

import json
import os
import re

from . import polynomials as P
from .matrix import Matrix, Word
from .rings import (
    ExtensionField,
    IntegerMod,
    MatrixRing,
    PolyQuotient,
    PrimeField,
    Product,
    RationalQuaternions,
    Rationals,
    Ring,
    is_prime,
    parse_poly,
    split_top,
)


class ParseError(ValueError):
    pass


_POLY = re.compile(r"F(\d+)\[x\]/\((.+)\)")
_MATRIX_RING = re.compile(r"M(\d+)\((.+)\)")


def parse_ring(text: str) -> Ring:
    """Q, HQ, F<p>, F<p>[x]/(<poly>), Z/<m>, M<k>(<spec>), and products joined by 'x'."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ParseError("empty ring spec")
    parts = split_top(text, "x")
    try:
        if len(parts) > 1:
            return Product(tuple(parse_ring(p) for p in parts))
        return _parse_atom(text)
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad ring spec {text!r}: {exc}") from exc


def _parse_atom(text: str) -> Ring:
    if text == "Q":
        return Rationals()
    if text == "HQ":
        return RationalQuaternions()
    if m := re.fullmatch(r"F(\d+)", text):
        p = int(m.group(1))
        if not is_prime(p):
            raise ParseError(f"F{p}: {p} is not prime")
        return PrimeField(p)
    if m := _POLY.fullmatch(text):
        p = int(m.group(1))
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        f = parse_poly(m.group(2), p)
        if P.degree(f) < 1:
            raise ParseError("quotient polynomial must have positive degree")
        # irreducible moduli give a field, everything else a general quotient
        return ExtensionField(p, f) if P.is_irreducible(f, p) else PolyQuotient(p, f)
    if m := re.fullmatch(r"Z/(\d+)", text):
        return IntegerMod(int(m.group(1)))
    if m := _MATRIX_RING.fullmatch(text):
        return MatrixRing(parse_ring(m.group(2)), int(m.group(1)))
    raise ParseError(f"unknown ring spec {text!r}")


def _read_maybe_file(text: str) -> str:
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read()
    return text


def _jsonable_entry(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"unsupported matrix entry {x!r}")
    if isinstance(x, list):
        return [_jsonable_entry(y) for y in x]
    return x


def parse_matrix_rows(text: str) -> list:
    """Nested row-major list of raw entries; JSON or bare tokens both work."""
    text = _read_maybe_file(text).strip()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = None
    if isinstance(obj, list) and all(isinstance(r, list) for r in obj):
        return [[_jsonable_entry(x) for x in r] for r in obj]
    try:
        body = split_top(_unwrap(text, "[", "]"), ",")
        return [[t.strip() for t in split_top(_unwrap(r, "[", "]"), ",")] for r in body]
    except ValueError as exc:
        raise ParseError(f"bad matrix {text[:60]!r}: {exc}") from exc


def _unwrap(text: str, open_: str, close: str) -> str:
    text = text.strip()
    if not (text.startswith(open_) and text.endswith(close)):
        raise ValueError(f"expected {open_}...{close}")
    return text[1:-1]


def parse_matrix(ring: Ring, text: str) -> Matrix:
    rows = parse_matrix_rows(text)
    if not rows:
        raise ParseError("empty matrix")
    try:
        return Matrix.parse(ring, rows)
    except ParseError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix entry: {exc}") from exc


def parse_word(ring: Ring, text: str) -> Word:
    """Word JSON, either a bare factor list or a witness report holding one."""
    text = _read_maybe_file(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"word is not JSON: {exc}") from exc
    if isinstance(obj, dict):
        obj = obj.get("word")
    if not isinstance(obj, list) or not all(isinstance(f, dict) for f in obj):
        raise ParseError("word must be a list of {\"gen\": true} / {\"diag\": [...]} objects")
    try:
        return Word.from_json(obj, ring)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad word: {exc}") from exc
