"""Minimal s-expression reader shared by the formula and Boolean-combination syntaxes."""

from __future__ import annotations

import re

__all__ = ["Quoted", "SexpError", "read"]

_TOKEN = re.compile(r'\s*(?:(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()"]+))')


class SexpError(ValueError):
    pass


class Quoted(str):
    """A string literal, as opposed to a bare symbol."""


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SexpError(f"unexpected character at offset {pos}: {text[pos]!r}")
        pos = m.end()
        if m.group(1):
            yield "("
        elif m.group(2):
            yield ")"
        elif m.group(3) is not None:
            yield Quoted(re.sub(r"\\(.)", r"\1", m.group(3)))
        else:
            yield m.group(4)


def read(text: str):
    """Parse one expression into nested lists of symbols and :class:`Quoted` strings."""
    toks = list(_tokens(text))
    if not toks:
        raise SexpError("empty expression")
    stack = [[]]
    for t in toks:
        if t == "(" and not isinstance(t, Quoted):
            stack.append([])
        elif t == ")" and not isinstance(t, Quoted):
            if len(stack) == 1:
                raise SexpError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(t)
    if len(stack) != 1:
        raise SexpError("missing ')'")
    if len(stack[0]) != 1:
        raise SexpError("expected exactly one expression")
    return stack[0][0]
