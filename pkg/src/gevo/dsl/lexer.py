"""Tokenizer for .gevo documents.

Identifiers may contain interior hyphens (delete-node, reverse-card); a hyphen
is part of a name only when followed by an identifier character, so `C1->C2`
still lexes as NAME ARROW NAME.  `#` starts a line comment.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Token:
    type: str   # NAME INT STRING PUNCT EOF
    value: str
    line: int
    col: int


PUNCT = ("->", "==", "!=", "{", "}", "(", ")", "[", "]", ",", ";", ":", "=", ".")


class LexError(Exception):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


def _is_name_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_name_part(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            buf = []
            while i < n and text[i] != '"':
                if text[i] == "\n":
                    raise LexError(start_line, start_col, "unterminated string")
                if text[i] == "\\" and i + 1 < n:
                    buf.append(text[i + 1])
                    i += 2
                    col += 2
                    continue
                buf.append(text[i])
                i += 1
                col += 1
            if i >= n:
                raise LexError(start_line, start_col, "unterminated string")
            i += 1
            col += 1
            tokens.append(Token("STRING", "".join(buf), start_line, start_col))
            continue
        if ch.isdigit():
            start_col = col
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if _is_name_start(ch):
            start_col = col
            j = i + 1
            while j < n:
                if _is_name_part(text[j]):
                    j += 1
                elif text[j] == "-" and j + 1 < n and _is_name_part(text[j + 1]):
                    j += 2
                elif text[j] == "@" and j + 1 < n and _is_name_part(text[j + 1]):
                    j += 2  # version suffix: name@v1
                else:
                    break
            tokens.append(Token("NAME", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        matched = None
        for p in PUNCT:
            if text.startswith(p, i):
                matched = p
                break
        if matched is None:
            raise LexError(line, col, f"unexpected character {ch!r}")
        tokens.append(Token("PUNCT", matched, line, col))
        i += len(matched)
        col += len(matched)
    tokens.append(Token("EOF", "", line, col))
    return tokens
