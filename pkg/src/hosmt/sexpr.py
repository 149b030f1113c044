"""SMT-LIB flavoured s-expression lexer and reader.

Tokens carry source positions so every diagnostic downstream can point
into the offending lexeme.  Comments (`;` to end of line) are discarded.
"""

from dataclasses import dataclass, field


class SourceError(Exception):
    """Error anchored at a source position, rendered `file:line:col: error: msg`."""

    def __init__(self, message, line=0, col=0, filename="<input>"):
        self.message = message
        self.line = line
        self.col = col
        self.filename = filename
        super().__init__(f"{filename}:{line}:{col}: error: {message}")


class LexError(SourceError):
    pass


class ParseError(SourceError):
    pass


LPAR = "lpar"
RPAR = "rpar"
SYMBOL = "symbol"
KEYWORD = "keyword"
NUMERAL = "numeral"
DECIMAL = "decimal"
STRING = "string"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=0)


# characters that terminate a simple symbol
_DELIMS = set(" \t\r\n();|\"")


def tokenize(text, filename="<input>"):
    """Split input into SMT-LIB tokens with positions attached."""
    tokens = []
    i, n = 0, len(text)
    line, col = 1, 1

    def advance(k=1):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance()
        elif c == ";":
            while i < n and text[i] != "\n":
                advance()
        elif c == "(":
            tokens.append(Token(LPAR, "(", line, col))
            advance()
        elif c == ")":
            tokens.append(Token(RPAR, ")", line, col))
            advance()
        elif c == "|":
            l0, c0 = line, col
            advance()
            start = i
            while i < n and text[i] != "|":
                advance()
            if i >= n:
                raise LexError("unterminated quoted symbol", l0, c0, filename)
            name = text[start:i]
            advance()
            tokens.append(Token(SYMBOL, name, l0, c0))
        elif c == '"':
            l0, c0 = line, col
            advance()
            parts = []
            while True:
                if i >= n:
                    raise LexError("unterminated string literal", l0, c0, filename)
                if text[i] == '"':
                    if i + 1 < n and text[i + 1] == '"':  # SMT-LIB "" escape
                        parts.append('"')
                        advance(2)
                    else:
                        advance()
                        break
                else:
                    parts.append(text[i])
                    advance()
            tokens.append(Token(STRING, "".join(parts), l0, c0))
        else:
            l0, c0 = line, col
            start = i
            while i < n and text[i] not in _DELIMS:
                advance()
            word = text[start:i]
            if word.startswith(":"):
                tokens.append(Token(KEYWORD, word, l0, c0))
            elif word.isdigit():
                tokens.append(Token(NUMERAL, word, l0, c0))
            elif _is_decimal(word):
                tokens.append(Token(DECIMAL, word, l0, c0))
            else:
                tokens.append(Token(SYMBOL, word, l0, c0))
    return tokens


def _is_decimal(word):
    if word.count(".") != 1:
        return False
    a, b = word.split(".")
    return a.isdigit() and b.isdigit()


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=0)


def read_all(tokens, filename="<input>"):
    """Read a token stream into a list of nested s-expressions.

    Atoms are Tokens, lists are SList nodes carrying the position of
    their opening parenthesis.
    """
    exprs = []
    pos = 0

    def read_one():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok.kind == LPAR:
            items = []
            while True:
                if pos >= len(tokens):
                    raise ParseError("unbalanced parentheses: missing )",
                                     tok.line, tok.col, filename)
                if tokens[pos].kind == RPAR:
                    pos += 1
                    return SList(tuple(items), tok.line, tok.col)
                items.append(read_one())
        if tok.kind == RPAR:
            raise ParseError("unexpected )", tok.line, tok.col, filename)
        return tok

    while pos < len(tokens):
        exprs.append(read_one())
    return exprs


def parse_text(text, filename="<input>"):
    return read_all(tokenize(text, filename), filename)


def sexpr_to_str(e):
    if isinstance(e, SList):
        return "(" + " ".join(sexpr_to_str(x) for x in e.items) + ")"
    if e.kind == STRING:
        return '"' + e.text.replace('"', '""') + '"'
    return e.text


def sexpr_pos(e):
    return (e.line, e.col)
