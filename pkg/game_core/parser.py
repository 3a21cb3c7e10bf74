"""
EFG-lite reader and writer

Games are written as nested parenthesised expressions:

    (n0 P0 (o1 0 0) (n2 P1 (o3 -1 2) (o4 1 1)))

A decision node is ``(n<id> P<player> child...)`` and an outcome is
``(o<id> payoff...)`` with one payoff per player. Whitespace between tokens is
free and ``;`` starts a comment running to the end of the line. The reader is
iterative so arbitrarily deep games parse without touching the recursion
limit.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Set, Tuple
import logging
import re

from game_core.errors import DuplicateIdError, EmptyNodeError, GameSyntaxError, PayoffArityError
from models.game import DecisionNode, GameTree, Outcome

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"""
    (?P<newline>\n)
    | (?P<space>[ \t\r\f\v]+)
    | (?P<comment>;[^\n]*)
    | (?P<open>\()
    | (?P<close>\))
    | (?P<node>n)
    | (?P<outcome>o)
    | (?P<player>P)
    | (?P<int>-?[0-9]+)
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    offset: int
    line: int
    column: int


def tokenize(text: str) -> Iterator[Token]:
    """
    Split game text into tokens with 1-based line and column positions.

    Raises:
        GameSyntaxError: On a character that starts no token
    """
    line, line_start, offset = 1, 0, 0
    while offset < len(text):
        match = TOKEN_PATTERN.match(text, offset)
        if match is None:
            raise GameSyntaxError(
                f"Unexpected character {text[offset]!r}", line, offset - line_start + 1, offset
            )
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind not in ("space", "comment"):
            yield Token(kind, match.group(), offset, line, offset - line_start + 1)
        offset = match.end()


class _TokenStream:
    """Cursor over the token list that reports positions on failure."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = list(tokenize(text))
        self.index = 0

    @property
    def exhausted(self) -> bool:
        return self.index >= len(self.tokens)

    def peek_kind(self) -> Optional[str]:
        return None if self.exhausted else self.tokens[self.index].kind

    def fail(self, message: str, token: Optional[Token] = None) -> GameSyntaxError:
        if token is None:
            token = self.tokens[self.index] if not self.exhausted else self._end()
        return GameSyntaxError(message, token.line, token.column, token.offset)

    def expect(self, kind: str, description: str) -> Token:
        if self.exhausted:
            raise self.fail(f"Unexpected end of input, expected {description}")
        token = self.tokens[self.index]
        if token.kind != kind:
            raise self.fail(f"Expected {description}, found {token.text!r}")
        self.index += 1
        return token

    def expect_id(self, description: str) -> int:
        token = self.expect("int", description)
        value = int(token.text)
        if value < 0:
            raise self.fail(f"Ids and player indices must be non-negative, found {value}", token)
        return value

    def _end(self) -> Token:
        lines = self.text.split("\n")
        return Token("eof", "", len(self.text), len(lines), len(lines[-1]) + 1)


@dataclass
class _NodeDraft:
    id: int
    player: int
    token: Token
    children: List[int] = field(default_factory=list)


@dataclass
class _GameDraft:
    nodes: Dict[int, DecisionNode] = field(default_factory=dict)
    outcomes: Dict[int, Outcome] = field(default_factory=dict)
    players: Optional[int] = None
    seen: Set[int] = field(default_factory=set)

    def claim(self, ident: int, token: Token) -> None:
        if ident in self.seen:
            raise DuplicateIdError(
                f"Id {ident} is used more than once (line {token.line}, column {token.column})",
                "DUPLICATE_ID",
                {"ids": [ident], "line": token.line, "column": token.column},
            )
        self.seen.add(ident)


def _read_game(stream: _TokenStream) -> GameTree:
    draft = _GameDraft()
    stack: List[_NodeDraft] = []
    root: Optional[int] = None

    while root is None:
        stream.expect("open", "'('")
        if stream.peek_kind() == "node":
            head = stream.expect("node", "'n'")
            ident = stream.expect_id("a node id")
            draft.claim(ident, head)
            stream.expect("player", "'P' and a player index")
            player = stream.expect_id("a player index")
            stack.append(_NodeDraft(ident, player, head))
        elif stream.peek_kind() == "outcome":
            head = stream.expect("outcome", "'o'")
            ident = stream.expect_id("an outcome id")
            draft.claim(ident, head)
            payoffs: List[int] = []
            while stream.peek_kind() == "int":
                payoffs.append(int(stream.expect("int", "a payoff").text))
            stream.expect("close", "a payoff or ')'")
            if draft.players is None:
                draft.players = len(payoffs)
            elif len(payoffs) != draft.players:
                raise PayoffArityError(
                    f"Outcome o{ident} has {len(payoffs)} payoffs, expected {draft.players}",
                    "PAYOFF_ARITY",
                    {"outcome": ident, "arity": len(payoffs), "players": draft.players},
                )
            draft.outcomes[ident] = Outcome(id=ident, payoffs=tuple(payoffs))
            if not stack:
                root = ident
            else:
                stack[-1].children.append(ident)
        else:
            raise stream.fail("Expected 'n' or 'o' after '('")

        # Close every node whose list ends here.
        while root is None and stream.peek_kind() == "close":
            stream.expect("close", "')'")
            done = stack.pop()
            if not done.children:
                raise EmptyNodeError(
                    f"Node n{done.id} has no children "
                    f"(line {done.token.line}, column {done.token.column})",
                    "EMPTY_NODE",
                    {"node": done.id},
                )
            draft.nodes[done.id] = DecisionNode(
                id=done.id, player=done.player, children=tuple(done.children)
            )
            if not stack:
                root = done.id
            else:
                stack[-1].children.append(done.id)

    return GameTree(
        players=draft.players or 0,
        root=root,
        nodes=draft.nodes,
        outcomes=draft.outcomes,
    )


# ============================================================================
# PUBLIC API
# ============================================================================

def parse_games(text: str) -> List[GameTree]:
    """
    Parse a stream of one or more consecutive games.

    Args:
        text: EFG-lite text, games separated by whitespace

    Returns:
        List[GameTree]: The games in input order

    Raises:
        GameSyntaxError: If the text is empty or malformed
        GameValidationError: If a game breaks a structural invariant
    """
    stream = _TokenStream(text)
    if stream.exhausted:
        raise stream.fail("No game found in input")

    games = []
    while not stream.exhausted:
        games.append(_read_game(stream))
    logger.debug(f"Parsed {len(games)} game(s)")
    return games


def parse_game(text: str) -> GameTree:
    """
    Parse exactly one game.

    Args:
        text: EFG-lite text

    Returns:
        GameTree: The validated game with ids preserved from the text

    Raises:
        GameSyntaxError: If the text is malformed or holds more than one game
        GameValidationError: If the game breaks a structural invariant
    """
    stream = _TokenStream(text)
    if stream.exhausted:
        raise stream.fail("No game found in input")
    game = _read_game(stream)
    if not stream.exhausted:
        raise stream.fail("Unexpected input after the end of the game")
    return game


def serialize_game(tree: GameTree) -> str:
    """
    Write *tree* as canonical EFG-lite text on one line.

    Children keep their stored order, so parsing the result gives back an
    equal tree.
    """
    parts: List[str] = []
    # Items are ids to open or None to close the innermost node.
    pending: List[Optional[int]] = [tree.root]
    while pending:
        current = pending.pop()
        if current is None:
            parts.append(")")
            continue
        if parts:
            parts.append(" ")
        if tree.is_outcome(current):
            payoffs = " ".join(str(p) for p in tree.outcomes[current].payoffs)
            parts.append(f"(o{current} {payoffs})")
            continue
        node = tree.nodes[current]
        parts.append(f"(n{current} P{node.player}")
        pending.append(None)
        pending.extend(reversed(node.children))
    return "".join(parts)


def serialize_games(trees: List[GameTree]) -> str:
    """Write several games, one per line."""
    return "".join(f"{serialize_game(tree)}\n" for tree in trees)


def game_signature(tree: GameTree) -> Tuple:
    """Hashable structural description used to compare trees."""
    return (
        tree.players,
        tree.root,
        tuple(sorted((n.id, n.player, n.children) for n in tree.nodes.values())),
        tuple(sorted((o.id, o.payoffs) for o in tree.outcomes.values())),
    )
