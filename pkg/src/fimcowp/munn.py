"""Munn trees: canonical forms for free inverse monoid elements.

A tree is the subtree of the free-group Cayley graph traced by reading a
word from the root, together with the endpoint of the path.  Two words
represent the same monoid element exactly when their trees are equal, which
makes these trees the semantic oracle for every language in this package.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple

from .words import (
    EPSILON_TOKEN,
    Letter,
    MarkedWord,
    Word,
    format_word,
    free_reduce,
    invert_letter,
    letter_to_char,
)


class Edge(NamedTuple):
    """A Cayley-graph edge, keyed by the endpoint nearer the root plus the
    letter read walking away from the root."""

    vertex: Word
    letter: Letter


@dataclass(frozen=True)
class MunnTree:
    edges: frozenset[Edge]
    terminal: Word


def _step(vertex: Word, letter: Letter) -> tuple[Edge, Word]:
    """Normalized edge and endpoint reached by reading a letter from a reduced vertex."""
    if vertex and vertex[-1] == invert_letter(letter):
        target = vertex[:-1]
        return Edge(target, vertex[-1]), target
    return Edge(vertex, letter), vertex + (letter,)


def build_munn(word: Word) -> MunnTree:
    edges: set[Edge] = set()
    vertex: Word = ()
    for letter in word:
        edge, vertex = _step(vertex, letter)
        edges.add(edge)
    return MunnTree(frozenset(edges), vertex)


def munn_equal(s: MunnTree, t: MunnTree) -> bool:
    return s == t


def munn_product(s: MunnTree, t: MunnTree) -> MunnTree:
    """Tree of any concatenation u*v where u builds s and v builds t: shift
    t's edges by s's terminal, re-normalize each, and union with s."""
    edges = set(s.edges)
    for edge in t.edges:
        base = free_reduce(s.terminal + edge.vertex)
        shifted, _ = _step(base, edge.letter)
        edges.add(shifted)
    return MunnTree(frozenset(edges), free_reduce(s.terminal + t.terminal))


def is_idempotent(word: Word) -> bool:
    return free_reduce(word) == ()


def avoids(word: Word, x: Letter) -> bool:
    """True when the tree of the word lacks the edge joining the root to x."""
    return Edge((), x) not in build_munn(word).edges


def fim_equal(u: Word, v: Word) -> bool:
    return build_munn(u) == build_munn(v)


def in_k1(u: Word, v: Word) -> bool:
    """Equal in the free group, but u's tree has an edge v's tree lacks."""
    tu = build_munn(u)
    tv = build_munn(v)
    return tu.terminal == tv.terminal and not tu.edges <= tv.edges


def in_cowp(marked: MarkedWord) -> bool:
    u, v = marked.pair()
    return not fim_equal(u, v)


def _vertex_label(vertex: Word) -> str:
    return format_word(vertex) if vertex else EPSILON_TOKEN


def tree_vertices(tree: MunnTree) -> list[Word]:
    """All vertices in length-then-lexicographic order; the root is always present."""
    seen: set[Word] = {(), tree.terminal}
    for edge in tree.edges:
        seen.add(edge.vertex)
        seen.add(edge.vertex + (edge.letter,))
    return sorted(seen, key=lambda v: (len(v), v))


def _sorted_edges(tree: MunnTree) -> list[Edge]:
    return sorted(tree.edges, key=lambda e: (len(e.vertex), e.vertex, e.letter))


def render_dot(tree: MunnTree) -> str:
    lines = ["graph munn {"]
    for vertex in tree_vertices(tree):
        attrs = []
        if vertex == ():
            attrs.append("shape=doublecircle")
        if vertex == tree.terminal:
            attrs.append("style=filled")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{_vertex_label(vertex)}"{suffix};')
    for edge in _sorted_edges(tree):
        near = _vertex_label(edge.vertex)
        far = _vertex_label(edge.vertex + (edge.letter,))
        lines.append(f'  "{near}" -- "{far}" [label="{letter_to_char(edge.letter)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_ascii(tree: MunnTree) -> str:
    children: dict[Word, list[tuple[Letter, Word]]] = defaultdict(list)
    for edge in _sorted_edges(tree):
        children[edge.vertex].append((edge.letter, edge.vertex + (edge.letter,)))

    lines = [f"{EPSILON_TOKEN} (root)" + (" (terminal)" if tree.terminal == () else "")]

    def walk(vertex: Word, depth: int) -> None:
        for letter, child in children[vertex]:
            mark = " (terminal)" if child == tree.terminal else ""
            lines.append("  " * depth + f"{letter_to_char(letter)} {_vertex_label(child)}{mark}")
            walk(child, depth + 1)

    walk((), 1)
    return "\n".join(lines) + "\n"
