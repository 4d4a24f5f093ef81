from itertools import product

import pytest

from fimcowp import (
    DerivationTree,
    Grammar,
    GrammarError,
    Production,
    avoiding_grammar,
    char_to_letter,
    cowp_fg_grammar,
    cowp_fim_grammar,
    cyk_member,
    derive,
    enumerate_language,
    format_tree,
    free_reduce,
    grammar_stats,
    grammar_to_bnf,
    grammar_to_json,
    grammar_to_json_dict,
    idempotent_grammar,
    insert_marker_grammar,
    k1_grammar,
    k2_grammar,
    parse_word,
    reverse_invert_grammar,
    to_cnf,
    union_grammar,
)

E1 = idempotent_grammar(1)
K1 = k1_grammar(1)


def tiny(productions, start="S", terminals="ab"):
    nts = {h for h, _ in productions}
    return Grammar(set(terminals), nts, [Production(h, tuple(b)) for h, b in productions], start)


def all_strings(alphabet, max_len):
    for length in range(max_len + 1):
        for combo in product(sorted(alphabet), repeat=length):
            yield "".join(combo)


# --- Grammar construction and validation


def test_grammar_rejects_undeclared_symbols():
    with pytest.raises(GrammarError):
        Grammar({"a"}, {"S"}, [Production("S", ("X",))], "S")
    with pytest.raises(GrammarError):
        Grammar({"a"}, {"S"}, [Production("X", ("a",))], "S")


def test_grammar_rejects_bad_start_and_overlap():
    with pytest.raises(GrammarError):
        Grammar({"a"}, {"S"}, [], "T")
    with pytest.raises(GrammarError):
        Grammar({"a", "S"}, {"S"}, [], "S")


def test_grammar_rejects_multichar_terminals():
    with pytest.raises(GrammarError):
        Grammar({"ab"}, {"S"}, [Production("S", ("ab",))], "S")


def test_grammar_deduplicates_and_sorts_productions():
    g = tiny([("S", "a"), ("S", "a"), ("S", "b")])
    assert g.productions == (Production("S", ("a",)), Production("S", ("b",)))
    assert grammar_stats(g) == (1, 2)


def test_grammar_equality_and_hash():
    g1 = tiny([("S", "a")])
    g2 = tiny([("S", "a")])
    assert g1 == g2 and hash(g1) == hash(g2)
    assert g1 != tiny([("S", "b")])


# --- CYK membership


def test_cyk_member_examples():
    assert cyk_member(E1, "aA")
    assert cyk_member(E1, "")
    assert not cyk_member(E1, "a")


def test_cyk_member_rejects_foreign_symbols():
    with pytest.raises(GrammarError):
        cyk_member(E1, "b")
    with pytest.raises(GrammarError):
        cyk_member(E1, "a#")


def test_cyk_agrees_with_enumeration_on_all_grammars():
    # CNF-based membership vs fixpoint enumeration of the raw grammar
    grammars = [
        E1,
        idempotent_grammar(2),
        avoiding_grammar(1, char_to_letter("a", 1)),
        avoiding_grammar(2, char_to_letter("B", 2)),
        K1,
        k2_grammar(1),
        cowp_fg_grammar(1),
        cowp_fim_grammar(1),
    ]
    for g in grammars:
        expected = enumerate_language(g, 6)
        got = {w for w in all_strings(g.terminals, 6) if cyk_member(g, w)}
        assert got == expected


# --- CNF conversion


def cnf_shape_ok(g):
    for head, body in g.productions:
        if body == ():
            assert head == g.start
        elif len(body) == 1:
            assert body[0] in g.terminals
        else:
            assert len(body) == 2 and all(s in g.nonterminals for s in body)
    for _, body in g.productions:
        assert g.start not in body
    return True


def test_to_cnf_epsilon_only_grammar():
    g = tiny([("S", "")], terminals="a")
    cnf = to_cnf(g)
    assert cnf.productions == (Production(cnf.start, ()),)


def test_to_cnf_shape_and_language():
    for g in [E1, K1, cowp_fg_grammar(1)]:
        cnf = to_cnf(g)
        assert cnf_shape_ok(cnf)
        assert enumerate_language(cnf, 5) == enumerate_language(g, 5)


def test_to_cnf_empty_language():
    g = tiny([("S", ("a", "S"))])
    cnf = to_cnf(g)
    assert enumerate_language(cnf, 5) == set()
    assert not cyk_member(g, "a")


# --- enumeration


def test_enumerate_language_examples():
    assert enumerate_language(E1, 2) == {"", "aA", "Aa"}
    assert enumerate_language(E1, 0) == {""}
    assert enumerate_language(tiny([("S", "a")]), 0) == set()
    za = avoiding_grammar(1, char_to_letter("a", 1))
    assert enumerate_language(za, 2) == {"", "Aa"}


def test_enumerate_language_matches_oracle():
    got = enumerate_language(idempotent_grammar(2), 4)
    expected = {
        "".join(w)
        for w in all_strings("aAbB", 4)
        if free_reduce(parse_word(w, 2)) == ()
    }
    assert got == expected


def test_enumerate_language_monotone():
    for g in [E1, K1]:
        for n in range(5):
            assert enumerate_language(g, n) <= enumerate_language(g, n + 1)


# --- derivations


def test_derive_minimal_idempotent_tree():
    tree = derive(E1, "aA")
    assert tree.production == Production("E", ("a", "E", "A"))
    inner = tree.children[1]
    assert isinstance(inner, DerivationTree)
    assert inner.production == Production("E", ())
    assert tree.frontier() == "aA"


def test_derive_rejects_non_members():
    assert derive(E1, "a") is None
    assert derive(E1, "b") is None  # off-alphabet means not generated


def test_derive_k1_flat_witness():
    tree = derive(K1, "aA#")
    assert tree is not None and tree.frontier() == "aA#"
    trace = tree.productions()
    assert trace[0] == Production("S", ("P(a)",))
    # no nesting productions: one 7-symbol expansion, marker emitted directly
    assert Production("P(a)", ("E", "a", "E", "A", "E", "Q(A)", "Z(a)")) in trace
    assert not any(len(p.body) == 5 for p in trace)


def test_derive_frontier_matches_membership():
    for g in [E1, K1, cowp_fg_grammar(1)]:
        for w in all_strings(g.terminals, 4):
            tree = derive(g, w)
            assert (tree is not None) == cyk_member(g, w)
            if tree is not None:
                assert tree.frontier() == w
                assert tree.root == g.start


def test_format_tree():
    tree = derive(E1, "aA")
    assert format_tree(tree) == "E -> a E A\n  a\n  E -> 1\n  A"


# --- transformations


def test_reverse_invert_fixed_points():
    g = tiny([("S", "")])
    assert reverse_invert_grammar(g, {}) == g


def test_reverse_invert_swaps_and_reverses():
    g = tiny([("S", ("a", "S", "B"))], terminals="abAB")
    flipped = reverse_invert_grammar(g, {"a": "A", "A": "a", "b": "B", "B": "b"})
    assert flipped.productions == (Production("S", ("b", "S", "A")),)


def test_reverse_invert_requires_involution():
    g = tiny([("S", "a")], terminals="ab")
    with pytest.raises(GrammarError):
        reverse_invert_grammar(g, {"a": "b"})
    with pytest.raises(GrammarError):
        reverse_invert_grammar(g, {"a": "z"})


def test_reverse_invert_is_involution_on_language():
    inv = {"a": "A", "A": "a"}
    twice = reverse_invert_grammar(reverse_invert_grammar(K1, inv), inv)
    assert twice == K1


def test_insert_marker_examples():
    g = tiny([("S", "")], terminals="a")
    marked = insert_marker_grammar(g, "#")
    assert enumerate_language(marked, 3) == {"#"}
    marked_e = insert_marker_grammar(E1, "#")
    assert cyk_member(marked_e, "a#A")
    assert not cyk_member(marked_e, "a#a")


def test_insert_marker_soundness():
    marked = insert_marker_grammar(E1, "#")
    for w in all_strings("aA", 6):
        for cut in range(len(w) + 1):
            split = w[:cut] + "#" + w[cut:]
            assert cyk_member(marked, split) == cyk_member(E1, w)


def test_insert_marker_collision():
    with pytest.raises(GrammarError):
        insert_marker_grammar(E1, "a")


def test_union_grammar():
    g = union_grammar([tiny([("S", "a")]), tiny([("S", "b")])])
    assert enumerate_language(g, 2) == {"a", "b"}
    single = union_grammar([E1])
    assert enumerate_language(single, 4) == enumerate_language(E1, 4)
    with pytest.raises(GrammarError):
        union_grammar([])


def test_grammar_stats_examples():
    assert grammar_stats(idempotent_grammar(1)) == (1, 4)
    assert grammar_stats(idempotent_grammar(2)) == (1, 6)
    for k in (1, 2, 3):
        g = avoiding_grammar(k, char_to_letter("a", k))
        assert grammar_stats(g) == (2 * k, 2 * k * (2 * k + 1))
    assert grammar_stats(K1) == (8, 20)


# --- serialization


def test_bnf_output():
    g = tiny([("S", ""), ("S", "ab"), ("S", ("a", "S"))])
    assert grammar_to_bnf(g) == "S -> 1 | a S | a b\n"


def test_bnf_deterministic():
    assert grammar_to_bnf(K1) == grammar_to_bnf(k1_grammar(1))


def test_json_output():
    g = tiny([("S", "a")], terminals="a")
    d = grammar_to_json_dict(g)
    assert d == {
        "terminals": ["a"],
        "nonterminals": ["S"],
        "start": "S",
        "productions": [{"head": "S", "body": ["a"]}],
    }
    assert grammar_to_json(g).endswith("\n")
