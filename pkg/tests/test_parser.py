import math

import pytest

from caption_ir.counts import CountStore
from caption_ir.parser import (ParseError, exhaustive_parses, from_bracket,
                               nbest_parse, score_tree, to_bracket)

EXTRA_SENTENCES = ["f-18 landing", "sidewinder on ground",
                   "missile mounted on aircraft", "big missile on stand",
                   "radar set", "sidewinder coiled"]


def oracle_sentences(lexicon, corpus):
    texts = [text for _cid, text in corpus
             if len(lexicon.tokenize(text)) <= 8]
    return texts + EXTRA_SENTENCES


def tree_signature(tree):
    return (round(tree.log_score, 9), tree.order_key())


# -- co-occurrence scoring ---------------------------------------------------------

def test_cooc_prefers_seeded_pair(lexicon, grammar, empty_store, config):
    store = empty_store
    store.increment_pair(lexicon, "NP:NP+PARTICIPLEPHRASE:1",
                         "aircraft-1", "land-2", 230)
    result = nbest_parse(grammar, lexicon, store,
                         lexicon.tokenize("f-18 landing"), 5, config)
    assert len(result.trees) == 2
    best = result.trees[0]
    rules = {n.rule.id for n in best.walk() if n.rule}
    assert "NP:NP+PARTICIPLEPHRASE:1" in rules


def test_cooc_cap_at_probability_one(lexicon, empty_store, config):
    from caption_ir.parser import cooc_log_prob
    store = empty_store
    store.increment_pair(lexicon, "r", "aircraft-1", "land-2", 50)
    store.unary_counts["aircraft-1"] = 10  # estimate exceeds unary
    assert cooc_log_prob(store, lexicon, "r", "aircraft-1", "land-2",
                         config.inherit_threshold, config.count_floor) == 0.0


def test_cooc_floor_path_is_finite(lexicon, empty_store, config):
    from caption_ir.parser import cooc_log_prob
    value = cooc_log_prob(empty_store, lexicon, "r", "f-18-1", "fit-1",
                          config.inherit_threshold, config.count_floor)
    assert value == pytest.approx(
        math.log(0.5 / config.inherit_threshold))


# -- N-best search vs exhaustive oracle ------------------------------------------------

def test_nbest_equals_oracle_untrained(lexicon, grammar, empty_store,
                                       corpus, config):
    for text in oracle_sentences(lexicon, corpus):
        tokens = lexicon.tokenize(text)
        oracle = exhaustive_parses(grammar, lexicon, empty_store, tokens,
                                   config)
        got = nbest_parse(grammar, lexicon, empty_store, tokens, 5, config)
        want = oracle[:5]
        assert [tree_signature(t) for t in got.trees] == \
            [tree_signature(t) for t in want], text
        if got.exhausted:
            # the flag promises completeness: nothing beyond what came back
            assert len(oracle) == len(got.trees)


def test_nbest_equals_oracle_trained(lexicon, trained_grammar, trained_store,
                                     corpus, config):
    for text in oracle_sentences(lexicon, corpus):
        tokens = lexicon.tokenize(text)
        oracle = exhaustive_parses(trained_grammar, lexicon, trained_store,
                                   tokens, config)
        got = nbest_parse(trained_grammar, lexicon, trained_store, tokens,
                          5, config)
        assert [tree_signature(t) for t in got.trees] == \
            [tree_signature(t) for t in oracle[:5]], text


def test_single_token_unary_score(lexicon, grammar, empty_store, config):
    result = nbest_parse(grammar, lexicon, empty_store,
                         ["missile"], 3, config)
    best = result.trees[0]
    # no binary nodes: score is the sum of unary rule probabilities only
    expected = sum(grammar.rule_log_prob(n.rule)
                   for n in best.walk() if n.rule)
    assert best.log_score == pytest.approx(expected, abs=1e-12)
    assert not any(n.rule and n.rule.is_binary for n in best.walk())


def test_sense_ambiguity_yields_both_parses(lexicon, grammar, empty_store,
                                            config):
    result = nbest_parse(grammar, lexicon, empty_store,
                         lexicon.tokenize("sidewinder on ground"), 5, config)
    heads = [t.head.synset for t in result.trees]
    assert sorted(heads) == ["sidewinder-1", "sidewinder-2"]


def test_sidewinder_sense_follows_counts(lexicon, grammar, empty_store,
                                         config):
    store = empty_store
    store.increment_pair(lexicon, "NP:NP+PP:1@location",
                         "sidewinder-2", "ground-1", 8)
    result = nbest_parse(grammar, lexicon, store,
                         lexicon.tokenize("sidewinder on ground"), 2, config)
    assert result.trees[0].head.synset == "sidewinder-2"


def test_no_parse_reports_prefix(lexicon, grammar, empty_store, config):
    with pytest.raises(ParseError) as err:
        nbest_parse(grammar, lexicon, empty_store,
                    lexicon.tokenize("on on on"), 3, config)
    assert err.value.prefix_end is not None


def test_empty_tokens_rejected(lexicon, grammar, empty_store, config):
    with pytest.raises(ParseError):
        nbest_parse(grammar, lexicon, empty_store, [], 1, config)


def test_oracle_cap_enforced(lexicon, grammar, empty_store, config):
    with pytest.raises(ParseError):
        exhaustive_parses(grammar, lexicon, empty_store,
                          ["radar"] * 11, config)


def test_unparsable_tokens_empty_oracle(lexicon, grammar, empty_store,
                                        config):
    assert exhaustive_parses(grammar, lexicon, empty_store,
                             ["on", "on"], config) == []


def test_two_token_ambiguity_is_hand_countable(lexicon, grammar,
                                               empty_store, config):
    # "sidewinder mounted": two senses, one viable structure each
    parses = exhaustive_parses(grammar, lexicon, empty_store,
                               lexicon.tokenize("sidewinder mounted"),
                               config)
    assert len(parses) == 2
    assert {t.head.synset for t in parses} == {"sidewinder-1",
                                               "sidewinder-2"}
    # "f-18 landing": one sense pair, two competing rules
    parses = exhaustive_parses(grammar, lexicon, empty_store,
                               lexicon.tokenize("f-18 landing"), config)
    assert len(parses) == 2


# -- score properties -------------------------------------------------------------------

def test_all_scores_finite_nonpositive(lexicon, trained_grammar,
                                       trained_store, corpus, config):
    for text in oracle_sentences(lexicon, corpus):
        result = nbest_parse(trained_grammar, lexicon, trained_store,
                             lexicon.tokenize(text), 5, config)
        for tree in result.trees:
            assert math.isfinite(tree.log_score)
            assert tree.log_score <= 0.0
            for node in tree.walk():
                assert node.log_score <= 1e-12


def test_admissibility_of_partial_bounds(lexicon, trained_grammar,
                                         trained_store, config):
    # every subderivation of a returned parse bounds the full score from
    # above (all node contributions are nonpositive), and best-first
    # expansion visits hypotheses in nonincreasing bound order
    for text in ["sidewinder attached to wing pylon",
                 "personnel mounting pod on f-18."]:
        pops = []
        result = nbest_parse(trained_grammar, lexicon, trained_store,
                             lexicon.tokenize(text), 5, config,
                             collect_pops=pops)
        for tree in result.trees:
            for node in tree.walk():
                assert node.log_score >= tree.log_score - 1e-9
        for earlier, later in zip(pops, pops[1:]):
            assert earlier.log_score >= later.log_score - 1e-9


def test_determinism(lexicon, trained_grammar, trained_store, config):
    text = "wasp director and hawk radar at site."
    tokens = lexicon.tokenize(text)
    first = nbest_parse(trained_grammar, lexicon, trained_store, tokens,
                        8, config)
    second = nbest_parse(trained_grammar, lexicon, trained_store, tokens,
                         8, config)
    assert [tree_signature(t) for t in first.trees] == \
        [tree_signature(t) for t in second.trees]


def test_monotone_in_top_pair_count(lexicon, grammar, empty_store, config):
    from caption_ir.parser import stat_rule_key
    store = empty_store
    # seed a preference, then reinforce it and check the rank never drops
    store.increment_pair(lexicon, "NP:NP+PARTICIPLEPHRASE:1",
                         "f-18-1", "land-2", 6)
    tokens = lexicon.tokenize("f-18 landing")
    best = nbest_parse(grammar, lexicon, store, tokens, 2, config).trees[0]
    top_binary = next(n for n in best.walk() if n.rule and n.rule.is_binary)
    head_child = top_binary.children[top_binary.rule.head_pos - 1]
    dep_child = top_binary.children[2 - top_binary.rule.head_pos]
    key = stat_rule_key(top_binary.rule, dep_child, lexicon)
    store.increment_pair(lexicon, key, head_child.head.synset,
                         dep_child.head.synset, 10)
    after = nbest_parse(grammar, lexicon, store, tokens, 2, config).trees[0]
    assert after.order_key() == best.order_key()


# -- score recomputation -------------------------------------------------------------

def test_score_tree_matches_constructed(lexicon, trained_grammar,
                                        trained_store, corpus, config):
    for text in oracle_sentences(lexicon, corpus)[:20]:
        tokens = lexicon.tokenize(text)
        for tree in exhaustive_parses(trained_grammar, lexicon,
                                      trained_store, tokens, config)[:10]:
            recomputed = score_tree(tree, trained_grammar, lexicon,
                                    trained_store, config)
            assert recomputed == pytest.approx(tree.log_score, abs=1e-9)


def test_single_binary_node_score_decomposition(lexicon, grammar,
                                                empty_store, config):
    from caption_ir.parser import cooc_log_prob, stat_rule_key
    result = nbest_parse(grammar, lexicon, empty_store,
                         lexicon.tokenize("f-18 landing"), 1, config)
    tree = result.trees[0]
    binary = [n for n in tree.walk() if n.rule and n.rule.is_binary]
    assert len(binary) == 1
    node = binary[0]
    head_child = node.children[node.rule.head_pos - 1]
    dep_child = node.children[2 - node.rule.head_pos]
    expected = (head_child.log_score + dep_child.log_score
                + grammar.rule_log_prob(node.rule)
                + cooc_log_prob(empty_store, lexicon,
                                stat_rule_key(node.rule, dep_child, lexicon),
                                head_child.head.synset,
                                dep_child.head.synset,
                                config.inherit_threshold,
                                config.count_floor))
    assert node.log_score == pytest.approx(expected, abs=1e-12)


def test_head_swap_changes_score_on_asymmetric_counts(lexicon, grammar,
                                                      empty_store, config):
    from caption_ir.parser import cooc_log_prob
    store = empty_store
    store.increment_pair(lexicon, "NP:ADJECTIVE+NP:2", "set-2", "radar-1", 9)
    # the seeded direction scores high, the swapped head/dependent roles
    # fall back to the floor
    forward = cooc_log_prob(store, lexicon, "NP:ADJECTIVE+NP:2",
                            "set-2", "radar-1",
                            config.inherit_threshold, config.count_floor)
    swapped = cooc_log_prob(store, lexicon, "NP:ADJECTIVE+NP:2",
                            "radar-1", "set-2",
                            config.inherit_threshold, config.count_floor)
    assert forward > swapped
    best = nbest_parse(grammar, lexicon, store,
                       lexicon.tokenize("radar set"), 1, config).trees[0]
    assert best.head.synset == "set-2"


# -- bracketed serialization --------------------------------------------------------------

def test_bracket_round_trip(lexicon, trained_grammar, trained_store, corpus,
                            config):
    for text in oracle_sentences(lexicon, corpus)[:25]:
        tokens = lexicon.tokenize(text)
        tree = nbest_parse(trained_grammar, lexicon, trained_store, tokens,
                           1, config).trees[0]
        bracket = to_bracket(tree)
        back = from_bracket(bracket, trained_grammar, lexicon)
        assert back.order_key() == tree.order_key()
        assert to_bracket(back) == bracket


def test_bracket_keeps_multiword_tokens(lexicon, trained_grammar,
                                        trained_store, config):
    tree = nbest_parse(trained_grammar, lexicon, trained_store,
                       lexicon.tokenize("aircraft bu# 7074 on runway."),
                       1, config).trees[0]
    bracket = to_bracket(tree)
    assert '"bu# 7074"' in bracket
    back = from_bracket(bracket, trained_grammar, lexicon)
    assert [l.token for l in back.leaves()] == \
        ["aircraft", "bu# 7074", "on", "runway", "."]


def test_bracket_rejects_garbage(lexicon, grammar):
    with pytest.raises(ParseError):
        from_bracket("(NP head=x-1", grammar, lexicon)
    with pytest.raises(ParseError):
        from_bracket('(WIDGET head=x-1 score=0 (NP head=y-1 score=0 "y"))',
                     grammar, lexicon)
