import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from indpro.documents import (KINDS, DocumentSemanticError, DocumentSyntaxError, dump, load,
                              parse, serialize, to_document)
from indpro.harness import gen_random_ses, gen_three_squares
from indpro.tate import laurent_window, random_kato_window, random_pi_window, shift_lattice

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _fixture_files():
    return sorted(FIXTURES.glob("*.json"))


def test_fixtures_cover_every_kind():
    kinds = {json.loads(f.read_text())["kind"] for f in _fixture_files()}
    assert kinds == set(KINDS)


@pytest.mark.parametrize("path", _fixture_files(), ids=lambda p: p.name)
def test_fixture_round_trip(path):
    text = path.read_text(encoding="utf-8")
    doc = parse(text)
    assert serialize(doc) == text
    assert parse(serialize(doc)) == doc


def test_dump_and_load(tmp_path):
    L = laurent_window(5, -1, 2)
    dump(L, tmp_path / "l.json")
    assert load(tmp_path / "l.json").payload == L


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_objects_round_trip(seed):
    objs = [random_pi_window(3, -1, 2, 4, seed), random_kato_window(2, 0, 3, 4, seed),
            gen_random_ses(seed, 5, 3), gen_three_squares(seed, 3, 2)]
    for obj in objs:
        doc = to_document(obj)
        assert parse(serialize(doc)).payload == obj


def test_uroof_round_trip():
    r = shift_lattice(laurent_window(2, -1, 2), 1)
    assert parse(serialize(to_document(r))).payload == r


def _laurent_text():
    return serialize(to_document(laurent_window(2, 0, 2)))


def test_syntax_errors_carry_position():
    text = _laurent_text()
    with pytest.raises(DocumentSyntaxError) as exc:
        parse(text[:-3])
    assert exc.value.line is not None and exc.value.column is not None


@pytest.mark.parametrize("edit, invariant", [
    (lambda d: d.update(kind="bogus"), "kind"),
    (lambda d: d.update(p=4), "prime"),
    (lambda d: d["dims"].update({"1,1": 1}), "diagonal"),
    (lambda d: d["maps"]["m:0,0"].update(entries=[2]) if d["maps"]["m:0,0"]["entries"]
     else d["maps"]["e:0,2"].update(entries=[2, 0]), "entry_range"),
    (lambda d: d["dims"].pop("0,1"), "missing_cell"),
    (lambda d: d["maps"]["e:0,2"].update(rows=3), "entry_count"),
])
def test_semantic_errors_name_the_invariant(edit, invariant):
    d = json.loads(_laurent_text())
    edit(d)
    with pytest.raises(DocumentSemanticError) as exc:
        parse(json.dumps(d))
    assert exc.value.invariant == invariant


def test_non_commuting_window_is_rejected():
    d = json.loads(_laurent_text())
    # e(0,2) m(0,1) must vanish since it factors through X(1,1) = 0
    d["maps"]["e:0,2"]["entries"] = [1, 1]
    with pytest.raises(DocumentSemanticError) as exc:
        parse(json.dumps(d))
    assert exc.value.invariant == "commutes"


def test_serialization_is_canonical():
    L = laurent_window(3, -1, 1)
    a = serialize(to_document(L))
    b = serialize(parse(a))
    assert a == b and a.endswith("\n")
    assert np.all([ord(ch) < 128 for ch in a])
