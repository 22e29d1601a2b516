"""Whole-corpus invariance sweeps: every applicable move on every diagram."""

import pytest

from weldskein.diagram import parse, validate
from weldskein.moves import MoveKind, WEN_KINDS, apply_move, enumerate_sites, scramble
from weldskein.skein import CoefficientSystem, y_invariant

from conftest import CORPUS_TEXT

EXT = CoefficientSystem.extended()
WSYM = CoefficientSystem.welded()

# pair insertions blow up the site count; a slice is plenty for a sweep
SITE_CAP = 6


def family_for(diagram, kind):
    if diagram.wens or kind in WEN_KINDS:
        return EXT
    return WSYM


@pytest.mark.parametrize('name', sorted(CORPUS_TEXT))
def test_every_applicable_move_preserves_y(name):
    d = parse(CORPUS_TEXT[name])
    for kind in MoveKind:
        cs = family_for(d, kind)
        sites = enumerate_sites(d, kind)
        reference = y_invariant(d, cs)
        for site in sites[:SITE_CAP]:
            d2 = apply_move(d, site)
            assert validate(d2) == [], (name, kind)
            assert y_invariant(d2, cs) == reference, (name, kind, site)


@pytest.mark.parametrize('name', sorted(CORPUS_TEXT))
def test_scramble_walks_preserve_y(name):
    d = parse(CORPUS_TEXT[name])
    wen_moves = bool(d.wens)
    cs = EXT if wen_moves else WSYM
    reference = y_invariant(d, cs)
    for seed in range(12):
        s = scramble(d, seed=seed, n_moves=30, size_cap=12,
                     wen_moves=wen_moves)
        assert y_invariant(s, cs) == reference, (name, seed)


def test_extended_walks_with_wen_moves():
    d = parse(CORPUS_TEXT['hopf_pos'])
    reference = y_invariant(d, EXT)
    for seed in range(12):
        s = scramble(d, seed=seed, n_moves=30, size_cap=12, wen_moves=True)
        assert y_invariant(s, EXT) == reference, seed
