import pytest

from weldskein.diagram import Diagram, parse

# Named corpus of small diagrams (<= 8 classical crossings), mixing
# classical, virtual, wen-bearing and multi-component examples.
CORPUS_TEXT = {
    'unknot': 'loop\n',
    'unlink2': 'loop\nloop\n',
    'kink_pos': 'X+ 1 2 2 1\n',
    'kink_neg': 'X- 1 2 2 1\n',
    'hopf_pos': 'X+ 1 2 3 4\nX+ 4 3 2 1\n',
    'hopf_neg': 'X- 1 2 3 4\nX- 4 3 2 1\n',
    'virtual_hopf': 'V 1 2 3 4\nX+ 4 3 2 1\n',
    'trefoil': 'X+ L0 R1 R0 L1\nX+ L1 R2 R1 L2\nX+ L2 R0 R2 L0\n',
    'virtual_trefoil': 'X+ l0 r1 r0 l1\nV l1 r2 r1 l2\nX+ l2 r0 r2 l0\n',
    'braid_link': 'X+ A0 a1 B0 b1\nX+ a1 A0 S0 s1\nX+ b1 B0 s1 S0\n',
    'welded_mix': 'V A0 a1 B0 b1\nV a1 A0 S0 s1\nX+ b1 B0 s1 S0\n',
    'hopf_plus_loop': 'X+ 1 2 3 4\nX+ 4 3 2 1\nloop\n',
    'wen_circle': 'W a b\nW b a\n',
    'wen_hopf': 'X+ 1a 2 3 4\nX+ 4 3 2 1b\nW 1b 1a\n',
    'wen_flip_pair': 'X+ A0 m1 B0 m2\nW m1 A0\nW m2 B0\n',
}

WEN_FREE = tuple(k for k in CORPUS_TEXT if not k.startswith('wen'))
WEN_BEARING = tuple(k for k in CORPUS_TEXT if k.startswith('wen'))


def corpus() -> dict[str, Diagram]:
    return {name: parse(text) for name, text in CORPUS_TEXT.items()}


@pytest.fixture(scope='session')
def diagrams() -> dict[str, Diagram]:
    return corpus()
