"""Hypothesis strategies shared across test modules."""

from hypothesis import strategies as st

from doubleloop.poset import OrderedPartition


@st.composite
def cells(draw, min_n: int = 1, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    word = draw(st.permutations(list(range(1, n + 1))))
    cuts = draw(st.lists(st.booleans(), min_size=n - 1, max_size=n - 1))
    blocks, cur = [], [word[0]]
    for v, cut in zip(word[1:], cuts):
        if cut:
            blocks.append(cur)
            cur = []
        cur.append(v)
    blocks.append(cur)
    return OrderedPartition(blocks)


@st.composite
def injections(draw, k: int, max_extra: int = 2):
    l = k + draw(st.integers(0, max_extra))
    images = draw(st.permutations(list(range(1, l + 1))))[:k]
    from doubleloop.preoperad import BasedInjection

    return BasedInjection(images, l)
