"""Pure-Python word rewriting kernel.

Edges are integer indices.  Square lookups are flat tables of length E*E
indexed by ``a * E + b``; an entry packs the rewritten pair as
``a2 * E + b2`` (or -1 when the pair is not a square side).
"""


def sort_word(word, colour, rl_next, rl_sq, n_edges):
    """Insertion-sort ``word`` into nondecreasing colour order.

    Every adjacent swap is a square flip ``g'f' -> fg``.  Returns the sorted
    word and the list of square indices crossed, in move order.
    """
    w = list(word)
    flips = []
    for i in range(1, len(w)):
        j = i
        while j > 0 and colour[w[j - 1]] > colour[w[j]]:
            key = w[j - 1] * n_edges + w[j]
            packed = rl_next[key]
            w[j - 1], w[j] = divmod(packed, n_edges)
            flips.append(rl_sq[key])
            j -= 1
    return w, flips


def rewrite_word(word, target, colour, lr_next, rl_next, n_edges):
    """Rewrite ``word`` so its colour sequence equals ``target``.

    ``target`` must be a permutation of the word's colours.  Flips go in
    whichever direction the adjacent colours require.
    """
    w = list(word)
    for p in range(len(w)):
        q = p
        want = target[p]
        while colour[w[q]] != want:
            q += 1
        while q > p:
            a = w[q - 1]
            b = w[q]
            key = a * n_edges + b
            packed = lr_next[key] if colour[a] < colour[b] else rl_next[key]
            w[q - 1], w[q] = divmod(packed, n_edges)
            q -= 1
    return w
