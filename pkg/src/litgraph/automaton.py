"""Token-sequence Aho-Corasick automaton.

Patterns are tuples of token strings rather than characters; one pass over a
document layer reports every dictionary form occurrence. The automaton is
finalized once and read-only afterwards, so concurrent scans are safe.
"""

from collections import deque


class TokenAutomaton:
    def __init__(self):
        self._goto = [{}]          # state -> {token: state}
        self._out = [[]]           # state -> [(pattern_length, payload)]
        self._fail = [0]
        self._finalized = False

    def add(self, tokens, payload):
        if self._finalized:
            raise RuntimeError("automaton already finalized")
        if not tokens:
            raise ValueError("empty pattern")
        state = 0
        for tok in tokens:
            nxt = self._goto[state].get(tok)
            if nxt is None:
                self._goto.append({})
                self._out.append([])
                self._fail.append(0)
                nxt = len(self._goto) - 1
                self._goto[state][tok] = nxt
            state = nxt
        self._out[state].append((len(tokens), payload))

    def finalize(self):
        """Build failure links breadth-first and merge suffix outputs."""
        queue = deque()
        for state in self._goto[0].values():
            self._fail[state] = 0
            queue.append(state)
        while queue:
            state = queue.popleft()
            for tok, nxt in self._goto[state].items():
                queue.append(nxt)
                fall = self._fail[state]
                while fall and tok not in self._goto[fall]:
                    fall = self._fail[fall]
                self._fail[nxt] = self._goto[fall].get(tok, 0)
                if self._fail[nxt] == nxt:
                    self._fail[nxt] = 0
                self._out[nxt] = self._out[nxt] + self._out[self._fail[nxt]]
        self._finalized = True

    def scan(self, sequence):
        """Yield (start, end, payload) for every pattern occurrence."""
        if not self._finalized:
            raise RuntimeError("finalize() before scanning")
        state = 0
        for pos, tok in enumerate(sequence):
            while state and tok not in self._goto[state]:
                state = self._fail[state]
            state = self._goto[state].get(tok, 0)
            for length, payload in self._out[state]:
                yield pos + 1 - length, pos + 1, payload
