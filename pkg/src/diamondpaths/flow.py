"""Unit-capacity max flow by shortest augmenting paths (Edmonds-Karp).

Nodes are any mutually comparable hashables; arcs out of a node are tried
in sorted node order so that the resulting flow is deterministic.
"""

from __future__ import annotations

from collections import deque
from typing import Generic, Hashable, TypeVar

N = TypeVar("N", bound=Hashable)


class FlowNetwork(Generic[N]):
    def __init__(self) -> None:
        self.cap: dict[N, dict[N, int]] = {}
        self.flow: dict[N, dict[N, int]] = {}
        self._order: dict[N, list[N]] | None = None

    def add_node(self, x: N) -> None:
        if x not in self.cap:
            self.cap[x] = {}
            self.flow[x] = {}
            self._order = None

    def add_arc(self, a: N, b: N, capacity: int = 1) -> None:
        """Directed arc a->b. The reverse residual arc starts at zero capacity."""
        self.add_node(a)
        self.add_node(b)
        self.cap[a][b] = self.cap[a].get(b, 0) + capacity
        self.cap[b].setdefault(a, 0)
        self.flow[a].setdefault(b, 0)
        self.flow[b].setdefault(a, 0)
        self._order = None

    def add_edge(self, a: N, b: N, capacity: int = 1) -> None:
        """Undirected edge: one shared residual pair with ``capacity`` each way."""
        self.add_arc(a, b, capacity)
        self.add_arc(b, a, capacity)

    @property
    def nodes(self) -> list[N]:
        return sorted(self.cap)

    def residual(self, a: N, b: N) -> int:
        return self.cap[a][b] - self.flow[a][b]

    def _sorted_out(self) -> dict[N, list[N]]:
        if self._order is None:
            self._order = {x: sorted(nbrs) for x, nbrs in self.cap.items()}
        return self._order

    def _augmenting_path(self, source: N, sink: N) -> list[N] | None:
        out = self._sorted_out()
        prev: dict[N, N] = {source: source}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in out[x]:
                if y not in prev and self.cap[x][y] - self.flow[x][y] > 0:
                    prev[y] = x
                    if y == sink:
                        path = [sink]
                        while path[-1] != source:
                            path.append(prev[path[-1]])
                        return path[::-1]
                    queue.append(y)
        return None

    def max_flow(self, source: N, sink: N) -> int:
        """Augment unit paths until none remain; returns the flow value."""
        self.add_node(source)
        self.add_node(sink)
        value = 0
        while (path := self._augmenting_path(source, sink)) is not None:
            for a, b in zip(path, path[1:]):
                self.flow[a][b] += 1
                self.flow[b][a] -= 1
            value += 1
        return value

    def reachable(self, source: N) -> set[N]:
        """Nodes reachable from ``source`` in the residual network."""
        seen = {source}
        stack = [source]
        while stack:
            x = stack.pop()
            for y in self.cap[x]:
                if y not in seen and self.residual(x, y) > 0:
                    seen.add(y)
                    stack.append(y)
        return seen

    def decompose(self, source: N, sink: N) -> list[list[N]]:
        """Split the current flow into simple source-sink paths.

        Each walk follows the least out-arc still carrying positive flow and
        erases flow as it goes. A walk that revisits a node drops the loop
        (a flow cycle); cycles never reached from the source stay behind.
        """
        positive = {
            x: {y: f for y, f in row.items() if f > 0}
            for x, row in self.flow.items()
        }
        paths: list[list[N]] = []
        while positive.get(source):
            walk = [source]
            index = {source: 0}
            while walk[-1] != sink:
                x = walk[-1]
                y = min(positive[x])
                positive[x][y] -= 1
                if not positive[x][y]:
                    del positive[x][y]
                if y in index:
                    for z in walk[index[y] + 1:]:
                        del index[z]
                    del walk[index[y] + 1:]
                else:
                    index[y] = len(walk)
                    walk.append(y)
            paths.append(walk)
        return paths
