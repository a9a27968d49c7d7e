class UnionFind:
    """Disjoint sets over ``0..size-1`` with path halving and union by size.

    Each set also remembers a ``tag`` (by default its first element) that the
    caller can overwrite through :meth:`set_tag`; the sweeps use it to track
    a component's creator or current merge-tree head.

    >>> uf = UnionFind(4)
    >>> uf.union(0, 2)
    True
    >>> uf.same(0, 2), uf.same(0, 1)
    (True, False)
    >>> uf.union(2, 0)
    False
    """

    __slots__ = ("parent", "size", "tag")

    def __init__(self, size=0):
        self.parent = list(range(size))
        self.size = [1] * size
        self.tag = list(range(size))

    def add(self):
        i = len(self.parent)
        self.parent.append(i)
        self.size.append(1)
        self.tag.append(i)
        return i

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def same(self, x, y):
        return self.find(x) == self.find(y)

    def union(self, x, y, tag=None):
        """Merge the sets of ``x`` and ``y``; return False if already merged.

        The merged set takes ``tag`` when given, else the tag of ``x``'s set.
        """
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            if tag is not None:
                self.tag[rx] = tag
            return False
        if tag is None:
            tag = self.tag[rx]
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.tag[rx] = tag
        return True

    def get_tag(self, x):
        return self.tag[self.find(x)]

    def set_tag(self, x, tag):
        self.tag[self.find(x)] = tag
