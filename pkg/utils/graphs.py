from collections import deque

def BreadthFirst(start, adjacency, seen):
    order = [start]
    parent = {start: None}
    depth = {start: 0}
    seen.add(start)
    queue = deque([start])

    while queue:
        current = queue.popleft()
        for child in adjacency[current]:
            if child not in seen:
                seen.add(child)
                parent[child] = current
                depth[child] = depth[current] + 1
                order.append(child)
                queue.append(child)

    return order, parent, depth

def Components(adjacency):
    seen = set()
    components = []

    for start in range(len(adjacency)):
        if start in seen:
            continue
        order, _, _ = BreadthFirst(start, adjacency, seen)
        components.append(sorted(order))

    return components

def PathToRoot(vertex, parent):
    path = [vertex]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path

def OddCycle(u, v, parent):
    # u and v are adjacent and sit on BFS levels of equal parity
    up = PathToRoot(u, parent)
    vp = PathToRoot(v, parent)
    on_v = set(vp)
    lca = next(node for node in up if node in on_v)
    left = up[:up.index(lca) + 1]
    right = vp[:vp.index(lca)]
    return left + right[::-1]

def TwoColor(component, adjacency):
    """
    Two-colours one connected component by BFS levels.

    Returns (coloring, None) where coloring maps vertex -> 0/1 when the
    component is bipartite, otherwise (None, cycle) with cycle an odd closed
    walk given as its vertex sequence (first and last vertex adjacent).
    """
    seen = set()
    _, parent, depth = BreadthFirst(component[0], adjacency, seen)

    for u in component:
        for v in adjacency[u]:
            if u < v and depth[u] % 2 == depth[v] % 2:
                return None, OddCycle(u, v, parent)

    return {node: level % 2 for node, level in depth.items()}, None
