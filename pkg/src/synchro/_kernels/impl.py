"""Bitset search kernels.

``make_kernels(decorate)`` builds the four kernels with every function run
through ``decorate``: numba's ``njit(nogil=True)`` for the compiled backend,
the identity for the pure fallback, so both paths share one implementation
(helpers become closure variables, which numba resolves at compile time).

Candidate sets, neighbourhood masks and clique sets are single ``uint64``
words, which caps searched graphs at 63 vertices. Everything the artifact
searches over (45-vertex line graph, 30-vertex Tutte-Coxeter, the small
corpus) fits; larger graphs are only ever validated, never searched.

Status codes returned by the searches:
    0  search ran to completion
    1  aborted (abort flag raised or node limit hit)
    2  completed, but the solution buffer overflowed (counts stay exact)
"""

import numpy as np

_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)

U0 = np.uint64(0)
U1 = np.uint64(1)
M16 = np.uint64(0xFFFF)


def make_kernels(decorate):
    @decorate
    def popcount(x):
        return (
            _POP16[x & M16]
            + _POP16[(x >> np.uint64(16)) & M16]
            + _POP16[(x >> np.uint64(32)) & M16]
            + _POP16[(x >> np.uint64(48)) & M16]
        )

    @decorate
    def ctz(x):
        # x must be nonzero
        low = x & (~x + U1)
        return popcount(low - U1)

    @decorate
    def bit(i):
        return U1 << np.uint64(i)

    @decorate
    def hom_search(
        ns,
        indptr,
        indices,
        nd,
        dst_mask,
        init_images,
        injective,
        rank_mask,
        rank_cap,
        rank_floor,
        stop_first,
        sol_cap,
        sol_out,
        counts,
        abort_flag,
        poll_every,
        node_limit,
    ):
        """Enumerate graph homomorphisms by forward-checking backtracking.

        Source graph given as CSR adjacency (indptr/indices over ns
        vertices), target by per-vertex open-neighbourhood masks (nd <= 63).
        Vertices with init_images[v] >= 0 are pre-assigned (parallel splits,
        clique pre-colouring, symmetry breaking). Variable order is
        most-constrained-first with smallest-index tie-break, values
        ascending, so single-threaded runs are fully deterministic.

        counts[r] accumulates complete maps of image size r whose bit r-1 is
        set in rank_mask; maps are also copied into sol_out while capacity
        lasts. Returns (solutions_recorded, nodes, status).
        """
        full = (U1 << np.uint64(nd)) - U1
        cand = np.empty(ns, np.uint64)
        images = np.empty(ns, np.int32)
        pc = np.empty(ns, np.int32)
        used_cnt = np.zeros(nd, np.int32)
        used_n = 0
        unassigned = ns

        for v in range(ns):
            cand[v] = full
            images[v] = -1

        # install pre-assignments, then propagate them
        ok = True
        for v in range(ns):
            a = init_images[v]
            if a >= 0:
                images[v] = a
                cand[v] = bit(a)
                unassigned -= 1
                if used_cnt[a] == 0:
                    used_n += 1
                used_cnt[a] += 1
                if injective != 0 and used_cnt[a] > 1:
                    ok = False
        if ok:
            for v in range(ns):
                a = images[v]
                if a >= 0:
                    for e in range(indptr[v], indptr[v + 1]):
                        w = indices[e]
                        cand[w] &= dst_mask[a]
                    if injective != 0:
                        nb = ~bit(a)
                        for w in range(ns):
                            if w != v:
                                cand[w] &= nb
            for v in range(ns):
                if cand[v] == U0:
                    ok = False
                pc[v] = popcount(cand[v])

        n_sol = np.int64(0)
        nodes = np.int64(0)
        aborted = 0
        overflow = 0

        if not ok:
            return n_sol, nodes, 0
        if unassigned == 0:
            r = used_n
            if (rank_mask >> np.uint64(r - 1)) & U1:
                counts[r] += 1
                if n_sol < sol_cap:
                    for v in range(ns):
                        sol_out[n_sol * ns + v] = images[v]
                    n_sol += 1
                elif sol_cap > 0:
                    overflow = 1
            return n_sol, nodes, 2 if overflow != 0 else 0

        base = ns - unassigned
        chosen = np.empty(ns + 1, np.int32)
        tried = np.empty(ns + 1, np.uint64)
        trail_v = np.empty(ns * ns + ns + 8, np.int32)
        trail_m = np.empty(ns * ns + ns + 8, np.uint64)
        trail_ptr = np.empty(ns + 2, np.int64)
        tp = np.int64(0)

        best = -1
        bestpc = 1 << 30
        for v in range(ns):
            if images[v] < 0 and pc[v] < bestpc:
                best = v
                bestpc = pc[v]
        depth = base
        chosen[depth] = best
        tried[depth] = U0
        trail_ptr[depth] = tp
        poll = poll_every

        while True:
            v = chosen[depth]
            rem = cand[v] & ~tried[depth]
            advanced = False
            while rem != U0:
                a = ctz(rem)
                ab = bit(a)
                rem &= ~ab
                tried[depth] |= ab

                nodes += 1
                poll -= 1
                if poll <= 0:
                    poll = poll_every
                    if abort_flag[0] != 0 or (node_limit > 0 and nodes >= node_limit):
                        aborted = 1
                        break

                fresh = 1 if used_cnt[a] == 0 else 0
                nu = used_n + fresh
                if nu > rank_cap:
                    continue
                if nu + (unassigned - 1) < rank_floor:
                    continue

                images[v] = np.int32(a)
                used_cnt[a] += 1
                used_n = nu
                unassigned -= 1
                t0 = tp
                feasible = True
                for e in range(indptr[v], indptr[v + 1]):
                    w = indices[e]
                    if images[w] < 0:
                        old = cand[w]
                        new = old & dst_mask[a]
                        if new != old:
                            trail_v[tp] = w
                            trail_m[tp] = old
                            tp += 1
                            cand[w] = new
                            if new == U0:
                                feasible = False
                                break
                            pc[w] = popcount(new)
                if feasible and injective != 0:
                    nb = ~ab
                    for w in range(ns):
                        if images[w] < 0:
                            old = cand[w]
                            new = old & nb
                            if new != old:
                                trail_v[tp] = w
                                trail_m[tp] = old
                                tp += 1
                                cand[w] = new
                                if new == U0:
                                    feasible = False
                                    break
                                pc[w] = popcount(new)

                if feasible and unassigned == 0:
                    r = used_n
                    if (rank_mask >> np.uint64(r - 1)) & U1:
                        counts[r] += 1
                        if n_sol < sol_cap:
                            for u in range(ns):
                                sol_out[n_sol * ns + u] = images[u]
                            n_sol += 1
                        elif sol_cap > 0:
                            overflow = 1
                        if stop_first != 0:
                            return n_sol, nodes, 2 if overflow != 0 else 0
                    feasible = False  # undo and keep scanning siblings

                if not feasible:
                    while tp > t0:
                        tp -= 1
                        w = trail_v[tp]
                        cand[w] = trail_m[tp]
                        pc[w] = popcount(cand[w])
                    used_cnt[a] -= 1
                    if used_cnt[a] == 0:
                        used_n -= 1
                    images[v] = -1
                    unassigned += 1
                    continue

                best = -1
                bestpc = 1 << 30
                for w in range(ns):
                    if images[w] < 0 and pc[w] < bestpc:
                        best = w
                        bestpc = pc[w]
                depth += 1
                chosen[depth] = best
                tried[depth] = U0
                trail_ptr[depth] = tp
                advanced = True
                break

            if advanced:
                continue
            if aborted != 0:
                break
            if depth == base:
                break
            # exhausted this level: undo the parent's assignment, resume there
            depth -= 1
            v = chosen[depth]
            a = images[v]
            tgt = trail_ptr[depth]
            while tp > tgt:
                tp -= 1
                w = trail_v[tp]
                cand[w] = trail_m[tp]
                pc[w] = popcount(cand[w])
            used_cnt[a] -= 1
            if used_cnt[a] == 0:
                used_n -= 1
            images[v] = -1
            unassigned += 1

        status = 1 if aborted != 0 else (2 if overflow != 0 else 0)
        return n_sol, nodes, status

    @decorate
    def clique_search(
        n,
        nbr,
        init_r_mask,
        init_p_mask,
        target,
        stop_at_target,
        abort_flag,
        poll_every,
        node_limit,
    ):
        """Branch-and-bound maximum clique with greedy-colouring bounds.

        Starts from the forced clique init_r_mask (caller guarantees it is
        one) and candidate set init_p_mask. In decision mode
        (stop_at_target != 0) the search returns as soon as a clique of size
        >= target is known, which is what the derived-graph edge test needs.
        Returns (best_size, best_mask, nodes, status).
        """
        r_base = 0 + popcount(init_r_mask)
        best_size = int(r_base)
        best_mask = init_r_mask
        nodes = np.int64(0)
        status = 0
        poll = poll_every

        if stop_at_target != 0 and best_size >= target:
            return best_size, best_mask, nodes, 0

        cap = n + 2
        p_stack = np.empty(cap, np.uint64)
        r_stack = np.empty(cap, np.uint64)
        ord_v = np.empty(cap * (n + 1), np.int32)
        ord_b = np.empty(cap * (n + 1), np.int32)
        ord_pos = np.empty(cap, np.int32)
        color = np.empty(n, np.int32)

        depth = 0
        p_stack[0] = init_p_mask
        r_stack[0] = init_r_mask
        ord_pos[0] = -2  # fresh level sentinel: colour-sort before iterating

        while depth >= 0:
            if status != 0:
                break
            off = depth * (n + 1)
            if ord_pos[depth] == -2:
                # greedy-colour the candidates, then sort ascending by colour
                m = 0
                uncol = p_stack[depth]
                c = 0
                while uncol != U0:
                    c += 1
                    cls = uncol
                    while cls != U0:
                        u = ctz(cls)
                        ub = bit(u)
                        cls &= ~ub
                        cls &= ~nbr[u]
                        uncol &= ~ub
                        color[u] = c
                pm = p_stack[depth]
                while pm != U0:
                    u = ctz(pm)
                    pm &= ~bit(u)
                    ord_v[off + m] = u
                    ord_b[off + m] = color[u]
                    m += 1
                for i in range(1, m):
                    kv = ord_v[off + i]
                    kb = ord_b[off + i]
                    j = i - 1
                    while j >= 0 and (
                        ord_b[off + j] > kb
                        or (ord_b[off + j] == kb and ord_v[off + j] > kv)
                    ):
                        ord_v[off + j + 1] = ord_v[off + j]
                        ord_b[off + j + 1] = ord_b[off + j]
                        j -= 1
                    ord_v[off + j + 1] = kv
                    ord_b[off + j + 1] = kb
                ord_pos[depth] = m - 1

            pos = ord_pos[depth]
            if pos < 0:
                depth -= 1
                continue

            rsize = r_base + depth
            limit = best_size
            if stop_at_target != 0 and target - 1 > limit:
                limit = target - 1
            if rsize + ord_b[off + pos] <= limit:
                # colours ascend along the order: every sibling is bounded out
                depth -= 1
                continue

            vtx = ord_v[off + pos]
            ord_pos[depth] = pos - 1

            nodes += 1
            poll -= 1
            if poll <= 0:
                poll = poll_every
                if abort_flag[0] != 0 or (node_limit > 0 and nodes >= node_limit):
                    status = 1
                    break

            vb = bit(vtx)
            p_stack[depth] &= ~vb
            child_r = r_stack[depth] | vb
            child_p = p_stack[depth] & nbr[vtx]
            if rsize + 1 > best_size:
                best_size = rsize + 1
                best_mask = child_r
                if stop_at_target != 0 and best_size >= target:
                    return best_size, best_mask, nodes, 0
            if child_p == U0:
                continue
            depth += 1
            r_stack[depth] = child_r
            p_stack[depth] = child_p
            ord_pos[depth] = -2

        return best_size, best_mask, nodes, status

    @decorate
    def pair_closure(n, maps_flat, m):
        """Mark every ordered pair some word in the maps sends to the diagonal.

        maps_flat holds m transformations of degree n, concatenated. One
        backward BFS from the diagonal over the pair automaton (n*n states,
        one deterministic transition per map), so pair (a, b) is marked iff
        some composition of the maps collapses a and b.
        """
        n2 = n * n
        total = m * n2
        targets = np.empty(total, np.int64)
        for j in range(m):
            base = j * n
            for a in range(n):
                fa = np.int64(maps_flat[base + a]) * n
                row = j * n2 + a * n
                for b in range(n):
                    targets[row + b] = fa + maps_flat[base + b]

        deg = np.zeros(n2 + 1, np.int64)
        for e in range(total):
            deg[targets[e] + 1] += 1
        for q in range(n2):
            deg[q + 1] += deg[q]
        rev = np.empty(total, np.int64)
        fill = deg.copy()
        for j in range(m):
            for p in range(n2):
                q = targets[j * n2 + p]
                rev[fill[q]] = p
                fill[q] += 1

        marked = np.zeros(n2, np.uint8)
        queue = np.empty(n2, np.int64)
        head = 0
        tail = 0
        for a in range(n):
            d = a * n + a
            marked[d] = 1
            queue[tail] = d
            tail += 1
        while head < tail:
            q = queue[head]
            head += 1
            for e in range(deg[q], deg[q + 1]):
                p = rev[e]
                if marked[p] == 0:
                    marked[p] = 1
                    queue[tail] = p
                    tail += 1
        return marked

    @decorate
    def block_parent(n, gens_flat, g, a, b):
        """Finest G-congruence identifying a and b, as a DSU parent array.

        Worklist form of Atkinson's minimal block algorithm: whenever two
        points are identified, their images under every generator are
        enqueued.
        """
        parent = np.empty(n, np.int32)
        for i in range(n):
            parent[i] = i
        cap = 2 * n * g + 8
        sx = np.empty(cap, np.int32)
        sy = np.empty(cap, np.int32)
        top = 0
        sx[top] = a
        sy[top] = b
        top += 1
        while top > 0:
            top -= 1
            x = sx[top]
            y = sy[top]
            rx = x
            while parent[rx] != rx:
                rx = parent[rx]
            ry = y
            while parent[ry] != ry:
                ry = parent[ry]
            cx = x
            while parent[cx] != rx:
                nxt = parent[cx]
                parent[cx] = rx
                cx = nxt
            cy = y
            while parent[cy] != ry:
                nxt = parent[cy]
                parent[cy] = ry
                cy = nxt
            if rx == ry:
                continue
            if ry < rx:
                rx, ry = ry, rx
            parent[ry] = rx
            for j in range(g):
                base = j * n
                sx[top] = gens_flat[base + x]
                sy[top] = gens_flat[base + y]
                top += 1
        for i in range(n):
            r = i
            while parent[r] != r:
                r = parent[r]
            c = i
            while parent[c] != r:
                nxt = parent[c]
                parent[c] = r
                c = nxt
        return parent

    return hom_search, clique_search, pair_closure, block_parent
