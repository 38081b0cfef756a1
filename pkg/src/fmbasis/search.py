"""Layered backtracking search for filtered multiplicative bases.

Any such basis containing 1 splits along the radical powers: layer n must
hold exactly dim(omega^n/omega^{n+1}) members of omega^n, independent
modulo omega^{n+1}.  The search fills layers shallow to deep.  Products
of chosen members are forced members (soundness: members multiply into
the final set or to zero), so each extension closes the partial set under
multiplication and prunes on layer overflow, dependence modulo the next
power, and congruence collisions modulo any power.  Free candidates
enumerate a coset leading part over the layer quotient and a tail over
the deeper power, in a fixed reflected order, so runs are replayable and
exhaustion is a certificate.

Characteristic two runs on int bitmasks with a full product table; odd
characteristics share the identical control flow through a tuple-vector
space and are budget-bounded in practice.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    threads: int = 1


@dataclass
class SearchOutcome:
    kind: str            # "found" | "exhausted" | "budget"
    basis: list | None   # layer members as tuple vectors (without 1)
    nodes: int


class _BudgetExceeded(Exception):
    pass


def _gray2(i: int) -> int:
    return i ^ (i >> 1)


def _reflected_word(i: int, p: int, length: int):
    """Deterministic reflected enumeration of base-p words; digit k scans
    backwards whenever the more significant part has odd weight."""
    digits = []
    for _ in range(length):
        digits.append(i % p)
        i //= p
    word = [0] * length
    flip = 0
    for k in range(length - 1, -1, -1):
        d = digits[k]
        word[k] = (p - 1 - d) if flip & 1 else d
        flip += word[k]
    return word


# ---------------------------------------------------------------- GF(2) space

class _EchelonGf2:
    """Bitmask echelon with rows keyed by leading bit."""

    __slots__ = ("table",)

    def __init__(self, rows=()):
        self.table = {}
        for r in rows:
            self.add(r)

    def clone(self):
        out = _EchelonGf2.__new__(_EchelonGf2)
        out.table = dict(self.table)
        return out

    def reduce(self, v: int) -> int:
        table = self.table
        while v:
            h = v.bit_length() - 1
            row = table.get(h)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.table[v.bit_length() - 1] = v
        return True


class Gf2Space:
    """Search-facing view of u(L) over F_2: masks, a product table, chain
    membership, and candidate enumeration per layer."""

    def __init__(self, ctx, chain):
        env = ctx.env
        self.env = ctx.env
        self.N = env.dim
        self.depth = len(chain) - 1      # deepest n with omega^n nonzero
        self.chain_rows = []
        for sub in chain:
            self.chain_rows.append([self._mask_of_row(row) for row in sub.rows])
        self.chain_ech = [_EchelonGf2(rows) for rows in self.chain_rows]
        self.d = [
            chain[i].dim - chain[i + 1].dim for i in range(len(chain) - 1)
        ]
        table = []
        for mi in env.monomials:
            row = []
            for mj in env.monomials:
                row.append(self._mask_of_elem(env.mul_mono(mi, mj)))
            table.append(row)
        self.table = table
        weights = [
            sum(e * h for e, h in zip(mono, ctx.heights)) for mono in env.monomials
        ]
        self.reps = [
            [1 << i for i, w in enumerate(weights) if w == n]
            for n in range(len(chain) + 1)
        ]

    def _mask_of_row(self, row):
        m = 0
        for i, c in enumerate(row):
            if c:
                m |= 1 << i
        return m

    def _mask_of_elem(self, elem):
        m = 0
        for mono in elem:
            m |= 1 << self.env.index[mono]
        return m

    def mul(self, a: int, b: int) -> int:
        acc = 0
        table = self.table
        x = a
        while x:
            i = (x & -x).bit_length() - 1
            x &= x - 1
            row = table[i]
            y = b
            while y:
                j = (y & -y).bit_length() - 1
                y &= y - 1
                acc ^= row[j]
        return acc

    def sub(self, a, b):
        return a ^ b

    def key(self, v):
        return v

    def is_zero(self, v):
        return not v

    def layer_of(self, v: int) -> int:
        h = 0
        for m in range(1, self.depth + 1):
            if self.chain_ech[m - 1].reduce(v) == 0:
                h = m
            else:
                break
        return h

    def quotient_reducer(self, layer: int):
        return self.chain_ech[layer].clone()    # omega^(layer+1) base rows

    def layer_totals(self, layer: int):
        lead_count = (1 << self.d[layer - 1]) - 1
        tail_bits = len(self.chain_rows[layer])
        return lead_count * (1 << tail_bits)

    def candidate(self, layer: int, enc: int) -> int:
        tail_bits = len(self.chain_rows[layer])
        lead_idx = (enc >> tail_bits) + 1
        tail_idx = _gray2(enc & ((1 << tail_bits) - 1))
        v = 0
        reps = self.reps[layer]
        k = 0
        while lead_idx:
            if lead_idx & 1:
                v ^= reps[k]
            lead_idx >>= 1
            k += 1
        rows = self.chain_rows[layer]
        k = 0
        while tail_idx:
            if tail_idx & 1:
                v ^= rows[k]
            tail_idx >>= 1
            k += 1
        return v

    def to_tuple(self, v: int):
        return tuple((v >> i) & 1 for i in range(self.N))


# --------------------------------------------------------------- generic space

class _EchelonGeneric:
    """Echelon rows over any field, keyed by leading index, pivots scaled
    to one."""

    __slots__ = ("F", "table")

    def __init__(self, F, rows=()):
        self.F = F
        self.table = {}
        for r in rows:
            self.add(tuple(r))

    def clone(self):
        out = _EchelonGeneric.__new__(_EchelonGeneric)
        out.F = self.F
        out.table = dict(self.table)
        return out

    def reduce(self, v):
        F = self.F
        v = list(v)
        changed = True
        while changed:
            changed = False
            for i, c in enumerate(v):
                if c == F.zero:
                    continue
                row = self.table.get(i)
                if row is None:
                    return tuple(v)
                for k in range(i, len(v)):
                    if row[k] != F.zero:
                        v[k] = F.sub(v[k], F.mul(c, row[k]))
                changed = True
                break
        return tuple(v)

    def add(self, v) -> bool:
        F = self.F
        v = self.reduce(v)
        lead = next((i for i, c in enumerate(v) if c != F.zero), None)
        if lead is None:
            return False
        inv = F.inv(v[lead])
        self.table[lead] = tuple(F.mul(inv, c) for c in v)
        return True


class GenericSpace:
    """Tuple-vector twin of Gf2Space for odd characteristic."""

    def __init__(self, ctx, chain):
        env = ctx.env
        self.env = env
        self.F = env.field
        self.p = env.p
        self.N = env.dim
        self.depth = len(chain) - 1
        self.chain_rows = [list(sub.rows) for sub in chain]
        self.chain_ech = [_EchelonGeneric(self.F, rows) for rows in self.chain_rows]
        self.d = [chain[i].dim - chain[i + 1].dim for i in range(len(chain) - 1)]
        self._table = {}
        weights = [
            sum(e * h for e, h in zip(mono, ctx.heights)) for mono in env.monomials
        ]
        self.reps = [
            [env.index[mono] for mono, w in zip(env.monomials, weights) if w == n]
            for n in range(len(chain) + 1)
        ]

    def _prod_entry(self, i, j):
        entry = self._table.get((i, j))
        if entry is None:
            env = self.env
            elem = env.mul_mono(env.monomials[i], env.monomials[j])
            entry = tuple(
                (env.index[m], c) for m, c in sorted(elem.items())
            )
            self._table[(i, j)] = entry
        return entry

    def mul(self, a, b):
        F = self.F
        out = [F.zero] * self.N
        nza = [(i, c) for i, c in enumerate(a) if c != F.zero]
        nzb = [(j, c) for j, c in enumerate(b) if c != F.zero]
        for i, ca in nza:
            for j, cb in nzb:
                scale = F.mul(ca, cb)
                for k, ck in self._prod_entry(i, j):
                    out[k] = F.add(out[k], F.mul(scale, ck))
        return tuple(out)

    def sub(self, a, b):
        F = self.F
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def key(self, v):
        return v

    def is_zero(self, v):
        F = self.F
        return all(c == F.zero for c in v)

    def layer_of(self, v):
        F = self.F
        h = 0
        for m in range(1, self.depth + 1):
            if all(c == F.zero for c in self.chain_ech[m - 1].reduce(v)):
                h = m
            else:
                break
        return h

    def quotient_reducer(self, layer):
        return self.chain_ech[layer].clone()

    def layer_totals(self, layer):
        lead_count = self.p ** self.d[layer - 1] - 1
        return lead_count * self.p ** len(self.chain_rows[layer])

    def candidate(self, layer, enc):
        F = self.F
        tail_total = self.p ** len(self.chain_rows[layer])
        lead_idx = enc // tail_total + 1
        tail_idx = enc % tail_total
        v = [F.zero] * self.N
        lead_word = _reflected_word(lead_idx, self.p, self.d[layer - 1])
        for k, digit in enumerate(lead_word):
            if digit:
                v[self.reps[layer][k]] = F.add(v[self.reps[layer][k]], F.from_int(digit))
        tail_word = _reflected_word(tail_idx, self.p, len(self.chain_rows[layer]))
        for digit, row in zip(tail_word, self.chain_rows[layer]):
            if digit:
                d = F.from_int(digit)
                for i, c in enumerate(row):
                    if c != F.zero:
                        v[i] = F.add(v[i], F.mul(d, c))
        return tuple(v)

    def to_tuple(self, v):
        return v


# --------------------------------------------------------------------- engine

class _State:
    __slots__ = ("members", "layers", "reducers", "last_enc")

    def __init__(self, members, layers, reducers, last_enc):
        self.members = members      # key -> (vector, layer)
        self.layers = layers        # per-layer member counts, index 1..depth
        self.reducers = reducers    # per-layer echelon clones, index 1..depth
        self.last_enc = last_enc

    def clone(self):
        return _State(
            dict(self.members),
            list(self.layers),
            [r if r is None else r.clone() for r in self.reducers],
            list(self.last_enc),
        )


class _Engine:
    def __init__(self, space, budget: SearchBudget):
        self.space = space
        self.max_nodes = budget.max_nodes
        self.nodes = 0

    def run(self) -> SearchOutcome:
        space = self.space
        depth = space.depth
        state = _State(
            {},
            [0] * (depth + 1),
            [None] + [space.quotient_reducer(n) for n in range(1, depth + 1)],
            [0] * (depth + 1),
        )
        try:
            found = self._dfs(state)
        except _BudgetExceeded:
            return SearchOutcome("budget", None, self.nodes)
        if found is not None:
            basis = [space.to_tuple(v) for v, _layer in found]
            return SearchOutcome("found", basis, self.nodes)
        return SearchOutcome("exhausted", None, self.nodes)

    # a member addition validates layer budget, quotient independence and
    # congruence distinctness; products with existing members are queued
    def _add_member(self, state, v, pending):
        space = self.space
        layer = space.layer_of(v)
        if layer == 0 or layer > space.depth:
            return False
        if state.layers[layer] >= space.d[layer - 1]:
            return False
        # distinctness mod omega^(layer+1): a same-layer member congruent
        # to v modulo the deeper power rules the whole branch out
        deeper = space.chain_ech[layer]
        for u, ulayer in state.members.values():
            if ulayer == layer and space.is_zero(deeper.reduce(space.sub(u, v))):
                return False
        if not state.reducers[layer].add(v):
            return False
        for u, _ulayer in list(state.members.values()):
            pending.append((u, v))
            pending.append((v, u))
        pending.append((v, v))
        state.members[space.key(v)] = (v, layer)
        state.layers[layer] += 1
        return True

    def _close(self, state, pending):
        space = self.space
        while pending:
            a, b = pending.pop()
            prod = space.mul(a, b)
            if space.is_zero(prod):
                continue
            if space.key(prod) in state.members:
                continue
            if not self._add_member(state, prod, pending):
                return False
        return True

    def _dfs(self, state):
        space = self.space
        layer = None
        for n in range(1, space.depth + 1):
            if state.layers[n] < space.d[n - 1]:
                layer = n
                break
        if layer is None:
            return list(state.members.values())
        total = space.layer_totals(layer)
        for enc in range(state.last_enc[layer], total):
            self.nodes += 1
            if self.max_nodes is not None and self.nodes > self.max_nodes:
                raise _BudgetExceeded
            v = space.candidate(layer, enc)
            if space.key(v) in state.members:
                continue
            child = state.clone()
            child.last_enc[layer] = enc + 1
            pending = []
            if not self._add_member(child, v, pending):
                continue
            if not self._close(child, pending):
                continue
            found = self._dfs(child)
            if found is not None:
                return found
        return None


def run_search(ctx, chain, budget: SearchBudget) -> SearchOutcome:
    """Run the layered search on an adapted context; `chain` is the omega
    power chain of the adapted envelope."""
    if ctx.env.p == 2:
        space = Gf2Space(ctx, chain)
    else:
        space = GenericSpace(ctx, chain)
    if ctx.env.dim == 1:
        # zero-dimensional L: u(L) = F, basis {1}
        return SearchOutcome("found", [], 0)
    return _Engine(space, budget).run()
