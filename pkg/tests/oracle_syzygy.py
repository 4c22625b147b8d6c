"""Independent brute-force syzygy oracle over S = k[x_0..x_v], used only by
the tests.  Minimal free resolutions are computed degree by degree with
plain linear algebra on the symmetric side; nothing here touches the
exterior algebra or the Tate machinery it checks.
"""

from __future__ import annotations

import numpy as np

from bgg import linalg
from bgg.symmetric import GradedModule, SPresentation, s_monomials


class FreeSModule:
    """⊕ S(-d_j), elements of degree d as coordinate vectors over the basis
    (gen j, monomial of degree d - d_j)."""

    def __init__(self, v, gens):
        self.v = v
        self.gens = list(gens)

    def basis(self, d):
        return [(j, e) for j, g in enumerate(self.gens)
                for e in s_monomials(self.v, d - g)]

    def dim(self, d):
        return len(self.basis(d))

    def mult_matrix(self, alpha, d, field):
        """x_alpha: degree d -> d+1."""
        src = self.basis(d)
        tgt = {be: k for k, be in enumerate(self.basis(d + 1))}
        A = linalg.zeros(field, len(tgt), len(src))
        for c, (j, e) in enumerate(src):
            e2 = list(e)
            e2[alpha] += 1
            A[tgt[(j, tuple(e2))], c] = field.one
        return A


class SubmoduleOfFree:
    """Graded submodule of a FreeSModule: degreewise row bases with unit
    coordinates at coord_cols (so coordinates are read off)."""

    def __init__(self, field, ambient, bases):
        self.field = field
        self.ambient = ambient
        self.bases = {d: kb for d, kb in bases.items() if kb[0].shape[0]}

    def dim(self, d):
        return self.bases[d][0].shape[0] if d in self.bases else 0

    def min_generators(self, d_max):
        f = self.field
        out = []
        for d in sorted(self.bases):
            if d > d_max:
                break
            K, coords = self.bases[d]
            stacked = []
            if d - 1 in self.bases:
                prev = self.bases[d - 1][0]
                for alpha in range(self.ambient.v + 1):
                    A = self.ambient.mult_matrix(alpha, d - 1, f)
                    stacked.append(linalg.mat_mul(f, prev, A.T))
            if stacked:
                S = np.concatenate(stacked, axis=0)[:, coords]
                _, piv = linalg.rref(f, S)
                free = [k for k in range(K.shape[0]) if k not in set(piv)]
            else:
                free = list(range(K.shape[0]))
            out.extend((d, K[k]) for k in free)
        return out


def _module_as_submodule_target(gm: GradedModule, d_range):
    """Wrap the presented module degreewise (identity coordinates)."""
    return {d: gm.dim(d) for d in d_range}


def brute_force_betti(pres: SPresentation, d_max, steps):
    """Graded Betti numbers {(j, q): β} of the presented module, for weights
    q <= d_max and syzygy orders j <= steps, by degreewise syzygy chasing."""
    f = pres.field
    gm = GradedModule(pres)
    d_lo = pres.min_gen_degree()

    # step 0: minimal generators of M itself
    betti = {}
    gens0 = []
    for d in range(d_lo, d_max + 1):
        dim = gm.dim(d)
        if dim == 0:
            continue
        maps = gm.mult_maps(d - 1) if gm.dim(d - 1) else None
        if maps:
            S = np.concatenate([A.T for A in maps], axis=0)
            _, piv = linalg.rref(f, S)
            free = [k for k in range(dim) if k not in set(piv)]
        else:
            free = list(range(dim))
        for k in free:
            gens0.append((d, k))
        if free:
            betti[(0, d)] = len(free)

    # F_0 -> M, then chase kernels
    F = FreeSModule(pres.v, [d for d, _ in gens0])

    def f0_matrix(d):
        """(F_0)_d -> M_d in the chosen bases."""
        src = F.basis(d)
        A = linalg.zeros(f, gm.dim(d), len(src))
        for c, (j, e) in enumerate(src):
            g, k = gens0[j]
            vec = linalg.zeros(f, 1, gm.dim(g))
            vec[0, k] = f.one
            deg = g
            for alpha in range(pres.v + 1):
                for _ in range(e[alpha]):
                    A_alpha = gm.mult_maps(deg)[alpha]
                    vec = linalg.mat_mul(f, vec, A_alpha.T)
                    deg += 1
            A[:, c] = vec[0]
        return A

    current_mat = f0_matrix
    current_free = F
    for j in range(1, steps + 1):
        bases = {}
        for d in range(d_lo, d_max + 1):
            if current_free.dim(d) == 0:
                continue
            A = current_mat(d)
            K, coords = linalg.kernel_basis(f, A)
            if K.shape[0]:
                bases[d] = (K, coords)
        Z = SubmoduleOfFree(f, current_free, bases)
        gens = Z.min_generators(d_max)
        for d, _ in gens:
            betti[(j, d)] = betti.get((j, d), 0) + 1
        if not gens:
            break
        newF = FreeSModule(pres.v, [d for d, _ in gens])
        vecs = gens

        def next_mat(d, newF=newF, vecs=vecs, prevF=current_free):
            src = newF.basis(d)
            A = linalg.zeros(f, prevF.dim(d), len(src))
            tgt_idx = {be: k for k, be in enumerate(prevF.basis(d))}
            for c, (jg, e) in enumerate(src):
                g, w = vecs[jg][0], vecs[jg][1]
                for k, (i, e0) in enumerate(prevF.basis(g)):
                    if f.is_zero(w[k]):
                        continue
                    e2 = tuple(a + b for a, b in zip(e0, e))
                    A[tgt_idx[(i, e2)], c] = f.add(A[tgt_idx[(i, e2)], c], w[k])
            return A

        current_mat = next_mat
        current_free = newF
    return betti
